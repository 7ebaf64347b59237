#include "strmac/mac.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace strmac {

const char* to_string(StrPolicy policy)
{
  switch (policy) {
  case StrPolicy::PreferBfd:
    return "prefer_bfd";
  case StrPolicy::PreferUfd:
    return "prefer_ufd";
  case StrPolicy::Alternate:
    return "alternate";
  case StrPolicy::BfdOnly:
    return "bfd_only";
  case StrPolicy::UfdOnly:
    return "ufd_only";
  }
  return "?";
}

const char* to_string(Mitigation mitigation)
{
  switch (mitigation) {
  case Mitigation::None:
    return "none";
  case Mitigation::CtsFdAware:
    return "cts-fd-aware";
  case Mitigation::Fdti:
    return "fdti";
  }
  return "?";
}

std::optional<StrPolicy> parse_policy(std::string_view text)
{
  for (auto p : {StrPolicy::PreferBfd, StrPolicy::PreferUfd, StrPolicy::Alternate, StrPolicy::BfdOnly,
                 StrPolicy::UfdOnly}) {
    if (text == to_string(p)) {
      return p;
    }
  }
  return std::nullopt;
}

std::optional<Mitigation> parse_mitigation(std::string_view text)
{
  for (auto m : {Mitigation::None, Mitigation::CtsFdAware, Mitigation::Fdti}) {
    if (text == to_string(m)) {
      return m;
    }
  }
  return std::nullopt;
}

RtsResponse decide_rts_response(const RtsContext& ctx)
{
  if (!ctx.str_enabled || !ctx.ap_fd) {
    return RtsResponse::Cts;
  }
  const bool bfd = ctx.sender_fd && ctx.bfd_feasible;
  const bool ufd = ctx.ufd_feasible;
  bool prefer_ufd = false;
  switch (ctx.policy) {
  case StrPolicy::BfdOnly:
    return bfd ? RtsResponse::Bfd : RtsResponse::Cts;
  case StrPolicy::UfdOnly:
    return ufd ? RtsResponse::Ufd : RtsResponse::Cts;
  case StrPolicy::PreferBfd:
    prefer_ufd = false;
    break;
  case StrPolicy::PreferUfd:
    prefer_ufd = true;
    break;
  case StrPolicy::Alternate:
    prefer_ufd = ctx.alternate_turn_ufd;
    break;
  }
  if (prefer_ufd) {
    return ufd ? RtsResponse::Ufd : (bfd ? RtsResponse::Bfd : RtsResponse::Cts);
  }
  return bfd ? RtsResponse::Bfd : (ufd ? RtsResponse::Ufd : RtsResponse::Cts);
}

std::optional<NodeId> select_ufd_receiver(std::span<const NodeId> candidates, NodeId sender,
                                          const EligibilityMatrix& eligibility,
                                          std::span<const std::uint64_t> last_served)
{
  std::optional<NodeId> best;
  std::uint64_t best_served = 0;
  for (const NodeId c : candidates) {
    if (c == sender || !eligibility.eligible(sender, c)) {
      continue;
    }
    const std::uint64_t served = last_served[c.index()];
    if (!best || served < best_served || (served == best_served && c < *best)) {
      best = c;
      best_served = served;
    }
  }
  return best;
}

namespace {

enum TimerKind : std::uint32_t {
  kBackoff,
  kSend,
  kSecondTx,
  kAckSend,
  kCtsTimeout,
  kAckTimeout,
  kDataWait,
  kFdti,
  kRefresh,
  kTimerKinds,
};

class StrMac;

struct Network {
  Simulator* sim = nullptr;
  const Channel* channel = nullptr;
  const Deployment* deployment = nullptr;
  TimingParams timing;
  MacConfig config;
  MetricsAccumulator* metrics = nullptr;
  CapabilityView caps;
  std::vector<EligibilityMatrix> eligibility;  // by AP index
  std::vector<std::vector<NodeId>> cells;      // by AP index
  std::vector<std::uint64_t> last_served;
  std::uint64_t serve_counter = 0;
  std::vector<Micros> fd_from;
  std::vector<Micros> fd_until;
  std::vector<bool> alternate_ufd;
  std::vector<StrMac*> macs;
  Rng probe_rng;

  Micros t_rts = 0;
  Micros t_cts = 0;
  Micros t_ack = 0;
  Micros t_data = 0;
  Micros d0 = 0;
  Micros d1 = 0;
  Micros eifs = 0;

  void mark_fd(NodeId ap, Micros from, Micros until)
  {
    fd_from[ap.index()] = from;
    fd_until[ap.index()] = until;
  }

  bool fd_induced(NodeId src, Micros now) const
  {
    const NodeId ap = deployment->node(src).ap;
    if (ap == kBroadcast) {
      return false;
    }
    return fd_from[ap.index()] <= now && now <= fd_until[ap.index()];
  }

  void served(NodeId sta) { last_served[sta.index()] = ++serve_counter; }
};

struct Outstanding {
  NodeId dst;
  std::uint32_t bits = 0;
  ExchangeKind kind = ExchangeKind::Hd;
  bool second = false;
  Micros deadline = 0;
};

struct PendingTx {
  Frame frame;
  std::uint64_t rate_bps = 0;
  std::optional<Outstanding> await;
};

class StrMac final : public MacNode {
public:
  StrMac(std::shared_ptr<Network> net, NodeId id)
      : m_net(std::move(net)),
        m_sim(m_net->sim),
        m_id(id),
        m_info(&m_net->deployment->node(id)),
        m_fd(m_net->config.str_enabled && m_info->is_fd()),
        m_cw(m_net->timing.cw_min_slots)
  {
  }

  void start() override
  {
    if (!m_info->is_ap()) {
      m_hol_dst = m_info->ap;
    } else {
      pick_ap_destination();
      if (m_fd && m_net->config.neighborhood_refresh_us > 0) {
        arm(kRefresh, m_net->config.neighborhood_refresh_us);
      }
    }
    try_resume();
  }

  void on_medium_busy() override
  {
    if (!m_counting) {
      return;
    }
    const Micros now = m_sim->now();
    if (now >= m_backoff_end) {
      return;  // the backoff timer fires this microsecond
    }
    if (now >= m_resume_at) {
      ifs_completed();
      m_slots -= (now - m_resume_at) / m_net->timing.slot_us;
    }
    m_counting = false;
    disarm(kBackoff);
  }

  void on_medium_idle() override { try_resume(); }

  void on_rx(const Frame& frame, bool ok) override
  {
    if (m_net->fd_induced(frame.src, m_sim->now())) {
      m_post_fd = true;
    }
    if (!ok) {
      on_corrupted(frame);
      return;
    }
    m_eifs_pending = false;
    m_eifs_fd_induced = false;
    const Micros now = m_sim->now();
    const bool to_me = frame.dst == m_id;
    const bool fd_flag = m_fd && frame.control.fd_flag;
    switch (frame.control.kind) {
    case FrameKind::Rts:
      if (to_me) {
        on_rts(frame);
      } else {
        update_nav(frame.duration_us);
      }
      break;
    case FrameKind::Cts:
      if (to_me && m_wait_cts) {
        on_cts(frame, fd_flag);
      } else if (!to_me) {
        update_nav(frame.duration_us);
        if (fd_flag) {
          m_fd_nav_until = std::max(m_fd_nav_until, now + static_cast<Micros>(frame.duration_us));
        }
      }
      break;
    case FrameKind::Data:
      if (to_me) {
        on_data(frame);
      } else {
        update_nav(frame.duration_us);
      }
      break;
    case FrameKind::Ack:
      if (to_me) {
        on_ack();
      } else if (frame.dst != kBroadcast) {
        update_nav(frame.duration_us);
      }
      break;
    default:
      break;
    }
    maybe_finish();
  }

  void on_tx_end(const Frame& /*frame*/) override
  {
    if (m_ack_owed && !m_ack_scheduled) {
      m_ack_scheduled = true;
      arm(kAckSend, m_sim->now() + m_net->timing.sifs_us);
    }
    maybe_finish();
  }

  void on_timer(std::uint32_t kind, std::uint64_t tag) override
  {
    if (kind >= kTimerKinds || tag != m_gen[kind]) {
      return;
    }
    switch (kind) {
    case kBackoff:
      on_backoff_done();
      break;
    case kSend:
      fire_pending(m_send);
      break;
    case kSecondTx:
      fire_pending(m_second);
      break;
    case kAckSend:
      send_ack();
      break;
    case kCtsTimeout:
      m_wait_cts = false;
      attempt_failed();
      break;
    case kAckTimeout:
      on_ack_timeout();
      break;
    case kDataWait:
      m_wait_data = false;
      break;
    case kFdti:
      m_fdti_pending = false;
      if (!m_sim->transmitting(m_id)) {
        transmit(make_fdti(m_id));
      }
      break;
    case kRefresh:
      refresh_neighborhood();
      break;
    default:
      break;
    }
    maybe_finish();
  }

  [[nodiscard]] Micros nav_until() const override { return m_nav_until; }

  void note_exchange(ExchangeKind kind) { m_exchange_kind = kind; }

private:
  const TimingParams& timing() const { return m_net->timing; }
  MetricsAccumulator& metrics() { return *m_net->metrics; }

  void arm(TimerKind kind, Micros at) { m_sim->set_timer(m_id, at, kind, ++m_gen[kind]); }
  void disarm(TimerKind kind) { ++m_gen[kind]; }

  bool engaged() const
  {
    return m_wait_cts || m_wait_data || m_await || m_send || m_second || m_ack_owed || m_fdti_pending ||
           m_sim->transmitting(m_id);
  }

  bool has_traffic() const { return m_hol_dst != kBroadcast; }

  void pick_ap_destination()
  {
    const auto& cell = m_net->cells[m_id.index()];
    m_hol_dst = cell.empty() ? kBroadcast : cell[m_sim->traffic_rng(m_id).below(cell.size())];
  }

  // ---- contention ----

  void try_resume()
  {
    if (!has_traffic() || m_counting || engaged() || m_sim->medium_busy(m_id)) {
      return;
    }
    if (m_slots < 0) {
      m_slots = static_cast<std::int64_t>(m_sim->backoff_rng(m_id).below(m_cw));
    }
    const Micros now = m_sim->now();
    m_ifs = m_eifs_pending ? m_net->eifs : timing().difs_us;
    m_resume_at = std::max(now, m_nav_until) + m_ifs;
    m_backoff_end = m_resume_at + m_slots * timing().slot_us;
    m_counting = true;
    arm(kBackoff, m_backoff_end);
  }

  void ifs_completed()
  {
    const Micros now = m_sim->now();
    metrics().record_wait(m_id, m_ifs, m_post_fd);
    m_post_fd = false;
    if (auto* obs = m_sim->observer()) {
      obs->on_contention_wait(m_id, m_ifs, now);
    }
    if (m_ifs == m_net->eifs && m_eifs_pending && m_eifs_fd_induced) {
      metrics().record_fd_induced_eifs();
      if (auto* obs = m_sim->observer()) {
        obs->on_fd_induced_eifs(m_id, now);
      }
    }
    m_eifs_pending = false;
    m_eifs_fd_induced = false;
  }

  void update_nav(std::uint32_t duration)
  {
    if (engaged()) {
      return;
    }
    const Micros until = m_sim->now() + static_cast<Micros>(duration);
    if (until <= m_nav_until) {
      return;
    }
    m_nav_until = until;
    if (m_counting) {
      m_counting = false;
      disarm(kBackoff);
      try_resume();
    }
  }

  void on_corrupted(const Frame& frame)
  {
    const Micros now = m_sim->now();
    if (m_net->config.mitigation == Mitigation::CtsFdAware && m_fd && now <= m_fd_nav_until) {
      return;
    }
    m_eifs_pending = true;
    m_eifs_fd_induced = m_net->fd_induced(frame.src, now);
  }

  void on_backoff_done()
  {
    m_counting = false;
    ifs_completed();
    m_slots = -1;
    start_attempt();
  }

  void new_packet()
  {
    m_retries = 0;
    m_cw = timing().cw_min_slots;
    m_slots = -1;
    if (m_info->is_ap()) {
      pick_ap_destination();
    }
  }

  void attempt_failed()
  {
    metrics().record_retransmission(m_id);
    if (++m_retries > timing().retry_limit) {
      metrics().record_drop(m_id);
      new_packet();
      return;
    }
    m_cw = std::min(m_cw * 2, timing().cw_max_slots);
    m_slots = -1;
  }

  // ---- transmissions ----

  void transmit(const Frame& frame, std::uint64_t rate_bps = 0)
  {
    if (frame.control.kind == FrameKind::Data && m_info->is_ap()) {
      m_net->served(frame.dst);
    }
    m_sim->transmit(m_id, frame, tx_time(timing(), frame.control.kind, frame.payload_bits, rate_bps));
  }

  void fire_pending(std::optional<PendingTx>& slot)
  {
    if (!slot) {
      return;
    }
    PendingTx tx = std::move(*slot);
    slot.reset();
    if (m_sim->transmitting(m_id)) {
      throw std::logic_error("node " + std::to_string(m_id.value) + " scheduled overlapping transmissions");
    }
    transmit(tx.frame, tx.rate_bps);
    if (tx.await) {
      m_await = tx.await;
      arm(kAckTimeout, m_await->deadline);
    }
  }

  void start_attempt()
  {
    const Micros now = m_sim->now();
    const std::uint32_t bits = timing().payload_bits;
    if (m_net->config.use_rts) {
      m_exchange_kind = ExchangeKind::Hd;
      m_rts_end = now + m_net->t_rts;
      m_wait_cts = true;
      transmit(make_rts(m_id, m_hol_dst, static_cast<std::uint32_t>(m_net->d0)));
      arm(kCtsTimeout, legacy_cts_timeout(timing(), m_rts_end));
      return;
    }
    metrics().record_exchange(ExchangeKind::Hd);
    const Micros end = now + m_net->t_data;
    transmit(make_data(m_id, m_hol_dst, static_cast<std::uint32_t>(timing().sifs_us + m_net->t_ack), bits));
    m_await = Outstanding{m_hol_dst, bits, ExchangeKind::Hd, false, legacy_ack_timeout(timing(), end)};
    m_await_initiator = true;
    arm(kAckTimeout, m_await->deadline);
  }

  void queue_send(const Frame& frame)
  {
    m_send = PendingTx{frame, 0, std::nullopt};
    arm(kSend, m_sim->now() + timing().sifs_us);
  }

  void queue_second(const Frame& frame, const TxSchedule& plan, ExchangeKind kind, Micros t5)
  {
    m_second = PendingTx{frame, plan.mcs_rate_bps, Outstanding{frame.dst, plan.payload_bits, kind, true, t5}};
    arm(kSecondTx, plan.t_start);
  }

  void expect_data(Micros until)
  {
    m_wait_data = true;
    arm(kDataWait, until);
  }

  void schedule_fdti(Micros t5)
  {
    if (m_net->config.mitigation == Mitigation::Fdti) {
      m_fdti_pending = true;
      arm(kFdti, t5 + timing().sifs_us);
    }
  }

  // ---- exchange handlers ----

  void on_rts(const Frame& rts)
  {
    const Micros now = m_sim->now();
    if (engaged() || m_nav_until > now) {
      return;
    }
    if (m_counting) {
      m_counting = false;
      disarm(kBackoff);
    }
    if (m_info->is_ap()) {
      ap_on_rts(rts);
    } else {
      sta_on_rts(rts);
    }
  }

  void ap_on_rts(const Frame& rts)
  {
    Network& net = *m_net;
    const TimingParams& p = timing();
    const NodeId sender = rts.src;
    const Micros t1 = m_sim->now();
    const Micros d0 = rts.duration_us;
    const Micros t2 = t1 + p.sifs_us + net.t_cts;
    const Micros t4 = first_tx_end(p, t1, d0);
    const Micros t5 = ack_deadline(p, t4);
    const std::uint32_t bits = p.payload_bits;

    RtsContext ctx;
    ctx.str_enabled = net.config.str_enabled;
    ctx.ap_fd = m_fd;
    ctx.sender_fd = net.caps.registry_fd[sender.index()];
    ctx.policy = net.config.policy;
    ctx.alternate_turn_ufd = net.alternate_ufd[m_id.index()];

    std::optional<TxSchedule> bfd_plan;
    std::optional<TxSchedule> ufd_plan;
    std::optional<NodeId> ufd_rx;
    if (ctx.str_enabled && m_fd && t2 + p.sifs_us <= t4) {
      if (ctx.sender_fd && net.config.policy != StrPolicy::UfdOnly) {
        bfd_plan = plan_second_tx_bfd(p, t2, t4, bits, p.mcs_rates_bps);
      }
      if (net.config.policy != StrPolicy::BfdOnly) {
        ufd_rx = select_ufd_receiver(net.cells[m_id.index()], sender, net.eligibility[m_id.index()],
                                     net.last_served);
        if (ufd_rx) {
          ufd_plan = plan_second_tx_ufd(p, t2, t4, bits, p.mcs_rates_bps);
        }
      }
    }
    ctx.bfd_feasible = bfd_plan.has_value();
    ctx.ufd_feasible = ufd_plan.has_value();
    const RtsResponse decision = decide_rts_response(ctx);

    const auto d1 = static_cast<std::uint32_t>(cts_duration(p, d0));
    StrMac* peer = net.macs[sender.index()];
    if (decision == RtsResponse::Cts) {
      peer->note_exchange(ExchangeKind::Hd);
      metrics().record_exchange(ExchangeKind::Hd);
      queue_send(make_cts(m_id, sender, d1));
      expect_data(t4);
      return;
    }

    const ExchangeKind kind = decision == RtsResponse::Bfd ? ExchangeKind::Bfd : ExchangeKind::Ufd;
    const TxSchedule plan = kind == ExchangeKind::Bfd ? *bfd_plan : *ufd_plan;
    const NodeId second_rx = kind == ExchangeKind::Bfd ? sender : *ufd_rx;
    peer->note_exchange(kind);
    metrics().record_exchange(kind);
    net.alternate_ufd[m_id.index()] = kind == ExchangeKind::Bfd;

    queue_send(make_cts_fd(sender, d1, m_id));
    queue_second(make_data(m_id, second_rx, static_cast<std::uint32_t>(t5 - plan.t_end), plan.payload_bits), plan,
                 kind, t5);
    expect_data(t4);
    net.mark_fd(m_id, t1, t5);
    schedule_fdti(t5);

    if (auto* obs = m_sim->observer()) {
      FdExchangeRecord rec;
      rec.kind = kind;
      rec.planner = m_id;
      rec.first_tx = sender;
      rec.first_rx = m_id;
      rec.second_rx = second_rx;
      rec.t1 = t1;
      rec.t2 = t2;
      rec.t4 = t4;
      rec.t5 = t5;
      rec.d0 = d0;
      rec.d1 = d1;
      rec.second = plan;
      obs->on_fd_exchange(rec);
    }
  }

  void sta_on_rts(const Frame& rts)
  {
    Network& net = *m_net;
    const TimingParams& p = timing();
    const Micros t1 = m_sim->now();
    const Micros d0 = rts.duration_us;
    const Micros t2 = t1 + p.sifs_us + net.t_cts;
    const Micros t4 = first_tx_end(p, t1, d0);
    const Micros t5 = ack_deadline(p, t4);
    const auto d1 = static_cast<std::uint32_t>(cts_duration(p, d0));

    std::optional<TxSchedule> plan;
    if (m_fd && rts.src == m_info->ap && net.caps.knows_ap_fd[m_id.index()] &&
        net.config.policy != StrPolicy::UfdOnly && t2 + p.sifs_us <= t4) {
      plan = plan_second_tx_bfd(p, t2, t4, p.payload_bits, p.mcs_rates_bps);
    }
    if (!plan) {
      metrics().record_exchange(ExchangeKind::Hd);
      queue_send(make_cts(m_id, rts.src, d1));
      expect_data(t4);
      return;
    }
    metrics().record_exchange(ExchangeKind::Bfd);
    queue_send(make_cts_fd(rts.src, d1, m_id));
    queue_second(make_data(m_id, rts.src, static_cast<std::uint32_t>(t5 - plan->t_end), plan->payload_bits), *plan,
                 ExchangeKind::Bfd, t5);
    expect_data(t4);
    net.mark_fd(rts.src, t1, t5);

    if (auto* obs = m_sim->observer()) {
      FdExchangeRecord rec;
      rec.kind = ExchangeKind::Bfd;
      rec.planner = m_id;
      rec.first_tx = rts.src;
      rec.first_rx = m_id;
      rec.second_rx = rts.src;
      rec.t1 = t1;
      rec.t2 = t2;
      rec.t4 = t4;
      rec.t5 = t5;
      rec.d0 = d0;
      rec.d1 = d1;
      rec.second = *plan;
      obs->on_fd_exchange(rec);
    }
  }

  void on_cts(const Frame& cts, bool fd_flag)
  {
    disarm(kCtsTimeout);
    m_wait_cts = false;
    const TimingParams& p = timing();
    const Micros now = m_sim->now();
    const std::uint32_t bits = p.payload_bits;
    const Micros data_end = now + p.sifs_us + m_net->t_data;

    ExchangeKind kind = m_exchange_kind;
    Micros deadline = legacy_ack_timeout(p, data_end);
    if (fd_flag) {
      deadline = ack_deadline(p, first_tx_end(p, m_rts_end, m_net->d0));
      if (m_info->is_ap()) {
        kind = ExchangeKind::Bfd;
        m_net->mark_fd(m_id, m_rts_end, deadline);
        schedule_fdti(deadline);
      }
    }
    (void)cts;
    m_send = PendingTx{make_data(m_id, m_hol_dst, static_cast<std::uint32_t>(p.sifs_us + m_net->t_ack), bits), 0,
                       Outstanding{m_hol_dst, bits, kind, false, deadline}};
    m_await_initiator = true;
    arm(kSend, now + p.sifs_us);
  }

  void on_data(const Frame& data)
  {
    m_ack_owed = data.src;
    if (m_wait_data) {
      m_wait_data = false;
      disarm(kDataWait);
    }
    if (!m_sim->transmitting(m_id)) {
      m_ack_scheduled = true;
      arm(kAckSend, m_sim->now() + timing().sifs_us);
    } else {
      m_ack_scheduled = false;
    }
  }

  void send_ack()
  {
    if (!m_ack_owed) {
      return;
    }
    const NodeId dst = *m_ack_owed;
    m_ack_owed.reset();
    m_ack_scheduled = false;
    transmit(make_ack(m_id, dst));
  }

  void on_ack()
  {
    if (!m_await) {
      if (auto* obs = m_sim->observer()) {
        obs->on_late_ack(m_id, m_sim->now());
      }
      return;
    }
    disarm(kAckTimeout);
    const Outstanding done = *m_await;
    m_await.reset();
    metrics().record_delivery(m_id, done.kind, done.second, done.bits);
    if (!done.second && m_await_initiator) {
      m_await_initiator = false;
      new_packet();
    }
  }

  void on_ack_timeout()
  {
    if (!m_await) {
      return;
    }
    const Outstanding lost = *m_await;
    m_await.reset();
    if (auto* obs = m_sim->observer()) {
      obs->on_ack_timeout(m_id, lost.deadline, m_sim->now());
    }
    if (!lost.second && m_await_initiator) {
      m_await_initiator = false;
      attempt_failed();
    } else {
      metrics().record_retransmission(m_id);
    }
  }

  void maybe_finish()
  {
    if (!engaged()) {
      try_resume();
    }
  }

  void refresh_neighborhood()
  {
    Network& net = *m_net;
    net.eligibility[m_id.index()] =
        neighborhood_init_phase(*net.channel, m_id, net.probe_rng, net.config.probe_retries);
    arm(kRefresh, m_sim->now() + net.config.neighborhood_refresh_us);
  }

  std::shared_ptr<Network> m_net;
  Simulator* m_sim;
  NodeId m_id;
  const NodeInfo* m_info;
  bool m_fd;
  std::uint64_t m_gen[kTimerKinds] = {};

  // contention
  std::uint32_t m_cw;
  std::int64_t m_slots = -1;
  std::uint32_t m_retries = 0;
  bool m_counting = false;
  Micros m_ifs = 0;
  Micros m_resume_at = 0;
  Micros m_backoff_end = 0;
  bool m_eifs_pending = false;
  bool m_eifs_fd_induced = false;
  bool m_post_fd = false;
  Micros m_nav_until = 0;
  Micros m_fd_nav_until = -1;
  NodeId m_hol_dst = kBroadcast;

  // exchange
  bool m_wait_cts = false;
  bool m_wait_data = false;
  bool m_fdti_pending = false;
  bool m_await_initiator = false;
  std::optional<Outstanding> m_await;
  std::optional<PendingTx> m_send;
  std::optional<PendingTx> m_second;
  std::optional<NodeId> m_ack_owed;
  bool m_ack_scheduled = false;
  Micros m_rts_end = 0;
  ExchangeKind m_exchange_kind = ExchangeKind::Hd;
};

}  // namespace

std::vector<std::unique_ptr<MacNode>> make_str_macs(Simulator& sim, const TimingParams& timing,
                                                    const MacConfig& config, MetricsAccumulator& metrics,
                                                    std::uint64_t seed)
{
  timing.validate();
  auto net = std::make_shared<Network>();
  const Channel& channel = sim.channel();
  const Deployment& dep = channel.deployment();
  net->sim = &sim;
  net->channel = &channel;
  net->deployment = &dep;
  net->timing = timing;
  net->config = config;
  net->metrics = &metrics;
  net->probe_rng = Rng(derive_seed(seed, Stream::Probe));

  net->t_rts = rts_airtime(timing);
  net->t_cts = cts_airtime(timing);
  net->t_ack = ack_airtime(timing);
  net->t_data = tx_time(timing, FrameKind::Data, timing.payload_bits);
  net->d0 = rts_duration(timing);
  net->d1 = cts_duration(timing, net->d0);
  net->eifs = eifs(timing);

  const std::size_t n = dep.size();
  net->last_served.assign(n, 0);
  net->fd_from.assign(n, -1);
  net->fd_until.assign(n, -2);
  net->alternate_ufd.assign(n, false);
  net->cells.resize(n);
  net->eligibility.resize(n);
  if (config.str_enabled) {
    net->caps = discover_capabilities(dep);
  } else {
    net->caps.knows_ap_fd.assign(n, false);
    net->caps.registry_fd.assign(n, false);
  }
  for (const NodeInfo& ap : dep.aps()) {
    net->cells[ap.id.index()] = dep.stas_of(ap.id);
    if (config.str_enabled && ap.is_fd() && config.use_rts && config.policy != StrPolicy::BfdOnly) {
      net->eligibility[ap.id.index()] =
          neighborhood_init_phase(channel, ap.id, net->probe_rng, config.probe_retries);
    }
  }

  std::vector<std::unique_ptr<MacNode>> macs;
  macs.reserve(n);
  net->macs.reserve(n);
  for (const NodeInfo& node : dep.nodes()) {
    auto mac = std::make_unique<StrMac>(net, node.id);
    net->macs.push_back(mac.get());
    macs.push_back(std::move(mac));
  }
  return macs;
}

}  // namespace strmac
