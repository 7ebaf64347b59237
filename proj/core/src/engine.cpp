#include "strmac/engine.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace strmac {

namespace {
constexpr std::uint64_t kPriorityShift = 62;
// Interferers this far below the noise floor are added at their mean power
// instead of drawing a fading sample.
constexpr double kNegligibleFraction = 1e-4;
}  // namespace

const char* to_string(ExchangeKind kind)
{
  switch (kind) {
  case ExchangeKind::Hd:
    return "HD";
  case ExchangeKind::Bfd:
    return "BFD";
  case ExchangeKind::Ufd:
    return "UFD";
  }
  return "?";
}

Simulator::Simulator(const Channel& channel, std::uint64_t seed)
    : m_channel(&channel),
      m_phy(channel.size()),
      m_fading_rng(derive_seed(seed, Stream::Fading))
{
  m_backoff_rng.reserve(channel.size());
  m_traffic_rng.reserve(channel.size());
  for (std::size_t i = 0; i < channel.size(); ++i) {
    m_backoff_rng.emplace_back(derive_seed(seed, Stream::Backoff, i));
    m_traffic_rng.emplace_back(derive_seed(seed, Stream::Traffic, i));
  }
}

Simulator::~Simulator() = default;

void Simulator::attach(std::vector<std::unique_ptr<MacNode>> macs)
{
  if (macs.size() != m_channel->size()) {
    throw std::invalid_argument("one MAC per deployed node is required");
  }
  m_macs = std::move(macs);
}

void Simulator::push(Micros time, EventType type, std::uint32_t node, std::uint32_t kind, std::uint64_t tag)
{
  const std::uint64_t order = (static_cast<std::uint64_t>(type) << kPriorityShift) | m_seq++;
  m_queue.push(Event{time, order, tag, node, kind, type});
}

void Simulator::set_timer(NodeId node, Micros at_us, std::uint32_t kind, std::uint64_t tag)
{
  if (at_us < m_now) {
    throw std::logic_error("timer scheduled in the past");
  }
  push(at_us, EventType::Timer, node.value, kind, tag);
}

void Simulator::trace(std::string_view kind, NodeId node, const Frame& frame, std::string_view extra)
{
  if (m_trace == nullptr) {
    return;
  }
  std::string text = std::to_string(m_now);
  text += ' ';
  text += kind;
  text += ' ';
  text += std::to_string(node.value);
  text += ' ';
  text += to_string(frame);
  if (!extra.empty()) {
    text += ' ';
    text += extra;
  }
  m_trace->line(text);
}

void Simulator::transmit(NodeId node, const Frame& frame, Micros airtime_us)
{
  PhyState& self = m_phy[node.index()];
  if (self.transmitting) {
    throw std::logic_error("node " + std::to_string(node.value) + " is already transmitting");
  }
  if (airtime_us <= 0) {
    throw std::invalid_argument("transmission airtime must be positive");
  }
  const Micros end = m_now + airtime_us;
  const std::uint64_t id = m_history_base + m_history.size();
  m_history.push_back(TxRecord{node, frame, m_now, end, true});
  ++m_active;
  ++m_stats.tx_starts;
  self.transmitting = true;
  self.tx_start = m_now;
  self.tx_end = end;

  if (m_observer != nullptr) {
    m_observer->on_tx_start(node, frame, m_now, end, m_macs[node.index()]->nav_until());
  }
  trace("TX_START", node, frame);

  m_busy_scratch.clear();
  for (const Listener& l : m_channel->listeners(node)) {
    PhyState& ps = m_phy[l.node.index()];
    if (++ps.busy == 1) {
      m_busy_scratch.push_back(l.node);
    }
  }
  push(end, EventType::TxEnd, node.value, 0, id);
  for (const NodeId n : m_busy_scratch) {
    m_macs[n.index()]->on_medium_busy();
  }
}

bool Simulator::intended_reception_ok(const TxRecord& rec, NodeId rx, bool self_tx)
{
  const ChannelParams& cp = m_channel->params();
  const double noise = m_channel->noise_mw();
  auto faded = [&](double mean) {
    if (!cp.rayleigh_fading || mean < noise * kNegligibleFraction) {
      return mean;
    }
    return mean * m_fading_rng.exponential();
  };

  const double signal = faded(m_channel->mean_rx_mw(rec.tx, rx));
  double denom = noise;
  for (const TxRecord& other : m_history) {
    if (other.start >= rec.end) {
      break;
    }
    if (&other == &rec || other.end <= rec.start || other.tx == rx || other.tx == rec.tx) {
      continue;
    }
    denom += faded(m_channel->mean_rx_mw(other.tx, rx));
  }
  if (self_tx) {
    denom += m_channel->rsi_mw(rx);
  }
  return signal >= m_channel->threshold_linear() * denom;
}

void Simulator::finish_transmission(std::uint64_t tx_id)
{
  TxRecord& rec = m_history[tx_id - m_history_base];
  rec.active = false;
  --m_active;
  ++m_stats.tx_ends;
  const NodeId tx = rec.tx;
  const Frame frame = rec.frame;
  m_phy[tx.index()].transmitting = false;

  const NodeId dst = frame.dst;
  const bool unicast = dst != kBroadcast && dst != tx;
  const Deployment& dep = m_channel->deployment();

  m_rx_scratch.clear();
  m_idle_scratch.clear();
  bool dst_seen = false;
  for (const Listener& l : m_channel->listeners(tx)) {
    PhyState& ps = m_phy[l.node.index()];
    const bool multi = ps.busy >= 2 || ps.last_multi_end > rec.start;
    const bool self_tx = ps.transmitting || ps.tx_end > rec.start;
    if (ps.busy == 2) {
      ps.last_multi_end = m_now;
    }
    --ps.busy;
    if (ps.busy == 0 && !ps.transmitting) {
      m_idle_scratch.push_back(l.node);
    }
    const bool full_duplex = dep.node(l.node).is_fd();
    if (self_tx && !full_duplex) {
      if (unicast && l.node == dst) {
        dst_seen = true;
      }
      continue;
    }
    if (unicast && l.node == dst) {
      dst_seen = true;
      m_rx_scratch.emplace_back(l.node, intended_reception_ok(rec, l.node, self_tx));
    } else if (l.decodes) {
      m_rx_scratch.emplace_back(l.node, !multi);
    }
  }
  if (unicast && !dst_seen) {
    const PhyState& ps = m_phy[dst.index()];
    const bool self_tx = ps.transmitting || ps.tx_end > rec.start;
    if (!self_tx || dep.node(dst).is_fd()) {
      m_rx_scratch.emplace_back(dst, intended_reception_ok(rec, dst, self_tx));
    }
  }

  trace("TX_END", tx, frame);
  m_macs[tx.index()]->on_tx_end(frame);
  for (const auto& [node, ok] : m_rx_scratch) {
    trace(ok ? "RX_OK" : "RX_ERR", node, frame);
    if (m_observer != nullptr) {
      m_observer->on_rx(node, frame, ok, m_now);
    }
    m_macs[node.index()]->on_rx(frame, ok);
  }
  for (const NodeId n : m_idle_scratch) {
    // A handler above may have made the node busy again.
    if (m_phy[n.index()].busy == 0 && !m_phy[n.index()].transmitting) {
      m_macs[n.index()]->on_medium_idle();
    }
  }
  prune_history();
}

void Simulator::prune_history()
{
  Micros earliest_active = m_now;
  for (const TxRecord& r : m_history) {
    if (r.active) {
      earliest_active = r.start;
      break;
    }
  }
  while (!m_history.empty() && !m_history.front().active && m_history.front().end <= earliest_active) {
    m_history.pop_front();
    ++m_history_base;
  }
}

void Simulator::run(Micros until_us)
{
  if (m_macs.size() != m_channel->size()) {
    throw std::logic_error("Simulator::run without attached MACs");
  }
  m_now = 0;
  for (auto& mac : m_macs) {
    mac->start();
  }
  while (!m_queue.empty()) {
    const Event ev = m_queue.top();
    if (ev.time > until_us) {
      break;
    }
    m_queue.pop();
    m_now = ev.time;
    ++m_stats.events;
    if (ev.type == EventType::TxEnd) {
      finish_transmission(ev.tag);
    } else {
      ++m_stats.timer_events;
      m_macs[ev.node]->on_timer(ev.kind, ev.tag);
    }
  }
  m_now = until_us;
}

}  // namespace strmac
