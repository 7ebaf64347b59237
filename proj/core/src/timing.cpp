#include "strmac/timing.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace strmac {

__extension__ using u128 = unsigned __int128;

namespace {

// ceil(bits * 1e6 / rate) without floating point.
Micros airtime_us(std::uint64_t bits, std::uint64_t rate_bps)
{
  const u128 num = static_cast<u128>(bits) * 1'000'000U;
  return static_cast<Micros>((num + rate_bps - 1) / rate_bps);
}

void require(bool ok, const char* what)
{
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

std::vector<std::uint64_t> rates_fastest_first(const TimingParams& p, std::span<const std::uint64_t> options)
{
  std::vector<std::uint64_t> rates(options.begin(), options.end());
  if (rates.empty()) {
    rates = p.mcs_rates_bps;
  }
  if (rates.empty()) {
    rates.push_back(p.data_rate_bps);
  }
  std::sort(rates.begin(), rates.end(), std::greater<>());
  return rates;
}

// Candidate payload sizes, largest first: the full head, then multiples of
// the fragment step below it.
template <typename Fn>
std::optional<TxSchedule> first_fitting(const TimingParams& p, std::uint32_t head_bits,
                                        std::span<const std::uint64_t> options, Fn&& fits)
{
  if (head_bits == 0) {
    return std::nullopt;
  }
  const auto rates = rates_fastest_first(p, options);
  const std::uint32_t step = std::max<std::uint32_t>(p.fragment_step_bits, 1);
  std::uint32_t payload = head_bits;
  while (true) {
    for (const auto rate : rates) {
      const Micros t = tx_time(p, FrameKind::Data, payload, rate);
      if (auto s = fits(t)) {
        s->payload_bits = payload;
        s->mcs_rate_bps = rate;
        return s;
      }
    }
    if (payload <= step) {
      return std::nullopt;
    }
    payload = (payload % step == 0) ? payload - step : payload - payload % step;
  }
}

}  // namespace

void TimingParams::validate() const
{
  require(sifs_us > 0, "sifs_us must be positive");
  require(sifs_us < difs_us, "sifs_us must be smaller than difs_us");
  require(slot_us > 0, "slot_us must be positive");
  require(control_rate_bps > 0, "control_rate_bps must be positive");
  require(data_rate_bps > 0, "data_rate_bps must be positive");
  require(difs_us < eifs(*this), "difs_us must be smaller than eifs");
  require(cw_min_slots > 0 && std::has_single_bit(cw_min_slots), "cw_min_slots must be a power of two");
  require(cw_max_slots > 0 && std::has_single_bit(cw_max_slots), "cw_max_slots must be a power of two");
  require(cw_min_slots <= cw_max_slots, "cw_min_slots must not exceed cw_max_slots");
  require(payload_bits > 0, "payload_bits must be positive");
  require(fragment_step_bits > 0, "fragment_step_bits must be positive");
  for (const auto r : mcs_rates_bps) {
    require(r > 0, "mcs_rates_bps entries must be positive");
  }
}

Micros tx_time(const TimingParams& p, FrameKind kind, std::uint32_t payload_bits, std::uint64_t rate_bps)
{
  switch (kind) {
  case FrameKind::Rts:
    return airtime_us(p.rts_bits, p.control_rate_bps);
  case FrameKind::Cts:
    return airtime_us(p.cts_bits, p.control_rate_bps);
  case FrameKind::Ack:
    return airtime_us(p.ack_bits, p.control_rate_bps);
  case FrameKind::Data: {
    const std::uint64_t data_rate = rate_bps == 0 ? p.data_rate_bps : rate_bps;
    // phy/control + (mac + payload)/data, summed exactly before rounding.
    const u128 num =
        (static_cast<u128>(p.phy_header_bits) * data_rate +
         static_cast<u128>(p.mac_header_bits + static_cast<std::uint64_t>(payload_bits)) *
             p.control_rate_bps) *
        1'000'000U;
    const u128 den = static_cast<u128>(p.control_rate_bps) * data_rate;
    return static_cast<Micros>((num + den - 1) / den);
  }
  case FrameKind::Beacon:
  case FrameKind::AssocRequest:
  case FrameKind::AssocResponse:
    return airtime_us(p.mac_header_bits + 16ULL, p.control_rate_bps);
  }
  return 0;
}

Micros rts_airtime(const TimingParams& p)
{
  return tx_time(p, FrameKind::Rts);
}

Micros cts_airtime(const TimingParams& p)
{
  return tx_time(p, FrameKind::Cts);
}

Micros ack_airtime(const TimingParams& p)
{
  return tx_time(p, FrameKind::Ack);
}

Micros rts_duration(const TimingParams& p, std::uint32_t payload_bits)
{
  return 3 * p.sifs_us + cts_airtime(p) + tx_time(p, FrameKind::Data, payload_bits) + ack_airtime(p);
}

Micros cts_duration(const TimingParams& p, Micros d0)
{
  const Micros d1 = d0 - (cts_airtime(p) + p.sifs_us);
  if (d1 < 0) {
    throw TimingError("RTS duration " + std::to_string(d0) + " us is shorter than CTS + SIFS");
  }
  return d1;
}

Micros first_tx_end(const TimingParams& p, Micros t1, Micros d0)
{
  return t1 + d0 - (p.sifs_us + ack_airtime(p));
}

Micros ack_deadline(const TimingParams& p, Micros t4)
{
  return t4 + p.sifs_us + ack_airtime(p);
}

Micros eifs(const TimingParams& p)
{
  return p.sifs_us + ack_airtime(p) + p.difs_us;
}

Micros legacy_ack_timeout(const TimingParams& p, Micros data_end)
{
  return data_end + p.sifs_us + ack_airtime(p) + p.slot_us;
}

Micros legacy_cts_timeout(const TimingParams& p, Micros rts_end)
{
  return rts_end + p.sifs_us + cts_airtime(p) + p.slot_us;
}

std::optional<TxSchedule> plan_second_tx_bfd(const TimingParams& p, Micros t2, Micros t4,
                                             std::uint32_t queue_head_bits,
                                             std::span<const std::uint64_t> mcs_options)
{
  const Micros start = t2 + p.sifs_us;
  if (start > t4) {
    return std::nullopt;
  }
  return first_fitting(p, queue_head_bits, mcs_options, [&](Micros t) -> std::optional<TxSchedule> {
    if (start + t <= t4) {
      return TxSchedule{start, start + t, 0, 0};
    }
    return std::nullopt;
  });
}

Micros ufd_start_time(const TimingParams& p, Micros t2, Micros t4, Micros t_est)
{
  const Micros window = t4 - (t2 + p.sifs_us);
  if (t_est <= 0) {
    throw TimingError("zero-length UFD second transmission");
  }
  if (t_est > window) {
    throw TimingError("UFD second transmission of " + std::to_string(t_est) + " us exceeds the " +
                      std::to_string(window) + " us window");
  }
  return t_est == window ? t2 + p.sifs_us : t4 - t_est;
}

std::optional<TxSchedule> plan_second_tx_ufd(const TimingParams& p, Micros t2, Micros t4,
                                             std::uint32_t payload_bits,
                                             std::span<const std::uint64_t> mcs_options)
{
  const Micros window = t4 - (t2 + p.sifs_us);
  if (window <= 0) {
    return std::nullopt;
  }
  return first_fitting(p, payload_bits, mcs_options, [&](Micros t) -> std::optional<TxSchedule> {
    if (t > 0 && t <= window) {
      const Micros ts = ufd_start_time(p, t2, t4, t);
      return TxSchedule{ts, t4, 0, 0};
    }
    return std::nullopt;
  });
}

}  // namespace strmac
