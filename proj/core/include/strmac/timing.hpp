#pragma once

#include "strmac/frames.hpp"
#include "strmac/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace strmac {

/// Interframe spaces, rates and frame sizes. Defaults are the evaluation
/// values of the STR study (20 MHz, 1 Mbps control, 54 Mbps data).
struct TimingParams {
  Micros sifs_us = 10;
  Micros difs_us = 50;
  Micros slot_us = 20;
  std::uint64_t control_rate_bps = 1'000'000;
  std::uint64_t data_rate_bps = 54'000'000;
  std::uint32_t mac_header_bits = 272;
  std::uint32_t phy_header_bits = 128;
  std::uint32_t rts_bits = 288;
  std::uint32_t cts_bits = 240;
  std::uint32_t ack_bits = 240;
  std::uint32_t payload_bits = 10'000;
  std::uint32_t cw_min_slots = 32;
  std::uint32_t cw_max_slots = 1024;
  std::uint32_t retry_limit = 7;
  /// Data rates the second-transmission planner may pick from. Empty means
  /// data_rate_bps only.
  std::vector<std::uint64_t> mcs_rates_bps;
  /// Payload shrink step when the second transmission has to be fragmented.
  std::uint32_t fragment_step_bits = 100;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

class TimingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Planned second transmission of an FD exchange.
struct TxSchedule {
  Micros t_start = 0;
  Micros t_end = 0;
  std::uint32_t payload_bits = 0;
  std::uint64_t mcs_rate_bps = 0;

  bool operator==(const TxSchedule&) const = default;
};

/// Airtime of a frame, rounded up to whole microseconds. Control frames are
/// sent entirely at the control rate; data frames carry a PHY header at the
/// control rate and MAC header plus payload at `rate_bps` (0 = data_rate_bps).
Micros tx_time(const TimingParams& p, FrameKind kind, std::uint32_t payload_bits = 0, std::uint64_t rate_bps = 0);

Micros rts_airtime(const TimingParams& p);
Micros cts_airtime(const TimingParams& p);
Micros ack_airtime(const TimingParams& p);

/// Duration field of an RTS: 3 SIFS + CTS + DATA + ACK.
Micros rts_duration(const TimingParams& p, std::uint32_t payload_bits);
inline Micros rts_duration(const TimingParams& p) { return rts_duration(p, p.payload_bits); }

/// Duration field of a CTS answering an RTS that advertised `d0`.
/// Throws TimingError when d0 cannot cover CTS + SIFS.
Micros cts_duration(const TimingParams& p, Micros d0);

/// End of the first data transmission, given the RTS end time t1.
Micros first_tx_end(const TimingParams& p, Micros t1, Micros d0);

/// ACK deadline of the two nodes engaged in an FD exchange: t4 + SIFS + ACK.
Micros ack_deadline(const TimingParams& p, Micros t4);

/// Extended interframe space: SIFS + ACK at the control rate + DIFS.
Micros eifs(const TimingParams& p);

/// Legacy deadlines: response airtime + SIFS + one slot after the frame end.
Micros legacy_ack_timeout(const TimingParams& p, Micros data_end);
Micros legacy_cts_timeout(const TimingParams& p, Micros rts_end);

/// BFD second transmission: starts at t2 + SIFS and must end at or before t4.
/// Picks the largest payload prefix of the head-of-line packet (shrinking in
/// fragment_step_bits) and, for it, the fastest rate. nullopt means fall back
/// to a plain CTS.
std::optional<TxSchedule> plan_second_tx_bfd(const TimingParams& p, Micros t2, Micros t4,
                                             std::uint32_t queue_head_bits,
                                             std::span<const std::uint64_t> mcs_options = {});

/// Start time of a UFD second transmission lasting `t_est` so that it ends at t4.
/// Throws TimingError if t_est exceeds the window or is zero.
Micros ufd_start_time(const TimingParams& p, Micros t2, Micros t4, Micros t_est);

/// UFD second transmission: always ends exactly at t4, delaying the start
/// when the transmission is shorter than the window.
std::optional<TxSchedule> plan_second_tx_ufd(const TimingParams& p, Micros t2, Micros t4,
                                             std::uint32_t payload_bits,
                                             std::span<const std::uint64_t> mcs_options = {});

}  // namespace strmac
