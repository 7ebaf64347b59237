#pragma once

#include "strmac/engine.hpp"
#include "strmac/metrics.hpp"
#include "strmac/neighborhood.hpp"
#include "strmac/timing.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace strmac {

/// How an FD AP chooses between BFD and UFD when answering an RTS.
enum class StrPolicy : std::uint8_t { PreferBfd, PreferUfd, Alternate, BfdOnly, UfdOnly };

/// Contention-unfairness mitigation.
enum class Mitigation : std::uint8_t { None, CtsFdAware, Fdti };

const char* to_string(StrPolicy policy);
const char* to_string(Mitigation mitigation);
std::optional<StrPolicy> parse_policy(std::string_view text);
std::optional<Mitigation> parse_mitigation(std::string_view text);

struct MacConfig {
  /// false: every node runs plain DCF regardless of its hardware.
  bool str_enabled = true;
  /// false: basic access, data sent right after backoff without RTS/CTS.
  bool use_rts = true;
  StrPolicy policy = StrPolicy::PreferBfd;
  Mitigation mitigation = Mitigation::None;
  std::uint32_t probe_retries = 3;
  /// Period of the neighborhood refresh, 0 = only at start-up.
  Micros neighborhood_refresh_us = 0;
};

enum class RtsResponse : std::uint8_t { Cts, Bfd, Ufd };

struct RtsContext {
  bool str_enabled = true;
  bool ap_fd = false;
  bool sender_fd = false;         ///< per the AP's capability registry
  bool bfd_feasible = false;      ///< data for the sender fits the BFD window
  bool ufd_feasible = false;      ///< an eligible receiver exists and its data fits
  StrPolicy policy = StrPolicy::PreferBfd;
  bool alternate_turn_ufd = false;  ///< for Alternate: which mode is preferred this time
};

/// AP decision on an incoming RTS. Falls back to a plain CTS whenever the
/// preferred FD mode is not available.
RtsResponse decide_rts_response(const RtsContext& ctx);

/// Least-recently-served candidate eligible with `sender`; ties go to the
/// lowest id. `last_served` is indexed by node; smaller means longer ago.
std::optional<NodeId> select_ufd_receiver(std::span<const NodeId> candidates, NodeId sender,
                                          const EligibilityMatrix& eligibility,
                                          std::span<const std::uint64_t> last_served);

/// Builds one MAC per deployed node. Capability discovery and the initial
/// neighborhood phase run here; the returned nodes share that state.
std::vector<std::unique_ptr<MacNode>> make_str_macs(Simulator& sim, const TimingParams& timing,
                                                    const MacConfig& config, MetricsAccumulator& metrics,
                                                    std::uint64_t seed);

}  // namespace strmac
