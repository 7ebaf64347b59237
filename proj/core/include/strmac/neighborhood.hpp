#pragma once

#include "strmac/channel.hpp"
#include "strmac/rng.hpp"
#include "strmac/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace strmac {

/// What each side learned from beacons and association requests.
struct CapabilityView {
  std::vector<bool> knows_ap_fd;  ///< by node index; meaningful for STAs
  std::vector<bool> registry_fd;  ///< by node index; the AP's record of each STA
};

/// Runs the beacon / association-request exchange of every cell through the
/// frame codec. FD nodes decode the reserved bits, HD nodes use the legacy
/// decoder and therefore never learn (or advertise) FD capability.
CapabilityView discover_capabilities(const Deployment& deployment);

/// AP-side view of which pairs of its STAs may share a UFD exchange.
class EligibilityMatrix {
public:
  EligibilityMatrix() = default;
  /// `tables[i]` is the overheard-neighbor table of `members[i]`, or nullopt
  /// when its neighborhood is unknown.
  EligibilityMatrix(std::vector<NodeId> members, const std::vector<std::optional<std::vector<NodeId>>>& tables);

  [[nodiscard]] std::span<const NodeId> members() const { return m_members; }
  [[nodiscard]] bool known(NodeId sta) const;
  /// Symmetric, false on the diagonal and for non-members.
  [[nodiscard]] bool eligible(NodeId a, NodeId b) const;

private:
  [[nodiscard]] std::optional<std::size_t> slot(NodeId sta) const;

  std::vector<NodeId> m_members;  // ascending
  std::vector<bool> m_known;
  std::vector<bool> m_bits;  // row-major members x members
};

/// Sequential AP RTS -> STA CTS probes over the cell. Each probe succeeds
/// when both frames clear the SINR threshold against noise (with a fading
/// draw when enabled); a lost probe is retried up to `retries` times and
/// then leaves that STA's neighborhood unknown. Every cell member within
/// cs_range_sta_m of a responding STA records it.
EligibilityMatrix neighborhood_init_phase(const Channel& channel, NodeId ap, Rng& probe_rng,
                                          std::uint32_t retries = 3);

}  // namespace strmac
