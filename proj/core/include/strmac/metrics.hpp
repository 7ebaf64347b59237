#pragma once

#include "strmac/observer.hpp"
#include "strmac/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace strmac {

/// ACKed payload bits split by the exchange they travelled in.
struct DeliveryTally {
  std::uint64_t hd_bits = 0;
  std::uint64_t bfd_first_bits = 0;
  std::uint64_t bfd_second_bits = 0;
  std::uint64_t ufd_first_bits = 0;
  std::uint64_t ufd_second_bits = 0;

  [[nodiscard]] std::uint64_t total() const
  {
    return hd_bits + bfd_first_bits + bfd_second_bits + ufd_first_bits + ufd_second_bits;
  }
  DeliveryTally& operator+=(const DeliveryTally& o);
};

/// Effective payload under FD efficiency eps:
///   HD + eps (BFD first + BFD second) + eps UFD first + UFD second
double effective_bits(const DeliveryTally& tally, double eps);

/// T_STR / T_L. nullopt when the legacy throughput is not positive.
std::optional<double> str_gain(double t_str_bps, double t_legacy_bps);

/// Jain index over f_i = w_i / eifs. All-zero or empty input gives 1.
double cui(std::span<const double> mean_waits_us, double eifs_us);

/// Per-run tallies.
class MetricsAccumulator {
public:
  explicit MetricsAccumulator(std::size_t node_count = 0);

  void record_delivery(NodeId node, ExchangeKind kind, bool second, std::uint32_t bits);
  /// `post_fd`: the first wait after the node took part in or overheard an
  /// FD exchange. Those samples feed the contention-unfairness index.
  void record_wait(NodeId node, Micros ifs_us, bool post_fd = false);
  void record_exchange(ExchangeKind kind);
  void record_retransmission(NodeId node);
  void record_drop(NodeId node);
  void record_fd_induced_eifs() { ++m_fd_induced_eifs; }

  [[nodiscard]] const DeliveryTally& tally() const { return m_tally; }
  [[nodiscard]] std::uint64_t delivered_bits(NodeId node) const { return m_node_bits.at(node.index()); }
  [[nodiscard]] std::uint64_t exchanges(ExchangeKind kind) const { return m_exchanges[static_cast<int>(kind)]; }
  [[nodiscard]] std::uint64_t retransmissions() const { return m_retransmissions; }
  [[nodiscard]] std::uint64_t drops() const { return m_drops; }
  [[nodiscard]] std::uint64_t fd_induced_eifs() const { return m_fd_induced_eifs; }
  [[nodiscard]] std::uint64_t wait_samples(NodeId node, bool post_fd = false) const;
  /// Mean interframe wait of the node, 0 without samples.
  [[nodiscard]] double mean_wait(NodeId node, bool post_fd = false) const;

  [[nodiscard]] double throughput_bps(Micros duration_us) const;
  [[nodiscard]] double goodput_bps(double eps, Micros duration_us) const;
  /// CUI over the given nodes; those without samples are skipped. By
  /// default over post-FD waits, otherwise over every contention wait.
  [[nodiscard]] double cui(std::span<const NodeId> nodes, Micros eifs_us, bool post_fd = true) const;

private:
  DeliveryTally m_tally;
  std::vector<std::uint64_t> m_node_bits;
  std::vector<double> m_wait_sum[2];
  std::vector<std::uint64_t> m_wait_count[2];
  std::uint64_t m_exchanges[3] = {0, 0, 0};
  std::uint64_t m_retransmissions = 0;
  std::uint64_t m_drops = 0;
  std::uint64_t m_fd_induced_eifs = 0;
};

}  // namespace strmac
