#include "strmac/metrics.hpp"

#include <stdexcept>

namespace strmac {

DeliveryTally& DeliveryTally::operator+=(const DeliveryTally& o)
{
  hd_bits += o.hd_bits;
  bfd_first_bits += o.bfd_first_bits;
  bfd_second_bits += o.bfd_second_bits;
  ufd_first_bits += o.ufd_first_bits;
  ufd_second_bits += o.ufd_second_bits;
  return *this;
}

double effective_bits(const DeliveryTally& t, double eps)
{
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("FD efficiency must lie in [0, 1]");
  }
  return static_cast<double>(t.hd_bits) +
         eps * static_cast<double>(t.bfd_first_bits + t.bfd_second_bits) +
         eps * static_cast<double>(t.ufd_first_bits) + static_cast<double>(t.ufd_second_bits);
}

std::optional<double> str_gain(double t_str_bps, double t_legacy_bps)
{
  if (!(t_legacy_bps > 0.0)) {
    return std::nullopt;
  }
  return t_str_bps / t_legacy_bps;
}

double cui(std::span<const double> mean_waits_us, double eifs_us)
{
  if (!(eifs_us > 0.0)) {
    throw std::invalid_argument("EIFS must be positive");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double w : mean_waits_us) {
    const double f = w / eifs_us;
    sum += f;
    sum_sq += f * f;
  }
  if (mean_waits_us.empty() || sum_sq == 0.0) {
    return 1.0;
  }
  return sum * sum / (static_cast<double>(mean_waits_us.size()) * sum_sq);
}

MetricsAccumulator::MetricsAccumulator(std::size_t node_count)
    : m_node_bits(node_count, 0)
{
  for (int i = 0; i < 2; ++i) {
    m_wait_sum[i].assign(node_count, 0.0);
    m_wait_count[i].assign(node_count, 0);
  }
}

void MetricsAccumulator::record_delivery(NodeId node, ExchangeKind kind, bool second, std::uint32_t bits)
{
  m_node_bits.at(node.index()) += bits;
  switch (kind) {
  case ExchangeKind::Hd:
    m_tally.hd_bits += bits;
    break;
  case ExchangeKind::Bfd:
    (second ? m_tally.bfd_second_bits : m_tally.bfd_first_bits) += bits;
    break;
  case ExchangeKind::Ufd:
    (second ? m_tally.ufd_second_bits : m_tally.ufd_first_bits) += bits;
    break;
  }
}

void MetricsAccumulator::record_wait(NodeId node, Micros ifs_us, bool post_fd)
{
  m_wait_sum[0].at(node.index()) += static_cast<double>(ifs_us);
  ++m_wait_count[0][node.index()];
  if (post_fd) {
    m_wait_sum[1][node.index()] += static_cast<double>(ifs_us);
    ++m_wait_count[1][node.index()];
  }
}

std::uint64_t MetricsAccumulator::wait_samples(NodeId node, bool post_fd) const
{
  return m_wait_count[post_fd ? 1 : 0].at(node.index());
}

void MetricsAccumulator::record_exchange(ExchangeKind kind) { ++m_exchanges[static_cast<int>(kind)]; }

void MetricsAccumulator::record_retransmission(NodeId node)
{
  (void)node;
  ++m_retransmissions;
}

void MetricsAccumulator::record_drop(NodeId node)
{
  (void)node;
  ++m_drops;
}

double MetricsAccumulator::mean_wait(NodeId node, bool post_fd) const
{
  const int set = post_fd ? 1 : 0;
  const std::uint64_t n = m_wait_count[set].at(node.index());
  return n == 0 ? 0.0 : m_wait_sum[set][node.index()] / static_cast<double>(n);
}

double MetricsAccumulator::throughput_bps(Micros duration_us) const
{
  if (duration_us <= 0) {
    throw std::invalid_argument("duration must be positive");
  }
  return static_cast<double>(m_tally.total()) * 1e6 / static_cast<double>(duration_us);
}

double MetricsAccumulator::goodput_bps(double eps, Micros duration_us) const
{
  if (duration_us <= 0) {
    throw std::invalid_argument("duration must be positive");
  }
  return effective_bits(m_tally, eps) * 1e6 / static_cast<double>(duration_us);
}

double MetricsAccumulator::cui(std::span<const NodeId> nodes, Micros eifs_us, bool post_fd) const
{
  std::vector<double> waits;
  waits.reserve(nodes.size());
  for (const NodeId n : nodes) {
    if (wait_samples(n, post_fd) > 0) {
      waits.push_back(mean_wait(n, post_fd));
    }
  }
  return strmac::cui(waits, static_cast<double>(eifs_us));
}

}  // namespace strmac
