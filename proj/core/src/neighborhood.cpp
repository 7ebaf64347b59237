#include "strmac/neighborhood.hpp"

#include "strmac/frames.hpp"

#include <algorithm>

namespace strmac {

CapabilityView discover_capabilities(const Deployment& deployment)
{
  CapabilityView view;
  view.knows_ap_fd.assign(deployment.size(), false);
  view.registry_fd.assign(deployment.size(), false);
  auto parse = [](const NodeInfo& at, const BitString& bits) {
    return at.is_fd() ? decode(bits) : decode_legacy(bits);
  };
  for (const NodeInfo& ap : deployment.aps()) {
    view.knows_ap_fd[ap.id.index()] = ap.is_fd();
    const BitString beacon = encode(make_beacon(ap.id, ap.is_fd()));
    for (const NodeId sta_id : deployment.stas_of(ap.id)) {
      const NodeInfo& sta = deployment.node(sta_id);
      view.knows_ap_fd[sta_id.index()] = parse(sta, beacon).capability.fd_capable();
      const BitString request = encode(make_assoc_request(sta_id, ap.id, sta.is_fd()));
      view.registry_fd[sta_id.index()] = parse(ap, request).capability.fd_capable();
    }
  }
  return view;
}

EligibilityMatrix::EligibilityMatrix(std::vector<NodeId> members,
                                     const std::vector<std::optional<std::vector<NodeId>>>& tables)
    : m_members(std::move(members))
{
  const std::size_t n = m_members.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m_members[a] < m_members[b]; });
  std::vector<NodeId> sorted(n);
  m_known.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = m_members[order[i]];
    m_known[i] = tables.at(order[i]).has_value();
  }
  m_members = std::move(sorted);

  // neighbor[i][j]: i overheard j
  std::vector<bool> neighbor(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& table = tables[order[i]];
    if (!table) {
      continue;
    }
    for (const NodeId other : *table) {
      if (const auto j = slot(other)) {
        neighbor[i * n + *j] = true;
      }
    }
  }
  m_bits.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m_bits[i * n + j] = i != j && m_known[i] && m_known[j] && !neighbor[i * n + j] && !neighbor[j * n + i];
    }
  }
}

std::optional<std::size_t> EligibilityMatrix::slot(NodeId sta) const
{
  const auto it = std::lower_bound(m_members.begin(), m_members.end(), sta);
  if (it == m_members.end() || *it != sta) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - m_members.begin());
}

bool EligibilityMatrix::known(NodeId sta) const
{
  const auto i = slot(sta);
  return i && m_known[*i];
}

bool EligibilityMatrix::eligible(NodeId a, NodeId b) const
{
  const auto i = slot(a);
  const auto j = slot(b);
  return i && j && m_bits[*i * m_members.size() + *j];
}

EligibilityMatrix neighborhood_init_phase(const Channel& channel, NodeId ap, Rng& probe_rng, std::uint32_t retries)
{
  const std::vector<NodeId> members = channel.deployment().stas_of(ap);
  const ChannelParams& cp = channel.params();
  std::vector<std::vector<NodeId>> overheard(members.size());
  std::vector<bool> answered(members.size(), false);

  auto link_ok = [&](NodeId tx, NodeId rx) {
    double s = channel.mean_rx_mw(tx, rx);
    if (cp.rayleigh_fading) {
      s *= probe_rng.exponential();
    }
    return s >= channel.threshold_linear() * channel.noise_mw();
  };

  for (std::size_t i = 0; i < members.size(); ++i) {
    const NodeId sta = members[i];
    bool cts_sent = false;
    for (std::uint32_t attempt = 0; attempt <= retries && !answered[i]; ++attempt) {
      if (!link_ok(ap, sta)) {
        continue;
      }
      cts_sent = true;
      answered[i] = link_ok(sta, ap);
    }
    if (!cts_sent) {
      continue;
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j != i && channel.distance(members[j], sta) <= cp.cs_range_sta_m) {
        overheard[j].push_back(sta);
      }
    }
  }

  std::vector<std::optional<std::vector<NodeId>>> tables(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (answered[i]) {
      tables[i] = std::move(overheard[i]);
    }
  }
  return EligibilityMatrix(members, tables);
}

}  // namespace strmac
