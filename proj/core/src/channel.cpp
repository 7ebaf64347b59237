#include "strmac/channel.hpp"

#include "strmac/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace strmac {

double distance(Position a, Position b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

double dbm_to_mw(double dbm)
{
  return std::pow(10.0, dbm / 10.0);
}

double mw_to_dbm(double mw)
{
  return mw > 0.0 ? 10.0 * std::log10(mw) : kPowerFloorDbm;
}

void DeploymentParams::validate() const
{
  if (!(width_m > 0.0) || !(height_m > 0.0)) {
    throw std::invalid_argument("area dimensions must be positive");
  }
  if (ap_density < 0.0 || sta_density < 0.0) {
    throw std::invalid_argument("densities must be non-negative");
  }
  if (fd_fraction < 0.0 || fd_fraction > 1.0) {
    throw std::invalid_argument("fd_fraction must lie in [0, 1]");
  }
}

void ChannelParams::validate() const
{
  if (!(tx_range_ap_m > 0.0) || !(tx_range_sta_m > 0.0) || !(cs_range_ap_m > 0.0) || !(cs_range_sta_m > 0.0)) {
    throw std::invalid_argument("transmission and sensing ranges must be positive");
  }
  if (!(rho > 0.0) || rho > 1.0) {
    throw std::invalid_argument("rho must lie in (0, 1]");
  }
  if (!std::isfinite(sinr_threshold_db)) {
    throw std::invalid_argument("sinr_threshold_db must be finite");
  }
  if (!(path_loss_exponent > 0.0)) {
    throw std::invalid_argument("path_loss_exponent must be positive");
  }
}

Deployment::Deployment(std::vector<NodeInfo> nodes, double width_m, double height_m)
    : m_nodes(std::move(nodes)), m_width(width_m), m_height(height_m)
{
  for (std::size_t i = 0; i < m_nodes.size(); ++i) {
    if (m_nodes[i].id.value != i) {
      throw std::invalid_argument("deployment node ids must be dense and ordered");
    }
    if (m_nodes[i].is_ap()) {
      if (i != m_ap_count) {
        throw std::invalid_argument("APs must precede STAs in a deployment");
      }
      ++m_ap_count;
      m_nodes[i].ap = m_nodes[i].id;
    }
  }
}

std::vector<NodeId> Deployment::stas_of(NodeId ap) const
{
  std::vector<NodeId> out;
  for (const auto& sta : stas()) {
    if (sta.ap == ap) {
      out.push_back(sta.id);
    }
  }
  return out;
}

void Deployment::set_association(NodeId sta, NodeId ap)
{
  auto& info = m_nodes.at(sta.index());
  if (info.is_ap() || !node(ap).is_ap()) {
    throw std::invalid_argument("association must map a STA to an AP");
  }
  info.ap = ap;
}

void Deployment::set_duplex(NodeId id, Duplex duplex)
{
  m_nodes.at(id.index()).duplex = duplex;
}

Deployment generate_deployment(const DeploymentParams& params, const ChannelParams& channel, std::uint64_t seed)
{
  params.validate();
  const double area = params.width_m * params.height_m;
  Rng rng(derive_seed(seed, Stream::Deployment));

  std::uint64_t ap_count = 0;
  for (int attempt = 0;; ++attempt) {
    ap_count = rng.poisson(params.ap_density * area);
    if (ap_count > 0) {
      break;
    }
    if (params.ap_density <= 0.0 || attempt > 1000) {
      throw std::invalid_argument("deployment needs at least one AP; ap_density is too small");
    }
    std::clog << "strmac: drew zero APs for seed " << seed << ", resampling\n";
  }
  const std::uint64_t sta_count = rng.poisson(params.sta_density * area);

  std::vector<NodeInfo> nodes;
  nodes.reserve(ap_count + sta_count);
  auto place = [&] { return Position{rng.uniform() * params.width_m, rng.uniform() * params.height_m}; };
  for (std::uint64_t i = 0; i < ap_count; ++i) {
    const NodeId id{static_cast<std::uint32_t>(nodes.size())};
    nodes.push_back({id, Role::Ap, place(), params.ap_fd ? Duplex::Full : Duplex::Half, id});
  }
  Rng labels(derive_seed(seed, Stream::FdLabels));
  for (std::uint64_t i = 0; i < sta_count; ++i) {
    const NodeId id{static_cast<std::uint32_t>(nodes.size())};
    const Position pos = place();
    const bool fd = labels.uniform() < params.fd_fraction;
    nodes.push_back({id, Role::Sta, pos, fd ? Duplex::Full : Duplex::Half, kBroadcast});
  }
  Deployment d(std::move(nodes), params.width_m, params.height_m);
  associate(d, channel);
  return d;
}

double path_loss_db(const ChannelParams& p, double distance_m)
{
  const double d = std::max(distance_m, 1.0);
  return p.reference_loss_db + 10.0 * p.path_loss_exponent * std::log10(d);
}

double rx_power_dbm(const ChannelParams& p, double tx_power_dbm, double distance_m, double fading)
{
  if (!(fading > 0.0)) {
    return kPowerFloorDbm;
  }
  return std::max(tx_power_dbm - path_loss_db(p, distance_m) + 10.0 * std::log10(fading), kPowerFloorDbm);
}

void associate(Deployment& deployment, const ChannelParams& channel)
{
  const auto aps = deployment.aps();
  if (aps.empty()) {
    throw std::invalid_argument("association needs at least one AP");
  }
  std::vector<std::pair<NodeId, NodeId>> links;
  for (const auto& sta : deployment.stas()) {
    NodeId best = aps.front().id;
    double best_dbm = -std::numeric_limits<double>::infinity();
    for (const auto& ap : aps) {
      const double p = rx_power_dbm(channel, channel.tx_power_ap_dbm, distance(ap.pos, sta.pos));
      if (p > best_dbm) {
        best_dbm = p;
        best = ap.id;
      }
    }
    links.emplace_back(sta.id, best);
  }
  for (const auto& [sta, ap] : links) {
    deployment.set_association(sta, ap);
  }
}

double rsi_power_dbm(const ChannelParams& p, double tx_power_dbm)
{
  return p.noise_dbm + (1.0 - p.rho) * (tx_power_dbm - p.noise_dbm) - (p.rsi_delta_db + p.rsi_chi_db);
}

bool reception_succeeds(const ChannelParams& p, double signal_dbm, std::span<const double> interferers_dbm,
                        std::optional<double> rsi_dbm)
{
  double denom = dbm_to_mw(p.noise_dbm);
  for (const double i : interferers_dbm) {
    denom += dbm_to_mw(i);
  }
  if (rsi_dbm) {
    denom += dbm_to_mw(*rsi_dbm);
  }
  const double sinr_db = signal_dbm - mw_to_dbm(denom);
  // Compare in dB with a tolerance far below any meaningful power step so
  // that S/N exactly at the threshold counts as a success.
  return sinr_db >= p.sinr_threshold_db - 1e-9;
}

Channel::Channel(const Deployment& deployment, const ChannelParams& params)
    : m_deployment(&deployment), m_params(params), m_n(deployment.size())
{
  params.validate();
  m_noise_mw = dbm_to_mw(params.noise_dbm);
  m_threshold = dbm_to_mw(params.sinr_threshold_db);
  const auto nodes = deployment.nodes();

  m_tx_mw.resize(m_n);
  m_rsi_mw.resize(m_n);
  for (std::size_t i = 0; i < m_n; ++i) {
    const double p = params.tx_power_dbm(nodes[i].role);
    m_tx_mw[i] = dbm_to_mw(p);
    m_rsi_mw[i] = nodes[i].is_fd() ? dbm_to_mw(rsi_power_dbm(params, p)) : 0.0;
  }

  m_gain.assign(m_n * m_n, 0.0F);
  const double ref = std::pow(10.0, -params.reference_loss_db / 10.0);
  const double half_exp = params.path_loss_exponent / 2.0;
  m_listeners.resize(m_n);
  for (std::size_t a = 0; a < m_n; ++a) {
    m_gain[a * m_n + a] = 1.0F;
    for (std::size_t b = a + 1; b < m_n; ++b) {
      const double dx = nodes[a].pos.x - nodes[b].pos.x;
      const double dy = nodes[a].pos.y - nodes[b].pos.y;
      const double d2 = std::max(dx * dx + dy * dy, 1.0);
      const auto g = static_cast<float>(ref * std::pow(d2, -half_exp));
      m_gain[a * m_n + b] = g;
      m_gain[b * m_n + a] = g;
    }
  }
  for (std::size_t t = 0; t < m_n; ++t) {
    const NodeId tx{static_cast<std::uint32_t>(t)};
    const double tx_range = params.tx_range_m(nodes[t].role);
    for (std::size_t l = 0; l < m_n; ++l) {
      if (l == t) {
        continue;
      }
      const NodeId listener{static_cast<std::uint32_t>(l)};
      if (senses(listener, tx)) {
        m_listeners[t].push_back({listener, strmac::distance(nodes[t].pos, nodes[l].pos) <= tx_range});
      }
    }
  }
}

double Channel::distance(NodeId a, NodeId b) const
{
  return strmac::distance(m_deployment->node(a).pos, m_deployment->node(b).pos);
}

bool Channel::senses(NodeId listener, NodeId transmitter) const
{
  if (listener == transmitter) {
    return false;
  }
  const auto& t = m_deployment->node(transmitter);
  const auto& l = m_deployment->node(listener);
  if ((!t.is_ap() && t.ap == listener) || (!l.is_ap() && l.ap == transmitter)) {
    return true;
  }
  return strmac::distance(t.pos, l.pos) <= m_params.cs_range_m(t.role);
}

bool Channel::carrier_sensed_busy(NodeId node, std::span<const NodeId> active_transmitters) const
{
  return std::any_of(active_transmitters.begin(), active_transmitters.end(),
                     [&](NodeId t) { return senses(node, t); });
}

std::vector<NodeId> Channel::interference_neighbors(NodeId sta) const
{
  std::vector<NodeId> out;
  const auto& self = m_deployment->node(sta);
  for (const auto& other : m_deployment->stas()) {
    if (other.id != sta && strmac::distance(self.pos, other.pos) <= m_params.cs_range_sta_m) {
      out.push_back(other.id);
    }
  }
  return out;
}

}  // namespace strmac
