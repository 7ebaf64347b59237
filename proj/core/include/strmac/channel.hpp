#pragma once

#include "strmac/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strmac {

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

struct NodeInfo {
  NodeId id;
  Role role = Role::Sta;
  Position pos;
  Duplex duplex = Duplex::Half;
  NodeId ap = kBroadcast;  ///< Associated AP (STAs); the AP itself for APs.

  [[nodiscard]] bool is_ap() const { return role == Role::Ap; }
  [[nodiscard]] bool is_fd() const { return duplex == Duplex::Full; }
};

struct DeploymentParams {
  double width_m = 800.0;
  double height_m = 800.0;
  double ap_density = 1.5e-4;   ///< per m^2
  double sta_density = 3e-3;    ///< per m^2, FD and HD STAs together
  double fd_fraction = 0.0;     ///< share of STAs that are FD capable
  bool ap_fd = true;

  void validate() const;
};

/// Node population. APs occupy ids [0, ap_count), STAs follow.
class Deployment {
public:
  Deployment() = default;
  Deployment(std::vector<NodeInfo> nodes, double width_m, double height_m);

  [[nodiscard]] std::span<const NodeInfo> nodes() const { return m_nodes; }
  [[nodiscard]] std::span<const NodeInfo> aps() const { return {m_nodes.data(), m_ap_count}; }
  [[nodiscard]] std::span<const NodeInfo> stas() const
  {
    return {m_nodes.data() + m_ap_count, m_nodes.size() - m_ap_count};
  }
  [[nodiscard]] const NodeInfo& node(NodeId id) const { return m_nodes.at(id.index()); }
  [[nodiscard]] std::size_t size() const { return m_nodes.size(); }
  [[nodiscard]] std::size_t ap_count() const { return m_ap_count; }
  [[nodiscard]] double width() const { return m_width; }
  [[nodiscard]] double height() const { return m_height; }

  /// STAs associated with `ap`, ascending id.
  [[nodiscard]] std::vector<NodeId> stas_of(NodeId ap) const;

  void set_association(NodeId sta, NodeId ap);
  void set_duplex(NodeId id, Duplex duplex);

private:
  std::vector<NodeInfo> m_nodes;
  std::size_t m_ap_count = 0;
  double m_width = 0.0;
  double m_height = 0.0;
};

struct ChannelParams {
  double tx_power_ap_dbm = 40.0;
  double tx_power_sta_dbm = 30.0;
  double path_loss_exponent = 3.5;
  double reference_loss_db = 46.7;  ///< at 1 m
  double noise_dbm = -95.0;         ///< 20 MHz
  double sinr_threshold_db = 0.0;
  bool rayleigh_fading = true;
  double tx_range_ap_m = 80.0;
  double tx_range_sta_m = 20.0;
  double cs_range_ap_m = 80.0;   ///< sensing range of AP transmissions
  double cs_range_sta_m = 40.0;  ///< sensing range of STA transmissions
  double rsi_delta_db = 38.0;
  double rsi_chi_db = 13.0;
  double rho = 0.75;  ///< self-interference cancellation capability, (0, 1]

  void validate() const;

  [[nodiscard]] double tx_power_dbm(Role role) const { return role == Role::Ap ? tx_power_ap_dbm : tx_power_sta_dbm; }
  [[nodiscard]] double tx_range_m(Role role) const { return role == Role::Ap ? tx_range_ap_m : tx_range_sta_m; }
  [[nodiscard]] double cs_range_m(Role role) const { return role == Role::Ap ? cs_range_ap_m : cs_range_sta_m; }
};

/// Floor returned for a zero fading draw instead of -inf.
inline constexpr double kPowerFloorDbm = -300.0;

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Poisson node counts over the area, uniform positions, Bernoulli FD labels.
/// Deterministic in (params, seed); FD labels come from their own stream so
/// that sweeping fd_fraction never moves a node. Associates every STA.
Deployment generate_deployment(const DeploymentParams& params, const ChannelParams& channel, std::uint64_t seed);

/// Maps every STA to the AP with the largest mean (fading-free) received power.
void associate(Deployment& deployment, const ChannelParams& channel);

/// Log-distance path loss; distances below 1 m are clamped to 1 m.
double path_loss_db(const ChannelParams& p, double distance_m);

/// P_tx - PL(d) + 10 log10(fading).
double rx_power_dbm(const ChannelParams& p, double tx_power_dbm, double distance_m, double fading = 1.0);

/// Residual self-interference of an FD node transmitting at `tx_power_dbm`:
///   noise + (1 - rho) * (P_tx - noise) - (delta + chi)   [dBm]
/// Increasing in the transmit power, decreasing in rho.
double rsi_power_dbm(const ChannelParams& p, double tx_power_dbm);

/// SINR test, inclusive at the threshold. All powers in dBm.
bool reception_succeeds(const ChannelParams& p, double signal_dbm, std::span<const double> interferers_dbm,
                        std::optional<double> rsi_dbm = std::nullopt);

/// A node within sensing range of a transmitter.
struct Listener {
  NodeId node;
  bool decodes;  ///< within the transmitter's transmission range
};

/// Geometry and link budgets precomputed for one deployment.
class Channel {
public:
  Channel(const Deployment& deployment, const ChannelParams& params);

  [[nodiscard]] const ChannelParams& params() const { return m_params; }
  [[nodiscard]] const Deployment& deployment() const { return *m_deployment; }
  [[nodiscard]] std::size_t size() const { return m_n; }

  [[nodiscard]] double distance(NodeId a, NodeId b) const;
  /// Mean received power in mW, fading excluded.
  [[nodiscard]] double mean_rx_mw(NodeId tx, NodeId rx) const
  {
    return m_tx_mw[tx.index()] * static_cast<double>(m_gain[tx.index() * m_n + rx.index()]);
  }
  [[nodiscard]] double noise_mw() const { return m_noise_mw; }
  [[nodiscard]] double threshold_linear() const { return m_threshold; }
  [[nodiscard]] double rsi_mw(NodeId node) const { return m_rsi_mw[node.index()]; }

  /// Protocol-model sensing: `listener` hears `transmitter` if it is within
  /// the sensing range of the transmitter's class, or if the two share an
  /// association link.
  [[nodiscard]] bool senses(NodeId listener, NodeId transmitter) const;
  [[nodiscard]] std::span<const Listener> listeners(NodeId transmitter) const { return m_listeners[transmitter.index()]; }

  [[nodiscard]] bool carrier_sensed_busy(NodeId node, std::span<const NodeId> active_transmitters) const;

  /// STAs within cs_range_sta_m of `sta` (same-class sensing, symmetric).
  [[nodiscard]] std::vector<NodeId> interference_neighbors(NodeId sta) const;

private:
  const Deployment* m_deployment;
  ChannelParams m_params;
  std::size_t m_n;
  std::vector<double> m_tx_mw;
  std::vector<float> m_gain;  // row-major [tx][rx] linear path gain
  std::vector<double> m_rsi_mw;
  std::vector<std::vector<Listener>> m_listeners;
  double m_noise_mw;
  double m_threshold;
};

class DeploymentIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// CSV with header `id,kind,x,y,fd_capable,associated_ap`.
void write_deployment_csv(std::ostream& os, const Deployment& deployment);
Deployment read_deployment_csv(std::istream& is, double width_m = 800.0, double height_m = 800.0);

}  // namespace strmac
