#include "strmac/simulation.hpp"

#include <stdexcept>

namespace strmac {

void SimConfig::validate() const
{
  timing.validate();
  channel.validate();
  deployment.validate();
  if (duration_us <= 0) {
    throw std::invalid_argument("duration_us must be positive");
  }
}

double RunResult::throughput_bps() const
{
  return static_cast<double>(tally.total()) * 1e6 / static_cast<double>(duration_us);
}

double RunResult::goodput_bps(double eps) const
{
  return effective_bits(tally, eps) * 1e6 / static_cast<double>(duration_us);
}

SimConfig legacy_arm(const SimConfig& config)
{
  SimConfig legacy = config;
  legacy.mac.str_enabled = false;
  return legacy;
}

Deployment make_deployment(const SimConfig& config, std::uint64_t seed)
{
  Deployment dep = generate_deployment(config.deployment, config.channel, seed);
  if (!config.mac.str_enabled) {
    for (const NodeInfo& n : dep.nodes()) {
      dep.set_duplex(n.id, Duplex::Half);
    }
  }
  return dep;
}

RunResult run_on_deployment(const SimConfig& config, const Deployment& deployment, std::uint64_t seed,
                            SimObserver* observer, TraceSink* trace)
{
  config.validate();
  Deployment dep = deployment;
  if (!config.mac.str_enabled) {
    for (const NodeInfo& n : dep.nodes()) {
      dep.set_duplex(n.id, Duplex::Half);
    }
  }
  const Channel channel(dep, config.channel);
  Simulator sim(channel, seed);
  MetricsAccumulator metrics(dep.size());
  sim.attach(make_str_macs(sim, config.timing, config.mac, metrics, seed));
  sim.set_observer(observer);
  sim.set_trace(trace);
  sim.run(config.duration_us);

  RunResult r;
  r.duration_us = config.duration_us;
  r.ap_count = dep.ap_count();
  r.sta_count = dep.size() - dep.ap_count();
  r.tally = metrics.tally();
  r.exchanges_hd = metrics.exchanges(ExchangeKind::Hd);
  r.exchanges_bfd = metrics.exchanges(ExchangeKind::Bfd);
  r.exchanges_ufd = metrics.exchanges(ExchangeKind::Ufd);
  r.retransmissions = metrics.retransmissions();
  r.drops = metrics.drops();
  r.fd_induced_eifs = metrics.fd_induced_eifs();
  std::vector<NodeId> stas;
  stas.reserve(r.sta_count);
  for (const NodeInfo& n : dep.stas()) {
    stas.push_back(n.id);
  }
  r.cui = metrics.cui(stas, eifs(config.timing));
  r.cui_all = metrics.cui(stas, eifs(config.timing), false);
  r.engine = sim.stats();
  return r;
}

RunResult run_simulation(const SimConfig& config, std::uint64_t seed, SimObserver* observer, TraceSink* trace)
{
  config.validate();
  return run_on_deployment(config, generate_deployment(config.deployment, config.channel, seed), seed, observer,
                           trace);
}

PairedResult run_paired(const SimConfig& config, std::uint64_t seed)
{
  PairedResult out;
  out.str = run_simulation(config, seed);
  out.legacy = run_simulation(legacy_arm(config), seed);
  out.gain = str_gain(out.str.throughput_bps(), out.legacy.throughput_bps());
  return out;
}

}  // namespace strmac
