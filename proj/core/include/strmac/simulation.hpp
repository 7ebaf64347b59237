#pragma once

#include "strmac/channel.hpp"
#include "strmac/engine.hpp"
#include "strmac/mac.hpp"
#include "strmac/metrics.hpp"
#include "strmac/timing.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace strmac {

/// Everything one run needs.
struct SimConfig {
  TimingParams timing;
  ChannelParams channel;
  DeploymentParams deployment;
  MacConfig mac;
  Micros duration_us = 5'000'000;

  void validate() const;
};

struct RunResult {
  Micros duration_us = 0;
  std::size_t ap_count = 0;
  std::size_t sta_count = 0;
  DeliveryTally tally;
  std::uint64_t exchanges_hd = 0;
  std::uint64_t exchanges_bfd = 0;
  std::uint64_t exchanges_ufd = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t drops = 0;
  std::uint64_t fd_induced_eifs = 0;
  double cui = 1.0;      ///< over post-FD waits
  double cui_all = 1.0;  ///< over every contention wait
  EngineStats engine;

  [[nodiscard]] double throughput_bps() const;
  [[nodiscard]] double goodput_bps(double eps) const;
};

/// The comparison arm: STR off and every node half duplex, same positions.
SimConfig legacy_arm(const SimConfig& config);

/// Deployment of a run: generated from the seed, FD labels forced to HD when
/// STR is disabled.
Deployment make_deployment(const SimConfig& config, std::uint64_t seed);

RunResult run_simulation(const SimConfig& config, std::uint64_t seed, SimObserver* observer = nullptr,
                         TraceSink* trace = nullptr);

/// Same as run_simulation on a caller-supplied deployment.
RunResult run_on_deployment(const SimConfig& config, const Deployment& deployment, std::uint64_t seed,
                            SimObserver* observer = nullptr, TraceSink* trace = nullptr);

struct PairedResult {
  RunResult str;
  RunResult legacy;
  std::optional<double> gain;
};

/// STR and legacy arms under the same seed.
PairedResult run_paired(const SimConfig& config, std::uint64_t seed);

}  // namespace strmac
