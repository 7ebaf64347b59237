#include "strmac/channel.hpp"
#include "strmac/frames.hpp"
#include "strmac/rng.hpp"
#include "strmac/simulation.hpp"
#include "strmac/timing.hpp"

#include <benchmark/benchmark.h>

using namespace strmac;

namespace {

void BM_EncodeDecodeCtsFd(benchmark::State& state)
{
  const Frame f = make_cts_fd(NodeId{7}, 579, NodeId{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(encode(f)));
  }
}
BENCHMARK(BM_EncodeDecodeCtsFd);

void BM_PlanBfd(benchmark::State& state)
{
  TimingParams p;
  p.mcs_rates_bps = {6'000'000, 24'000'000, 54'000'000, 150'000'000};
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_second_tx_bfd(p, 250, 829, 12'000, p.mcs_rates_bps));
  }
}
BENCHMARK(BM_PlanBfd);

void BM_RayleighRxPower(benchmark::State& state)
{
  const ChannelParams p;
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rx_power_dbm(p, 30.0, 35.0, rng.exponential()));
  }
}
BENCHMARK(BM_RayleighRxPower);

void BM_GenerateDeployment(benchmark::State& state)
{
  DeploymentParams d;
  d.fd_fraction = 0.5;
  const ChannelParams c;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_deployment(d, c, seed++));
  }
}
BENCHMARK(BM_GenerateDeployment)->Unit(benchmark::kMillisecond);

/// Simulated 100 ms on a square network of the given side, in metres.
void BM_Simulate100ms(benchmark::State& state)
{
  SimConfig c;
  c.deployment.width_m = static_cast<double>(state.range(0));
  c.deployment.height_m = static_cast<double>(state.range(0));
  c.deployment.fd_fraction = 1.0;
  c.duration_us = 100'000;
  std::uint64_t events = 0;
  for (auto _ : state) {
    events += run_simulation(c, 1).engine.events;
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate100ms)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
