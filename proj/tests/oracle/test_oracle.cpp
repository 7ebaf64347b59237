#include "dcf_oracle.hpp"
#include "test_support.hpp"

#include "strmac/mac.hpp"
#include "strmac/simulation.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace strmac;
using namespace strmac::test;

namespace {

std::vector<std::string> str_trace(const SimConfig& config, const Deployment& dep, std::uint64_t seed)
{
  VectorTrace trace;
  run_on_deployment(config, dep, seed, nullptr, &trace);
  return trace.lines;
}

std::vector<std::string> oracle_trace(const SimConfig& config, const Deployment& dep, std::uint64_t seed)
{
  Deployment hd = dep;
  for (const NodeInfo& n : hd.nodes()) {
    hd.set_duplex(n.id, Duplex::Half);
  }
  const Channel channel(hd, config.channel);
  Simulator sim(channel, seed);
  VectorTrace trace;
  sim.attach(oracle::make_dcf_macs(sim, config.timing));
  sim.set_trace(&trace);
  sim.run(config.duration_us);
  return trace.lines;
}

void check_same(const std::vector<std::string>& got, const std::vector<std::string>& want)
{
  REQUIRE(want.size() > 100);
  const std::size_t n = std::min(got.size(), want.size());
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (got[i] != want[i]) {
      first = i;
      break;
    }
  }
  INFO("first divergence at line " << first);
  if (first < n) {
    INFO("mac:    " << got[first]);
    INFO("oracle: " << want[first]);
    CHECK(got[first] == want[first]);
  }
  CHECK(got.size() == want.size());
}

SimConfig small_config(bool fading)
{
  SimConfig c;
  c.deployment.width_m = 200;
  c.deployment.height_m = 200;
  c.deployment.fd_fraction = 0.0;
  c.deployment.ap_fd = false;
  c.channel.rayleigh_fading = fading;
  c.duration_us = 300'000;
  return c;
}

}  // namespace

TEST_SUITE("oracle")
{
  TEST_CASE("HD-only network: STR MAC trace equals the independent DCF")
  {
    for (const bool fading : {false, true}) {
      for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        CAPTURE(fading);
        CAPTURE(seed);
        const SimConfig c = small_config(fading);
        const Deployment dep = make_deployment(c, seed);
        check_same(str_trace(c, dep, seed), oracle_trace(c, dep, seed));
      }
    }
  }

  TEST_CASE("legacy arm equals the independent DCF on an FD-rich deployment")
  {
    SimConfig c = small_config(true);
    c.deployment.fd_fraction = 1.0;
    c.deployment.ap_fd = true;
    for (const std::uint64_t seed : {4ULL, 5ULL}) {
      CAPTURE(seed);
      const SimConfig legacy = legacy_arm(c);
      const Deployment dep = make_deployment(legacy, seed);
      check_same(str_trace(legacy, dep, seed), oracle_trace(legacy, dep, seed));
    }
  }

  TEST_CASE("desk topology without FD equals the independent DCF")
  {
    SimConfig c;
    c.channel = clean_channel();
    c.duration_us = 500'000;
    const Deployment dep = desk_topology(false);
    check_same(str_trace(c, dep, 9), oracle_trace(c, dep, 9));
  }
}
