#pragma once

#include <cstdint>
#include <limits>

namespace strmac {

/// Purposes for which independent random streams are derived from a master seed.
/// Changing how one stream is consumed never perturbs another.
enum class Stream : std::uint64_t {
  Deployment = 1,
  FdLabels = 2,
  Fading = 3,
  Backoff = 4,
  Traffic = 5,
  Probe = 6,
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0);

/// xoshiro256** generator. Small enough to keep one per node.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  /// Unit-mean exponential, i.e. the power gain of a Rayleigh-faded link.
  double exponential();
  /// Poisson-distributed count with the given mean.
  std::uint64_t poisson(double mean);

private:
  std::uint64_t m_s[4];
};

}  // namespace strmac
