#include "strmac/rng.hpp"

#include <cmath>
#include <random>

namespace strmac {

__extension__ using u128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t& state)
{
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index)
{
  std::uint64_t state = master;
  std::uint64_t a = splitmix64(state);
  state = a ^ (static_cast<std::uint64_t>(stream) * 0xd1342543de82ef95ULL);
  std::uint64_t b = splitmix64(state);
  state = b ^ (index * 0x2545f4914f6cdd1dULL + 0x632be59bd9b4e019ULL);
  return splitmix64(state);
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Rng::Rng(std::uint64_t seed)
{
  std::uint64_t state = seed;
  for (auto& word : m_s) {
    word = splitmix64(state);
  }
}

Rng::result_type Rng::operator()()
{
  const std::uint64_t result = rotl(m_s[1] * 5, 7) * 9;
  const std::uint64_t t = m_s[1] << 17;
  m_s[2] ^= m_s[0];
  m_s[3] ^= m_s[1];
  m_s[1] ^= m_s[2];
  m_s[0] ^= m_s[3];
  m_s[2] ^= t;
  m_s[3] = rotl(m_s[3], 45);
  return result;
}

double Rng::uniform()
{
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n)
{
  // Lemire's nearly-divisionless method.
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::exponential()
{
  return -std::log1p(-uniform());
}

std::uint64_t Rng::poisson(double mean)
{
  if (!(mean > 0.0)) {
    return 0;
  }
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(*this);
}

}  // namespace strmac
