#pragma once

#include <cstdint>
#include <random>

namespace ahmp {

/// Seedable random source with a fixed algorithm so sequences are
/// bit-identical across runs, compilers and platforms.
///
/// Engine: std::mt19937_64 (its output sequence is fully specified by the
/// standard). Distributions are implemented here rather than with the
/// <random> distribution templates, whose algorithms are implementation
/// defined:
///   - uniform01(): top 53 bits of one draw scaled by 2^-53, in [0, 1)
///   - uniform(lo, hi): lo + (hi - lo) * uniform01()
///   - below(n): rejection sampling on the 64-bit draw, unbiased
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi)
  {
    return lo + (hi - lo) * uniform01();
  }

  std::uint64_t below(std::uint64_t n)
  {
    if (n <= 1)
      return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit)
      x = engine_();
    return x % n;
  }

private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace ahmp
