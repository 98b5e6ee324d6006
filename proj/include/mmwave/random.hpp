#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Reproducibility contract: a (seed, stream) pair fully determines the
// random stream, independent of how work is partitioned across threads.
// mt19937_64 output is mandated by the standard, so streams are identical
// across platforms; distributions are hand-rolled below because the std
// ones are implementation-defined.

namespace mmwave {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t mixed =
      splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dULL));
  return std::mt19937_64(mixed);
}

// uniform in (0, 1]; never returns 0 so inverse-transform radii stay positive
inline double uniform_unit(std::mt19937_64& g) {
  return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
}

// Knuth product-of-uniforms Poisson sampler, exact for any mean. The mean is
// consumed in chunks small enough that exp(-chunk) stays in normal range.
inline std::uint64_t poisson(std::mt19937_64& g, double mean) {
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = mean > 500.0 ? 500.0 : mean;
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double prod = uniform_unit(g);
    std::uint64_t n = 0;
    while (prod > limit) {
      prod *= uniform_unit(g);
      ++n;
    }
    total += n;
  }
  return total;
}

}  // namespace mmwave
