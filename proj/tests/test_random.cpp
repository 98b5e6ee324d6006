#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "mmwave/random.hpp"

using namespace mmwave;

TEST_CASE("streams are reproducible and decorrelated") {
  auto a1 = make_stream(42, 7);
  auto a2 = make_stream(42, 7);
  auto b = make_stream(42, 8);
  auto c = make_stream(43, 7);
  int differ_b = 0, differ_c = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a1();
    CHECK(va == a2());
    differ_b += va != b() ? 1 : 0;
    differ_c += va != c() ? 1 : 0;
  }
  CHECK(differ_b > 60);
  CHECK(differ_c > 60);
}

TEST_CASE("unit uniforms live in (0, 1] with the right mean") {
  auto g = make_stream(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_unit(g);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  // mean 1/2, sd of the mean = 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("poisson sampler matches mean, variance and zero mass") {
  auto g = make_stream(2, 0);
  const double mu = 3.7;
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  int zeros = 0;
  for (int i = 0; i < n; ++i) {
    const double v = static_cast<double>(poisson(g, mu));
    sum += v;
    sumsq += v * v;
    zeros += v == 0.0 ? 1 : 0;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean - mu) < 4.0 * std::sqrt(mu / n));
  CHECK(std::abs(var - mu) < 0.1);
  const double p0 = std::exp(-mu);
  CHECK(std::abs(static_cast<double>(zeros) / n - p0) <
        4.0 * std::sqrt(p0 * (1.0 - p0) / n));
}

TEST_CASE("poisson handles zero and chunked large means") {
  auto g = make_stream(3, 0);
  for (int i = 0; i < 100; ++i) CHECK(poisson(g, 0.0) == 0);

  // mean > 500 exercises the chunk split
  const double mu = 1200.0;
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(poisson(g, mu));
  CHECK(std::abs(sum / n - mu) < 4.0 * std::sqrt(mu / n));
}
