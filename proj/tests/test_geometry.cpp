#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mmwave/geometry.hpp"
#include "mmwave/model.hpp"

using namespace mmwave;

TEST_CASE("segment intersection: crossing, disjoint, touching") {
  // plain crossing
  CHECK(segments_intersect({0, 0}, {2, 2}, {{0, 2}, {2, 0}}));
  // parallel, offset
  CHECK_FALSE(segments_intersect({0, 0}, {2, 0}, {{0, 1}, {2, 1}}));
  // would cross if extended, but the segment stops short
  CHECK_FALSE(segments_intersect({0, 0}, {2, 0}, {{1, 2}, {1, 0.5}}));
  CHECK_FALSE(segments_intersect({0, 0}, {2, 0}, {{3, -1}, {3, 1}}));
  // endpoint grazing counts as blocked
  CHECK(segments_intersect({0, 0}, {2, 0}, {{1, 0}, {1, 1}}));
  CHECK(segments_intersect({0, 0}, {2, 0}, {{2, 0}, {3, 5}}));
  // T-junction against the other segment's interior
  CHECK(segments_intersect({0, 0}, {2, 0}, {{1, -1}, {1, 0}}));
}

TEST_CASE("segment intersection: collinear overlap and gaps") {
  CHECK(segments_intersect({0, 0}, {2, 0}, {{1, 0}, {3, 0}}));
  CHECK(segments_intersect({0, 0}, {2, 0}, {{2, 0}, {4, 0}}));   // touch
  CHECK_FALSE(segments_intersect({0, 0}, {2, 0}, {{3, 0}, {4, 0}}));
  // one segment swallowed by the other
  CHECK(segments_intersect({0, 0}, {4, 0}, {{1, 0}, {2, 0}}));
}

TEST_CASE("angle difference wraps to [0, pi]") {
  CHECK(angle_diff(0.0, 0.0) == 0.0);
  CHECK(std::abs(angle_diff(0.1, -0.1) - 0.2) < 1e-15);
  CHECK(std::abs(angle_diff(0.0, kTwoPi) - 0.0) < 1e-15);
  CHECK(std::abs(angle_diff(0.0, kPi) - kPi) < 1e-15);
  // 350 deg vs 10 deg are 20 deg apart, not 340
  CHECK(std::abs(angle_diff(350.0 * kPi / 180.0, 10.0 * kPi / 180.0) -
                 20.0 * kPi / 180.0) < 1e-12);
  CHECK(std::abs(angle_diff(-3.0 * kTwoPi + 0.5, 0.5)) < 1e-12);

  std::mt19937_64 eng(9);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const double d = angle_diff(u(eng), u(eng));
    CHECK(d >= 0.0);
    CHECK(d <= kPi + 1e-12);
  }
}

TEST_CASE("beam coverage: boundary inclusive, wrap-around, degenerate") {
  const double th = 0.4;
  // straight down the bore
  CHECK(beam_covers({0, 0}, {1, 0}, 0.0, th));
  // hugging the half-width edge from inside (an exact tie is 1 ulp away
  // through atan2, so pin the boundary to within 1e-12)
  CHECK(beam_covers({0, 0},
                    {std::cos(th / 2 - 1e-12), std::sin(th / 2 - 1e-12)}, 0.0,
                    th));
  // just past the edge
  CHECK_FALSE(beam_covers(
      {0, 0}, {std::cos(th / 2 + 1e-9), std::sin(th / 2 + 1e-9)}, 0.0, th));
  // target behind
  CHECK_FALSE(beam_covers({0, 0}, {-1, 0}, 0.0, th));
  // bore near the +-pi seam still sees a target across it
  CHECK(beam_covers({0, 0}, {-1, -0.05}, kPi - 0.05, th));
  // full circle covers everything
  CHECK(beam_covers({0, 0}, {-1, 3}, 1.234, kTwoPi));
  // zero-distance target counts as covered
  CHECK(beam_covers({2, 3}, {2, 3}, 0.7, th));
}
