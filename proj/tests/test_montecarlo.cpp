#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mmwave/analytic.hpp"
#include "mmwave/model.hpp"
#include "mmwave/montecarlo.hpp"
#include "mmwave/random.hpp"
#include "testutil.hpp"

using namespace mmwave;
namespace mc = mmwave::montecarlo;
using testutil::kDeg;

namespace {

DerivedGeometry anchor_geom() {
  DerivedGeometry g;
  g.d_max = 10.0;
  g.sector_count = 4;
  g.interferer_density = 0.01;
  g.coherence_angle = 5.0 * kDeg;
  return g;
}

constexpr double kAnchorLambdaO = 0.02;

mc::SectorTopology empty_topology(int sectors) {
  mc::SectorTopology t;
  t.interferer_dist.resize(sectors);
  t.obstacle_dist.resize(sectors);
  return t;
}

}  // namespace

TEST_CASE("collision race on hand-built topologies") {
  const DerivedGeometry g = anchor_geom();

  auto t = empty_topology(4);
  CHECK_FALSE(mc::trial_has_collision(t, g));  // nobody around

  // interferer in front of the obstacle -> collision
  t.interferer_dist[1] = {3.0, 7.0};
  t.obstacle_dist[1] = {5.0};
  CHECK(mc::trial_has_collision(t, g));

  // obstacle shields the sector
  t.obstacle_dist[1] = {2.0};
  CHECK_FALSE(mc::trial_has_collision(t, g));

  // unshielded interferer alone is enough
  t = empty_topology(4);
  t.interferer_dist[3] = {9.9};
  CHECK(mc::trial_has_collision(t, g));

  // beyond d_max it cannot interfere (hand-built; sampling never produces it)
  t.interferer_dist[3] = {11.0};
  CHECK_FALSE(mc::trial_has_collision(t, g));

  // exact tie: the obstacle wins
  t = empty_topology(4);
  t.interferer_dist[0] = {4.0};
  t.obstacle_dist[0] = {4.0};
  CHECK_FALSE(mc::trial_has_collision(t, g));

  // any single losing sector decides
  t = empty_topology(4);
  t.interferer_dist[0] = {6.0};
  t.obstacle_dist[0] = {1.0};
  t.interferer_dist[2] = {8.0};
  t.obstacle_dist[2] = {9.0};
  CHECK(mc::trial_has_collision(t, g));
}

TEST_CASE("sampled topologies respect the conditioning and sort order") {
  const DerivedGeometry g = anchor_geom();
  auto eng = make_stream(101, 0);
  const double ell = 6.0;
  for (int it = 0; it < 500; ++it) {
    const auto t = mc::sample_sector_topology(g, kAnchorLambdaO, ell, eng);
    REQUIRE(t.interferer_dist.size() == 4);
    REQUIRE(t.obstacle_dist.size() == 4);
    CHECK(t.link_length == ell);
    for (int s = 0; s < 4; ++s) {
      for (std::size_t i = 0; i < t.interferer_dist[s].size(); ++i) {
        const double r = t.interferer_dist[s][i];
        CHECK(r > 0.0);
        CHECK(r <= g.d_max);
        if (i) CHECK(r >= t.interferer_dist[s][i - 1]);
      }
      for (std::size_t i = 0; i < t.obstacle_dist[s].size(); ++i) {
        const double r = t.obstacle_dist[s][i];
        CHECK(r > 0.0);
        CHECK(r <= g.d_max);
        if (i) CHECK(r >= t.obstacle_dist[s][i - 1]);
        // own link of length ell is unobstructed in the receiver's sector
        if (s == t.typical_sector) CHECK(r > ell);
      }
    }
  }

  // the (seed, trial) overload is just a stream spawn
  auto eng2 = make_stream(33, 17);
  const auto a = mc::sample_sector_topology(g, kAnchorLambdaO, 2.0, eng2);
  const auto b = mc::sample_sector_topology(g, kAnchorLambdaO, 2.0, 33, 17);
  CHECK(a.interferer_dist == b.interferer_dist);
  CHECK(a.obstacle_dist == b.obstacle_dist);

  CHECK_THROWS_AS(mc::sample_sector_topology(g, kAnchorLambdaO, -1.0, 1, 0),
                  Error);
  CHECK_THROWS_AS(mc::sample_sector_topology(g, kAnchorLambdaO, 10.5, 1, 0),
                  Error);
}

TEST_CASE("link-length draw follows the disk law") {
  const double dm = 7.0;
  auto eng = make_stream(5, 0);
  const int n = 20000;
  std::vector<double> xs(n);
  double sum = 0.0;
  for (auto& x : xs) {
    x = mc::draw_link_length(eng, dm);
    REQUIRE(x > 0.0);
    REQUIRE(x <= dm);
    sum += x;
  }
  // mean of the disk law is 2/3 d_max
  CHECK(std::abs(sum / n - 2.0 / 3.0 * dm) < 4.0 * dm / std::sqrt(18.0 * n));
  const double ks = testutil::ks_distance(
      xs, n, [&](double x) { return x * x / (dm * dm); });
  CHECK(ks < 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("nearest-point distances follow the sector laws") {
  const DerivedGeometry g = anchor_geom();
  const double ell = 4.0;
  const int n = 20000;
  std::vector<double> near_i, near_o_reg, near_o_typ;
  auto eng = make_stream(6, 0);
  for (int it = 0; it < n; ++it) {
    const auto t = mc::sample_sector_topology(g, kAnchorLambdaO, ell, eng);
    // sector 1 is unconditioned; sector 0 carries the own-link conditioning
    if (!t.interferer_dist[1].empty())
      near_i.push_back(t.interferer_dist[1].front());
    if (!t.obstacle_dist[1].empty())
      near_o_reg.push_back(t.obstacle_dist[1].front());
    if (!t.obstacle_dist[0].empty())
      near_o_typ.push_back(t.obstacle_dist[0].front());
  }
  const double crit = 2.0 / std::sqrt(static_cast<double>(n));

  // nearest of a Poisson field: P(R <= r) = 1 - exp(-density * A(r))
  const double li = g.interferer_density;
  CHECK(testutil::ks_distance(near_i, n, [&](double r) {
          return -std::expm1(-li * g.sector_area(r));
        }) < crit);
  CHECK(testutil::ks_distance(near_o_reg, n, [&](double r) {
          return -std::expm1(-kAnchorLambdaO * g.sector_area(r));
        }) < crit);
  // in the receiver's sector the field is restricted to (ell, d_max]
  CHECK(testutil::ks_distance(near_o_typ, n, [&](double r) {
          return r <= ell ? 0.0
                          : -std::expm1(-kAnchorLambdaO *
                                        (g.sector_area(r) -
                                         g.sector_area(ell)));
        }) < crit);
}

TEST_CASE("forced annulus fallback reproduces the conditional law") {
  const DerivedGeometry g = anchor_geom();
  const double lo = 2.0;  // dense obstacles: rejection at cap 1 always fails
  const double ell = 9.0;
  const int n = 20000;
  auto eng = make_stream(7, 0);
  std::vector<double> radii;
  double count_sum = 0.0;
  for (int it = 0; it < n; ++it) {
    const auto t = mc::sample_sector_topology(g, lo, ell, eng, 1);
    const auto& obs = t.obstacle_dist[t.typical_sector];
    count_sum += static_cast<double>(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
      REQUIRE(obs[i] > ell);
      REQUIRE(obs[i] <= g.d_max);
      if (i) REQUIRE(obs[i] >= obs[i - 1]);
    }
    if (!obs.empty()) radii.push_back(obs.front());
  }
  const double mean_trunc =
      lo * (g.sector_area(g.d_max) - g.sector_area(ell));
  CHECK(std::abs(count_sum / n - mean_trunc) <
        4.0 * std::sqrt(mean_trunc / n));
  CHECK(testutil::ks_distance(radii, n, [&](double r) {
          return r <= ell ? 0.0
                          : -std::expm1(-lo * (g.sector_area(r) -
                                               g.sector_area(ell)));
        }) < 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("conditional estimate agrees with the closed form") {
  const DerivedGeometry g = anchor_geom();
  for (double ell : {0.0, 5.0, 10.0}) {
    const auto est = mc::estimate_conditional_collision_prob(
        g, kAnchorLambdaO, ell, 100000, 2024, 0, 0);
    const double truth =
        analytic::conditional_collision_prob(g, kAnchorLambdaO, ell);
    CHECK(std::abs(est.mean - truth) < 4.0 * est.std_error + 1e-9);
    CHECK(est.trials == 100000);
    CHECK(est.collisions <= est.trials);
    CHECK(est.ci_low <= est.mean);
    CHECK(est.mean <= est.ci_high);
    CHECK(est.ci_low >= 0.0);
    CHECK(est.ci_high <= 1.0);
  }
}

TEST_CASE("length-averaged estimate agrees with the closed form") {
  const DerivedGeometry g = anchor_geom();
  const auto est =
      mc::estimate_collision_prob(g, kAnchorLambdaO, 100000, 4096, 0, 0);
  const double truth = analytic::collision_prob(g, kAnchorLambdaO);
  CHECK(std::abs(est.mean - truth) < 4.0 * est.std_error + 1e-9);

  // denser interferers, same agreement
  DerivedGeometry dense = g;
  dense.interferer_density = 0.05;
  const auto est2 =
      mc::estimate_collision_prob(dense, kAnchorLambdaO, 100000, 4097, 0, 0);
  const double truth2 = analytic::collision_prob(dense, kAnchorLambdaO);
  CHECK(std::abs(est2.mean - truth2) < 4.0 * est2.std_error + 1e-9);
}

TEST_CASE("trial partitioning and thread count do not change any draw") {
  const DerivedGeometry g = anchor_geom();
  const auto whole = mc::estimate_conditional_collision_prob(
      g, kAnchorLambdaO, 5.0, 10000, 99, 0, 1);
  const auto head = mc::estimate_conditional_collision_prob(
      g, kAnchorLambdaO, 5.0, 6000, 99, 0, 1);
  const auto tail = mc::estimate_conditional_collision_prob(
      g, kAnchorLambdaO, 5.0, 4000, 99, 6000, 1);
  const auto merged = mc::merge(head, tail);
  CHECK(merged.trials == whole.trials);
  CHECK(merged.collisions == whole.collisions);
  CHECK(merged.mean == whole.mean);
  CHECK(merged.std_error == whole.std_error);

  const auto threaded = mc::estimate_conditional_collision_prob(
      g, kAnchorLambdaO, 5.0, 10000, 99, 0, 4);
  CHECK(threaded.collisions == whole.collisions);

  const auto averaged1 =
      mc::estimate_collision_prob(g, kAnchorLambdaO, 10000, 55, 0, 1);
  const auto averaged4 =
      mc::estimate_collision_prob(g, kAnchorLambdaO, 10000, 55, 0, 4);
  CHECK(averaged1.collisions == averaged4.collisions);
}

TEST_CASE("degenerate estimator inputs are rejected") {
  const DerivedGeometry g = anchor_geom();
  CHECK_THROWS_AS(mc::estimate_conditional_collision_prob(g, kAnchorLambdaO,
                                                          5.0, 0, 1, 0, 1),
                  Error);
  CHECK_THROWS_AS(mc::estimate_collision_prob(g, kAnchorLambdaO, 0, 1, 0, 1),
                  Error);
  CHECK_THROWS_AS(mc::estimate_conditional_collision_prob(g, kAnchorLambdaO,
                                                          -2.0, 100, 1, 0, 1),
                  Error);
}
