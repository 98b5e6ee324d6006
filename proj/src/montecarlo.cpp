#include "mmwave/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "mmwave/random.hpp"

namespace mmwave::montecarlo {

namespace {

std::vector<double> poisson_radii(std::mt19937_64& eng, double mean_count,
                                  double r_outer) {
  const std::uint64_t n = poisson(eng, mean_count);
  std::vector<double> r(n);
  for (auto& v : r) v = r_outer * std::sqrt(uniform_unit(eng));
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<double> typical_obstacles(std::mt19937_64& eng, double lambda_o,
                                      double ell, const DerivedGeometry& g,
                                      int rejection_cap) {
  const double r_outer = g.d_max;
  const double mean_full = lambda_o * g.sector_area(r_outer);
  for (int attempt = 0; attempt < rejection_cap; ++attempt) {
    const std::uint64_t n = poisson(eng, mean_full);
    std::vector<double> r(n);
    bool clear = true;
    for (std::uint64_t i = 0; i < n && clear; ++i) {
      r[i] = r_outer * std::sqrt(uniform_unit(eng));
      if (r[i] <= ell) clear = false;  // own link shadowed; redraw the set
    }
    if (clear) {
      std::sort(r.begin(), r.end());
      return r;
    }
  }
  // Direct draw of the conditional law: a Poisson process on the sector with
  // everything inside ell removed, i.e. restricted to the annulus (ell,
  // r_outer]. Identical in distribution to an accepted rejection draw.
  const double mean_trunc =
      lambda_o * (g.sector_area(r_outer) - g.sector_area(ell));
  const std::uint64_t n = poisson(eng, mean_trunc);
  std::vector<double> r(n);
  const double lo2 = ell * ell;
  const double span = r_outer * r_outer - lo2;
  for (auto& v : r) v = std::sqrt(lo2 + span * uniform_unit(eng));
  std::sort(r.begin(), r.end());
  return r;
}

void check_ell(const DerivedGeometry& g, double ell) {
  if (!(ell >= 0.0) || ell > g.d_max * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "link length must lie in [0, d_max]");
  }
}

CollisionEstimate finalize(std::uint64_t hits, std::uint64_t trials) {
  CollisionEstimate e;
  e.trials = trials;
  e.collisions = hits;
  e.mean = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error =
      std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  e.ci_low = std::max(0.0, e.mean - 1.96 * e.std_error);
  e.ci_high = std::min(1.0, e.mean + 1.96 * e.std_error);
  return e;
}

// integer hit counts per contiguous chunk sum to the same total no matter
// how the range is split, so any thread count gives identical results
template <class TrialFn>
std::uint64_t count_hits(std::uint64_t trials, int threads, TrialFn&& fn) {
  unsigned n =
      threads > 0 ? static_cast<unsigned>(threads)
                  : std::max(1u, std::thread::hardware_concurrency());
  if (trials < 4096) n = 1;
  n = std::min<std::uint64_t>(n, trials);

  if (n <= 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i) hits += fn(i) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(n, 0);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    const std::uint64_t lo = trials * w / n;
    const std::uint64_t hi = trials * (w + 1) / n;
    pool.emplace_back([&, w, lo, hi] {
      std::uint64_t h = 0;
      for (std::uint64_t i = lo; i < hi; ++i) h += fn(i) ? 1 : 0;
      partial[w] = h;
    });
  }
  for (auto& t : pool) t.join();
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return hits;
}

}  // namespace

double draw_link_length(std::mt19937_64& g, double d_max) {
  return d_max * std::sqrt(uniform_unit(g));
}

SectorTopology sample_sector_topology(const DerivedGeometry& g,
                                      double lambda_o, double ell,
                                      std::mt19937_64& eng,
                                      int rejection_cap) {
  check_ell(g, ell);
  SectorTopology t;
  t.link_length = ell;
  t.typical_sector = 0;
  const int k = g.sector_count;
  t.interferer_dist.resize(k);
  t.obstacle_dist.resize(k);
  const double mean_i = g.interferer_density * g.sector_area(g.d_max);
  const double mean_o = lambda_o * g.sector_area(g.d_max);
  for (int s = 0; s < k; ++s) {
    t.interferer_dist[s] = poisson_radii(eng, mean_i, g.d_max);
    t.obstacle_dist[s] =
        s == t.typical_sector
            ? typical_obstacles(eng, lambda_o, ell, g, rejection_cap)
            : poisson_radii(eng, mean_o, g.d_max);
  }
  return t;
}

SectorTopology sample_sector_topology(const DerivedGeometry& g,
                                      double lambda_o, double ell,
                                      std::uint64_t seed,
                                      std::uint64_t trial) {
  auto eng = make_stream(seed, trial);
  return sample_sector_topology(g, lambda_o, ell, eng);
}

bool trial_has_collision(const SectorTopology& t, const DerivedGeometry& g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t k = t.interferer_dist.size();
  for (std::size_t s = 0; s < k; ++s) {
    const auto& ints = t.interferer_dist[s];
    if (ints.empty()) continue;
    const double nearest_i = ints.front();
    if (nearest_i > g.d_max) continue;
    const auto& obs = t.obstacle_dist[s];
    const double nearest_o = obs.empty() ? kInf : obs.front();
    if (nearest_i < nearest_o) return true;
  }
  return false;
}

CollisionEstimate estimate_conditional_collision_prob(
    const DerivedGeometry& g, double lambda_o, double ell,
    std::uint64_t trials, std::uint64_t seed, std::uint64_t first_trial,
    int threads) {
  if (trials == 0) {
    throw Error(ErrorCode::InvalidParameter, "trials must be positive");
  }
  check_ell(g, ell);
  const std::uint64_t hits =
      count_hits(trials, threads, [&](std::uint64_t i) {
        auto eng = make_stream(seed, first_trial + i);
        return trial_has_collision(
            sample_sector_topology(g, lambda_o, ell, eng), g);
      });
  return finalize(hits, trials);
}

CollisionEstimate estimate_collision_prob(const DerivedGeometry& g,
                                          double lambda_o,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::uint64_t first_trial,
                                          int threads) {
  if (trials == 0) {
    throw Error(ErrorCode::InvalidParameter, "trials must be positive");
  }
  const std::uint64_t hits =
      count_hits(trials, threads, [&](std::uint64_t i) {
        auto eng = make_stream(seed, first_trial + i);
        const double ell = draw_link_length(eng, g.d_max);
        return trial_has_collision(
            sample_sector_topology(g, lambda_o, ell, eng), g);
      });
  return finalize(hits, trials);
}

CollisionEstimate merge(const CollisionEstimate& a,
                        const CollisionEstimate& b) {
  return finalize(a.collisions + b.collisions, a.trials + b.trials);
}

}  // namespace mmwave::montecarlo
