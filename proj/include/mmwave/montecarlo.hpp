#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mmwave/model.hpp"

// Direct sampling of the sectored model for cross-validation of the closed
// forms. Each trial draws the interferer and obstacle processes inside every
// coherence sector out to radius d_max (points beyond d_max can never win
// the collision race, so the truncation is exact) and replays the
// nearest-point race per sector.

namespace mmwave::montecarlo {

struct SectorTopology {
  // per sector, radial distances sorted ascending
  std::vector<std::vector<double>> interferer_dist;
  std::vector<std::vector<double>> obstacle_dist;
  double link_length = 0.0;
  int typical_sector = 0;  // the sector containing the receiver
};

struct CollisionEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;   // 95% normal interval, clamped to [0, 1]
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t collisions = 0;
};

// inverse-transform draw of the disk link-length law f(l) = 2*l/d_max^2
double draw_link_length(std::mt19937_64& g, double d_max);

// One topology conditioned on an unobstructed own link of length ell: the
// typical sector's obstacles are redrawn (up to rejection_cap attempts)
// until none lies within ell, then fall back to sampling the obstacle
// process restricted to (ell, d_max] directly; both routes are exact.
SectorTopology sample_sector_topology(const DerivedGeometry& g,
                                      double lambda_o, double ell,
                                      std::mt19937_64& eng,
                                      int rejection_cap = 10000);
SectorTopology sample_sector_topology(const DerivedGeometry& g,
                                      double lambda_o, double ell,
                                      std::uint64_t seed,
                                      std::uint64_t trial = 0);

// true when some sector's nearest interferer sits within d_max and strictly
// closer than that sector's nearest obstacle
bool trial_has_collision(const SectorTopology& t, const DerivedGeometry& g);

// Trial i consumes the stream (seed, first_trial + i), so a run may be
// partitioned across threads or processes and merged without changing any
// draw. threads <= 0 picks the hardware count.
CollisionEstimate estimate_conditional_collision_prob(
    const DerivedGeometry& g, double lambda_o, double ell,
    std::uint64_t trials, std::uint64_t seed, std::uint64_t first_trial = 0,
    int threads = 1);

// same, with the link length redrawn per trial from the disk law
CollisionEstimate estimate_collision_prob(const DerivedGeometry& g,
                                          double lambda_o,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::uint64_t first_trial = 0,
                                          int threads = 1);

// exact pooling of two runs over disjoint trial ranges
CollisionEstimate merge(const CollisionEstimate& a,
                        const CollisionEstimate& b);

}  // namespace mmwave::montecarlo
