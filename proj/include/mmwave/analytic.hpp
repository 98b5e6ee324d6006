#pragma once

#include "mmwave/model.hpp"

// Closed forms for the sectored blockage/interference model: the receive
// beam splits into sector_count coherence sectors; in each sector the link
// collides when the nearest interferer (within d_max) is closer than the
// nearest obstacle. Blockage is fully correlated inside a sector and
// independent across sectors. Link-length-averaged quantities use the disk
// law f(l) = 2*l/d_max^2.

namespace mmwave::analytic {

// absolute tolerance used for every link-length average below
inline constexpr double kQuadTol = 1e-9;

// Probability that a sector not containing the receiver is lost to
// interference: the nearest interferer beats the nearest obstacle within
// d_max. Zero when there are no interferers (or nothing at all).
double los_interference_prob_regular_sector(const DerivedGeometry& g,
                                            double lambda_o);

// Same race in the receiver's own sector, conditioned on the own link of
// length ell being unobstructed (no obstacle within ell there).
// Throws Error(OutOfRange) unless 0 <= ell <= d_max.
double los_interference_prob_typical_sector(const DerivedGeometry& g,
                                            double lambda_o, double ell);

// Collision probability of a link of known length ell: at least one of the
// sector_count sectors is lost to interference.
double conditional_collision_prob(const DerivedGeometry& g, double lambda_o,
                                  double ell);

// Collision probability averaged over the disk link-length law.
double collision_prob(const DerivedGeometry& g, double lambda_o);

struct CollisionBounds {
  double lower = 0.0;  // conditional collision prob at ell = 0
  double upper = 0.0;  // conditional collision prob at ell = d_max
};
CollisionBounds collision_prob_bounds(const DerivedGeometry& g,
                                      double lambda_o);

// Slotted-ALOHA per-link packet throughput (packets per slot): transmit with
// probability rho_a, succeed when the own link is unobstructed and no sector
// collides. g.interferer_density must already carry the same rho_a.
double aloha_per_link_throughput(const DerivedGeometry& g, double lambda_o,
                                 double rho_a);

// Area spectral efficiency of ALOHA over a scheduler region of given area,
// counting the expected transmitter population of the region plus the
// typical link itself.
double aloha_ase(const DerivedGeometry& g, double lambda_o, double rho_a,
                 double lambda_t, double area);

// TDMA per-link throughput: expected slot share 1/(N+1) among the Poisson
// transmitter population of the region, times the link-length-averaged LoS
// probability (orthogonal slots never collide).
double tdma_per_link_throughput(const DerivedGeometry& g, double lambda_o,
                                double lambda_t, double area);

// TDMA area spectral efficiency; independent of lambda_t and -> 1/area as
// lambda_o -> 0.
double tdma_ase(const DerivedGeometry& g, double lambda_o, double area);

struct OptimalRho {
  double rho_a = 1.0;
  double throughput = 0.0;
};

// rho_a in (0, 1] maximizing ALOHA per-link throughput for these params
// (101-point grid scan refined by golden-section to 1e-4).
OptimalRho optimal_transmission_prob(const NetworkParams& p);

// (1 - exp(-x))/x with a series branch near zero; equals E[1/(N+1)] for
// N ~ Poisson(x). Exposed for reuse and direct testing.
double one_minus_exp_over(double x);

}  // namespace mmwave::analytic
