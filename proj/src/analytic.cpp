#include "mmwave/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "mmwave/quadrature.hpp"

namespace mmwave::analytic {

namespace {

// Survival of the receiver's own sector given an unobstructed link of sector
// area a_ell: probability that no interferer there beats the nearest
// obstacle. Written so every exponent is nonpositive (for a_ell <= a_max,
// lo*a_ell - s*a_max = lo*(a_ell - a_max) - li*a_max <= 0), which keeps the
// expression overflow-free at large obstacle densities where the textbook
// grouping exp(lo*a_ell) * exp(-s*a_max) blows up.
double typical_sector_survival(double li, double lo, double a_ell,
                               double a_max) {
  const double s = li + lo;
  if (s <= 0.0) return 1.0;  // empty plane, nothing to lose to
  return (lo * std::exp(-li * a_ell) +
          li * std::exp(lo * a_ell - s * a_max)) /
         s;
}

double checked_ell(const DerivedGeometry& g, double ell) {
  // tolerate a few ulps past d_max so carried-through endpoints don't trip
  if (!(ell >= 0.0) || ell > g.d_max * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange,
                "link length must lie in [0, d_max]");
  }
  return std::min(ell, g.d_max);
}

double sector_survival_product(const DerivedGeometry& g, double lambda_o,
                               double ell) {
  const double li = g.interferer_density;
  const double a_ell = g.sector_area(ell);
  const double a_max = g.sector_area(g.d_max);
  const double reg = los_interference_prob_regular_sector(g, lambda_o);
  return std::pow(1.0 - reg, g.sector_count - 1) *
         typical_sector_survival(li, lambda_o, a_ell, a_max);
}

void check_area(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw Error(ErrorCode::InvalidParameter,
                "scheduler area must be finite and positive");
  }
}

}  // namespace

double los_interference_prob_regular_sector(const DerivedGeometry& g,
                                            double lambda_o) {
  const double li = g.interferer_density;
  const double s = li + lambda_o;
  if (s <= 0.0) return 0.0;
  const double a_max = g.sector_area(g.d_max);
  return li / s * (-std::expm1(-s * a_max));
}

double los_interference_prob_typical_sector(const DerivedGeometry& g,
                                            double lambda_o, double ell) {
  ell = checked_ell(g, ell);
  const double surv = typical_sector_survival(
      g.interferer_density, lambda_o, g.sector_area(ell),
      g.sector_area(g.d_max));
  return std::clamp(1.0 - surv, 0.0, 1.0);
}

double conditional_collision_prob(const DerivedGeometry& g, double lambda_o,
                                  double ell) {
  ell = checked_ell(g, ell);
  return std::clamp(1.0 - sector_survival_product(g, lambda_o, ell), 0.0,
                    1.0);
}

double collision_prob(const DerivedGeometry& g, double lambda_o) {
  const double dm = g.d_max;
  const double inv = 2.0 / (dm * dm);
  auto f = [&](double l) {
    return conditional_collision_prob(g, lambda_o, l) * inv * l;
  };
  const double v = integrate(f, 0.0, dm, kQuadTol).value;
  return std::clamp(v, 0.0, 1.0);
}

CollisionBounds collision_prob_bounds(const DerivedGeometry& g,
                                      double lambda_o) {
  // the conditional collision probability is nondecreasing in the link
  // length, so the endpoints bracket the length-averaged value
  return {conditional_collision_prob(g, lambda_o, 0.0),
          conditional_collision_prob(g, lambda_o, g.d_max)};
}

double aloha_per_link_throughput(const DerivedGeometry& g, double lambda_o,
                                 double rho_a) {
  const double dm = g.d_max;
  const double inv = 2.0 / (dm * dm);
  auto f = [&](double l) {
    const double los_own = std::exp(-lambda_o * g.sector_area(l));
    return rho_a * los_own * sector_survival_product(g, lambda_o, l) * inv *
           l;
  };
  const double v = integrate(f, 0.0, dm, kQuadTol).value;
  return std::max(v, 0.0);
}

double aloha_ase(const DerivedGeometry& g, double lambda_o, double rho_a,
                 double lambda_t, double area) {
  check_area(area);
  // expected contenders in the region plus the typical link itself
  return (1.0 + area * lambda_t) / area *
         aloha_per_link_throughput(g, lambda_o, rho_a);
}

double one_minus_exp_over(double x) {
  if (x < 1e-6) return 1.0 - x / 2.0 + x * x / 6.0;
  return -std::expm1(-x) / x;
}

double tdma_per_link_throughput(const DerivedGeometry& g, double lambda_o,
                                double lambda_t, double area) {
  check_area(area);
  const double slot_share = one_minus_exp_over(lambda_t * area);
  const double los_avg =
      one_minus_exp_over(lambda_o * g.sector_area(g.d_max));
  return slot_share * los_avg;
}

double tdma_ase(const DerivedGeometry& g, double lambda_o, double area) {
  check_area(area);
  return one_minus_exp_over(lambda_o * g.sector_area(g.d_max)) / area;
}

OptimalRho optimal_transmission_prob(const NetworkParams& p) {
  const DerivedGeometry base = derive_geometry(p);
  const double li_per_rho = p.lambda_t * p.theta / kTwoPi;

  auto thr = [&](double rho) {
    DerivedGeometry g = base;
    g.interferer_density = rho * li_per_rho;
    return aloha_per_link_throughput(g, p.lambda_o, rho);
  };

  // coarse 101-point grid over [0, 1]; rho = 0 transmits nothing
  const int kGrid = 100;
  double best_rho = 0.0;
  double best_val = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double rho = static_cast<double>(i) / kGrid;
    const double v = thr(rho);
    if (v > best_val) {
      best_val = v;
      best_rho = rho;
    }
  }

  // golden-section refinement inside the bracketing grid cells
  double a = std::max(best_rho - 1.0 / kGrid, 1e-6);
  double b = std::min(best_rho + 1.0 / kGrid, 1.0);
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = thr(c);
  double fd = thr(d);
  while (b - a > 1e-4) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = thr(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = thr(d);
    }
  }

  // keep boundary optima exact: compare the refined point against the grid
  // winner and the bracket edge at 1
  OptimalRho out{best_rho, best_val};
  const double mid = 0.5 * (a + b);
  const double fmid = thr(mid);
  if (fmid > out.throughput) out = {mid, fmid};
  if (b >= 1.0) {
    const double f1 = thr(1.0);
    if (f1 >= out.throughput) out = {1.0, f1};
  }
  return out;
}

}  // namespace mmwave::analytic
