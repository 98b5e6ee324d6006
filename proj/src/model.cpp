#include "mmwave/model.hpp"

#include <cmath>

namespace mmwave {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, msg);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const NetworkParams& p) {
  require(finite(p.lambda_t) && p.lambda_t > 0.0,
          "lambda_t must be finite and positive");
  require(finite(p.lambda_o) && p.lambda_o >= 0.0,
          "lambda_o must be finite and nonnegative");
  require(finite(p.rho_a) && p.rho_a > 0.0 && p.rho_a <= 1.0,
          "rho_a must lie in (0, 1]");
  require(finite(p.theta) && p.theta > 0.0 && p.theta <= kTwoPi,
          "theta must lie in (0, 2*pi] radians");
  require(finite(p.theta_c) && p.theta_c > 0.0 && p.theta_c <= p.theta,
          "theta_c must lie in (0, theta] radians");
  require(finite(p.power_w) && p.power_w > 0.0, "power must be positive");
  require(finite(p.atten_1m) && p.atten_1m > 0.0,
          "attenuation at 1 m must be positive");
  require(finite(p.alpha) && p.alpha >= 2.0, "alpha must be at least 2");
  require(finite(p.beta) && p.beta > 0.0, "beta must be positive");
  require(finite(p.noise_w) && p.noise_w >= 0.0,
          "noise power must be nonnegative");
  if (const auto* f = std::get_if<FixedLength>(&p.link_length)) {
    require(finite(f->length_m) && f->length_m > 0.0,
            "fixed link length must be positive");
  } else {
    const auto& r = std::get<RandomInDisk>(p.link_length);
    require(finite(r.d_max_m) && r.d_max_m > 0.0, "d_max must be positive");
  }
}

DerivedGeometry derive_geometry(const NetworkParams& p) {
  validate(p);

  DerivedGeometry g;
  g.coherence_angle = p.theta_c;

  // Exact multiples like 20deg/5deg can land a hair above an integer after
  // the degree->radian conversion; nudge before taking the ceiling.
  double ratio = p.theta / p.theta_c;
  g.sector_count = static_cast<int>(std::ceil(ratio - 1e-9));
  if (g.sector_count < 1) g.sector_count = 1;

  g.interferer_density = p.rho_a * p.lambda_t * p.theta / kTwoPi;

  if (const auto* f = std::get_if<FixedLength>(&p.link_length)) {
    const double len = f->length_m;
    // Interference range from the SINR budget: the farthest distance at
    // which a single interferer (same power, main lobe to main lobe) still
    // pushes the link below the decoding threshold. The main-lobe gain
    // 2*pi/theta applies to both ends of each path, so it enters the noise
    // term squared and cancels on the interference term.
    const double gain = kTwoPi / p.theta;
    const double budget =
        std::pow(len, -p.alpha) / p.beta -
        p.noise_w / (p.atten_1m * p.power_w * gain * gain);
    if (budget <= 0.0) {
      throw Error(ErrorCode::NoiseOutage,
                  "link cannot meet the SINR threshold even without "
                  "interference (noise-limited outage)");
    }
    g.d_max = std::pow(budget, -1.0 / p.alpha);
    if (len > g.d_max) {
      throw Error(ErrorCode::InvalidParameter,
                  "fixed link length exceeds the interference range d_max");
    }
  } else {
    g.d_max = std::get<RandomInDisk>(p.link_length).d_max_m;
  }
  return g;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::NoiseLimited:
      return "noise_limited";
    case Regime::Transitional:
      return "transitional";
    case Regime::InterferenceLimited:
      return "interference_limited";
  }
  return "unknown";
}

}  // namespace mmwave
