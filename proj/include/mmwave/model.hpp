#pragma once

#include <stdexcept>
#include <string>
#include <variant>

namespace mmwave {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
  InvalidParameter,
  NoiseOutage,
  OutOfRange,
  QuadratureFailure,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Link length is either the same for every link, or drawn per link from the
// disk law f(l) = 2*l/d_max^2 on (0, d_max]. In the random case the
// interference range d_max is given directly instead of coming out of the
// SINR budget.
struct FixedLength {
  double length_m = 1.0;
};
struct RandomInDisk {
  double d_max_m = 10.0;
};
using LinkLengthMode = std::variant<FixedLength, RandomInDisk>;

struct NetworkParams {
  double lambda_t = 0.1;         // transmitter density, per m^2
  double lambda_o = 0.01;        // obstacle density, per m^2
  double rho_a = 1.0;            // ALOHA transmission probability, in (0, 1]
  double theta = 0.3490658503988659;     // antenna beamwidth, rad, in (0, 2*pi]
  double theta_c = 0.08726646259971647;  // blockage coherence angle, rad, in (0, theta]
  double power_w = 2.5e-3;       // transmit power, W
  double atten_1m = 1.0;         // channel attenuation at 1 m reference distance
  double alpha = 3.0;            // path-loss exponent, >= 2
  double beta = 4.0;             // SINR decoding threshold (linear), > 0
  double noise_w = 0.0;          // noise power, W, >= 0
  LinkLengthMode link_length = RandomInDisk{10.0};
};

// Throws Error(InvalidParameter) naming the offending field.
void validate(const NetworkParams& p);

struct DerivedGeometry {
  double d_max = 0.0;              // interference range, m
  int sector_count = 1;            // ceil(theta / theta_c)
  double interferer_density = 0.0; // rho_a * lambda_t * theta / (2*pi)
  double coherence_angle = 0.0;    // theta_c, carried for sector areas

  // area of one coherence sector truncated at radius d
  double sector_area(double d) const { return 0.5 * coherence_angle * d * d; }
};

// Validates params and derives the sector geometry. For fixed-length links
// d_max comes from the SINR budget; throws Error(NoiseOutage) when the link
// cannot decode even without interference, and Error(InvalidParameter) when
// the fixed length exceeds the derived interference range.
DerivedGeometry derive_geometry(const NetworkParams& p);

enum class Regime { NoiseLimited, Transitional, InterferenceLimited };

struct RegimeLabel {
  Regime regime = Regime::Transitional;
  double collision_prob = 0.0;  // the value the thresholds were applied to
};

const char* to_string(Regime r);

}  // namespace mmwave
