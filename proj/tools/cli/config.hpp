#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Experiment configuration: one declarative JSON file with nested sections.
// Boundary units are the reporting ones (angles in degrees, powers in
// milliwatts, densities per m^2, lengths in meters); conversion to the
// engine's SI/radian units happens when a model is built.

namespace mmwcli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NetworkConfig {
  double lambda_t = 0.1;
  double lambda_o = 0.01;
  double rho_a = 1.0;
  double theta_deg = 20.0;
  double theta_c_deg = 5.0;
  double power_mw = 2.5;
  double atten_1m = 1.0;
  double alpha = 3.0;
  double beta = 4.0;
  double noise_mw = 0.0;
  std::string link_mode = "random_in_disk";  // or "fixed"
  double link_length = 1.0;                  // m, fixed mode
  double d_max = 10.0;                       // m, random mode
};

// resolved sweep axis: the grid is stored explicitly and kept sorted
struct SweepConfig {
  std::string parameter;
  std::vector<double> values;
};

struct MonteCarloConfig {
  std::uint64_t trials = 100000;
};

struct TrafficSection {
  double cbr_bps = 384e6;
  double packet_bits = 40e3;
  double slot_s = 100e-6;
  double duration_s = 1.0;  // 10^4 slots at the default slot length
  bool saturated = true;
};

struct EmulatorConfig {
  std::string scheduler = "aloha";  // or "tdma"
  std::uint32_t deployments = 50;
  double core_width = 10.0;
  bool omni_benchmark = false;
  TrafficSection traffic;
};

struct RegimeThresholds {
  double t_low = 0.05;
  double t_high = 0.5;
};

struct OptimizeConfig {
  std::string target = "rho_a";  // or "lambda_t"
  double from = 0.05;            // lambda_t scan range
  double to = 20.0;
  int points = 64;
};

struct OutputConfig {
  std::string path;  // empty: print to stdout only
  std::string format = "csv";
};

struct ExperimentConfig {
  NetworkConfig network;
  bool eng_analytic = true;
  bool eng_montecarlo = false;
  bool eng_emulator = false;
  std::optional<SweepConfig> sweep;
  MonteCarloConfig montecarlo;
  EmulatorConfig emulator;
  RegimeThresholds regime;
  OptimizeConfig optimize;
  double area_m2 = 100.0;  // scheduler region for the closed-form ASEs
  std::uint64_t seed = 1;
  int workers = 0;  // sweep worker pool, 0 = hardware count
  OutputConfig output;
};

// Throws ConfigError with a section.key context on any problem, including
// keys that are not recognized.
ExperimentConfig parse_config(const nlohmann::ordered_json& doc);
ExperimentConfig load_config(const std::string& path);

// Serialization emits every section fully resolved; parsing the result
// reproduces an equal configuration.
nlohmann::ordered_json serialize_config(const ExperimentConfig& cfg);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Sweepable axis names (network fields plus the link-length axis "ell").
// Returns false when `name` is unknown; "ell" leaves the network untouched.
bool apply_parameter(NetworkConfig& n, const std::string& name, double value);
const std::vector<std::string>& sweepable_parameters();

}  // namespace mmwcli
