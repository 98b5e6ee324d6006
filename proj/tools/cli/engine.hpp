#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <mmwave.h>

#include "config.hpp"

// Drives the engine through the C API only. Model creation failures caused
// by rejected parameter values count as configuration errors; everything the
// engine reports after a model exists is an engine error.

namespace mmwcli {

struct EngineError : std::runtime_error {
  mmw_status status;
  EngineError(mmw_status s, const std::string& msg)
      : std::runtime_error(msg), status(s) {}
};

class Model {
 public:
  explicit Model(const NetworkConfig& n);
  ~Model();
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  mmw_model* handle() const { return m_; }
  double d_max() const { return d_max_; }
  int sector_count() const { return sectors_; }
  double interferer_density() const { return lambda_i_; }

 private:
  mmw_model* m_ = nullptr;
  double d_max_ = 0.0;
  int sectors_ = 0;
  double lambda_i_ = 0.0;
};

mmw_model_spec to_spec(const NetworkConfig& n);
mmw_traffic to_traffic(const TrafficSection& t);

// strict thresholds: below t_low noise dominates, above t_high interference
// dominates, anything else is the hand-off band
std::string classify_regime(double collision_prob, const RegimeThresholds& t);

struct PointResult {
  std::string param;
  std::optional<double> value;
  double d_max = 0.0;
  int sector_count = 0;
  double lambda_i = 0.0;
  std::optional<double> an_collision, an_lower, an_upper;
  std::optional<double> an_aloha_thr, an_aloha_ase, an_tdma_thr, an_tdma_ase;
  std::optional<double> mc_collision, mc_std_error, mc_ci_low, mc_ci_high;
  std::optional<std::uint64_t> mc_trials;
  std::optional<double> emu_collision_freq, emu_blockage_freq;
  std::optional<double> emu_throughput, emu_ase;
  std::optional<std::uint64_t> emu_links, emu_slots;
  std::optional<std::uint32_t> emu_deployments;
  std::string regime;
};

// One grid point: builds the model at `value` on the sweep axis (or the
// configured network when param is empty) and runs every selected engine.
PointResult run_point(const ExperimentConfig& cfg, const std::string& param,
                      std::optional<double> value, std::uint64_t point_seed,
                      int engine_threads);

// Worker pool over the sweep grid; rows come back in grid order and the
// per-point seeds depend only on (cfg.seed, index), so the worker count
// never changes the output.
std::vector<PointResult> run_sweep(const ExperimentConfig& cfg);

struct OptimumResult {
  std::string target;
  double argument = 0.0;   // optimal rho_a or lambda_t
  double objective = 0.0;  // throughput or ASE at the optimum
};

OptimumResult find_optimal_rho(const ExperimentConfig& cfg);
// coarse log grid over [optimize.from, optimize.to] followed by golden-section
// refinement of the bracketing cells; objective is the ALOHA ASE on area_m2
OptimumResult find_optimal_density(const ExperimentConfig& cfg);

// emulator front-ends
mmw_emu_report run_emulation(const ExperimentConfig& cfg, std::uint64_t seed);
mmw_emu_report run_traced_emulation(const ExperimentConfig& cfg,
                                    std::uint64_t seed,
                                    std::vector<mmw_slot_event>& events);

// deterministic per-index sub-seed (bit mixer, avalanche on every bit)
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mmwcli
