#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace mmwcli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string describe(mmw_status s) {
  std::string msg = mmw_last_error();
  if (msg.empty()) msg = mmw_status_name(s);
  return msg;
}

// INVALID_PARAMETER is always a rejected configuration (model values or a
// request the link mode does not support); the rest are engine failures
void check(mmw_status s) {
  if (s == MMW_OK) return;
  if (s == MMW_ERR_INVALID_PARAMETER) throw ConfigError(describe(s));
  throw EngineError(s, describe(s));
}

mmw_scheduler scheduler_of(const EmulatorConfig& e) {
  return e.scheduler == "tdma" ? MMW_SCHED_TDMA : MMW_SCHED_ALOHA;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

mmw_model_spec to_spec(const NetworkConfig& n) {
  mmw_model_spec s;
  mmw_model_spec_defaults(&s);
  s.lambda_t = n.lambda_t;
  s.lambda_o = n.lambda_o;
  s.rho_a = n.rho_a;
  s.theta_rad = n.theta_deg * kPi / 180.0;
  s.theta_c_rad = n.theta_c_deg * kPi / 180.0;
  s.power_w = n.power_mw * 1e-3;
  s.atten_1m = n.atten_1m;
  s.alpha = n.alpha;
  s.beta = n.beta;
  s.noise_w = n.noise_mw * 1e-3;
  s.link_mode = n.link_mode == "fixed" ? MMW_LINK_FIXED : MMW_LINK_RANDOM_IN_DISK;
  s.link_length_m = n.link_length;
  s.d_max_m = n.d_max;
  return s;
}

mmw_traffic to_traffic(const TrafficSection& t) {
  mmw_traffic out;
  mmw_traffic_defaults(&out);
  out.cbr_bps = t.cbr_bps;
  out.packet_bits = t.packet_bits;
  out.slot_duration_s = t.slot_s;
  out.duration_s = t.duration_s;
  out.saturated = t.saturated ? 1 : 0;
  return out;
}

Model::Model(const NetworkConfig& n) {
  const mmw_model_spec spec = to_spec(n);
  check(mmw_model_create(&spec, &m_));
  check(mmw_model_geometry(m_, &d_max_, &sectors_, &lambda_i_));
}

Model::~Model() { mmw_model_destroy(m_); }

std::string classify_regime(double collision_prob, const RegimeThresholds& t) {
  if (!(t.t_low > 0.0 && t.t_low < t.t_high && t.t_high < 1.0))
    throw ConfigError("regime thresholds must satisfy 0 < t_low < t_high < 1");
  if (collision_prob < t.t_low) return "noise_limited";
  if (collision_prob > t.t_high) return "interference_limited";
  return "transitional";
}

PointResult run_point(const ExperimentConfig& cfg, const std::string& param,
                      std::optional<double> value, std::uint64_t point_seed,
                      int engine_threads) {
  NetworkConfig net = cfg.network;
  if (!param.empty() && value) {
    if (!apply_parameter(net, param, *value))
      throw ConfigError("unknown sweep parameter \"" + param + "\"");
  }
  const bool ell_axis = param == "ell";
  const bool random_len = net.link_mode == "random_in_disk";
  // known-length points report the conditional probability at this length
  const std::optional<double> fixed_ell =
      ell_axis ? value
               : (random_len ? std::nullopt : std::optional<double>(net.link_length));

  PointResult row;
  row.param = param;
  row.value = value;

  Model model(net);
  row.d_max = model.d_max();
  row.sector_count = model.sector_count();
  row.lambda_i = model.interferer_density();

  if (cfg.eng_analytic) {
    double x = 0.0;
    if (fixed_ell) {
      check(mmw_conditional_collision_prob(model.handle(), *fixed_ell, &x));
    } else {
      check(mmw_collision_prob(model.handle(), &x));
    }
    row.an_collision = x;
    double lo = 0.0, hi = 0.0;
    check(mmw_collision_prob_bounds(model.handle(), &lo, &hi));
    row.an_lower = lo;
    row.an_upper = hi;
    if (random_len) {
      check(mmw_aloha_throughput(model.handle(), &x));
      row.an_aloha_thr = x;
      check(mmw_aloha_ase(model.handle(), cfg.area_m2, &x));
      row.an_aloha_ase = x;
      check(mmw_tdma_throughput(model.handle(), cfg.area_m2, &x));
      row.an_tdma_thr = x;
      check(mmw_tdma_ase(model.handle(), cfg.area_m2, &x));
      row.an_tdma_ase = x;
    }
  }

  if (cfg.eng_montecarlo) {
    mmw_estimate est;
    if (fixed_ell) {
      check(mmw_mc_conditional_collision_prob(model.handle(), *fixed_ell,
                                              cfg.montecarlo.trials, point_seed,
                                              engine_threads, &est));
    } else {
      check(mmw_mc_collision_prob(model.handle(), cfg.montecarlo.trials,
                                  point_seed, engine_threads, &est));
    }
    row.mc_collision = est.mean;
    row.mc_std_error = est.std_error;
    row.mc_ci_low = est.ci_low;
    row.mc_ci_high = est.ci_high;
    row.mc_trials = est.trials;
  }

  if (cfg.eng_emulator) {
    const mmw_traffic traffic = to_traffic(cfg.emulator.traffic);
    mmw_emu_report rep;
    check(mmw_emulate(model.handle(), scheduler_of(cfg.emulator),
                      cfg.emulator.core_width, &traffic,
                      cfg.emulator.deployments, point_seed,
                      cfg.emulator.omni_benchmark ? 1 : 0, engine_threads,
                      &rep));
    row.emu_collision_freq = rep.collision_freq;
    row.emu_blockage_freq = rep.blockage_freq;
    row.emu_throughput = rep.per_link_throughput;
    row.emu_ase = rep.ase;
    row.emu_links = rep.links;
    row.emu_slots = rep.slots;
    row.emu_deployments = rep.deployments;
  }

  // label from the most direct collision estimate that was computed
  std::optional<double> rho_c = row.an_collision;
  if (!rho_c) rho_c = row.mc_collision;
  if (!rho_c) rho_c = row.emu_collision_freq;
  if (rho_c) row.regime = classify_regime(*rho_c, cfg.regime);
  return row;
}

std::vector<PointResult> run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep section is required");
  const SweepConfig& sweep = *cfg.sweep;
  const std::size_t n = sweep.values.size();
  std::vector<PointResult> rows(n);
  std::vector<std::exception_ptr> errors(n);

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t workers = cfg.workers > 0 ? std::size_t(cfg.workers) : hw;
  workers = std::min(workers, n);
  // the pool parallelizes across points, so each point runs single-threaded
  const int engine_threads = workers > 1 ? 1 : 0;

  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        rows[i] = run_point(cfg, sweep.parameter, sweep.values[i],
                            mix_seed(cfg.seed, i), engine_threads);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError& e) {
      throw ConfigError(sweep.parameter + " = " +
                        std::to_string(sweep.values[i]) + ": " + e.what());
    } catch (const EngineError& e) {
      throw EngineError(e.status, sweep.parameter + " = " +
                                      std::to_string(sweep.values[i]) + ": " +
                                      e.what());
    }
  }
  return rows;
}

OptimumResult find_optimal_rho(const ExperimentConfig& cfg) {
  Model model(cfg.network);
  OptimumResult out;
  out.target = "rho_a";
  check(mmw_optimal_transmission_prob(model.handle(), &out.argument,
                                      &out.objective));
  return out;
}

OptimumResult find_optimal_density(const ExperimentConfig& cfg) {
  const auto objective = [&cfg](double lambda_t) {
    NetworkConfig net = cfg.network;
    net.lambda_t = lambda_t;
    Model model(net);
    double ase = 0.0;
    check(mmw_aloha_ase(model.handle(), cfg.area_m2, &ase));
    return ase;
  };

  const double lo = cfg.optimize.from;
  const double hi = cfg.optimize.to;
  const int points = cfg.optimize.points;

  // coarse scan on a log grid
  std::vector<double> grid(points), value(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo * std::pow(hi / lo, double(i) / double(points - 1));
    value[i] = objective(grid[i]);
  }
  int best = int(std::max_element(value.begin(), value.end()) - value.begin());

  // golden-section refinement inside the bracketing cells
  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, points - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 1e-6 * std::max(1.0, b)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    }
  }

  OptimumResult out;
  out.target = "lambda_t";
  out.argument = 0.5 * (a + b);
  out.objective = objective(out.argument);
  // a grid vertex can still win when the peak sits on a cell edge
  if (value[best] > out.objective) {
    out.argument = grid[best];
    out.objective = value[best];
  }
  return out;
}

mmw_emu_report run_emulation(const ExperimentConfig& cfg, std::uint64_t seed) {
  Model model(cfg.network);
  const mmw_traffic traffic = to_traffic(cfg.emulator.traffic);
  mmw_emu_report rep;
  check(mmw_emulate(model.handle(), scheduler_of(cfg.emulator),
                    cfg.emulator.core_width, &traffic,
                    cfg.emulator.deployments, seed,
                    cfg.emulator.omni_benchmark ? 1 : 0, /*threads=*/0, &rep));
  return rep;
}

mmw_emu_report run_traced_emulation(const ExperimentConfig& cfg,
                                    std::uint64_t seed,
                                    std::vector<mmw_slot_event>& events) {
  Model model(cfg.network);
  const mmw_traffic traffic = to_traffic(cfg.emulator.traffic);
  mmw_emu_report rep;
  const auto sink = [](void* user, const mmw_slot_event* ev) {
    static_cast<std::vector<mmw_slot_event>*>(user)->push_back(*ev);
  };
  check(mmw_emulate_traced(model.handle(), scheduler_of(cfg.emulator),
                           cfg.emulator.core_width, &traffic, seed,
                           cfg.emulator.omni_benchmark ? 1 : 0, sink, &events,
                           &rep));
  return rep;
}

}  // namespace mmwcli
