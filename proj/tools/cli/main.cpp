#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <mmwave.h>

#include "config.hpp"
#include "engine.hpp"
#include "output.hpp"

// exit codes: 0 success, 2 configuration/usage error, 3 engine error

namespace {

using namespace mmwcli;

struct CliArgs {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string format;
  std::string manifest;
  std::string target;
  std::string scheduler;
  bool full_trace = false;
};

void add_common(CLI::App* cmd, CliArgs& a) {
  cmd->add_option("--config", a.config, "experiment config file (JSON)")
      ->required();
  cmd->add_option("--seed", a.seed, "override the config seed")
      ->each([&a](const std::string&) { a.seed_set = true; });
  cmd->add_option("--out", a.out, "output path (overrides output.path)");
  cmd->add_option("--format", a.format, "csv or json (overrides output.format)");
  cmd->add_option("--manifest", a.manifest,
                  "also write a JSON manifest with the full config and seed");
}

ExperimentConfig load_effective(const CliArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.seed_set) cfg.seed = a.seed;
  if (!a.out.empty()) cfg.output.path = a.out;
  if (!a.format.empty()) {
    if (a.format != "csv" && a.format != "json")
      throw ConfigError("--format must be csv or json");
    cfg.output.format = a.format;
  }
  if (!a.scheduler.empty()) {
    if (a.scheduler != "aloha" && a.scheduler != "tdma")
      throw ConfigError("--scheduler must be aloha or tdma");
    cfg.emulator.scheduler = a.scheduler;
  }
  if (!a.target.empty()) {
    if (a.target != "rho_a" && a.target != "lambda_t")
      throw ConfigError("--target must be rho_a or lambda_t");
    cfg.optimize.target = a.target;
  }
  return cfg;
}

void maybe_write_manifest(const ExperimentConfig& cfg, const CliArgs& a,
                          const std::string& command) {
  if (!a.manifest.empty())
    write_atomic(a.manifest, render_manifest(cfg, command));
}

void print_metric(const char* name, const std::optional<double>& v) {
  if (v) std::cout << name << " = " << format_double(*v) << "\n";
}

int cmd_analyze(const CliArgs& a) {
  ExperimentConfig cfg = load_effective(a);
  PointResult row = run_point(cfg, "", std::nullopt, cfg.seed, 0);

  std::cout << "d_max = " << format_double(row.d_max) << "\n";
  std::cout << "sector_count = " << row.sector_count << "\n";
  std::cout << "lambda_i = " << format_double(row.lambda_i) << "\n";
  print_metric("an_collision", row.an_collision);
  print_metric("an_lower", row.an_lower);
  print_metric("an_upper", row.an_upper);
  print_metric("an_aloha_thr", row.an_aloha_thr);
  print_metric("an_aloha_ase", row.an_aloha_ase);
  print_metric("an_tdma_thr", row.an_tdma_thr);
  print_metric("an_tdma_ase", row.an_tdma_ase);
  print_metric("mc_collision", row.mc_collision);
  print_metric("mc_std_error", row.mc_std_error);
  print_metric("emu_collision_freq", row.emu_collision_freq);
  print_metric("emu_throughput", row.emu_throughput);
  print_metric("emu_ase", row.emu_ase);
  if (!row.regime.empty()) std::cout << "regime = " << row.regime << "\n";

  if (!cfg.output.path.empty()) {
    const std::vector<PointResult> rows{row};
    write_atomic(cfg.output.path, cfg.output.format == "json"
                                      ? rows_to_json(cfg, rows)
                                      : rows_to_csv(cfg, rows));
  }
  maybe_write_manifest(cfg, a, "analyze");
  return 0;
}

int cmd_sweep(const CliArgs& a) {
  ExperimentConfig cfg = load_effective(a);
  if (!cfg.sweep)
    throw ConfigError("sweep needs a sweep section in the config");
  if (cfg.output.path.empty())
    throw ConfigError("sweep needs an output path (--out or output.path)");

  const std::vector<PointResult> rows = run_sweep(cfg);
  write_atomic(cfg.output.path, cfg.output.format == "json"
                                    ? rows_to_json(cfg, rows)
                                    : rows_to_csv(cfg, rows));
  maybe_write_manifest(cfg, a, "sweep");
  std::cout << "wrote " << rows.size() << " rows to " << cfg.output.path
            << "\n";
  return 0;
}

int cmd_optimize(const CliArgs& a) {
  ExperimentConfig cfg = load_effective(a);
  const OptimumResult opt = cfg.optimize.target == "lambda_t"
                                ? find_optimal_density(cfg)
                                : find_optimal_rho(cfg);
  if (opt.target == "rho_a") {
    std::cout << "rho_a_opt = " << format_double(opt.argument) << "\n";
    std::cout << "throughput_opt = " << format_double(opt.objective) << "\n";
  } else {
    std::cout << "lambda_t_opt = " << format_double(opt.argument) << "\n";
    std::cout << "ase_opt = " << format_double(opt.objective) << "\n";
  }
  if (!cfg.output.path.empty())
    write_atomic(cfg.output.path, cfg.output.format == "json"
                                      ? optimum_to_json(opt)
                                      : optimum_to_csv(opt));
  maybe_write_manifest(cfg, a, "optimize");
  return 0;
}

int cmd_emulate(const CliArgs& a) {
  ExperimentConfig cfg = load_effective(a);
  mmw_emu_report rep;
  if (a.full_trace) {
    if (cfg.output.path.empty())
      throw ConfigError("--full-trace needs an output path");
    std::vector<mmw_slot_event> events;
    rep = run_traced_emulation(cfg, cfg.seed, events);
    write_atomic(cfg.output.path, cfg.output.format == "json"
                                      ? trace_to_json(events)
                                      : trace_to_csv(events));
  } else {
    rep = run_emulation(cfg, cfg.seed);
    if (!cfg.output.path.empty())
      write_atomic(cfg.output.path, cfg.output.format == "json"
                                        ? report_to_json(cfg, rep)
                                        : report_to_csv(cfg, rep));
  }

  std::cout << "scheduler = " << cfg.emulator.scheduler << "\n";
  std::cout << "deployments = " << rep.deployments << "\n";
  std::cout << "slots = " << rep.slots << "\n";
  std::cout << "links = " << rep.links << "\n";
  std::cout << "attempted = " << rep.attempted << "\n";
  std::cout << "blocked = " << rep.blocked << "\n";
  std::cout << "collided = " << rep.collided << "\n";
  std::cout << "delivered = " << rep.delivered << "\n";
  std::cout << "throughput = " << format_double(rep.per_link_throughput)
            << "\n";
  std::cout << "ase = " << format_double(rep.ase) << "\n";
  std::cout << "collision_freq = " << format_double(rep.collision_freq)
            << "\n";
  std::cout << "blockage_freq = " << format_double(rep.blockage_freq) << "\n";
  maybe_write_manifest(cfg, a, "emulate");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis engine for directional mmWave ad hoc networks"};
  app.require_subcommand(1);

  CliArgs a;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "all metrics at a single operating point");
  add_common(analyze, a);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "grid sweep over one parameter, one output row per point");
  add_common(sweep, a);
  CLI::App* optimize = app.add_subcommand(
      "optimize", "search the optimal transmission probability or density");
  add_common(optimize, a);
  optimize->add_option("--target", a.target, "rho_a or lambda_t");
  CLI::App* emulate = app.add_subcommand(
      "emulate", "slot-level emulation on planar deployments");
  add_common(emulate, a);
  emulate->add_option("--scheduler", a.scheduler, "aloha or tdma");
  emulate->add_flag("--full-trace", a.full_trace,
                    "write one event per (slot, link) instead of the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config errors
  }

  try {
    if (analyze->parsed()) return cmd_analyze(a);
    if (sweep->parsed()) return cmd_sweep(a);
    if (optimize->parsed()) return cmd_optimize(a);
    if (emulate->parsed()) return cmd_emulate(a);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "engine error [" << mmw_status_name(e.status) << "]: "
              << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
