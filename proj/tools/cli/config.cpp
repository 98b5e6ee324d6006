#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mmwcli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "must be an object");
}

// every key in `obj` has to be one of `allowed` — typos should not pass silently
void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) { known = true; break; }
    if (!known) fail(where, "unknown key \"" + item.key() + "\"");
  }
}

double get_num(const json& obj, const std::string& where, const char* key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "must be a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& where,
                       const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(where + "." + key, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& where, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(where + "." + key, "must be true or false");
  return v.get<bool>();
}

std::string get_str(const json& obj, const std::string& where, const char* key,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "must be a string");
  return v.get<std::string>();
}

NetworkConfig parse_network(const json& j) {
  NetworkConfig n;
  expect_object(j, "network");
  expect_keys(j, "network",
              {"lambda_t", "lambda_o", "rho_a", "theta_deg", "theta_c_deg",
               "power_mw", "atten_1m", "alpha", "beta", "noise_mw",
               "link_mode", "link_length", "d_max"});
  n.lambda_t = get_num(j, "network", "lambda_t", n.lambda_t);
  n.lambda_o = get_num(j, "network", "lambda_o", n.lambda_o);
  n.rho_a = get_num(j, "network", "rho_a", n.rho_a);
  n.theta_deg = get_num(j, "network", "theta_deg", n.theta_deg);
  n.theta_c_deg = get_num(j, "network", "theta_c_deg", n.theta_c_deg);
  n.power_mw = get_num(j, "network", "power_mw", n.power_mw);
  n.atten_1m = get_num(j, "network", "atten_1m", n.atten_1m);
  n.alpha = get_num(j, "network", "alpha", n.alpha);
  n.beta = get_num(j, "network", "beta", n.beta);
  n.noise_mw = get_num(j, "network", "noise_mw", n.noise_mw);
  n.link_mode = get_str(j, "network", "link_mode", n.link_mode);
  n.link_length = get_num(j, "network", "link_length", n.link_length);
  n.d_max = get_num(j, "network", "d_max", n.d_max);
  if (n.link_mode != "random_in_disk" && n.link_mode != "fixed")
    fail("network.link_mode", "must be \"random_in_disk\" or \"fixed\"");
  return n;
}

SweepConfig parse_sweep(const json& j) {
  SweepConfig s;
  expect_object(j, "sweep");
  expect_keys(j, "sweep", {"parameter", "values", "from", "to", "points", "scale"});
  s.parameter = get_str(j, "sweep", "parameter", "");
  if (s.parameter.empty()) fail("sweep.parameter", "is required");
  const auto& names = sweepable_parameters();
  if (std::find(names.begin(), names.end(), s.parameter) == names.end())
    fail("sweep.parameter", "unknown axis \"" + s.parameter + "\"");

  const bool explicit_values = j.contains("values");
  const bool ranged = j.contains("from") || j.contains("to") || j.contains("points");
  if (explicit_values == ranged)
    fail("sweep", "give either values or from/to/points, not both");

  if (explicit_values) {
    const json& v = j.at("values");
    if (!v.is_array() || v.empty()) fail("sweep.values", "must be a non-empty array");
    for (const json& x : v) {
      if (!x.is_number()) fail("sweep.values", "must contain numbers only");
      s.values.push_back(x.get<double>());
    }
  } else {
    const double lo = get_num(j, "sweep", "from", std::nan(""));
    const double hi = get_num(j, "sweep", "to", std::nan(""));
    const std::uint64_t points = get_uint(j, "sweep", "points", 0);
    const std::string scale = get_str(j, "sweep", "scale", "linear");
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail("sweep", "from/to are required");
    if (points == 0) fail("sweep.points", "must be at least 1");
    if (lo > hi) fail("sweep", "from must not exceed to");
    if (scale != "linear" && scale != "log") fail("sweep.scale", "must be linear or log");
    if (scale == "log" && lo <= 0.0) fail("sweep", "log scale needs from > 0");
    if (points == 1) {
      s.values.push_back(lo);
    } else {
      for (std::uint64_t i = 0; i < points; ++i) {
        const double t = double(i) / double(points - 1);
        s.values.push_back(scale == "log"
                               ? lo * std::pow(hi / lo, t)
                               : lo + (hi - lo) * t);
      }
      s.values.back() = hi;  // pin the endpoint against pow round-off
    }
  }
  std::sort(s.values.begin(), s.values.end());
  for (double v : s.values)
    if (!std::isfinite(v)) fail("sweep.values", "must be finite");
  return s;
}

TrafficSection parse_traffic(const json& j) {
  TrafficSection t;
  expect_object(j, "emulator.traffic");
  expect_keys(j, "emulator.traffic",
              {"cbr_bps", "packet_bits", "slot_s", "duration_s", "saturated"});
  t.cbr_bps = get_num(j, "emulator.traffic", "cbr_bps", t.cbr_bps);
  t.packet_bits = get_num(j, "emulator.traffic", "packet_bits", t.packet_bits);
  t.slot_s = get_num(j, "emulator.traffic", "slot_s", t.slot_s);
  t.duration_s = get_num(j, "emulator.traffic", "duration_s", t.duration_s);
  t.saturated = get_bool(j, "emulator.traffic", "saturated", t.saturated);
  return t;
}

EmulatorConfig parse_emulator(const json& j) {
  EmulatorConfig e;
  expect_object(j, "emulator");
  expect_keys(j, "emulator",
              {"scheduler", "deployments", "core_width", "omni_benchmark", "traffic"});
  e.scheduler = get_str(j, "emulator", "scheduler", e.scheduler);
  if (e.scheduler != "aloha" && e.scheduler != "tdma")
    fail("emulator.scheduler", "must be \"aloha\" or \"tdma\"");
  e.deployments = static_cast<std::uint32_t>(
      get_uint(j, "emulator", "deployments", e.deployments));
  if (e.deployments == 0) fail("emulator.deployments", "must be at least 1");
  e.core_width = get_num(j, "emulator", "core_width", e.core_width);
  if (!(e.core_width > 0.0)) fail("emulator.core_width", "must be positive");
  e.omni_benchmark = get_bool(j, "emulator", "omni_benchmark", e.omni_benchmark);
  if (j.contains("traffic")) e.traffic = parse_traffic(j.at("traffic"));
  return e;
}

}  // namespace

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "lambda_t", "lambda_o", "rho_a", "theta_deg", "theta_c_deg",
      "power_mw", "atten_1m", "alpha", "beta", "noise_mw",
      "d_max", "link_length", "ell"};
  return names;
}

bool apply_parameter(NetworkConfig& n, const std::string& name, double value) {
  if (name == "lambda_t") n.lambda_t = value;
  else if (name == "lambda_o") n.lambda_o = value;
  else if (name == "rho_a") n.rho_a = value;
  else if (name == "theta_deg") n.theta_deg = value;
  else if (name == "theta_c_deg") n.theta_c_deg = value;
  else if (name == "power_mw") n.power_mw = value;
  else if (name == "atten_1m") n.atten_1m = value;
  else if (name == "alpha") n.alpha = value;
  else if (name == "beta") n.beta = value;
  else if (name == "noise_mw") n.noise_mw = value;
  else if (name == "d_max") n.d_max = value;
  else if (name == "link_length") n.link_length = value;
  else if (name == "ell") { /* axis of the conditional curve, not a model field */ }
  else return false;
  return true;
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  expect_object(doc, "config");
  expect_keys(doc, "config",
              {"network", "engines", "sweep", "montecarlo", "emulator",
               "regime", "optimize", "area_m2", "seed", "workers", "output"});

  if (doc.contains("network")) cfg.network = parse_network(doc.at("network"));

  if (doc.contains("engines")) {
    const json& e = doc.at("engines");
    if (!e.is_array() || e.empty())
      fail("engines", "must be a non-empty array of engine names");
    cfg.eng_analytic = cfg.eng_montecarlo = cfg.eng_emulator = false;
    for (const json& name : e) {
      if (!name.is_string()) fail("engines", "must contain strings");
      const std::string s = name.get<std::string>();
      if (s == "analytic") cfg.eng_analytic = true;
      else if (s == "montecarlo") cfg.eng_montecarlo = true;
      else if (s == "emulator") cfg.eng_emulator = true;
      else fail("engines", "unknown engine \"" + s + "\"");
    }
  }

  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));

  if (doc.contains("montecarlo")) {
    const json& m = doc.at("montecarlo");
    expect_object(m, "montecarlo");
    expect_keys(m, "montecarlo", {"trials"});
    cfg.montecarlo.trials = get_uint(m, "montecarlo", "trials", cfg.montecarlo.trials);
    if (cfg.montecarlo.trials == 0) fail("montecarlo.trials", "must be at least 1");
  }

  if (doc.contains("emulator")) cfg.emulator = parse_emulator(doc.at("emulator"));

  if (doc.contains("regime")) {
    const json& r = doc.at("regime");
    expect_object(r, "regime");
    expect_keys(r, "regime", {"t_low", "t_high"});
    cfg.regime.t_low = get_num(r, "regime", "t_low", cfg.regime.t_low);
    cfg.regime.t_high = get_num(r, "regime", "t_high", cfg.regime.t_high);
    if (!(cfg.regime.t_low > 0.0 && cfg.regime.t_low < cfg.regime.t_high &&
          cfg.regime.t_high < 1.0))
      fail("regime", "thresholds must satisfy 0 < t_low < t_high < 1");
  }

  if (doc.contains("optimize")) {
    const json& o = doc.at("optimize");
    expect_object(o, "optimize");
    expect_keys(o, "optimize", {"target", "from", "to", "points"});
    cfg.optimize.target = get_str(o, "optimize", "target", cfg.optimize.target);
    if (cfg.optimize.target != "rho_a" && cfg.optimize.target != "lambda_t")
      fail("optimize.target", "must be \"rho_a\" or \"lambda_t\"");
    cfg.optimize.from = get_num(o, "optimize", "from", cfg.optimize.from);
    cfg.optimize.to = get_num(o, "optimize", "to", cfg.optimize.to);
    cfg.optimize.points = static_cast<int>(get_uint(o, "optimize", "points",
                                                    cfg.optimize.points));
    if (!(cfg.optimize.from > 0.0 && cfg.optimize.from < cfg.optimize.to))
      fail("optimize", "scan range needs 0 < from < to");
    if (cfg.optimize.points < 4) fail("optimize.points", "must be at least 4");
  }

  cfg.area_m2 = get_num(doc, "config", "area_m2", cfg.area_m2);
  if (!(cfg.area_m2 > 0.0)) fail("area_m2", "must be positive");
  cfg.seed = get_uint(doc, "config", "seed", cfg.seed);
  cfg.workers = static_cast<int>(get_uint(doc, "config", "workers", 0));

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    expect_object(o, "output");
    expect_keys(o, "output", {"path", "format"});
    cfg.output.path = get_str(o, "output", "path", cfg.output.path);
    cfg.output.format = get_str(o, "output", "format", cfg.output.format);
    if (cfg.output.format != "csv" && cfg.output.format != "json")
      fail("output.format", "must be csv or json");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

json serialize_config(const ExperimentConfig& cfg) {
  json doc;
  json net;
  net["lambda_t"] = cfg.network.lambda_t;
  net["lambda_o"] = cfg.network.lambda_o;
  net["rho_a"] = cfg.network.rho_a;
  net["theta_deg"] = cfg.network.theta_deg;
  net["theta_c_deg"] = cfg.network.theta_c_deg;
  net["power_mw"] = cfg.network.power_mw;
  net["atten_1m"] = cfg.network.atten_1m;
  net["alpha"] = cfg.network.alpha;
  net["beta"] = cfg.network.beta;
  net["noise_mw"] = cfg.network.noise_mw;
  net["link_mode"] = cfg.network.link_mode;
  net["link_length"] = cfg.network.link_length;
  net["d_max"] = cfg.network.d_max;
  doc["network"] = net;

  json engines = json::array();
  if (cfg.eng_analytic) engines.push_back("analytic");
  if (cfg.eng_montecarlo) engines.push_back("montecarlo");
  if (cfg.eng_emulator) engines.push_back("emulator");
  doc["engines"] = engines;

  if (cfg.sweep) {
    json s;
    s["parameter"] = cfg.sweep->parameter;
    s["values"] = cfg.sweep->values;
    doc["sweep"] = s;
  }

  doc["montecarlo"] = json{{"trials", cfg.montecarlo.trials}};

  json emu;
  emu["scheduler"] = cfg.emulator.scheduler;
  emu["deployments"] = cfg.emulator.deployments;
  emu["core_width"] = cfg.emulator.core_width;
  emu["omni_benchmark"] = cfg.emulator.omni_benchmark;
  emu["traffic"] = json{{"cbr_bps", cfg.emulator.traffic.cbr_bps},
                        {"packet_bits", cfg.emulator.traffic.packet_bits},
                        {"slot_s", cfg.emulator.traffic.slot_s},
                        {"duration_s", cfg.emulator.traffic.duration_s},
                        {"saturated", cfg.emulator.traffic.saturated}};
  doc["emulator"] = emu;

  doc["regime"] = json{{"t_low", cfg.regime.t_low}, {"t_high", cfg.regime.t_high}};
  doc["optimize"] = json{{"target", cfg.optimize.target},
                         {"from", cfg.optimize.from},
                         {"to", cfg.optimize.to},
                         {"points", cfg.optimize.points}};
  doc["area_m2"] = cfg.area_m2;
  doc["seed"] = cfg.seed;
  doc["workers"] = cfg.workers;
  doc["output"] = json{{"path", cfg.output.path}, {"format", cfg.output.format}};
  return doc;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace mmwcli
