#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mmwcli {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> result_columns(const ExperimentConfig& cfg) {
  std::vector<std::string> cols = {"param", "value", "d_max", "sector_count",
                                   "lambda_i"};
  if (cfg.eng_analytic) {
    cols.insert(cols.end(), {"an_collision", "an_lower", "an_upper",
                             "an_aloha_thr", "an_aloha_ase", "an_tdma_thr",
                             "an_tdma_ase"});
  }
  if (cfg.eng_montecarlo) {
    cols.insert(cols.end(), {"mc_collision", "mc_std_error", "mc_ci_low",
                             "mc_ci_high", "mc_trials"});
  }
  if (cfg.eng_emulator) {
    cols.insert(cols.end(),
                {"emu_collision_freq", "emu_blockage_freq", "emu_throughput",
                 "emu_ase", "emu_links", "emu_slots", "emu_deployments"});
  }
  cols.push_back("regime");
  return cols;
}

namespace {

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

template <typename T>
std::string csv_int_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

// cells in the same fixed order as result_columns
std::vector<std::string> row_cells(const ExperimentConfig& cfg,
                                   const PointResult& r) {
  std::vector<std::string> cells = {r.param, csv_cell(r.value),
                                    format_double(r.d_max),
                                    std::to_string(r.sector_count),
                                    format_double(r.lambda_i)};
  if (cfg.eng_analytic) {
    for (const auto& v : {r.an_collision, r.an_lower, r.an_upper,
                          r.an_aloha_thr, r.an_aloha_ase, r.an_tdma_thr,
                          r.an_tdma_ase})
      cells.push_back(csv_cell(v));
  }
  if (cfg.eng_montecarlo) {
    for (const auto& v : {r.mc_collision, r.mc_std_error, r.mc_ci_low,
                          r.mc_ci_high})
      cells.push_back(csv_cell(v));
    cells.push_back(csv_int_cell(r.mc_trials));
  }
  if (cfg.eng_emulator) {
    for (const auto& v : {r.emu_collision_freq, r.emu_blockage_freq,
                          r.emu_throughput, r.emu_ase})
      cells.push_back(csv_cell(v));
    cells.push_back(csv_int_cell(r.emu_links));
    cells.push_back(csv_int_cell(r.emu_slots));
    cells.push_back(csv_int_cell(r.emu_deployments));
  }
  cells.push_back(r.regime);
  return cells;
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

json number_or_null(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
json int_or_null(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string rows_to_csv(const ExperimentConfig& cfg,
                        const std::vector<PointResult>& rows) {
  std::string out = join_csv(result_columns(cfg));
  for (const PointResult& r : rows) out += join_csv(row_cells(cfg, r));
  return out;
}

std::string rows_to_json(const ExperimentConfig& cfg,
                         const std::vector<PointResult>& rows) {
  json arr = json::array();
  for (const PointResult& r : rows) {
    json o;
    o["param"] = r.param;
    o["value"] = number_or_null(r.value);
    o["d_max"] = r.d_max;
    o["sector_count"] = r.sector_count;
    o["lambda_i"] = r.lambda_i;
    if (cfg.eng_analytic) {
      o["an_collision"] = number_or_null(r.an_collision);
      o["an_lower"] = number_or_null(r.an_lower);
      o["an_upper"] = number_or_null(r.an_upper);
      o["an_aloha_thr"] = number_or_null(r.an_aloha_thr);
      o["an_aloha_ase"] = number_or_null(r.an_aloha_ase);
      o["an_tdma_thr"] = number_or_null(r.an_tdma_thr);
      o["an_tdma_ase"] = number_or_null(r.an_tdma_ase);
    }
    if (cfg.eng_montecarlo) {
      o["mc_collision"] = number_or_null(r.mc_collision);
      o["mc_std_error"] = number_or_null(r.mc_std_error);
      o["mc_ci_low"] = number_or_null(r.mc_ci_low);
      o["mc_ci_high"] = number_or_null(r.mc_ci_high);
      o["mc_trials"] = int_or_null(r.mc_trials);
    }
    if (cfg.eng_emulator) {
      o["emu_collision_freq"] = number_or_null(r.emu_collision_freq);
      o["emu_blockage_freq"] = number_or_null(r.emu_blockage_freq);
      o["emu_throughput"] = number_or_null(r.emu_throughput);
      o["emu_ase"] = number_or_null(r.emu_ase);
      o["emu_links"] = int_or_null(r.emu_links);
      o["emu_slots"] = int_or_null(r.emu_slots);
      o["emu_deployments"] = int_or_null(r.emu_deployments);
    }
    o["regime"] = r.regime;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string trace_to_csv(const std::vector<mmw_slot_event>& events) {
  std::string out = "slot,link,attempted,blocked,collided,delivered\n";
  for (const mmw_slot_event& ev : events) {
    out += std::to_string(ev.slot);
    out += ',';
    out += std::to_string(ev.link);
    out += ',';
    out += std::to_string(int(ev.attempted));
    out += ',';
    out += std::to_string(int(ev.blocked));
    out += ',';
    out += std::to_string(int(ev.collided));
    out += ',';
    out += std::to_string(int(ev.delivered));
    out += '\n';
  }
  return out;
}

std::string trace_to_json(const std::vector<mmw_slot_event>& events) {
  json arr = json::array();
  for (const mmw_slot_event& ev : events) {
    json o;
    o["slot"] = ev.slot;
    o["link"] = ev.link;
    o["attempted"] = int(ev.attempted);
    o["blocked"] = int(ev.blocked);
    o["collided"] = int(ev.collided);
    o["delivered"] = int(ev.delivered);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

namespace {

std::vector<std::pair<std::string, std::string>> report_fields(
    const ExperimentConfig& cfg, const mmw_emu_report& rep) {
  return {{"scheduler", cfg.emulator.scheduler},
          {"core_width", format_double(cfg.emulator.core_width)},
          {"deployments", std::to_string(rep.deployments)},
          {"slots", std::to_string(rep.slots)},
          {"links", std::to_string(rep.links)},
          {"attempted", std::to_string(rep.attempted)},
          {"blocked", std::to_string(rep.blocked)},
          {"collided", std::to_string(rep.collided)},
          {"delivered", std::to_string(rep.delivered)},
          {"throughput", format_double(rep.per_link_throughput)},
          {"ase", format_double(rep.ase)},
          {"collision_freq", format_double(rep.collision_freq)},
          {"blockage_freq", format_double(rep.blockage_freq)}};
}

}  // namespace

std::string report_to_csv(const ExperimentConfig& cfg,
                          const mmw_emu_report& rep) {
  const auto fields = report_fields(cfg, rep);
  std::vector<std::string> header, cells;
  for (const auto& [k, v] : fields) {
    header.push_back(k);
    cells.push_back(v);
  }
  return join_csv(header) + join_csv(cells);
}

std::string report_to_json(const ExperimentConfig& cfg,
                           const mmw_emu_report& rep) {
  json o;
  o["scheduler"] = cfg.emulator.scheduler;
  o["core_width"] = cfg.emulator.core_width;
  o["deployments"] = rep.deployments;
  o["slots"] = rep.slots;
  o["links"] = rep.links;
  o["attempted"] = rep.attempted;
  o["blocked"] = rep.blocked;
  o["collided"] = rep.collided;
  o["delivered"] = rep.delivered;
  o["throughput"] = rep.per_link_throughput;
  o["ase"] = rep.ase;
  o["collision_freq"] = rep.collision_freq;
  o["blockage_freq"] = rep.blockage_freq;
  return o.dump(2) + "\n";
}

std::string optimum_to_csv(const OptimumResult& opt) {
  return "target,optimum,objective\n" + opt.target + ',' +
         format_double(opt.argument) + ',' + format_double(opt.objective) +
         '\n';
}

std::string optimum_to_json(const OptimumResult& opt) {
  json o;
  o["target"] = opt.target;
  o["optimum"] = opt.argument;
  o["objective"] = opt.objective;
  return o.dump(2) + "\n";
}

std::string render_manifest(const ExperimentConfig& cfg,
                            const std::string& command) {
  json o;
  o["command"] = command;
  o["engine_version"] = mmw_version();
  o["seed"] = cfg.seed;
  o["columns"] = result_columns(cfg);
  o["config"] = serialize_config(cfg);
  return o.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace mmwcli
