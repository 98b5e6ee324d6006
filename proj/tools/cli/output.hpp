#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "engine.hpp"

namespace mmwcli {

// column list is a pure function of the selected engines
std::vector<std::string> result_columns(const ExperimentConfig& cfg);

// one row per grid point, header first, numbers rendered with %.10g so a
// rerun with the same seed reproduces the file byte for byte
std::string rows_to_csv(const ExperimentConfig& cfg,
                        const std::vector<PointResult>& rows);
std::string rows_to_json(const ExperimentConfig& cfg,
                         const std::vector<PointResult>& rows);

std::string trace_to_csv(const std::vector<mmw_slot_event>& events);
std::string trace_to_json(const std::vector<mmw_slot_event>& events);

std::string report_to_csv(const ExperimentConfig& cfg,
                          const mmw_emu_report& rep);
std::string report_to_json(const ExperimentConfig& cfg,
                           const mmw_emu_report& rep);

std::string optimum_to_csv(const OptimumResult& opt);
std::string optimum_to_json(const OptimumResult& opt);

// full effective config + seed + schema, for reproducing the run
std::string render_manifest(const ExperimentConfig& cfg,
                            const std::string& command);

// writes to <path>.tmp in full, then renames over <path>
void write_atomic(const std::string& path, const std::string& content);

std::string format_double(double v);  // %.10g

}  // namespace mmwcli
