#pragma once

// Executes a validated scenario and writes its tables.

#include "sorkin/scenario.hpp"

#include <string>
#include <vector>

namespace sorkin {

/// Engine version stamped into every output.
std::string engine_version();

struct Table
{
    std::string name; ///< file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunResult
{
    nlohmann::json summary;
    std::vector<Table> tables;
};

RunResult run_scenario(const ScenarioConfig& cfg, Exec exec = Exec::parallel);

/// Output directory: the explicit flag, else output.dir, else $SORKIN_OUT_DIR,
/// else "sorkin-out".
std::string resolve_out_dir(const ScenarioConfig& cfg, const std::string& flag);

/// Writes <name>.csv per table and summary.json; returns the paths written.
std::vector<std::string> write_outputs(const ScenarioConfig& cfg, const RunResult& r, const std::string& dir);

/// Human-readable summary lines.
std::string summary_text(const RunResult& r);

} // namespace sorkin
