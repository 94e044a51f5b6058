#pragma once

// Scenario configuration: JSON documents with unit-suffixed keys, figure
// presets, overrides and validation with field-path diagnostics.

#include "sorkin/biphoton.hpp"
#include "sorkin/errors.hpp"
#include "sorkin/kappa.hpp"
#include "sorkin/matterwave.hpp"
#include "sorkin/quadrature.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace sorkin {

struct ConfigIssue
{
    std::string path; ///< JSON pointer, or "line L, column C" for syntax errors
    std::string message;
};

/// Every violation found in one pass.
class ConfigError : public Error
{
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    ConfigError(std::string path, std::string message);
    const std::vector<ConfigIssue>& issues() const { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

enum class Task {
    pearson,          ///< rho_x(t) curves for several E_N
    quanton,          ///< coincidence vs single-sweep intensity
    kappa,            ///< biphoton Sorkin map (line, diagonal or surface)
    scan_negativity,  ///< max|kappa| against E_N
    scan_pearson,     ///< max|kappa| against rho_x(T)
    exotic_hierarchy, ///< one Sorkin curve per non-classical path set
    matter,           ///< matter-wave Sorkin curves per contribution
};

std::string to_string(Task t);

enum class Sweep { x2_zero, diagonal, surface };

struct ScenarioConfig
{
    std::string preset; ///< empty for user files
    Task task = Task::kappa;
    bool photon = true;

    // biphoton
    SpdcParams spdc;
    SlitArray slits;
    std::vector<std::string> paths; ///< non-classical path sets
    double en = 0.0;                ///< log negativity the state was built from

    // matter
    MatterParams matter;
    std::vector<std::string> contributions; ///< kink, loop, relativistic
    std::string method = "exact";           ///< exact, first-order or both (triple slit)

    // run
    Sweep sweep = Sweep::x2_zero;
    double x_min = 0.0, x_max = 0.0; ///< mm for photons, m for matter
    int points = 2001;
    Normalization normalization = Normalization::total0;
    std::vector<double> en_values;  ///< scans and multi-curve maps
    std::vector<double> T_values;   ///< ps
    std::vector<double> t_values;   ///< ps, Pearson curves
    QuadConfig quad;

    // output
    std::string out_dir;
    bool csv = true, json = true;

    nlohmann::json document; ///< the validated document, echoed into outputs
};

/// Parses and validates a document. Throws ConfigError listing every problem.
ScenarioConfig parse_config(const nlohmann::json& doc, const std::string& preset = {});

/// Reads a file; syntax errors are reported with line and column.
nlohmann::json read_config_file(const std::string& path);

std::vector<std::string> preset_names();
/// One-line description per preset, in the order of preset_names().
std::string preset_description(const std::string& name);
nlohmann::json preset_document(const std::string& name);
ScenarioConfig load_preset(const std::string& name);

/// Sets a value by dotted path ("state.E_N=0.4"). The value is read as JSON
/// when it parses, otherwise as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Quantities derived without running the scenario (tau0, m/hbar, eps, ...).
nlohmann::json derived_quantities(const ScenarioConfig& cfg);

} // namespace sorkin
