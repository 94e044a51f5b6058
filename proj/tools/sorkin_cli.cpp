// sorkin: run figure presets or JSON scenario files.
//
// Exit codes: 0 success, 1 other failure, 2 configuration error,
// 3 quadrature did not converge.

#include "sorkin/errors.hpp"
#include "sorkin/runner.hpp"
#include "sorkin/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace sorkin;

namespace {

struct Common
{
    std::string preset;
    std::string file;
    std::string out;
    int grid = 0;
    std::string normalization;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c, bool with_out)
{
    cmd->add_option("config", c.file, "Scenario file (JSON)");
    cmd->add_option("--preset", c.preset, "Built-in preset (see list-presets)");
    if (with_out)
        cmd->add_option("--out", c.out, "Output directory (default: $SORKIN_OUT_DIR or ./sorkin-out)");
    cmd->add_option("--grid", c.grid, "Screen points (per axis for surfaces)")->check(CLI::Range(2, 100000));
    cmd->add_option("--normalization", c.normalization, "Sorkin denominator")
        ->check(CLI::IsMember({"central", "total0"}));
    cmd->add_option("--override", c.overrides, "Set a config value, e.g. state.E_N=0.4")->take_all();
}

ScenarioConfig load(const Common& c)
{
    if (c.preset.empty() == c.file.empty())
        throw ConfigError("arguments", "give exactly one of a config file or --preset");
    nlohmann::json doc = c.preset.empty() ? read_config_file(c.file) : preset_document(c.preset);
    if (c.grid > 0)
        apply_override(doc, "run.points=" + std::to_string(c.grid));
    if (!c.normalization.empty())
        apply_override(doc, "run.normalization=\"" + c.normalization + "\"");
    for (const auto& o : c.overrides)
        apply_override(doc, o);
    return parse_config(doc, c.preset);
}

int report_config_error(const ConfigError& e)
{
    std::cerr << "configuration error:\n";
    for (const auto& i : e.issues())
        std::cerr << "  " << (i.path.empty() ? "/" : i.path) << ": " << i.message << '\n';
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sorkin parameters for biphotons and matter waves through multi-slit gratings"};
    app.require_subcommand(1);

    Common run_opts, val_opts;
    auto* run = app.add_subcommand("run", "Run a scenario and write CSV/JSON outputs");
    add_common(run, run_opts, true);
    auto* validate = app.add_subcommand("validate", "Check a scenario and list derived quantities");
    add_common(validate, val_opts, false);
    auto* list = app.add_subcommand("list-presets", "List built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& name : preset_names())
                std::cout << name << "  " << preset_description(name) << '\n';
            return 0;
        }
        if (validate->parsed()) {
            const ScenarioConfig cfg = load(val_opts);
            std::cout << "ok: task " << to_string(cfg.task) << '\n';
            std::cout << derived_quantities(cfg).dump(2) << '\n';
            return 0;
        }
        const ScenarioConfig cfg = load(run_opts);
        const RunResult r = run_scenario(cfg);
        const std::string dir = resolve_out_dir(cfg, run_opts.out);
        const auto files = write_outputs(cfg, r, dir);
        std::cout << summary_text(r);
        for (const auto& f : files)
            std::cout << "wrote " << f << '\n';
        return 0;
    } catch (const ConfigError& e) {
        return report_config_error(e);
    } catch (const NotConverged& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const InvalidParameter& e) {
        std::cerr << "configuration error:\n  " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
