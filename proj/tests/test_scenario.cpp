#include "sorkin/runner.hpp"
#include "sorkin/scenario.hpp"

#include "doctest.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace sorkin;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<ConfigIssue> issues_of(const json& doc)
{
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool has_issue(const std::vector<ConfigIssue>& v, const std::string& path)
{
    for (const auto& i : v)
        if (i.path == path)
            return true;
    return false;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("sorkin-test-" + name);
    fs::remove_all(d);
    return d;
}

int cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + SORKIN_CLI + "\" " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

} // namespace

TEST_CASE("every preset validates")
{
    const auto names = preset_names();
    CHECK(names.size() == 11);
    for (const auto& n : names) {
        CAPTURE(n);
        CHECK_NOTHROW(load_preset(n));
        CHECK_FALSE(preset_description(n).empty());
    }
    CHECK_THROWS_AS(load_preset("fig99"), ConfigError);
}

TEST_CASE("zero slit width is rejected with its field path")
{
    json doc = preset_document("fig6-sorkin-double");
    doc["geometry"]["beta_mm"] = 0.0;
    CHECK(has_issue(issues_of(doc), "/geometry/beta_mm"));
}

TEST_CASE("negative times are rejected")
{
    json doc = preset_document("fig6-sorkin-double");
    doc["geometry"]["T_ps"] = -4.0;
    CHECK(has_issue(issues_of(doc), "/geometry/T_ps"));
    json m = preset_document("fig13-neutron-rank");
    m["geometry"]["tau_s"] = -1.0;
    CHECK(has_issue(issues_of(m), "/geometry/tau_s"));
}

TEST_CASE("unknown keys are rejected and all problems are reported together")
{
    json doc = preset_document("fig6-sorkin-double");
    doc["geometry"]["width"] = 1.0;
    doc["state"]["sigma_mm"] = "wide";
    const auto v = issues_of(doc);
    CHECK(has_issue(v, "/geometry/width"));
    CHECK(has_issue(v, "/state/sigma_mm"));
}

TEST_CASE("task and species must match")
{
    json doc = preset_document("fig13-neutron-rank");
    doc["task"] = "quanton";
    CHECK(has_issue(issues_of(doc), "/task"));
}

TEST_CASE("overrides set nested values")
{
    json doc = preset_document("fig6-sorkin-double");
    apply_override(doc, "state.E_N=0.35");
    apply_override(doc, "run.normalization=central");
    apply_override(doc, "run.paths=[\"kink_b\"]");
    const auto cfg = parse_config(doc);
    CHECK(cfg.en == 0.35);
    CHECK(cfg.normalization == Normalization::central);
    CHECK(cfg.paths == std::vector<std::string>{"kink_b"});
    CHECK_THROWS_AS(apply_override(doc, "no-equals-sign"), ConfigError);
}

TEST_CASE("syntax errors carry line and column")
{
    const fs::path d = scratch_dir("syntax");
    fs::create_directories(d);
    const fs::path f = d / "bad.json";
    std::ofstream(f) << "{\n  \"task\": \"kappa\",\n  \"species\": {\n}}}\n";
    try {
        read_config_file(f.string());
        FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
        REQUIRE_FALSE(e.issues().empty());
        CHECK(e.issues()[0].path.find("line 4") != std::string::npos);
    }
}

TEST_CASE("double-slit preset reports the derived inter-slit time")
{
    const auto cfg = load_preset("fig6-sorkin-double");
    const json d = derived_quantities(cfg);
    CHECK(d["eps_ps"].get<double>() == doctest::Approx(20.39318).epsilon(1e-5));
}

TEST_CASE("quanton run writes both curves and the fringe summary")
{
    const auto cfg = load_preset("fig4-quanton");
    const RunResult r = run_scenario(cfg);
    REQUIRE(r.tables.size() == 2);
    const fs::path d = scratch_dir("quanton");
    const auto files = write_outputs(cfg, r, d.string());
    CHECK(fs::exists(d / "intensity_x2_zero.csv"));
    CHECK(fs::exists(d / "intensity_coincidence.csv"));
    CHECK(fs::exists(d / "summary.json"));
    const json s = json::parse(slurp(d / "summary.json"));
    CHECK(s["preset"] == "fig4-quanton");
    CHECK(s["provenance"].contains("engine_version"));
    CHECK(s["provenance"]["tolerances"].contains("quad_tol"));
    CHECK(s["results"]["period_ratio"].get<double>() == doctest::Approx(0.5).epsilon(0.02));
    const std::string csv = slurp(d / "intensity_coincidence.csv");
    CHECK(csv.find("# geometry.d_mm = 0.1") != std::string::npos);
}

TEST_CASE("neutron run reports three curves and the transit time")
{
    auto doc = preset_document("fig13-neutron-rank");
    doc["run"]["points"] = 101;
    const auto cfg = parse_config(doc, "fig13-neutron-rank");
    const RunResult r = run_scenario(cfg);
    const json& res = r.summary["results"];
    CHECK(res["eps_s"].get<double>() == doctest::Approx(18e-3).epsilon(0.05));
    for (const char* c : {"kink", "loop", "relativistic"})
        CHECK(res["per_contribution"].contains(c));
    REQUIRE(r.tables.size() == 1);
    CHECK(r.tables[0].columns.size() == 4);
}

TEST_CASE("empty path set gives a zero map")
{
    auto doc = preset_document("fig6-sorkin-double");
    doc["run"]["paths"] = json::array();
    doc["run"]["points"] = 51;
    const auto cfg = parse_config(doc);
    const RunResult r = run_scenario(cfg);
    for (const auto& row : r.tables.at(0).rows)
        for (std::size_t i = 2; i < row.size(); ++i)
            CHECK(row[i] == 0.0);
}

TEST_CASE("identical configurations give identical files")
{
    auto doc = preset_document("fig12-electron-triple");
    doc["run"]["points"] = 201;
    const auto cfg = parse_config(doc, "fig12-electron-triple");
    const fs::path a = scratch_dir("det-a"), b = scratch_dir("det-b");
    write_outputs(cfg, run_scenario(cfg, Exec::parallel), a.string());
    write_outputs(cfg, run_scenario(cfg, Exec::serial), b.string());
    for (const auto& e : fs::directory_iterator(a)) {
        CAPTURE(e.path().filename().string());
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
}

TEST_CASE("output directory precedence")
{
    auto cfg = load_preset("fig3-pearson");
    CHECK(resolve_out_dir(cfg, "flag") == "flag");
    cfg.out_dir = "from-config";
    CHECK(resolve_out_dir(cfg, "") == "from-config");
    cfg.out_dir.clear();
    setenv("SORKIN_OUT_DIR", "from-env", 1);
    CHECK(resolve_out_dir(cfg, "") == "from-env");
    unsetenv("SORKIN_OUT_DIR");
    CHECK(resolve_out_dir(cfg, "") == "sorkin-out");
}

TEST_CASE("command-line exit codes")
{
    const fs::path d = scratch_dir("cli");
    CHECK(cli("list-presets") == 0);
    CHECK(cli("validate --preset fig6-sorkin-double") == 0);
    CHECK(cli("validate --preset fig6-sorkin-double --override geometry.beta_mm=0") == 2);
    CHECK(cli("validate --preset fig6-sorkin-double --override geometry.T_ps=-1") == 2);
    CHECK(cli("validate --preset no-such-preset") == 2);
    CHECK(cli("validate") == 2);
    CHECK(cli("run --preset fig3-pearson --out \"" + d.string() + "\"") == 0);
    CHECK(fs::exists(d / "pearson.csv"));
    CHECK(cli("run --preset fig6-sorkin-double --grid 41 --normalization central --out \"" + d.string() + "\"") == 0);
    CHECK(cli("run --preset fig6-sorkin-double --grid 1") == 2);
}

TEST_CASE("every preset runs within its budget")
{
    // Seconds on one core; the acceptance run repeats the figure presets at full size.
    const std::vector<std::pair<std::string, double>> budget{
        {"fig3-pearson", 5},          {"fig4-quanton", 5},          {"fig6-sorkin-double", 30},
        {"fig7-scan-EN", 60},         {"fig8-triple-surface", 60},  {"fig9-scan-EN-triple", 120},
        {"fig10-scan-pearson", 60},   {"fig11-exotic-hierarchy", 30}, {"fig12-electron-triple", 30},
        {"fig13-neutron-rank", 300},  {"fig14-electron-rank", 300},
    };
    for (const auto& [name, seconds] : budget) {
        CAPTURE(name);
        const auto t0 = std::chrono::steady_clock::now();
        const RunResult r = run_scenario(load_preset(name));
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        MESSAGE(name << ": " << dt << " s");
        CHECK(dt < seconds);
        CHECK_FALSE(r.tables.empty());
    }
}
