#include "sorkin/runner.hpp"

#include "sorkin/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef SORKIN_VERSION
#define SORKIN_VERSION "0.0.0"
#endif

namespace sorkin {

using nlohmann::json;

std::string engine_version() { return SORKIN_VERSION; }

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> axis(const ScenarioConfig& cfg) { return PointSet::linspace(cfg.x_min, cfg.x_max, cfg.points); }

PointSet biphoton_points(const ScenarioConfig& cfg)
{
    const auto xs = axis(cfg);
    switch (cfg.sweep) {
    case Sweep::x2_zero: return PointSet::sweep(xs, 0.0);
    case Sweep::diagonal: return PointSet::diagonal(xs);
    case Sweep::surface: return PointSet::surface(xs, xs);
    }
    return {};
}

BiphotonSetup setup(const ScenarioConfig& cfg, const std::vector<std::string>& sets)
{
    BiphotonSetup s;
    s.params = cfg.spdc;
    s.slits = cfg.slits;
    s.classical = cfg.slits.size() == 3 ? branches::classical_triple() : branches::classical_double();
    for (const auto& name : sets) {
        const auto paths = branches::by_name(name);
        s.nonclassical.insert(s.nonclassical.end(), paths.begin(), paths.end());
    }
    return s;
}

json point_json(const std::array<double, 2>& p, int vars)
{
    return vars == 1 ? json::array({p[0]}) : json::array({p[0], p[1]});
}

/// Columns for the coordinates of a biphoton point set.
void add_coords(Table& t, const PointSet& pts, Sweep sweep)
{
    t.columns.push_back("x1_mm");
    if (sweep != Sweep::diagonal)
        t.columns.push_back("x2_mm");
    t.rows.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        t.rows[i].push_back(pts.p[i][0]);
        if (sweep != Sweep::diagonal)
            t.rows[i].push_back(pts.p[i][1]);
    }
}

void add_column(Table& t, const std::string& name, const std::vector<double>& v)
{
    t.columns.push_back(name);
    for (std::size_t i = 0; i < v.size(); ++i)
        t.rows[i].push_back(v[i]);
}

json map_summary(const SorkinMap& m)
{
    return {{"kappa_max_abs", m.kappa_max_abs},
            {"argmax", point_json(m.argmax_point(), m.points.vars)},
            {"normalization", to_string(m.mode)}};
}

// ---- tasks -------------------------------------------------------------------

void run_pearson(const ScenarioConfig& cfg, RunResult& r)
{
    Table t{"pearson", {"t_ps"}, {}};
    for (double tt : cfg.t_values)
        t.rows.push_back({tt});
    json at_T = json::object();
    for (double en : cfg.en_values) {
        SpdcParams p = cfg.spdc;
        p.omega = omega_from_negativity(p.sigma, en);
        std::vector<double> rho;
        for (double tt : cfg.t_values)
            rho.push_back(pearson(p, tt));
        add_column(t, "rho_EN_" + short_num(en), rho);
        at_T[short_num(en)] = pearson(p, p.T);
    }
    r.summary["results"] = {{"rho_x_at_T", at_T}, {"T_ps", cfg.spdc.T}};
    r.tables.push_back(std::move(t));
}

void run_quanton(const ScenarioConfig& cfg, RunResult& r, Exec exec)
{
    const double eps = resolved_eps(cfg.spdc, cfg.slits);
    const GaussSum c = path_sum(cfg.spdc, cfg.slits, branches::classical_double(), eps);
    const auto xs = axis(cfg);
    const std::array<double, 2> zero{0.0, 0.0};
    const double scale = log_scale_at(c, zero);

    auto intensity = [&](const PointSet& pts) {
        const auto v = evaluate(c, pts, scale, exec);
        std::vector<double> I(v.size());
        double top = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            top = std::max(top, I[i] = std::norm(v[i]));
        for (double& x : I)
            x /= top;
        return I;
    };
    const auto single = intensity(PointSet::sweep(xs, 0.0));
    const auto coinc = intensity(PointSet::diagonal(xs));
    const double ps = fringe_period(xs, single), pc = fringe_period(xs, coinc);

    Table a{"intensity_x2_zero", {"x1_mm"}, {}}, b{"intensity_coincidence", {"x_mm"}, {}};
    for (double x : xs) {
        a.rows.push_back({x});
        b.rows.push_back({x});
    }
    add_column(a, "intensity", single);
    add_column(b, "intensity", coinc);
    r.tables.push_back(std::move(a));
    r.tables.push_back(std::move(b));
    r.summary["results"] = {{"fringe_period_x2_zero_mm", ps},
                            {"fringe_period_coincidence_mm", pc},
                            {"period_ratio", ps > 0.0 ? pc / ps : 0.0},
                            {"single_photon_period_estimate_mm", cfg.spdc.lambda * cfg.spdc.c * cfg.spdc.tau / cfg.slits.pitch()}};
}

void run_kappa(const ScenarioConfig& cfg, RunResult& r, Exec exec)
{
    const PointSet pts = biphoton_points(cfg);
    std::vector<double> ens = cfg.en_values;
    if (ens.empty())
        ens.push_back(cfg.en);
    json per = json::array();
    Table line{"kappa", {}, {}};
    if (cfg.sweep != Sweep::surface)
        add_coords(line, pts, cfg.sweep);
    for (double en : ens) {
        BiphotonSetup s = setup(cfg, cfg.paths);
        s.params.omega = omega_from_negativity(s.params.sigma, en);
        const auto k = biphoton_kappa(s, pts, cfg.normalization, exec);
        json e = map_summary(k.map);
        e["E_N"] = en;
        e["eps_ps"] = k.eps;
        e["rho_x_T"] = pearson(s.params, s.params.T);
        per.push_back(e);
        if (cfg.sweep == Sweep::surface) {
            Table t{ens.size() == 1 ? "kappa_surface" : "kappa_surface_EN_" + short_num(en), {}, {}};
            add_coords(t, pts, cfg.sweep);
            add_column(t, "kappa", k.map.kappa);
            r.tables.push_back(std::move(t));
        } else {
            add_column(line, "kappa_EN_" + short_num(en), k.map.kappa);
        }
    }
    if (cfg.sweep != Sweep::surface)
        r.tables.push_back(std::move(line));
    r.summary["results"] = {{"paths", cfg.paths}, {"curves", per}};
}

void run_scan(const ScenarioConfig& cfg, RunResult& r)
{
    const PointSet pts = biphoton_points(cfg);
    const BiphotonSetup s = setup(cfg, cfg.paths);
    const auto scan = cfg.task == Task::scan_negativity ? scan_negativity(s, cfg.en_values, pts, cfg.normalization)
                                                        : scan_pearson(s, cfg.T_values, pts, cfg.normalization);
    Table t{"scan", {"E_N", "omega_mm", "T_ps", "rho_x_T", "eps_ps", "kappa_max_abs", "argmax_x1_mm", "argmax_x2_mm"}, {}};
    json pts_json = json::array();
    std::size_t best = 0;
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const auto& p = scan[i];
        t.rows.push_back({p.en, p.omega, p.T, p.rho_T, p.eps, p.kappa_max_abs, p.argmax[0], p.argmax[1]});
        pts_json.push_back({{"E_N", p.en}, {"T_ps", p.T}, {"rho_x_T", p.rho_T}, {"eps_ps", p.eps},
                            {"kappa_max_abs", p.kappa_max_abs}});
        if (p.kappa_max_abs > scan[best].kappa_max_abs)
            best = i;
    }
    r.tables.push_back(std::move(t));
    r.summary["results"] = {{"paths", cfg.paths}, {"points", pts_json}};
    if (!scan.empty())
        r.summary["results"]["peak"] = pts_json[best];
}

void run_hierarchy(const ScenarioConfig& cfg, RunResult& r, Exec exec)
{
    const PointSet pts = biphoton_points(cfg);
    Table t{"kappa", {}, {}};
    add_coords(t, pts, cfg.sweep);
    json per = json::object();
    for (const auto& set : cfg.paths) {
        const auto k = biphoton_kappa(setup(cfg, {set}), pts, cfg.normalization, exec);
        add_column(t, "kappa_" + set, k.map.kappa);
        per[set] = map_summary(k.map);
        per[set]["eps_ps"] = k.eps;
    }
    r.tables.push_back(std::move(t));
    r.summary["results"] = {{"E_N", cfg.en}, {"per_path_set", per}};
}

void run_matter(const ScenarioConfig& cfg, RunResult& r, Exec exec)
{
    const auto& p = cfg.matter;
    const double eps = resolved_eps(p);
    const auto xs = axis(cfg);
    const PointSet pts = PointSet::line(xs);
    Table t{"kappa", {"x_m"}, {}};
    for (double x : xs)
        t.rows.push_back({x});
    json per = json::object();
    const GaussSum c = classical_sum(p);

    auto record = [&](const std::string& name, const SorkinMap& m) {
        add_column(t, "kappa_" + name, m.kappa);
        per[name] = map_summary(m);
    };
    for (const auto& what : cfg.contributions) {
        if (what == "kink") {
            if (p.n_slits == 3) {
                const auto br = matter_branches(p, eps);
                if (cfg.method == "exact" || cfg.method == "both")
                    record("kink", kappa_inclusion_exclusion(br, 3, pts, false, cfg.normalization, exec));
                if (cfg.method == "first-order" || cfg.method == "both")
                    record("kink_first_order", kappa_first_order(br, 3, pts, cfg.normalization, exec));
            } else {
                record("kink", kappa_exact(c, kink_sum(p, eps), pts, cfg.normalization, exec));
            }
        } else if (what == "loop") {
            record("loop", kappa_exact(c, loop_sum(p, eps), pts, cfg.normalization, exec));
        } else if (what == "relativistic") {
            record("relativistic", relativistic_kappa(p, xs, cfg.quad, cfg.normalization));
        }
    }
    r.tables.push_back(std::move(t));
    r.summary["results"] = {{"eps_s", eps}, {"per_contribution", per}};
}

} // namespace

RunResult run_scenario(const ScenarioConfig& cfg, Exec exec)
{
    RunResult r;
    r.summary["preset"] = cfg.preset.empty() ? json(nullptr) : json(cfg.preset);
    r.summary["task"] = to_string(cfg.task);
    r.summary["provenance"] = {
        {"engine", "sorkin"},
        {"engine_version", engine_version()},
        {"prefactor", cfg.photon ? cfg.spdc.prefactor : cfg.matter.prefactor},
        {"normalization", to_string(cfg.normalization)},
        {"tolerances",
         {{"quad_tol", cfg.quad.tol},
          {"quad_order", cfg.quad.order},
          {"quad_max_refinements", cfg.quad.max_refinements},
          {"quad_half_width", cfg.quad.half_width}}},
    };
    r.summary["derived"] = derived_quantities(cfg);
    r.summary["config"] = cfg.document;
    r.summary["effective"] = {
        {"points", cfg.points},
        {cfg.photon ? "x_min_mm" : "x_min_m", cfg.x_min},
        {cfg.photon ? "x_max_mm" : "x_max_m", cfg.x_max},
        {"sweep", cfg.sweep == Sweep::x2_zero ? "x2=0" : cfg.sweep == Sweep::diagonal ? "diagonal" : "surface"},
        {"normalization", to_string(cfg.normalization)},
        {"prefactor", cfg.photon ? cfg.spdc.prefactor : cfg.matter.prefactor},
    };

    switch (cfg.task) {
    case Task::pearson: run_pearson(cfg, r); break;
    case Task::quanton: run_quanton(cfg, r, exec); break;
    case Task::kappa: run_kappa(cfg, r, exec); break;
    case Task::scan_negativity:
    case Task::scan_pearson: run_scan(cfg, r); break;
    case Task::exotic_hierarchy: run_hierarchy(cfg, r, exec); break;
    case Task::matter: run_matter(cfg, r, exec); break;
    }
    return r;
}

std::string resolve_out_dir(const ScenarioConfig& cfg, const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (!cfg.out_dir.empty())
        return cfg.out_dir;
    if (const char* env = std::getenv("SORKIN_OUT_DIR"); env && *env)
        return env;
    return "sorkin-out";
}

namespace {

/// "# a.b.c = value" lines for every leaf of the document.
void echo(const json& j, const std::string& prefix, std::ostream& os)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            echo(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
        return;
    }
    os << "# " << prefix << " = " << j.dump() << '\n';
}

} // namespace

std::vector<std::string> write_outputs(const ScenarioConfig& cfg, const RunResult& r, const std::string& dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    if (cfg.csv) {
        for (const auto& t : r.tables) {
            const fs::path path = fs::path(dir) / (t.name + ".csv");
            std::ofstream os(path);
            if (!os)
                throw Error("cannot write " + path.string());
            os << "# sorkin " << engine_version() << '\n';
            os << "# preset = " << (cfg.preset.empty() ? "none" : cfg.preset) << '\n';
            echo(cfg.document, "", os);
            echo(r.summary["effective"], "effective", os);
            echo(r.summary["derived"], "derived", os);
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                os << (i ? "," : "") << t.columns[i];
            os << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? "," : "") << fmt(row[i]);
                os << '\n';
            }
            written.push_back(path.string());
        }
    }
    if (cfg.json) {
        const fs::path path = fs::path(dir) / "summary.json";
        std::ofstream os(path);
        if (!os)
            throw Error("cannot write " + path.string());
        os << r.summary.dump(2) << '\n';
        written.push_back(path.string());
    }
    return written;
}

std::string summary_text(const RunResult& r)
{
    std::ostringstream os;
    const json& s = r.summary;
    os << "task: " << s["task"].get<std::string>();
    if (s["preset"].is_string())
        os << " (preset " << s["preset"].get<std::string>() << ")";
    os << '\n';
    for (auto it = s["derived"].begin(); it != s["derived"].end(); ++it)
        os << "  " << it.key() << ": " << it.value().dump() << '\n';
    const json& res = s["results"];
    auto kmax = [&](const json& m) { return m.contains("kappa_max_abs") ? m["kappa_max_abs"].dump() : "-"; };
    if (res.contains("curves"))
        for (const auto& c : res["curves"])
            os << "  E_N " << c["E_N"].dump() << ": max|kappa| " << kmax(c) << ", eps " << c["eps_ps"].dump()
               << " ps, rho_x(T) " << c["rho_x_T"].dump() << '\n';
    if (res.contains("points"))
        for (const auto& p : res["points"])
            os << "  E_N " << p["E_N"].dump() << ", T " << p["T_ps"].dump() << " ps, rho_x(T) " << p["rho_x_T"].dump()
               << ": max|kappa| " << p["kappa_max_abs"].dump() << ", eps " << p["eps_ps"].dump() << " ps\n";
    for (const char* key : {"per_path_set", "per_contribution"})
        if (res.contains(key))
            for (auto it = res[key].begin(); it != res[key].end(); ++it)
                os << "  " << it.key() << ": max|kappa| " << kmax(it.value()) << '\n';
    if (res.contains("eps_s"))
        os << "  eps: " << res["eps_s"].dump() << " s\n";
    if (res.contains("period_ratio"))
        os << "  fringe period x2=0: " << res["fringe_period_x2_zero_mm"].dump() << " mm, coincidence: "
           << res["fringe_period_coincidence_mm"].dump() << " mm, ratio " << res["period_ratio"].dump() << '\n';
    if (res.contains("rho_x_at_T"))
        for (auto it = res["rho_x_at_T"].begin(); it != res["rho_x_at_T"].end(); ++it)
            os << "  rho_x(T) at E_N " << it.key() << ": " << it.value().dump() << '\n';
    return os.str();
}

} // namespace sorkin
