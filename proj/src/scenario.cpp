#include "sorkin/scenario.hpp"

#include "sorkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace sorkin {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues)
{
    std::string s = "invalid configuration";
    for (const auto& i : issues)
        s += "\n  " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
    return s;
}

} // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues) : Error(join_issues(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(path), std::move(message)}})
{
}

std::string to_string(Task t)
{
    switch (t) {
    case Task::pearson: return "pearson";
    case Task::quanton: return "quanton";
    case Task::kappa: return "kappa";
    case Task::scan_negativity: return "scan-negativity";
    case Task::scan_pearson: return "scan-pearson";
    case Task::exotic_hierarchy: return "exotic-hierarchy";
    case Task::matter: return "matter";
    }
    return "?";
}

namespace {

using Issues = std::vector<ConfigIssue>;

/// Reads one JSON object, remembering which keys were used so the rest can be
/// reported as unknown.
class Obj
{
public:
    Obj(const json* j, std::string path, Issues& issues, bool required = true)
        : j_(j), path_(std::move(path)), issues_(issues)
    {
        if (!j_ && required)
            fail("", "is required");
        if (j_ && !j_->is_object()) {
            fail("", "must be an object");
            j_ = nullptr;
        }
    }

    bool has(const std::string& key) const { return j_ && j_->contains(key); }

    void fail(const std::string& key, const std::string& msg) const
    {
        issues_.push_back({key.empty() ? path_ : path_ + "/" + key, msg});
    }

    const json* raw(const std::string& key)
    {
        seen_.insert(key);
        if (!j_ || !j_->contains(key))
            return nullptr;
        return &(*j_)[key];
    }

    std::optional<double> number(const std::string& key)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number()) {
            fail(key, "must be a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    /// Required positive number, or `fallback` when absent.
    double positive(const std::string& key, std::optional<double> fallback = std::nullopt)
    {
        const bool present = has(key);
        auto v = number(key);
        if (!present) {
            if (fallback)
                return *fallback;
            fail(key, "is required");
            return 0.0;
        }
        if (!v)
            return 0.0;
        if (!(*v > 0.0))
            fail(key, "must be positive (got " + json(*v).dump() + ")");
        return *v;
    }

    double non_negative(const std::string& key, double fallback)
    {
        auto v = number(key);
        if (!v)
            return fallback;
        if (!(*v >= 0.0))
            fail(key, "must not be negative");
        return *v;
    }

    std::optional<int> integer(const std::string& key)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number_integer()) {
            fail(key, "must be an integer");
            return std::nullopt;
        }
        return v->get<int>();
    }

    std::optional<bool> boolean(const std::string& key)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_boolean()) {
            fail(key, "must be true or false");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    std::optional<std::string> choice(const std::string& key, const std::vector<std::string>& allowed)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_string()) {
            fail(key, "must be a string");
            return std::nullopt;
        }
        const std::string s = v->get<std::string>();
        if (std::find(allowed.begin(), allowed.end(), s) != allowed.end())
            return s;
        std::string list;
        for (const auto& a : allowed)
            list += (list.empty() ? "" : ", ") + a;
        fail(key, "must be one of {" + list + "}, got '" + s + "'");
        return std::nullopt;
    }

    std::optional<std::vector<double>> numbers(const std::string& key)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_array() || v->empty()) {
            fail(key, "must be a non-empty array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number()) {
                fail(key + "/" + std::to_string(i), "must be a number");
                return std::nullopt;
            }
            out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    std::optional<std::vector<std::string>> strings(const std::string& key)
    {
        const json* v = raw(key);
        if (!v)
            return std::nullopt;
        if (!v->is_array()) {
            fail(key, "must be an array of strings");
            return std::nullopt;
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_string()) {
                fail(key + "/" + std::to_string(i), "must be a string");
                return std::nullopt;
            }
            out.push_back((*v)[i].get<std::string>());
        }
        return out;
    }

    Obj child(const std::string& key, bool required = true)
    {
        const json* v = raw(key);
        return Obj(v, path_ + "/" + key, issues_, required);
    }

    void reject_unknown() const
    {
        if (!j_)
            return;
        for (auto it = j_->begin(); it != j_->end(); ++it)
            if (!seen_.count(it.key()))
                fail(it.key(), "unknown key");
    }

private:
    const json* j_;
    std::string path_;
    Issues& issues_;
    std::set<std::string> seen_;
};

const std::vector<std::pair<std::string, Task>> kTasks = {
    {"pearson", Task::pearson},
    {"quanton", Task::quanton},
    {"kappa", Task::kappa},
    {"scan-negativity", Task::scan_negativity},
    {"scan-pearson", Task::scan_pearson},
    {"exotic-hierarchy", Task::exotic_hierarchy},
    {"matter", Task::matter},
};

const std::vector<std::string> kDoublePathSets = {"kink_a", "kink_b", "double_kink", "loop"};
const std::vector<std::string> kTriplePathSets = {"kink_triple"};
const std::vector<std::string> kContributions = {"kink", "loop", "relativistic"};

void check_positive_list(Obj& o, const std::string& key, const std::vector<double>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
            o.fail(key + "/" + std::to_string(i), "must be positive");
}

int parse_photon(Obj& root, ScenarioConfig& cfg)
{
    Obj species = root.child("species");
    (void)species.choice("kind", {"photon"});
    cfg.spdc.lambda = species.positive("lambda_mm");
    cfg.spdc.c = species.positive("c_mm_per_ps", 0.3);
    species.reject_unknown();

    Obj geo = root.child("geometry");
    const int n = geo.integer("slits").value_or(2);
    if (n != 2 && n != 3)
        geo.fail("slits", "must be 2 or 3");
    const double d = geo.positive("d_mm");
    const double beta = geo.positive("beta_mm");
    cfg.spdc.T = geo.positive("T_ps");
    cfg.spdc.tau = geo.positive("tau_ps");
    cfg.spdc.eps = geo.non_negative("eps_ps", 0.0);
    if (auto s = geo.choice("eps_spread", {"marginal", "relative"}))
        cfg.spdc.spread = *s == "marginal" ? SpreadMode::marginal : SpreadMode::relative;
    geo.reject_unknown();
    if (d > 0.0 && beta > 0.0)
        cfg.slits = n == 3 ? SlitArray::triple_slit(d, beta) : SlitArray::double_slit(d, beta);

    Obj state = root.child("state");
    cfg.spdc.sigma = state.positive("sigma_mm");
    const bool has_en = state.has("E_N"), has_omega = state.has("omega_mm");
    if (has_en == has_omega)
        state.fail("", "give exactly one of E_N or omega_mm");
    if (has_en) {
        if (auto en = state.number("E_N")) {
            cfg.en = *en;
            if (cfg.spdc.sigma > 0.0)
                cfg.spdc.omega = omega_from_negativity(cfg.spdc.sigma, *en);
        }
    }
    if (has_omega) {
        cfg.spdc.omega = state.positive("omega_mm");
        if (cfg.spdc.sigma > 0.0 && cfg.spdc.omega > 0.0)
            cfg.en = std::log10(cfg.spdc.omega / cfg.spdc.sigma);
    }
    state.reject_unknown();
    return n;
}

int parse_matter(Obj& root, ScenarioConfig& cfg)
{
    Obj species = root.child("species");
    const auto kind = species.choice("kind", {"electron", "neutron", "massive"});
    double mass = 0.0;
    if (kind == "massive") {
        mass = species.positive("mass_kg");
    } else {
        if (species.has("mass_kg"))
            species.fail("mass_kg", "is fixed by kind '" + kind.value_or("") + "'");
        (void)species.raw("mass_kg");
        mass = kind == "electron" ? si::electron_mass : si::neutron_mass;
    }
    const double lambda = species.positive("lambda_db_m");
    species.reject_unknown();
    if (mass > 0.0 && lambda > 0.0)
        cfg.matter.species = Species::massive(mass, lambda);

    Obj geo = root.child("geometry");
    const int n = geo.integer("slits").value_or(2);
    if (n != 2 && n != 3)
        geo.fail("slits", "must be 2 or 3");
    cfg.matter.n_slits = n;
    cfg.matter.d = geo.positive("d_m");
    cfg.matter.beta = geo.positive("beta_m");
    auto time_or_length = [&](const std::string& tkey, const std::string& lkey) {
        const bool ht = geo.has(tkey), hl = geo.has(lkey);
        if (ht == hl) {
            geo.fail("", "give exactly one of " + tkey + " or " + lkey);
            (void)geo.raw(tkey);
            (void)geo.raw(lkey);
            return 0.0;
        }
        if (ht)
            return geo.positive(tkey);
        const double L = geo.positive(lkey);
        return L > 0.0 && cfg.matter.species.mass > 0.0 ? cfg.matter.species.flight_time(L) : 0.0;
    };
    cfg.matter.T = time_or_length("T_s", "source_slit_m");
    cfg.matter.tau = time_or_length("tau_s", "slit_screen_m");
    cfg.matter.eps = geo.non_negative("eps_s", 0.0);
    geo.reject_unknown();

    Obj state = root.child("state");
    cfg.matter.sigma0 = state.positive("sigma0_m");
    state.reject_unknown();
    return n;
}

} // namespace

ScenarioConfig parse_config(const json& doc, const std::string& preset)
{
    Issues issues;
    ScenarioConfig cfg;
    cfg.preset = preset;
    cfg.document = doc;
    Obj root(&doc, "", issues);
    if (!doc.is_object())
        throw ConfigError(issues);

    std::vector<std::string> task_names;
    for (const auto& [k, v] : kTasks)
        task_names.push_back(k);
    const auto task = root.choice("task", task_names);
    if (!root.has("task"))
        root.fail("task", "is required");
    for (const auto& [k, v] : kTasks)
        if (task == k)
            cfg.task = v;

    std::string kind;
    if (doc.contains("species") && doc["species"].is_object() && doc["species"].contains("kind")
        && doc["species"]["kind"].is_string())
        kind = doc["species"]["kind"].get<std::string>();
    else
        issues.push_back({"/species/kind", "is required"});
    cfg.photon = kind == "photon";
    const int n = cfg.photon ? parse_photon(root, cfg) : parse_matter(root, cfg);
    const std::string u = cfg.photon ? "_mm" : "_m";

    Obj run = root.child("run", false);
    if (cfg.photon) {
        const auto& allowed = n == 3 ? kTriplePathSets : kDoublePathSets;
        cfg.paths = run.strings("paths").value_or(std::vector<std::string>{n == 3 ? "kink_triple" : "kink_a"});
        for (std::size_t i = 0; i < cfg.paths.size(); ++i)
            if (std::find(allowed.begin(), allowed.end(), cfg.paths[i]) == allowed.end())
                run.fail("paths/" + std::to_string(i),
                         "'" + cfg.paths[i] + "' is not a " + std::to_string(n) + "-slit path set");
        if (auto s = run.choice("sweep", {"x2=0", "diagonal", "surface"}))
            cfg.sweep = *s == "x2=0" ? Sweep::x2_zero : *s == "diagonal" ? Sweep::diagonal : Sweep::surface;
        if (auto v = run.numbers("E_N_values"))
            cfg.en_values = *v;
        if (auto v = run.numbers("T_values_ps")) {
            cfg.T_values = *v;
            check_positive_list(run, "T_values_ps", *v);
        }
        if (run.has("t_max_ps")) {
            const double t = run.positive("t_max_ps");
            cfg.t_values = PointSet::linspace(0.0, t, 201);
        }
    } else {
        cfg.contributions = run.strings("contributions").value_or(kContributions);
        for (std::size_t i = 0; i < cfg.contributions.size(); ++i)
            if (std::find(kContributions.begin(), kContributions.end(), cfg.contributions[i]) == kContributions.end())
                run.fail("contributions/" + std::to_string(i), "must be kink, loop or relativistic");
        cfg.method = run.choice("method", {"exact", "first-order", "both"}).value_or("exact");
    }
    const double w = cfg.photon ? 5.0 : 2e-3;
    cfg.x_min = run.number("x_min" + u).value_or(-w);
    cfg.x_max = run.number("x_max" + u).value_or(w);
    if (!(cfg.x_max > cfg.x_min))
        run.fail("x_max" + u, "must exceed x_min" + u);
    cfg.points = run.integer("points").value_or(cfg.sweep == Sweep::surface ? 201 : 2001);
    if (cfg.points < 2)
        run.fail("points", "must be at least 2");
    if (auto s = run.choice("normalization", {"central", "total0"}))
        cfg.normalization = parse_normalization(*s);
    const bool prefactor = run.boolean("prefactor").value_or(true);
    cfg.spdc.prefactor = cfg.matter.prefactor = prefactor;
    if (auto t = run.number("quad_tol")) {
        if (!(*t > 1e-15 && *t < 1.0))
            run.fail("quad_tol", "must lie in (1e-15, 1)");
        cfg.quad.tol = *t;
    }
    if (auto o = run.integer("quad_order")) {
        if (*o != 10 && *o != 15 && *o != 20 && *o != 25 && *o != 30)
            run.fail("quad_order", "must be 10, 15, 20, 25 or 30");
        cfg.quad.order = *o;
    }
    if (auto r = run.integer("quad_max_refinements")) {
        if (*r < 1 || *r > 12)
            run.fail("quad_max_refinements", "must lie in [1, 12]");
        cfg.quad.max_refinements = *r;
    }
    run.reject_unknown();

    Obj out = root.child("output", false);
    if (const json* dir = out.raw("dir")) {
        if (dir->is_string())
            cfg.out_dir = dir->get<std::string>();
        else
            out.fail("dir", "must be a string");
    }
    if (auto f = out.strings("formats")) {
        cfg.csv = cfg.json = false;
        for (std::size_t i = 0; i < f->size(); ++i) {
            if ((*f)[i] == "csv")
                cfg.csv = true;
            else if ((*f)[i] == "json")
                cfg.json = true;
            else
                out.fail("formats/" + std::to_string(i), "must be csv or json");
        }
    }
    out.reject_unknown();
    root.reject_unknown();

    // Task and family compatibility.
    if (task) {
        if (cfg.task == Task::matter && cfg.photon)
            root.fail("task", "'matter' needs a massive species");
        if (cfg.task != Task::matter && !cfg.photon && !kind.empty())
            root.fail("task", "'" + *task + "' needs species.kind = photon");
        if ((cfg.task == Task::quanton || cfg.task == Task::exotic_hierarchy) && n != 2)
            root.fail("task", "'" + *task + "' needs a double slit");
        if (cfg.task == Task::scan_negativity && cfg.en_values.empty())
            root.fail("run/E_N_values", "is required for scan-negativity");
        if (cfg.task == Task::scan_pearson && cfg.T_values.empty())
            root.fail("run/T_values_ps", "is required for scan-pearson");
        if (cfg.task == Task::pearson && (cfg.en_values.empty() || cfg.t_values.empty()))
            root.fail("run", "pearson needs E_N_values and t_max_ps");
        if (!cfg.photon && cfg.method != "exact" && n != 3)
            root.fail("run/method", "first-order evaluation applies to the triple slit");
    }

    if (!issues.empty())
        throw ConfigError(issues);
    return cfg;
}

json read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path + ": line " + std::to_string(line) + ", column " + std::to_string(col),
                            "syntax error");
    }
}

// ---- presets -----------------------------------------------------------------

namespace {

json photon_species(double lambda_mm) { return {{"kind", "photon"}, {"lambda_mm", lambda_mm}, {"c_mm_per_ps", 0.3}}; }

/// Double-slit geometry and state shared by the figures at 702 nm.
json double_slit_doc(const std::string& task, double en)
{
    return {
        {"task", task},
        {"species", photon_species(7.02e-4)},
        {"geometry", {{"slits", 2}, {"d_mm", 0.1}, {"beta_mm", 5e-3}, {"T_ps", 4.0}, {"tau_ps", 50.0}}},
        {"state", {{"sigma_mm", 11.4e-3}, {"E_N", en}}},
        {"run", {{"prefactor", false}, {"normalization", "total0"}}},
    };
}

json electron(double source_slit_m, double slit_screen_m, int slits)
{
    return {
        {"task", "matter"},
        {"species", {{"kind", "electron"}, {"lambda_db_m", 50e-12}}},
        {"geometry",
         {{"slits", slits}, {"d_m", 272e-9}, {"beta_m", 31e-9}, {"source_slit_m", source_slit_m},
          {"slit_screen_m", slit_screen_m}}},
        {"state", {{"sigma0_m", 62e-9}}},
        {"run", {{"prefactor", false}, {"normalization", "total0"}, {"x_min_m", -2e-3}, {"x_max_m", 2e-3}, {"points", 801}}},
    };
}

struct Preset
{
    std::string name, description;
    json (*make)();
};

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> list = {
        {"fig3-pearson", "Pearson correlation rho_x(t) for several E_N (702 nm, sigma 11.4 um)",
         [] {
             json j = double_slit_doc("pearson", 2.0);
             j["run"] = {{"E_N_values", {0.3, 0.5, 1.0, 2.0, 3.0}}, {"t_max_ps", 10.0}};
             return j;
         }},
        {"fig4-quanton", "Coincidence (x1 = x2) vs x2 = 0 intensity, E_N = 2, fringe periods",
         [] {
             json j = double_slit_doc("quanton", 2.0);
             j["run"]["x_min_mm"] = -1.0;
             j["run"]["x_max_mm"] = 1.0;
             j["run"]["points"] = 4001;
             return j;
         }},
        {"fig6-sorkin-double", "Double-slit kappa_nc(a) along x1 at x2 = 0 for several E_N",
         [] {
             json j = double_slit_doc("kappa", 0.4);
             j["run"]["paths"] = {"kink_a"};
             j["run"]["sweep"] = "x2=0";
             j["run"]["E_N_values"] = {0.3, 0.4, 0.5, 1.0, 2.0};
             j["run"]["x_min_mm"] = -3.0;
             j["run"]["x_max_mm"] = 3.0;
             return j;
         }},
        {"fig7-scan-EN", "Double-slit max|kappa_nc(a)| against E_N (11 points)",
         [] {
             json j = double_slit_doc("scan-negativity", 0.4);
             j["run"]["paths"] = {"kink_a"};
             j["run"]["E_N_values"] = {0.2, 0.3, 0.35, 0.4, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
             j["run"]["x_min_mm"] = -3.0;
             j["run"]["x_max_mm"] = 3.0;
             j["run"]["points"] = 1201;
             return j;
         }},
        {"fig8-triple-surface", "Biphoton triple-slit kappa over (x1, x2), E_N = 2, T = tau = 600 ps",
         [] {
             return json{
                 {"task", "kappa"},
                 {"species", photon_species(8.1e-4)},
                 {"geometry", {{"slits", 3}, {"d_mm", 0.1}, {"beta_mm", 0.03}, {"T_ps", 600.0}, {"tau_ps", 600.0}}},
                 {"state", {{"sigma_mm", 11.4e-3}, {"E_N", 2.0}}},
                 {"run",
                  {{"prefactor", false},
                   {"normalization", "total0"},
                   {"paths", {"kink_triple"}},
                   {"sweep", "surface"},
                   {"x_min_mm", -4.0},
                   {"x_max_mm", 4.0},
                   {"points", 201}}},
             };
         }},
        {"fig9-scan-EN-triple", "Biphoton triple-slit max|kappa| over (x1, x2) against E_N",
         [] {
             return json{
                 {"task", "scan-negativity"},
                 {"species", photon_species(8.1e-4)},
                 {"geometry", {{"slits", 3}, {"d_mm", 0.25}, {"beta_mm", 0.01}, {"T_ps", 60.0}, {"tau_ps", 270.0}}},
                 {"state", {{"sigma_mm", 11.4e-3}, {"E_N", 2.0}}},
                 {"run",
                  {{"prefactor", false},
                   {"normalization", "total0"},
                   {"paths", {"kink_triple"}},
                   {"sweep", "surface"},
                   {"E_N_values", {0.2, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0, 2.5, 3.0}},
                   {"x_min_mm", -4.0},
                   {"x_max_mm", 4.0},
                   {"points", 121}}},
             };
         }},
        {"fig10-scan-pearson", "Double-slit max|kappa_nc(a)| against rho_x(T), E_N = 0.4",
         [] {
             json j = double_slit_doc("scan-pearson", 0.4);
             j["run"]["paths"] = {"kink_a"};
             j["run"]["T_values_ps"] = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0};
             j["run"]["x_min_mm"] = -3.0;
             j["run"]["x_max_mm"] = 3.0;
             j["run"]["points"] = 1201;
             return j;
         }},
        {"fig11-exotic-hierarchy", "Kink, double-kink and loop kappa at E_N = 2 (double slit)",
         [] {
             json j = double_slit_doc("exotic-hierarchy", 2.0);
             j["run"]["paths"] = {"kink_a", "double_kink", "loop"};
             j["run"]["x_min_mm"] = -3.0;
             j["run"]["x_max_mm"] = 3.0;
             return j;
         }},
        {"fig12-electron-triple", "Electron triple slit, kink kappa to first order and exact",
         [] {
             json j = electron(0.24, 0.305, 3);
             j["run"]["contributions"] = {"kink"};
             j["run"]["method"] = "both";
             return j;
         }},
        {"fig13-neutron-rank", "Neutron double slit: kink, loop and relativistic kappa",
         [] {
             return json{
                 {"task", "matter"},
                 {"species", {{"kind", "neutron"}, {"lambda_db_m", 2e-9}}},
                 {"geometry", {{"slits", 2}, {"d_m", 125e-6}, {"beta_m", 7e-6}, {"T_s", 26.4e-3}, {"tau_s", 26.4e-3}}},
                 {"state", {{"sigma0_m", 7e-6}}},
                 {"run",
                  {{"prefactor", false},
                   {"normalization", "total0"},
                   {"contributions", {"kink", "loop", "relativistic"}},
                   {"x_min_m", -3e-3},
                   {"x_max_m", 3e-3},
                   {"points", 801}}},
             };
         }},
        {"fig14-electron-rank", "Electron double slit: kink, loop and relativistic kappa",
         [] {
             json j = electron(0.305, 0.24, 2);
             j["run"]["contributions"] = {"kink", "loop", "relativistic"};
             return j;
         }},
    };
    return list;
}

const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets())
        if (p.name == name)
            return p;
    std::string list;
    for (const auto& p : presets())
        list += (list.empty() ? "" : ", ") + p.name;
    throw ConfigError("--preset", "unknown preset '" + name + "' (available: " + list + ")");
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto& p : presets())
        out.push_back(p.name);
    return out;
}

std::string preset_description(const std::string& name) { return find_preset(name).description; }

json preset_document(const std::string& name) { return find_preset(name).make(); }

ScenarioConfig load_preset(const std::string& name) { return parse_config(preset_document(name), name); }

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--override", "expected key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw ConfigError("--override", "empty path component in '" + key + "'");
        if (!node->is_object())
            throw ConfigError("--override", "'" + key + "' descends into a non-object");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null())
            *node = json::object();
        start = dot + 1;
    }
}

json derived_quantities(const ScenarioConfig& cfg)
{
    json j;
    if (cfg.photon) {
        const auto& p = cfg.spdc;
        j["m_over_hbar_per_mm_ps"] = p.species().mass_over_hbar();
        j["omega_mm"] = p.omega;
        j["E_N"] = log_negativity(p);
        j["rho_x_T"] = pearson(p, p.T);
        j["alpha_T_mm2"] = p.alpha(p.T);
        try {
            j["eps_ps"] = resolved_eps(p, cfg.slits);
            j["eps_source"] = p.eps > 0.0 ? "pinned" : "transit time of the cropped classical state";
        } catch (const Error& e) {
            j["eps_ps"] = nullptr;
            j["eps_error"] = e.what();
        }
    } else {
        const auto& p = cfg.matter;
        j["m_over_hbar_s_per_m2"] = p.species.mass_over_hbar();
        j["tau0_s"] = p.tau0();
        j["T_s"] = p.T;
        j["tau_s"] = p.tau;
        try {
            j["eps_s"] = resolved_eps(p);
            j["eps_source"] = p.eps > 0.0 ? "pinned" : "transit time of the cropped classical state";
        } catch (const Error& e) {
            j["eps_s"] = nullptr;
            j["eps_error"] = e.what();
        }
    }
    return j;
}

} // namespace sorkin
