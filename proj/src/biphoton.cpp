#include "sorkin/biphoton.hpp"

#include "sorkin/errors.hpp"

#include <cmath>
#include <numbers>

namespace sorkin {

namespace {

constexpr double kPi = std::numbers::pi;

PathSpec make(std::string label, PathClass cls, std::vector<int> r1, std::vector<int> r2)
{
    return PathSpec{std::move(label), cls, Route{std::move(r1)}, Route{std::move(r2)}};
}

std::vector<PathSpec> with_exchange(std::vector<std::pair<PathSpec, std::string>> base)
{
    // Returns base[0], exchanged(base[0]), base[1], exchanged(base[1]), ...
    std::vector<PathSpec> out;
    for (auto& [p, ex_label] : base) {
        out.push_back(p);
        out.push_back(exchanged(p, ex_label));
    }
    return out;
}

std::vector<PathSpec> all_classical_pairs(std::size_t n)
{
    std::vector<PathSpec> out;
    for (int j = 0; j < static_cast<int>(n); ++j)
        for (int k = 0; k < static_cast<int>(n); ++k)
            out.push_back(make("c" + std::to_string(j) + std::to_string(k), PathClass::classical, {j}, {k}));
    return out;
}

} // namespace

void SpdcParams::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string(name) + " must be positive");
    };
    positive(sigma, "sigma");
    positive(omega, "omega");
    positive(lambda, "lambda");
    positive(T, "T");
    positive(tau, "tau");
    positive(c, "c");
    if (eps < 0.0)
        throw InvalidParameter("eps must not be negative");
}

double SpdcParams::alpha(double t) const
{
    return lambda * c * t / (2.0 * kPi);
}

double omega_from_negativity(double sigma, double en)
{
    return sigma * std::pow(10.0, en);
}

PathSpec exchanged(const PathSpec& p, std::string label)
{
    return PathSpec{std::move(label), p.cls, p.photon2, p.photon1};
}

namespace branches {

std::vector<PathSpec> classical_double()
{
    return {make("uu", PathClass::classical, {1}, {1}), make("dd", PathClass::classical, {0}, {0}),
            make("ud", PathClass::classical, {1}, {0}), make("du", PathClass::classical, {0}, {1})};
}

std::vector<PathSpec> kink_a()
{
    auto v = with_exchange({{make("a1", PathClass::kink_a, {1, 0}, {1}), "a2"},
                            {make("a3", PathClass::kink_a, {0, 1}, {0}), "a4"}});
    return v;
}

std::vector<PathSpec> kink_b()
{
    return with_exchange({{make("b1", PathClass::kink_b, {1, 0}, {0}), "b2"},
                          {make("b3", PathClass::kink_b, {0, 1}, {1}), "b4"}});
}

std::vector<PathSpec> double_kink()
{
    return {make("dk1", PathClass::double_kink, {1, 0}, {1, 0}),
            make("dk2", PathClass::double_kink, {0, 1}, {0, 1})};
}

std::vector<PathSpec> loop()
{
    return with_exchange({{make("l1", PathClass::loop, {1, 0, 1}, {1}), "l2"},
                          {make("l3", PathClass::loop, {0, 1, 0}, {0}), "l4"}});
}

std::vector<PathSpec> classical_triple()
{
    return all_classical_pairs(3);
}

std::vector<PathSpec> kink_triple()
{
    std::vector<PathSpec> out;
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            if (l == j)
                continue;
            const std::string tag = "k" + std::to_string(j) + std::to_string(l);
            auto p = make(tag + "-1", PathClass::triple_kink, {j, l}, {j});
            out.push_back(p);
            out.push_back(exchanged(p, tag + "-2"));
        }
    return out;
}

std::vector<PathSpec> by_name(const std::string& set)
{
    if (set == "classical")
        return classical_double();
    if (set == "kink_a")
        return kink_a();
    if (set == "kink_b")
        return kink_b();
    if (set == "double_kink")
        return double_kink();
    if (set == "loop")
        return loop();
    if (set == "classical_triple")
        return classical_triple();
    if (set == "kink_triple")
        return kink_triple();
    throw InvalidParameter("unknown path set '" + set + "'");
}

} // namespace branches

GaussTerm initial_state(const SpdcParams& p)
{
    p.validate();
    const double s2 = p.sigma * p.sigma;
    const double o2 = p.omega * p.omega;
    GaussTerm t(2);
    t.set_quadratic(0, 0, -1.0 / (4.0 * s2) - 1.0 / (4.0 * o2));
    t.set_quadratic(1, 1, -1.0 / (4.0 * s2) - 1.0 / (4.0 * o2));
    t.set_quadratic(0, 1, 1.0 / (2.0 * s2) - 1.0 / (2.0 * o2));
    t.set_log_amp(-0.5 * std::log(kPi * p.sigma * p.omega));
    return t;
}

GaussTerm evolve(const GaussTerm& state, double t, const SpdcParams& p)
{
    if (t < 0.0)
        throw InvalidDuration("evolution time must not be negative");
    if (t == 0.0)
        return state;
    const Kernel k = free_kernel(p.species(), t, p.prefactor);
    return apply_kernel(apply_kernel(state, k, 0), k, 1);
}

GaussTerm evolved_closed_form(const SpdcParams& p, double t)
{
    p.validate();
    const double a = p.alpha(t);
    const cplx A(p.sigma * p.sigma, a);
    const cplx B(p.omega * p.omega, a);
    GaussTerm out(2);
    out.set_quadratic(0, 0, -1.0 / (4.0 * A) - 1.0 / (4.0 * B));
    out.set_quadratic(1, 1, -1.0 / (4.0 * A) - 1.0 / (4.0 * B));
    out.set_quadratic(0, 1, 1.0 / (2.0 * A) - 1.0 / (2.0 * B));
    const cplx ls = std::log(cplx(p.sigma, a / p.sigma));
    const cplx lo = std::log(cplx(p.omega, a / p.omega));
    out.set_log_amp(-0.5 * (std::log(kPi) + ls + lo));
    return out;
}

double log_negativity(const SpdcParams& p)
{
    if (!(p.sigma > 0.0) || !(p.omega > 0.0))
        throw InvalidParameter("sigma and omega must be positive");
    return std::log10(p.omega / p.sigma);
}

double pearson(const SpdcParams& p, double t)
{
    if (t < 0.0)
        throw InvalidDuration("time must not be negative");
    const double s2 = p.sigma * p.sigma;
    const double o2 = p.omega * p.omega;
    const double g = p.alpha(t) / (p.sigma * p.omega);
    return (o2 - s2) / (o2 + s2) * (1.0 - g * g) / (1.0 + g * g);
}

double pearson_of_state(const GaussSum& s)
{
    const PositionMoments m1 = position_moments(s, 0);
    const PositionMoments m2 = position_moments(s, 1);
    const double cross = position_cross_moment(s, 0, 1);
    const double v1 = m1.mean_sq - m1.mean * m1.mean;
    const double v2 = m2.mean_sq - m2.mean * m2.mean;
    if (!(v1 > 0.0) || !(v2 > 0.0))
        throw ZeroVariance("position variance vanishes");
    return (cross - m1.mean * m2.mean) / std::sqrt(v1 * v2);
}

GaussSum cropped_state(const SpdcParams& p, const SlitArray& slits)
{
    slits.validate();
    const GaussTerm at_slits = evolve(initial_state(p), p.T, p);
    GaussSum out(2);
    for (const auto& b : all_classical_pairs(slits.size())) {
        GaussTerm t = apply_window(at_slits, slits.centers[b.photon1.slits[0]], slits.beta, 0);
        out.add(apply_window(t, slits.centers[b.photon2.slits[0]], slits.beta, 1));
    }
    return out;
}

double transit_time(const SpdcParams& p, const SlitArray& slits)
{
    return transit_time(slits.pitch(), cropped_state(p, slits), p.species(), p.spread, 0);
}

double resolved_eps(const SpdcParams& p, const SlitArray& slits)
{
    return p.eps > 0.0 ? p.eps : transit_time(p, slits);
}

GaussTerm path_term(const SpdcParams& p, const SlitArray& slits, const PathSpec& path, double eps)
{
    slits.validate();
    const Species sp = p.species();
    const RouteOptions opt{eps, p.tau, p.prefactor};
    const GaussTerm at_slits = evolve(initial_state(p), p.T, p);
    const GaussTerm one = apply_route(at_slits, sp, slits, path.photon1, opt, 0);
    return apply_route(one, sp, slits, path.photon2, opt, 1);
}

GaussSum path_sum(const SpdcParams& p, const SlitArray& slits, const std::vector<PathSpec>& paths,
                  double eps)
{
    GaussSum out(2);
    for (const auto& path : paths)
        out.add(path_term(p, slits, path, eps));
    return out;
}

namespace {

const PathSpec& find_path(const std::vector<PathSpec>& set, const std::string& label)
{
    for (const auto& p : set)
        if (p.label == label)
            return p;
    throw InvalidParameter("unknown path label '" + label + "'");
}

cplx eval_at(const GaussTerm& t, double x1, double x2)
{
    const std::array<double, 2> x{x1, x2};
    return t.value(x);
}

} // namespace

cplx classical_amplitude(const SpdcParams& p, const SlitArray& slits, const std::string& branch,
                         double x1, double x2)
{
    const auto set = branches::classical_double();
    return eval_at(path_term(p, slits, find_path(set, branch), 0.0), x1, x2);
}

cplx kink_amplitude(const SpdcParams& p, const SlitArray& slits, const std::string& path,
                    double x1, double x2)
{
    auto set = branches::kink_a();
    const auto b = branches::kink_b();
    set.insert(set.end(), b.begin(), b.end());
    return eval_at(path_term(p, slits, find_path(set, path), resolved_eps(p, slits)), x1, x2);
}

cplx other_exotic_amplitude(const SpdcParams& p, const SlitArray& slits, const PathSpec& path,
                            double x1, double x2)
{
    return eval_at(path_term(p, slits, path, resolved_eps(p, slits)), x1, x2);
}

TripleSlitAmplitudes triple_slit_amplitudes(const SpdcParams& p, const SlitArray& slits)
{
    if (slits.size() != 3)
        throw InvalidParameter("triple-slit amplitudes need three slits");
    TripleSlitAmplitudes out;
    out.eps = resolved_eps(p, slits);
    out.classical = path_sum(p, slits, branches::classical_triple(), out.eps);
    out.nonclassical = path_sum(p, slits, branches::kink_triple(), out.eps);
    return out;
}

} // namespace sorkin
