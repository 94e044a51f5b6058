#include "sorkin/matterwave.hpp"

#include "sorkin/errors.hpp"
#include "sorkin/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace sorkin {

namespace {

constexpr double kPi = std::numbers::pi;

cplx eval1(const GaussTerm& t, double x)
{
    const std::array<double, 1> v{x};
    return t.value(v);
}

} // namespace

void MatterParams::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string(name) + " must be positive");
    };
    if (species.kind != Species::Kind::massive)
        throw InvalidParameter("matter-wave parameters need a massive species");
    positive(sigma0, "sigma0");
    positive(d, "d");
    positive(beta, "beta");
    positive(T, "T");
    positive(tau, "tau");
    if (n_slits != 2 && n_slits != 3)
        throw InvalidParameter("n_slits must be 2 or 3");
    if (eps < 0.0)
        throw InvalidParameter("eps must not be negative");
}

double MatterParams::tau0() const
{
    return species.mass_over_hbar() * sigma0 * sigma0;
}

SlitArray MatterParams::slits() const
{
    return n_slits == 3 ? SlitArray::triple_slit(d, beta) : SlitArray::double_slit(d, beta);
}

GaussTerm matter_initial_state(const MatterParams& p)
{
    p.validate();
    GaussTerm t(1);
    t.set_quadratic(0, 0, -1.0 / (2.0 * p.sigma0 * p.sigma0));
    t.set_log_amp(-0.5 * std::log(p.sigma0 * std::sqrt(kPi)));
    return t;
}

GaussTerm matter_at_slits(const MatterParams& p)
{
    return apply_kernel(matter_initial_state(p), free_kernel(p.species, p.T, p.prefactor));
}

GaussSum matter_cropped_state(const MatterParams& p)
{
    const SlitArray s = p.slits();
    const GaussTerm at = matter_at_slits(p);
    GaussSum out(1);
    for (double c : s.centers)
        out.add(apply_window(at, c, s.beta));
    return out;
}

double transit_time(const MatterParams& p)
{
    return transit_time(p.d, matter_cropped_state(p), p.species);
}

double resolved_eps(const MatterParams& p)
{
    return p.eps > 0.0 ? p.eps : transit_time(p);
}

namespace {

GaussTerm route_term(const MatterParams& p, std::vector<int> visits, double eps)
{
    const RouteOptions opt{eps, p.tau, p.prefactor};
    return apply_route(matter_at_slits(p), p.species, p.slits(), Route{std::move(visits)}, opt);
}

void check_pair(int a, int b)
{
    if (a == b)
        throw InvalidParameter("exotic paths need two distinct slits");
}

} // namespace

GaussTerm classical_term(const MatterParams& p, int j)
{
    return route_term(p, {j}, 0.0);
}

GaussTerm kink_term(const MatterParams& p, int j, int l, double eps)
{
    check_pair(j, l);
    return route_term(p, {j, l}, eps);
}

GaussTerm loop_term(const MatterParams& p, int j, int k, double eps)
{
    check_pair(j, k);
    return route_term(p, {j, k, j}, eps);
}

GaussSum classical_sum(const MatterParams& p)
{
    GaussSum out(1);
    for (int j = 0; j < p.n_slits; ++j)
        out.add(classical_term(p, j));
    return out;
}

GaussSum kink_sum(const MatterParams& p, double eps)
{
    GaussSum out(1);
    for (int j = 0; j < p.n_slits; ++j)
        for (int l = 0; l < p.n_slits; ++l)
            if (l != j)
                out.add(kink_term(p, j, l, eps));
    return out;
}

GaussSum loop_sum(const MatterParams& p, double eps)
{
    GaussSum out(1);
    for (int j = 0; j < p.n_slits; ++j)
        for (int k = 0; k < p.n_slits; ++k)
            if (k != j)
                out.add(loop_term(p, j, k, eps));
    return out;
}

cplx psi_classical(const MatterParams& p, int j, double x)
{
    return eval1(classical_term(p, j), x);
}

cplx psi_kink(const MatterParams& p, int j, int l, double x)
{
    return eval1(kink_term(p, j, l, resolved_eps(p)), x);
}

cplx psi_loop(const MatterParams& p, int j, int k, double x)
{
    return eval1(loop_term(p, j, k, resolved_eps(p)), x);
}

std::vector<cplx> relativistic_delta(const MatterParams& p, int j, std::span<const double> xs,
                                     const QuadConfig& cfg)
{
    p.validate();
    const SlitArray s = p.slits();
    const auto rel = [&p](double dt) {
        return [&p, dt](double out, double in) { return relativistic_correction(out, in, dt, p.species); };
    };
    const auto one = [](double, double) { return cplx(1.0); };
    const auto r1 = rel(p.T);
    const auto r2 = rel(p.tau);

    ChainSpec chain;
    chain.species = p.species;
    chain.prefactor = p.prefactor;
    chain.source = matter_initial_state(p);
    chain.source_center = 0.0;
    chain.source_width = p.sigma0;
    chain.legs = {ChainLeg{p.T, s.centers.at(j), s.beta, {}}, ChainLeg{p.tau, 0.0, 0.0, {}}};

    // (1 + r2)(1 + r1) - 1 = r1 + r2 + r1 r2, each piece integrated separately.
    std::vector<cplx> total(xs.size(), 0.0);
    const std::array<std::pair<CorrectionFn, CorrectionFn>, 3> pieces{
        std::pair<CorrectionFn, CorrectionFn>{r1, one}, {one, r2}, {r1, r2}};
    for (const auto& [c1, c2] : pieces) {
        chain.legs[0].correction = c1;
        chain.legs[1].correction = c2;
        const auto part = chain_amplitudes(chain, xs, cfg);
        for (std::size_t i = 0; i < xs.size(); ++i)
            total[i] += part[i];
    }
    return total;
}

cplx psi_classical_relativistic(const MatterParams& p, int j, double x, const QuadConfig& cfg)
{
    const std::array<double, 1> xs{x};
    return psi_classical(p, j, x) + relativistic_delta(p, j, xs, cfg)[0];
}

} // namespace sorkin
