#include "sorkin/oracle.hpp"

#include "sorkin/errors.hpp"

#include <cmath>
#include <numbers>

namespace sorkin {

namespace {

constexpr double kPi = std::numbers::pi;

/// log of the propagator normalization sqrt(a / (i pi)), a = s / (2 dt).
cplx log_prefactor(const Species& s, double dt)
{
    const double a = s.mass_over_hbar() / (2.0 * dt);
    return 0.5 * std::log(cplx(0.0, -a / kPi));
}

} // namespace

cplx quadrature_amplitude(const SpdcParams& p, const SlitArray& slits, const PathSpec& path, double x1, double x2,
                          double eps, const QuadConfig& cfg)
{
    p.validate();
    PairChainSpec spec;
    spec.species = p.species();
    spec.prefactor = p.prefactor;
    spec.at_slits = evolved_closed_form(p, p.T);
    if (!p.prefactor)
        spec.at_slits.add_log_amp(-2.0 * log_prefactor(spec.species, p.T));
    spec.slits = slits;
    spec.photon1 = path.photon1;
    spec.photon2 = path.photon2;
    spec.eps = eps;
    spec.tau = p.tau;
    return pair_chain_amplitude(spec, x1, x2, cfg);
}

std::vector<cplx> quadrature_amplitudes(const MatterParams& p, const Route& route, std::span<const double> xs,
                                        double eps, const QuadConfig& cfg)
{
    p.validate();
    if (route.slits.empty())
        throw InvalidParameter("route visits no slit");
    const SlitArray s = p.slits();
    ChainSpec chain;
    chain.species = p.species;
    chain.prefactor = p.prefactor;
    chain.source = matter_initial_state(p);
    chain.source_center = 0.0;
    chain.source_width = p.sigma0;
    double dt = p.T;
    for (std::size_t k = 0; k < route.slits.size(); ++k) {
        const int j = route.slits[k];
        chain.legs.push_back(ChainLeg{dt, s.centers.at(j), s.beta, {}});
        if (k + 1 < route.slits.size())
            dt = s.hop_time(j, route.slits[k + 1], eps);
    }
    chain.legs.push_back(ChainLeg{p.tau, 0.0, 0.0, {}});
    return chain_amplitudes(chain, xs, cfg);
}

cplx quadrature_amplitude(const MatterParams& p, const Route& route, double x, double eps, const QuadConfig& cfg)
{
    const std::array<double, 1> xs{x};
    return quadrature_amplitudes(p, route, xs, eps, cfg)[0];
}

cplx quadrature_free_pair(const SpdcParams& p, double t, double x1, double x2, const QuadConfig& cfg)
{
    p.validate();
    cfg.validate();
    if (!(t > 0.0))
        throw InvalidDuration("evolution time must be positive");
    // Rotated coordinates u = (y1 + y2)/sqrt2, v = (y1 - y2)/sqrt2 align the
    // initial state with the axes (widths Omega and sigma); the Jacobian is 1.
    const double r2 = std::numbers::sqrt2;
    const double X = (x1 + x2) / r2, Y = (x1 - x2) / r2;
    const double a = p.species().mass_over_hbar() / (2.0 * t);
    const cplx lpref = p.prefactor ? 2.0 * log_prefactor(p.species(), t) : cplx(0.0);
    const double lnorm = -0.5 * std::log(kPi * p.sigma * p.omega);

    const double hu = cfg.half_width * p.omega, hv = cfg.half_width * p.sigma;
    auto panels = [&](double half, double centre) {
        const double rate = 2.0 * a * (std::abs(centre) + half);
        const double osc = rate * 2.0 * half / (2.0 * kPi);
        const double nodes = std::max(cfg.nodes_per_oscillation * osc, static_cast<double>(cfg.min_panels * cfg.order));
        return static_cast<int>(std::ceil(nodes / cfg.order));
    };
    const int bu = panels(hu, X), bv = panels(hv, Y);

    auto eval = [&](int mult) {
        const Rule ru = panel_rule(-hu, hu, bu * mult, cfg.order);
        const Rule rv = panel_rule(-hv, hv, bv * mult, cfg.order);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < ru.x.size(); ++i) {
            const double u = ru.x[i];
            cplx row = 0.0;
            for (std::size_t j = 0; j < rv.x.size(); ++j) {
                const double v = rv.x[j];
                const double gauss = -v * v / (2.0 * p.sigma * p.sigma) - u * u / (2.0 * p.omega * p.omega);
                const double phase = a * ((X - u) * (X - u) + (Y - v) * (Y - v));
                row += rv.w[j] * std::exp(cplx(gauss, phase));
            }
            acc += ru.w[i] * row;
        }
        return acc * std::exp(lpref + lnorm);
    };

    cplx prev = eval(1);
    double err = 0.0;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        const cplx next = eval(1 << level);
        err = std::abs(next - prev) / std::max(std::abs(next), 1e-300);
        if (err <= cfg.tol)
            return next;
        prev = next;
    }
    throw NotConverged("two-photon free-evolution quadrature did not converge", err);
}

} // namespace sorkin
