#include "sorkin/quadrature.hpp"

#include "sorkin/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sorkin {

namespace {

constexpr double kPi = std::numbers::pi;

template <unsigned N>
void reference_rule(std::vector<double>& x, std::vector<double>& w)
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            x.push_back(0.0);
            w.push_back(wt[i]);
            continue;
        }
        x.push_back(-a[i]);
        w.push_back(wt[i]);
        x.push_back(a[i]);
        w.push_back(wt[i]);
    }
}

void reference_rule(int order, std::vector<double>& x, std::vector<double>& w)
{
    switch (order) {
    case 10: reference_rule<10>(x, w); break;
    case 15: reference_rule<15>(x, w); break;
    case 20: reference_rule<20>(x, w); break;
    case 25: reference_rule<25>(x, w); break;
    case 30: reference_rule<30>(x, w); break;
    default: throw InvalidParameter("quadrature order must be 10, 15, 20, 25 or 30");
    }
}

struct Domain
{
    double center = 0.0;
    double half = 0.0;
    double lo() const { return center - half; }
    double hi() const { return center + half; }
};

/// Bound on |d phase / dy| of exp(i a (z - y)^2) with y in dy, z in dz.
double kernel_rate(double a, const Domain& dy, const Domain& dz)
{
    return 2.0 * a * (std::abs(dz.center - dy.center) + dy.half + dz.half);
}

int base_panels(double rate, const Domain& d, const QuadConfig& cfg)
{
    const double osc = rate * 2.0 * d.half / (2.0 * kPi);
    const double nodes = std::max(cfg.nodes_per_oscillation * osc,
                                  static_cast<double>(cfg.min_panels * cfg.order));
    return static_cast<int>(std::ceil(nodes / cfg.order));
}

struct KernelEval
{
    double a = 0.0;
    cplx log_pref{};
    const CorrectionFn* correction = nullptr;

    cplx operator()(double out, double in) const
    {
        // Screen phases reach 1e6 rad; reduce them in extended precision.
        const long double u = static_cast<long double>(out) - in;
        const long double ph = std::remainder(static_cast<long double>(a) * u * u, 2.0L * std::numbers::pi_v<long double>);
        cplx k = std::exp(cplx(log_pref.real(), log_pref.imag() + static_cast<double>(ph)));
        if (correction && *correction)
            k *= (*correction)(out, in);
        return k;
    }
};

KernelEval make_kernel(const Species& s, double dt, bool prefactor, const CorrectionFn* corr = nullptr)
{
    if (!(dt > 0.0))
        throw InvalidDuration("leg duration must be positive");
    KernelEval k;
    k.a = s.mass_over_hbar() / (2.0 * dt);
    if (prefactor)
        k.log_pref = 0.5 * std::log(cplx(0.0, -k.a / kPi));
    k.correction = corr;
    return k;
}

double window(double y, double c, double beta)
{
    const double u = (y - c) / beta;
    return std::exp(-0.5 * u * u);
}

/// Phase-rate bound of a term along `var` over the product of the domains.
double term_rate(const GaussTerm& t, int var, std::span<const Domain> doms)
{
    double r = std::abs(t.linear(var).imag());
    for (int j = 0; j < t.vars(); ++j)
        r += 2.0 * std::abs(t.sym(var, j).imag()) * (std::abs(doms[j].center) + doms[j].half);
    return r;
}

template <class Eval>
auto refine(Eval&& eval, const QuadConfig& cfg, const char* what)
{
    auto prev = eval(1);
    double err = 0.0;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        auto next = eval(1 << level);
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            diff = std::max(diff, std::abs(next[i] - prev[i]));
            scale = std::max(scale, std::abs(next[i]));
        }
        err = scale > 0.0 ? diff / scale : diff;
        if (err <= cfg.tol)
            return next;
        prev = std::move(next);
    }
    throw NotConverged(std::string(what) + " did not converge", err);
}

} // namespace

void QuadConfig::validate() const
{
    if (!(tol > 0.0) || !(half_width > 0.0) || max_refinements < 1 || min_panels < 1
        || !(nodes_per_oscillation > 0.0))
        throw InvalidParameter("invalid quadrature configuration");
    std::vector<double> x, w;
    reference_rule(order, x, w);
}

Rule panel_rule(double a, double b, int panels, int order)
{
    std::vector<double> rx, rw;
    reference_rule(order, rx, rw);
    Rule r;
    r.x.reserve(static_cast<std::size_t>(panels) * rx.size());
    r.w.reserve(r.x.capacity());
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < rx.size(); ++i) {
            r.x.push_back(mid + 0.5 * h * rx[i]);
            r.w.push_back(0.5 * h * rw[i]);
        }
    }
    return r;
}

std::vector<cplx> chain_amplitudes(const ChainSpec& chain, std::span<const double> xs, const QuadConfig& cfg)
{
    cfg.validate();
    if (chain.legs.empty() || xs.empty())
        throw InvalidParameter("chain needs at least one leg and one screen point");
    if (chain.source.vars() != 1 || !(chain.source_width > 0.0))
        throw InvalidParameter("chain source must be a one-variable term with positive width");
    const std::size_t n_legs = chain.legs.size();
    for (std::size_t i = 0; i + 1 < n_legs; ++i)
        if (!(chain.legs[i].window_width > 0.0))
            throw InvalidParameter("intermediate legs must end on a window");

    // Variable 0 is the source coordinate, variable i the end of leg i-1.
    std::vector<Domain> dom(n_legs);
    dom[0] = {chain.source_center, cfg.half_width * chain.source_width};
    for (std::size_t i = 1; i < n_legs; ++i)
        dom[i] = {chain.legs[i - 1].window_center, cfg.half_width * chain.legs[i - 1].window_width};
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const Domain screen{0.5 * (*xmin + *xmax), 0.5 * (*xmax - *xmin)};

    std::vector<KernelEval> kernels;
    for (const auto& leg : chain.legs)
        kernels.push_back(make_kernel(chain.species, leg.duration, chain.prefactor, &leg.correction));

    std::vector<int> base(n_legs);
    for (std::size_t i = 0; i < n_legs; ++i) {
        double rate = 0.0;
        if (i == 0)
            rate += term_rate(chain.source, 0, std::span<const Domain>(&dom[0], 1));
        else
            rate += kernel_rate(kernels[i - 1].a, dom[i], dom[i - 1]);
        rate += kernel_rate(kernels[i].a, dom[i], i + 1 < n_legs ? dom[i + 1] : screen);
        base[i] = base_panels(rate, dom[i], cfg);
    }

    auto eval = [&](int mult) {
        std::vector<Rule> rules;
        for (std::size_t i = 0; i < n_legs; ++i)
            rules.push_back(panel_rule(dom[i].lo(), dom[i].hi(), base[i] * mult, cfg.order));
        std::vector<cplx> f(rules[0].x.size());
        for (std::size_t k = 0; k < f.size(); ++k) {
            const std::array<double, 1> y{rules[0].x[k]};
            f[k] = chain.source.value(y) * rules[0].w[k];
        }
        for (std::size_t i = 1; i < n_legs; ++i) {
            const Rule& from = rules[i - 1];
            const Rule& to = rules[i];
            const ChainLeg& leg = chain.legs[i - 1];
            std::vector<cplx> g(to.x.size());
            for (std::size_t zi = 0; zi < to.x.size(); ++zi) {
                cplx acc = 0.0;
                for (std::size_t yi = 0; yi < from.x.size(); ++yi)
                    acc += kernels[i - 1](to.x[zi], from.x[yi]) * f[yi];
                g[zi] = acc * window(to.x[zi], leg.window_center, leg.window_width) * to.w[zi];
            }
            f = std::move(g);
        }
        const Rule& last = rules.back();
        std::vector<cplx> out(xs.size());
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            cplx acc = 0.0;
            for (std::size_t yi = 0; yi < last.x.size(); ++yi)
                acc += kernels.back()(xs[xi], last.x[yi]) * f[yi];
            out[xi] = acc;
        }
        return out;
    };
    return refine(eval, cfg, "chain quadrature");
}

cplx pair_chain_amplitude(const PairChainSpec& spec, double x1, double x2, const QuadConfig& cfg)
{
    cfg.validate();
    spec.slits.validate();
    const double hw = cfg.half_width * spec.slits.beta;
    const std::array<const Route*, 2> routes{&spec.photon1, &spec.photon2};
    const std::array<double, 2> screen{x1, x2};

    // Per photon: domains of the successive slit coordinates and their kernels.
    struct PhotonPlan
    {
        std::vector<Domain> dom;
        std::vector<KernelEval> kern; // kern[k] maps variable k to k+1 (last: to screen)
        std::vector<int> base;
    };
    std::array<PhotonPlan, 2> plan;
    for (int p = 0; p < 2; ++p) {
        const auto& r = routes[p]->slits;
        if (r.empty())
            throw InvalidParameter("route visits no slit");
        for (int s : r)
            plan[p].dom.push_back({spec.slits.centers.at(s), hw});
        for (std::size_t k = 1; k < r.size(); ++k)
            plan[p].kern.push_back(make_kernel(spec.species, spec.slits.hop_time(r[k - 1], r[k], spec.eps),
                                               spec.prefactor));
        plan[p].kern.push_back(make_kernel(spec.species, spec.tau, spec.prefactor));
    }
    const std::array<Domain, 2> first{plan[0].dom[0], plan[1].dom[0]};
    for (int p = 0; p < 2; ++p) {
        auto& pl = plan[p];
        const Domain scr{screen[p], 0.0};
        for (std::size_t k = 0; k < pl.dom.size(); ++k) {
            double rate = k == 0 ? term_rate(spec.at_slits, p, first) : kernel_rate(pl.kern[k - 1].a, pl.dom[k], pl.dom[k - 1]);
            rate += kernel_rate(pl.kern[k].a, pl.dom[k], k + 1 < pl.dom.size() ? pl.dom[k + 1] : scr);
            pl.base.push_back(base_panels(rate, pl.dom[k], cfg));
        }
    }

    auto eval = [&](int mult) {
        std::array<std::vector<cplx>, 2> vec;
        std::array<Rule, 2> first_rule;
        for (int p = 0; p < 2; ++p) {
            const auto& pl = plan[p];
            const auto& r = routes[p]->slits;
            std::vector<Rule> rules;
            for (std::size_t k = 0; k < pl.dom.size(); ++k)
                rules.push_back(panel_rule(pl.dom[k].lo(), pl.dom[k].hi(), pl.base[k] * mult, cfg.order));
            // Backward transfer from the screen point.
            const std::size_t last = rules.size() - 1;
            std::vector<cplx> t(rules[last].x.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                t[i] = pl.kern[last](screen[p], rules[last].x[i]);
            for (std::size_t k = last; k > 0; --k) {
                const Rule& z = rules[k];
                const Rule& y = rules[k - 1];
                const double c = spec.slits.centers[r[k]];
                std::vector<cplx> prev(y.x.size(), 0.0);
                for (std::size_t zi = 0; zi < z.x.size(); ++zi) {
                    const cplx tz = t[zi] * window(z.x[zi], c, spec.slits.beta) * z.w[zi];
                    for (std::size_t yi = 0; yi < y.x.size(); ++yi)
                        prev[yi] += pl.kern[k - 1](z.x[zi], y.x[yi]) * tz;
                }
                t = std::move(prev);
            }
            const double c0 = spec.slits.centers[r[0]];
            for (std::size_t i = 0; i < t.size(); ++i)
                t[i] *= window(rules[0].x[i], c0, spec.slits.beta) * rules[0].w[i];
            vec[p] = std::move(t);
            first_rule[p] = rules[0];
        }
        cplx acc = 0.0;
        for (std::size_t i = 0; i < vec[0].size(); ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < vec[1].size(); ++j) {
                const std::array<double, 2> y{first_rule[0].x[i], first_rule[1].x[j]};
                row += spec.at_slits.value(y) * vec[1][j];
            }
            acc += vec[0][i] * row;
        }
        return std::vector<cplx>{acc};
    };
    return refine(eval, cfg, "two-photon chain quadrature")[0];
}

} // namespace sorkin
