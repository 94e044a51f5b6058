#include "sorkin/kappa.hpp"

#include "sorkin/errors.hpp"

#include <bit>
#include <cmath>
#include <exception>

namespace sorkin {

Normalization parse_normalization(const std::string& s)
{
    if (s == "central")
        return Normalization::central;
    if (s == "total0")
        return Normalization::total0;
    throw InvalidParameter("normalization must be 'central' or 'total0', got '" + s + "'");
}

std::string to_string(Normalization n)
{
    return n == Normalization::central ? "central" : "total0";
}

namespace {

std::span<const double> coords(const PointSet& pts, std::size_t i)
{
    return {pts.p[i].data(), static_cast<std::size_t>(pts.vars)};
}

double denominator(const std::vector<double>& total, double total0, Normalization mode)
{
    double den = total0;
    if (mode == Normalization::central) {
        den = 0.0;
        for (double v : total)
            den = std::max(den, v);
    }
    if (!(den > 0.0) || !std::isfinite(den))
        throw ZeroDenominator("normalizing intensity vanishes");
    return den;
}

SorkinMap finish(const PointSet& pts, std::vector<double> numerator, double den, Normalization mode)
{
    SorkinMap m;
    m.points = pts;
    m.mode = mode;
    m.denominator = den;
    m.kappa = std::move(numerator);
    for (std::size_t i = 0; i < m.kappa.size(); ++i) {
        m.kappa[i] /= den;
        if (std::abs(m.kappa[i]) > m.kappa_max_abs) {
            m.kappa_max_abs = std::abs(m.kappa[i]);
            m.argmax = i;
        }
    }
    return m;
}

double common_scale(const GaussSum& a, const GaussSum& b, int vars)
{
    const std::array<double, 2> zero{0.0, 0.0};
    const std::span<const double> at(zero.data(), static_cast<std::size_t>(vars));
    return log_scale_at(a.empty() ? b : a, at);
}

} // namespace

SorkinMap kappa_from_values(const std::vector<cplx>& c, const std::vector<cplx>& nc, cplx c0, cplx nc0,
                            const PointSet& pts, Normalization mode)
{
    if (c.size() != pts.size() || nc.size() != pts.size())
        throw InvalidParameter("amplitude vectors do not match the point set");
    std::vector<double> num(pts.size()), total(pts.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        num[i] = 2.0 * std::real(std::conj(c[i]) * nc[i]) + std::norm(nc[i]);
        total[i] = std::norm(c[i] + nc[i]);
    }
    return finish(pts, std::move(num), denominator(total, std::norm(c0 + nc0), mode), mode);
}

SorkinMap kappa_exact(const GaussSum& classical, const GaussSum& nc, const PointSet& pts, Normalization mode,
                      Exec exec)
{
    if (classical.empty() && nc.empty())
        throw ZeroDenominator("no amplitudes to normalize by");
    if (!classical.empty() && !nc.empty() && classical.vars() != nc.vars())
        throw InvalidParameter("classical and non-classical sums use different coordinates");
    const double scale = common_scale(classical, nc, pts.vars);
    const auto c = evaluate(classical, pts, scale, exec);
    const auto n = evaluate(nc, pts, scale, exec);
    const PointSet o = PointSet::origin(pts.vars);
    const cplx c0 = classical.scaled_value(coords(o, 0), scale);
    const cplx n0 = nc.scaled_value(coords(o, 0), scale);
    return kappa_from_values(c, n, c0, n0, pts, mode);
}

std::vector<Branch> matter_branches(const MatterParams& p, double eps)
{
    std::vector<Branch> out;
    for (int j = 0; j < p.n_slits; ++j)
        out.push_back({GaussSum{classical_term(p, j)}, 1u << j});
    for (int j = 0; j < p.n_slits; ++j)
        for (int l = 0; l < p.n_slits; ++l)
            if (l != j)
                out.push_back({GaussSum{kink_term(p, j, l, eps)}, (1u << j) | (1u << l)});
    return out;
}

SorkinMap kappa_inclusion_exclusion(const std::vector<Branch>& branches, int n_slits, const PointSet& pts,
                                    bool first_order, Normalization mode, Exec exec)
{
    if (branches.empty())
        throw ZeroDenominator("no branches");
    if (n_slits < 1 || n_slits > 16)
        throw InvalidParameter("slit count out of range");
    const unsigned full = (1u << n_slits) - 1u;

    GaussSum all(branches.front().amp.vars());
    for (const auto& b : branches)
        all.append(b.amp);
    const double scale = common_scale(all, all, pts.vars);

    std::vector<std::vector<cplx>> v;
    for (const auto& b : branches)
        v.push_back(evaluate(b.amp, pts, scale, exec));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < branches.size(); ++a)
        for (std::size_t b = 0; b < branches.size(); ++b) {
            if ((branches[a].slits | branches[b].slits) != full)
                continue;
            if (first_order) {
                const bool ca = std::popcount(branches[a].slits) == 1;
                const bool cb = std::popcount(branches[b].slits) == 1;
                if (ca == cb)
                    continue;
            }
            pairs.emplace_back(a, b);
        }

    std::vector<double> num(pts.size(), 0.0), total(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double s = 0.0;
        cplx sum = 0.0;
        for (const auto& [a, b] : pairs)
            s += std::real(std::conj(v[a][i]) * v[b][i]);
        for (const auto& vb : v)
            sum += vb[i];
        num[i] = s;
        total[i] = std::norm(sum);
    }
    const PointSet o = PointSet::origin(pts.vars);
    const double total0 = std::norm(all.scaled_value(coords(o, 0), scale));
    return finish(pts, std::move(num), denominator(total, total0, mode), mode);
}

SorkinMap kappa_first_order(const std::vector<Branch>& branches, int n_slits, const PointSet& pts,
                            Normalization mode, Exec exec)
{
    return kappa_inclusion_exclusion(branches, n_slits, pts, true, mode, exec);
}

ZeroIntegral zero_integral(const GaussSum& classical, const GaussSum& nc, const std::vector<double>& x1s,
                           const std::vector<double>& x2s)
{
    const int vars = x2s.empty() ? 1 : 2;
    if (classical.empty() || classical.vars() != vars || (!nc.empty() && nc.vars() != vars))
        throw InvalidParameter("zero_integral: coordinate count mismatch");
    if (x1s.size() < 2 || (vars == 2 && x2s.size() < 2))
        throw InvalidParameter("zero_integral needs at least two points per axis");

    const double scale = common_scale(classical, nc, vars);
    const double f = std::exp(-2.0 * scale);
    const double norm_c = f * norm_sq(classical);
    const double dn = nc.empty() ? 0.0
                                 : f * (2.0 * std::real(overlap(classical, nc)) + std::real(overlap(nc, nc)));
    const double nn = norm_c + dn;

    const PointSet pts = vars == 1 ? PointSet::line(x1s) : PointSet::surface(x1s, x2s);
    const auto c = evaluate(classical, pts, scale);
    const auto n = evaluate(nc, pts, scale);
    const PointSet o = PointSet::origin(vars);
    const double i0 = std::norm(classical.scaled_value(coords(o, 0), scale) + nc.scaled_value(coords(o, 0), scale)) / nn;
    if (!(i0 > 0.0))
        throw ZeroDenominator("normalizing intensity vanishes");

    auto weights = [](const std::vector<double>& xs) {
        std::vector<double> w(xs.size(), 0.0);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double h = 0.5 * (xs[i + 1] - xs[i]);
            w[i] += h;
            w[i + 1] += h;
        }
        return w;
    };
    const auto w1 = weights(x1s);
    const auto w2 = vars == 2 ? weights(x2s) : std::vector<double>{1.0};

    ZeroIntegral z;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double ic = std::norm(c[i]);
        const double num = (2.0 * std::real(std::conj(c[i]) * n[i]) + std::norm(n[i])) / nn - ic * dn / (nn * norm_c);
        const double k = num / i0;
        const double w = w1[i / w2.size()] * w2[i % w2.size()];
        z.integral += w * k;
        z.abs_integral += w * std::abs(k);
    }
    return z;
}

BiphotonKappa biphoton_kappa(const BiphotonSetup& s, const PointSet& pts, Normalization mode, Exec exec)
{
    s.params.validate();
    BiphotonKappa out;
    out.eps = resolved_eps(s.params, s.slits);
    const GaussSum c = path_sum(s.params, s.slits, s.classical, out.eps);
    const GaussSum nc = s.nonclassical.empty() ? GaussSum(2) : path_sum(s.params, s.slits, s.nonclassical, out.eps);
    out.map = kappa_exact(c, nc, pts, mode, exec);
    return out;
}

namespace {

template <class Setup>
std::vector<ScanPoint> run_scan(std::size_t n, Setup&& setup_at, const PointSet& pts, Normalization mode)
{
    std::vector<ScanPoint> out(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            const BiphotonSetup s = setup_at(static_cast<std::size_t>(i));
            const auto k = biphoton_kappa(s, pts, mode, Exec::serial);
            ScanPoint& sp = out[static_cast<std::size_t>(i)];
            sp.en = log_negativity(s.params);
            sp.omega = s.params.omega;
            sp.T = s.params.T;
            sp.rho_T = pearson(s.params, s.params.T);
            sp.eps = k.eps;
            sp.kappa_max_abs = k.map.kappa_max_abs;
            sp.argmax = k.map.argmax_point();
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace

std::vector<ScanPoint> scan_negativity(const BiphotonSetup& base, const std::vector<double>& en, const PointSet& pts,
                                       Normalization mode)
{
    return run_scan(
        en.size(),
        [&](std::size_t i) {
            BiphotonSetup s = base;
            s.params.omega = omega_from_negativity(base.params.sigma, en[i]);
            return s;
        },
        pts, mode);
}

std::vector<ScanPoint> scan_pearson(const BiphotonSetup& base, const std::vector<double>& T, const PointSet& pts,
                                    Normalization mode)
{
    return run_scan(
        T.size(),
        [&](std::size_t i) {
            BiphotonSetup s = base;
            s.params.T = T[i];
            return s;
        },
        pts, mode);
}

SorkinMap relativistic_kappa(const MatterParams& p, const std::vector<double>& xs, const QuadConfig& cfg,
                             Normalization mode)
{
    p.validate();
    std::vector<double> all = xs;
    all.push_back(0.0);
    std::vector<cplx> delta(all.size(), 0.0);
    for (int j = 0; j < p.n_slits; ++j) {
        const auto dj = relativistic_delta(p, j, all, cfg);
        for (std::size_t i = 0; i < all.size(); ++i)
            delta[i] += dj[i];
    }
    const GaussSum c = classical_sum(p);
    const PointSet pts = PointSet::line(xs);
    const auto cv = evaluate(c, pts, 0.0);
    const std::array<double, 1> zero{0.0};
    const cplx c0 = c.value(zero);
    const cplx d0 = delta.back();
    delta.pop_back();
    return kappa_from_values(cv, delta, c0, d0, pts, mode);
}

} // namespace sorkin
