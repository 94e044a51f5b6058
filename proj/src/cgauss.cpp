#include "sorkin/cgauss.hpp"

#include "sorkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sorkin {

namespace {

constexpr double kPi = std::numbers::pi;

void check_var(const GaussTerm& t, int var)
{
    if (var < 0 || var >= t.vars())
        throw std::out_of_range("GaussTerm variable index out of range");
}

// Places `small` into a term of `vars` variables; small's variable i maps to map[i].
GaussTerm embed(const GaussTerm& small, int vars, std::span<const int> map)
{
    GaussTerm out(vars);
    out.set_log_amp(small.log_amp());
    out.set_constant(small.constant());
    for (int i = 0; i < small.vars(); ++i) {
        out.add_linear(map[i], small.linear(i));
        for (int j = i; j < small.vars(); ++j)
            out.add_quadratic(map[i], map[j], small.quadratic(i, j));
    }
    return out;
}

// Variable `from` moved to position `to`, others keep their relative order.
GaussTerm move_var(const GaussTerm& t, int from, int to)
{
    std::array<int, GaussTerm::kMaxVars> order{};
    int n = 0;
    for (int i = 0; i < t.vars(); ++i)
        if (i != from)
            order[n++] = i;
    // order lists the remaining variables; insert `from` at `to`.
    std::array<int, GaussTerm::kMaxVars> map{};
    int slot = 0;
    for (int pos = 0; pos < t.vars(); ++pos) {
        int src = (pos == to) ? from : order[slot++];
        map[src] = pos;
    }
    return embed(t, t.vars(), std::span<const int>(map.data(), t.vars()));
}

GaussTerm integrate_impl(const GaussTerm& t, int var, bool allow_fresnel)
{
    check_var(t, var);
    const cplx p = t.sym(var, var);
    if (p.real() > 0.0 || (p.real() == 0.0 && (!allow_fresnel || p.imag() == 0.0)))
        throw NonIntegrable("Gaussian integral diverges: Re(quadratic coefficient) = "
                            + std::to_string(p.real()));

    GaussTerm out(t.vars() - 1);
    auto dst = [var](int i) { return i < var ? i : i - 1; };
    const cplx lv = t.linear(var);
    for (int i = 0; i < t.vars(); ++i) {
        if (i == var)
            continue;
        out.set_linear(dst(i), t.linear(i) - lv * t.sym(var, i) / p);
        for (int j = i; j < t.vars(); ++j) {
            if (j == var)
                continue;
            const cplx mij = t.sym(i, j) - t.sym(var, i) * t.sym(var, j) / p;
            out.set_quadratic(dst(i), dst(j), i == j ? mij : 2.0 * mij);
        }
    }
    out.set_constant(t.constant() - lv * lv / (4.0 * p));
    out.set_log_amp(t.log_amp() + 0.5 * std::log(kPi / (-p)));
    return out;
}

// Small dense complex inverse (Gauss-Jordan, partial pivoting).
template <int N>
using CMat = std::array<std::array<cplx, N>, N>;

CMat<GaussTerm::kMaxVars> inverse(const GaussTerm& t)
{
    const int n = t.vars();
    CMat<GaussTerm::kMaxVars> a{};
    CMat<GaussTerm::kMaxVars> inv{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            a[i][j] = t.sym(i, j);
        inv[i][i] = 1.0;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        if (std::abs(a[piv][c]) == 0.0)
            throw NonIntegrable("singular quadratic form");
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        const cplx d = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const cplx f = a[r][c];
            if (f == 0.0)
                continue;
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Gaussian expectation data of the (unnormalized) product term.
struct ProductStats
{
    cplx log_z;
    std::array<cplx, GaussTerm::kMaxVars> mu{};
    CMat<GaussTerm::kMaxVars> second{}; // E[x_i x_j]
};

ProductStats stats_of(const GaussTerm& prod)
{
    ProductStats s;
    s.log_z = log_integral(prod);
    const int n = prod.vars();
    const auto inv = inverse(prod);
    for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += inv[i][j] * prod.linear(j);
        s.mu[i] = -0.5 * acc;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.second[i][j] = -0.5 * inv[i][j] + s.mu[i] * s.mu[j];
    return s;
}

struct PairTable
{
    std::vector<ProductStats> stats;
    double log_ref = 0.0;
    std::size_t n = 0;
    const ProductStats& at(std::size_t a, std::size_t b) const { return stats[a * n + b]; }
    cplx weight(std::size_t a, std::size_t b) const { return std::exp(at(a, b).log_z - log_ref); }
};

PairTable pair_table(const GaussSum& s)
{
    if (s.empty())
        throw ZeroVariance("moments of an empty sum");
    PairTable tab;
    tab.n = s.size();
    tab.stats.reserve(tab.n * tab.n);
    tab.log_ref = -std::numeric_limits<double>::infinity();
    for (const auto& a : s.terms()) {
        const GaussTerm ca = conj(a);
        for (const auto& b : s.terms()) {
            tab.stats.push_back(stats_of(multiply(ca, b)));
            tab.log_ref = std::max(tab.log_ref, tab.stats.back().log_z.real());
        }
    }
    return tab;
}

} // namespace

// ---- GaussTerm -------------------------------------------------------------

GaussTerm::GaussTerm(int vars) : vars_(vars)
{
    if (vars < 0 || vars > kMaxVars)
        throw std::invalid_argument("GaussTerm supports 0..4 variables");
}

cplx GaussTerm::quadratic(int i, int j) const
{
    return i == j ? m_[i][i] : 2.0 * m_[i][j];
}

void GaussTerm::set_quadratic(int i, int j, cplx v)
{
    if (i == j) {
        m_[i][i] = v;
    } else {
        m_[i][j] = 0.5 * v;
        m_[j][i] = 0.5 * v;
    }
}

void GaussTerm::add_quadratic(int i, int j, cplx v)
{
    set_quadratic(i, j, quadratic(i, j) + v);
}

namespace {

using cplxl = std::complex<long double>;

// Extended accumulation: exponents reach thousands of radians and the
// intensity of a sum of terms would otherwise depend on summation order.
cplxl log_value_ext(const GaussTerm& t, std::span<const double> x)
{
    cplxl e = cplxl(t.log_amp()) + cplxl(t.constant());
    for (int i = 0; i < t.vars(); ++i) {
        const long double xi = x[i];
        e += cplxl(t.linear(i)) * xi;
        e += cplxl(t.sym(i, i)) * (xi * xi);
        for (int j = i + 1; j < t.vars(); ++j)
            e += cplxl(t.sym(i, j)) * (2.0L * xi * static_cast<long double>(x[j]));
    }
    return e;
}

cplx narrow(cplxl z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// exp of an extended exponent; the phase is reduced before narrowing.
cplx exp_ext(cplxl z)
{
    constexpr long double two_pi = 6.283185307179586476925286766559L;
    const long double ph = std::remainder(z.imag(), two_pi);
    return std::exp(cplx(static_cast<double>(z.real()), static_cast<double>(ph)));
}

} // namespace

cplx GaussTerm::log_value(std::span<const double> x) const
{
    return narrow(log_value_ext(*this, x));
}

cplx GaussTerm::value(std::span<const double> x) const
{
    return exp_ext(log_value_ext(*this, x));
}

bool GaussTerm::normalizable() const
{
    // Cholesky of -Re(M).
    std::array<std::array<double, kMaxVars>, kMaxVars> a{};
    for (int i = 0; i < vars_; ++i)
        for (int j = 0; j < vars_; ++j)
            a[i][j] = -m_[i][j].real();
    for (int j = 0; j < vars_; ++j) {
        double d = a[j][j];
        for (int k = 0; k < j; ++k)
            d -= a[j][k] * a[j][k];
        if (!(d > 0.0))
            return false;
        a[j][j] = std::sqrt(d);
        for (int i = j + 1; i < vars_; ++i) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k)
                s -= a[i][k] * a[j][k];
            a[i][j] = s / a[j][j];
        }
    }
    return true;
}

// ---- GaussSum ---------------------------------------------------------------

GaussSum::GaussSum(std::initializer_list<GaussTerm> terms)
    : vars_(terms.size() ? terms.begin()->vars() : 1)
{
    for (const auto& t : terms)
        add(t);
}

void GaussSum::add(const GaussTerm& t)
{
    if (t.vars() != vars_)
        throw std::invalid_argument("GaussSum terms must share their variable count");
    terms_.push_back(t);
}

void GaussSum::append(const GaussSum& other)
{
    for (const auto& t : other.terms())
        add(t);
}

cplx GaussSum::value(std::span<const double> x) const
{
    cplx acc = 0.0;
    for (const auto& t : terms_)
        acc += t.value(x);
    return acc;
}

cplx GaussSum::scaled_value(std::span<const double> x, double log_scale) const
{
    cplx acc = 0.0;
    for (const auto& t : terms_)
        acc += exp_ext(log_value_ext(t, x) - static_cast<long double>(log_scale));
    return acc;
}

// ---- term algebra ---------------------------------------------------------

GaussTerm multiply(const GaussTerm& a, const GaussTerm& b)
{
    if (a.vars() != b.vars())
        throw std::invalid_argument("multiply: variable counts differ");
    GaussTerm out = a;
    out.add_log_amp(b.log_amp());
    out.add_constant(b.constant());
    for (int i = 0; i < a.vars(); ++i) {
        out.add_linear(i, b.linear(i));
        for (int j = i; j < a.vars(); ++j)
            out.add_quadratic(i, j, b.quadratic(i, j));
    }
    return out;
}

GaussTerm conj(const GaussTerm& t)
{
    GaussTerm out(t.vars());
    out.set_log_amp(std::conj(t.log_amp()));
    out.set_constant(std::conj(t.constant()));
    for (int i = 0; i < t.vars(); ++i) {
        out.set_linear(i, std::conj(t.linear(i)));
        for (int j = i; j < t.vars(); ++j)
            out.set_quadratic(i, j, std::conj(t.quadratic(i, j)));
    }
    return out;
}

GaussTerm integrate_out(const GaussTerm& t, int var)
{
    return integrate_impl(t, var, false);
}

GaussTerm integrate_out_fresnel(const GaussTerm& t, int var)
{
    return integrate_impl(t, var, true);
}

cplx log_integral(const GaussTerm& t)
{
    GaussTerm cur = t;
    while (cur.vars() > 0)
        cur = integrate_out(cur, cur.vars() - 1);
    return cur.log_amp() + cur.constant();
}

GaussTerm insert_var(const GaussTerm& t, int pos)
{
    if (t.vars() >= GaussTerm::kMaxVars)
        throw std::invalid_argument("insert_var: too many variables");
    std::array<int, GaussTerm::kMaxVars> map{};
    for (int i = 0; i < t.vars(); ++i)
        map[i] = i < pos ? i : i + 1;
    return embed(t, t.vars() + 1, std::span<const int>(map.data(), t.vars()));
}

GaussTerm swap_vars(const GaussTerm& t, int i, int j)
{
    check_var(t, i);
    check_var(t, j);
    std::array<int, GaussTerm::kMaxVars> map{};
    for (int v = 0; v < t.vars(); ++v)
        map[v] = v;
    std::swap(map[i], map[j]);
    return embed(t, t.vars(), std::span<const int>(map.data(), t.vars()));
}

GaussTerm reflect(const GaussTerm& t)
{
    GaussTerm out = t;
    for (int i = 0; i < t.vars(); ++i)
        out.set_linear(i, -t.linear(i));
    return out;
}

GaussTerm restrict_to(const GaussTerm& t, int vars)
{
    GaussTerm out(vars);
    out.set_log_amp(t.log_amp());
    out.set_constant(t.constant());
    for (int i = 0; i < vars; ++i) {
        out.set_linear(i, t.linear(i));
        for (int j = i; j < vars; ++j)
            out.set_quadratic(i, j, t.quadratic(i, j));
    }
    return out;
}

GaussTerm window_term(int vars, int var, double center, double beta)
{
    if (!(beta > 0.0))
        throw InvalidParameter("slit width beta must be positive");
    GaussTerm w(vars);
    check_var(w, var);
    const double s = 1.0 / (2.0 * beta * beta);
    w.set_quadratic(var, var, -s);
    w.set_linear(var, 2.0 * s * center);
    w.set_constant(-s * center * center);
    return w;
}

// ---- sums --------------------------------------------------------------------

GaussSum multiply(const GaussSum& s, const GaussTerm& t)
{
    GaussSum out(s.vars());
    for (const auto& a : s.terms())
        out.add(multiply(a, t));
    return out;
}

GaussSum integrate_out(const GaussSum& s, int var)
{
    GaussSum out(s.vars() - 1);
    for (const auto& a : s.terms())
        out.add(integrate_out(a, var));
    return out;
}

GaussSum swap_vars(const GaussSum& s, int i, int j)
{
    GaussSum out(s.vars());
    for (const auto& a : s.terms())
        out.add(swap_vars(a, i, j));
    return out;
}

GaussSum reflect(const GaussSum& s)
{
    GaussSum out(s.vars());
    for (const auto& a : s.terms())
        out.add(reflect(a));
    return out;
}

GaussTerm apply_kernel(const GaussTerm& t, const Kernel& k, int var)
{
    if (!(k.duration > 0.0))
        throw InvalidDuration("kernel leg duration must be positive");
    check_var(t, var);
    const int n = t.vars();
    const GaussTerm ext = insert_var(t, n);
    const std::array<int, 2> map{n, var};
    const GaussTerm prod = multiply(ext, embed(k.term, n + 1, map));
    // After removing `var` the new coordinate sits last; move it into place.
    return move_var(integrate_out(prod, var), n - 1, var);
}

GaussSum apply_kernel(const GaussSum& s, const Kernel& k, int var)
{
    GaussSum out(s.vars());
    for (const auto& a : s.terms())
        out.add(apply_kernel(a, k, var));
    return out;
}

Kernel compose(const Kernel& first, const Kernel& second)
{
    // Variables (out, in, mid).
    const std::array<int, 2> second_map{0, 2};
    const std::array<int, 2> first_map{2, 1};
    const GaussTerm prod = multiply(embed(second.term, 3, second_map), embed(first.term, 3, first_map));
    Kernel out;
    out.term = integrate_out_fresnel(prod, 2);
    out.duration = first.duration + second.duration;
    return out;
}

GaussTerm apply_window(const GaussTerm& t, double center, double beta, int var)
{
    return multiply(t, window_term(t.vars(), var, center, beta));
}

GaussSum apply_window(const GaussSum& s, double center, double beta, int var)
{
    return multiply(s, window_term(s.vars(), var, center, beta));
}

// ---- overlaps and moments -------------------------------------------------

cplx overlap(const GaussTerm& a, const GaussTerm& b)
{
    return std::exp(log_integral(multiply(conj(a), b)));
}

cplx overlap(const GaussSum& a, const GaussSum& b)
{
    cplx acc = 0.0;
    for (const auto& ta : a.terms()) {
        const GaussTerm ca = conj(ta);
        for (const auto& tb : b.terms())
            acc += std::exp(log_integral(multiply(ca, tb)));
    }
    return acc;
}

double norm_sq(const GaussSum& s)
{
    return overlap(s, s).real();
}

double MomentumMoments::spread() const
{
    const double var = mean_sq - mean * mean;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

PositionMoments position_moments(const GaussSum& s, int var)
{
    const PairTable tab = pair_table(s);
    cplx z = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t a = 0; a < tab.n; ++a)
        for (std::size_t b = 0; b < tab.n; ++b) {
            const cplx w = tab.weight(a, b);
            const auto& st = tab.at(a, b);
            z += w;
            m1 += w * st.mu[var];
            m2 += w * st.second[var][var];
        }
    PositionMoments out;
    out.norm = z.real() * std::exp(tab.log_ref);
    out.mean = (m1 / z).real();
    out.mean_sq = (m2 / z).real();
    return out;
}

double position_cross_moment(const GaussSum& s, int i, int j)
{
    const PairTable tab = pair_table(s);
    cplx z = 0.0, m = 0.0;
    for (std::size_t a = 0; a < tab.n; ++a)
        for (std::size_t b = 0; b < tab.n; ++b) {
            const cplx w = tab.weight(a, b);
            z += w;
            m += w * tab.at(a, b).second[i][j];
        }
    return (m / z).real();
}

MomentumMoments momentum_moments(const GaussSum& s, std::span<const double> w)
{
    const PairTable tab = pair_table(s);
    const int n = s.vars();
    // d/dx along w of term t is g_t(x) * t with g_t(x) = beta . x + beta0.
    auto grad = [&](const GaussTerm& t, std::array<cplx, GaussTerm::kMaxVars>& beta, cplx& beta0) {
        beta0 = 0.0;
        for (int i = 0; i < n; ++i) {
            beta0 += w[i] * t.linear(i);
            cplx acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += 2.0 * t.sym(i, j) * w[j];
            beta[i] = acc;
        }
    };
    cplx z = 0.0, k1 = 0.0, k2 = 0.0;
    const auto& terms = s.terms();
    for (std::size_t a = 0; a < tab.n; ++a) {
        std::array<cplx, GaussTerm::kMaxVars> alpha{};
        cplx alpha0;
        grad(terms[a], alpha, alpha0);
        for (auto& v : alpha)
            v = std::conj(v);
        alpha0 = std::conj(alpha0);
        for (std::size_t b = 0; b < tab.n; ++b) {
            std::array<cplx, GaussTerm::kMaxVars> beta{};
            cplx beta0;
            grad(terms[b], beta, beta0);
            const auto& st = tab.at(a, b);
            const cplx wgt = tab.weight(a, b);
            cplx b_mu = beta0, a_mu = 0.0, quad = 0.0;
            for (int i = 0; i < n; ++i) {
                b_mu += beta[i] * st.mu[i];
                a_mu += alpha[i] * st.mu[i];
                for (int j = 0; j < n; ++j)
                    quad += alpha[i] * st.second[i][j] * beta[j];
            }
            z += wgt;
            k1 += wgt * cplx(0.0, -1.0) * b_mu;
            k2 += wgt * (quad + alpha0 * (b_mu - beta0) + beta0 * a_mu + alpha0 * beta0);
        }
    }
    MomentumMoments out;
    out.norm = z.real() * std::exp(tab.log_ref);
    out.mean = (k1 / z).real();
    out.mean_sq = (k2 / z).real();
    return out;
}

MomentumMoments momentum_moments(const GaussSum& s, int var)
{
    std::array<double, GaussTerm::kMaxVars> w{};
    w[var] = 1.0;
    return momentum_moments(s, std::span<const double>(w.data(), s.vars()));
}

} // namespace sorkin
