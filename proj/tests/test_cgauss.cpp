#include "sorkin/cgauss.hpp"
#include "sorkin/errors.hpp"
#include "sorkin/propagators.hpp"

#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace sorkin;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double coeff_rel(const GaussTerm& a, const GaussTerm& b)
{
    double scale = 0.0, diff = 0.0;
    auto acc = [&](cplx x, cplx y) {
        scale = std::max(scale, std::max(std::abs(x), std::abs(y)));
        diff = std::max(diff, std::abs(x - y));
    };
    for (int i = 0; i < a.vars(); ++i) {
        acc(a.linear(i), b.linear(i));
        for (int j = i; j < a.vars(); ++j)
            acc(a.quadratic(i, j), b.quadratic(i, j));
    }
    acc(a.constant() + a.log_amp(), b.constant() + b.log_amp());
    return scale > 0.0 ? diff / scale : diff;
}

// Complex integral of f over [a, b], real and imaginary parts separately.
template <class F>
cplx integrate_numeric(F f, double a, double b)
{
    using boost::math::quadrature::gauss_kronrod;
    const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 15, 1e-13);
    const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 15, 1e-13);
    return {re, im};
}

GaussTerm gaussian_1d(double sigma)
{
    GaussTerm t(1);
    t.set_quadratic(0, 0, -1.0 / (2.0 * sigma * sigma));
    t.set_log_amp(-0.25 * std::log(std::numbers::pi * sigma * sigma));
    return t;
}

} // namespace

TEST_CASE("unit term is the multiplicative identity")
{
    GaussTerm t(2);
    t.set_quadratic(0, 0, {-1.0, 0.3});
    t.set_quadratic(0, 1, {0.2, -0.1});
    t.set_quadratic(1, 1, {-0.5, 2.0});
    t.set_linear(0, {0.4, 1.0});
    t.set_constant({0.1, 0.2});
    t.set_log_amp({0.5, -0.7});
    const GaussTerm u = multiply(t, GaussTerm(2));
    CHECK(coeff_rel(u, t) == 0.0);
    CHECK(u.log_amp() == t.log_amp());
}

TEST_CASE("multiplying Gaussians adds exponents")
{
    GaussTerm g(1);
    g.set_quadratic(0, 0, -1.0);
    const GaussTerm p = multiply(g, g);
    CHECK(p.q11() == cplx(-2.0));
    CHECK(p.l1() == cplx(0.0));
}

TEST_CASE("multiply is commutative and associative")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rand_term = [&] {
        GaussTerm t(3);
        for (int i = 0; i < 3; ++i) {
            t.set_linear(i, {u(rng), u(rng)});
            for (int j = i; j < 3; ++j)
                t.set_quadratic(i, j, {u(rng), u(rng)});
        }
        t.set_constant({u(rng), u(rng)});
        t.set_log_amp({u(rng), u(rng)});
        return t;
    };
    for (int n = 0; n < 20; ++n) {
        const auto a = rand_term(), b = rand_term(), c = rand_term();
        CHECK(coeff_rel(multiply(a, b), multiply(b, a)) <= 1e-15);
        CHECK(coeff_rel(multiply(multiply(a, b), c), multiply(a, multiply(b, c))) <= 1e-15);
    }
}

TEST_CASE("product of the two double-slit windows has no cross terms")
{
    const double d = 0.1, beta = 5e-3;
    const GaussTerm p = multiply(window_term(1, 0, d / 2, beta), window_term(1, 0, -d / 2, beta));
    // -(x^2 + d^2/4) / beta^2
    CHECK(std::abs(p.q11() + 1.0 / (beta * beta)) <= 1e-12 / (beta * beta));
    CHECK(std::abs(p.l1()) <= 1e-9);
    CHECK(std::abs(p.k() + d * d / (4 * beta * beta)) <= 1e-12);
}

TEST_CASE("window on the upper slit shifts the linear coefficient by d/(2 beta^2)")
{
    const double d = 0.1, beta = 5e-3;
    const GaussTerm w = apply_window(GaussTerm(1), d / 2, beta);
    CHECK(w.l1().real() == doctest::Approx(2000.0).epsilon(1e-12));
}

TEST_CASE("centred window preserves evenness and windows commute with mirroring")
{
    const GaussTerm s = gaussian_1d(0.02);
    const GaussTerm w = apply_window(s, 0.0, 0.01);
    CHECK(w.l1() == cplx(0.0));

    GaussTerm a(1);
    a.set_quadratic(0, 0, {-3.0, 5.0});
    a.set_linear(0, {1.5, -2.0});
    const double c = 0.3, beta = 0.2;
    const GaussTerm lhs = reflect(apply_window(a, c, beta));
    const GaussTerm rhs = apply_window(reflect(a), -c, beta);
    CHECK(coeff_rel(lhs, rhs) <= 1e-15);
}

TEST_CASE("standard Gaussian integrals")
{
    GaussTerm g(1);
    g.set_quadratic(0, 0, -1.0);
    const GaussTerm r = integrate_out(g, 0);
    CHECK(r.vars() == 0);
    CHECK(std::abs(r.log_amp() - 0.5 * std::log(std::numbers::pi)) <= 1e-15);
    CHECK(r.k() == cplx(0.0));

    // integral of exp(-x^2 + 2xy) dx = sqrt(pi) exp(y^2)
    GaussTerm h(2);
    h.set_quadratic(0, 0, -1.0);
    h.set_quadratic(0, 1, 2.0);
    const GaussTerm s = integrate_out(h, 0);
    CHECK(s.vars() == 1);
    CHECK(std::abs(s.q11() - 1.0) <= 1e-15);
    for (double y : {-1.0, 0.3, 2.0}) {
        const std::array<double, 1> at{y};
        CHECK(rel(s.value(at), std::sqrt(std::numbers::pi) * std::exp(y * y)) <= 1e-14);
    }
}

TEST_CASE("non-normalizable integrals are rejected")
{
    GaussTerm g(1);
    g.set_quadratic(0, 0, 0.5);
    CHECK_THROWS_AS(integrate_out(g, 0), NonIntegrable);
    GaussTerm f(1);
    f.set_quadratic(0, 0, cplx(0.0, 1.0));
    CHECK_THROWS_AS(integrate_out(f, 0), NonIntegrable);
    CHECK_NOTHROW(integrate_out_fresnel(f, 0));
}

TEST_CASE("normalizable follows the strict definiteness condition")
{
    GaussTerm t(2);
    t.set_quadratic(0, 0, -1.0);
    t.set_quadratic(1, 1, -1.0);
    t.set_quadratic(0, 1, 1.9);
    CHECK(t.normalizable());
    t.set_quadratic(0, 1, 2.0);
    CHECK_FALSE(t.normalizable());
}

TEST_CASE("empty sum is exactly zero")
{
    GaussSum s(2);
    const std::array<double, 2> x{0.3, -0.1};
    CHECK(s.value(x) == cplx(0.0));
    CHECK_THROWS(s.add(GaussTerm(1)));
}

TEST_CASE("integrate_out matches adaptive quadrature on randomized terms")
{
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> re_q(-2.0, -0.3), im_q(-2.0, 2.0), u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        GaussTerm t(2);
        t.set_quadratic(0, 0, {re_q(rng), im_q(rng)});
        t.set_quadratic(0, 1, {u(rng), u(rng)});
        t.set_quadratic(1, 1, {-1.0, u(rng)});
        t.set_linear(0, {u(rng), u(rng)});
        t.set_linear(1, {u(rng), u(rng)});
        t.set_constant({0.2 * u(rng), u(rng)});
        const GaussTerm r = integrate_out(t, 0);
        for (double y : {-0.7, 0.0, 0.9}) {
            const std::array<double, 1> at{y};
            const cplx exact = r.value(at);
            const double a = t.sym(0, 0).real();
            const double b = (t.linear(0) + 2.0 * t.sym(0, 1) * y).real();
            const double centre = -b / (2 * a), width = 1.0 / std::sqrt(-2 * a);
            const cplx num = integrate_numeric(
                [&](double x) {
                    const std::array<double, 2> p{x, y};
                    return t.value(p);
                },
                centre - 12 * width, centre + 12 * width);
            worst = std::max(worst, rel(num, exact));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("free evolution conserves the norm")
{
    const Species s = Species::massive(1.67492749804e-27, 2e-9);
    GaussSum st{gaussian_1d(7e-6)};
    CHECK(norm_sq(st) == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {1e-4, 1e-2, 26.4e-3, 1.0}) {
        const double n = norm_sq(apply_kernel(st, free_kernel(s, t)));
        CHECK(std::abs(n - 1.0) <= 1e-10);
    }
    const Species ph = Species::photon(7.02e-4);
    GaussSum p{gaussian_1d(0.01)};
    for (double t : {0.5, 4.0, 50.0, 600.0})
        CHECK(std::abs(norm_sq(apply_kernel(p, free_kernel(ph, t))) - 1.0) <= 1e-10);
}

TEST_CASE("kernels compose as a semigroup")
{
    const Species ph = Species::photon(7.02e-4);
    for (auto [t1, t2] : {std::pair{4.0, 50.0}, std::pair{0.3, 0.7}, std::pair{600.0, 1.0}}) {
        for (bool pref : {true, false}) {
            const Kernel c = compose(free_kernel(ph, t1, pref), free_kernel(ph, t2, pref));
            const Kernel d = free_kernel(ph, t1 + t2, pref);
            CHECK(c.duration == doctest::Approx(t1 + t2));
            CAPTURE(pref);
            if (pref) {
                CHECK(coeff_rel(c.term, d.term) <= 1e-12);
            } else {
                // Without prefactors the intermediate integral leaves a constant behind.
                GaussTerm a = c.term, b = d.term;
                a.set_log_amp(0.0);
                b.set_log_amp(0.0);
                CHECK(coeff_rel(a, b) <= 1e-12);
            }
        }
    }
}

TEST_CASE("a very short kernel nearly reproduces the state")
{
    const Species ph = Species::photon(7.02e-4);
    const GaussSum st{gaussian_1d(0.02)};
    const GaussSum out = apply_kernel(st, free_kernel(ph, 1e-9 * 4.0));
    for (double x : {-0.02, 0.0, 0.01}) {
        const std::array<double, 1> at{x};
        CHECK(rel(out.value(at), st.value(at)) <= 1e-6);
    }
    CHECK_THROWS_AS(free_kernel(ph, 0.0), InvalidDuration);
}

TEST_CASE("Gaussian moments are minimum-uncertainty")
{
    const double s0 = 7e-6;
    const GaussSum st{gaussian_1d(s0)};
    const auto x = position_moments(st, 0);
    CHECK(x.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x.mean_sq == doctest::Approx(s0 * s0 / 2).epsilon(1e-12));
    const auto k = momentum_moments(st, 0);
    CHECK(k.mean_sq == doctest::Approx(1.0 / (4 * x.mean_sq)).epsilon(1e-12));
}
