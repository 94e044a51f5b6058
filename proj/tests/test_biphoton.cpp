#include "sorkin/biphoton.hpp"
#include "sorkin/errors.hpp"
#include "sorkin/grid.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace sorkin;

namespace {

SpdcParams fig6(double en)
{
    SpdcParams p;
    p.sigma = 11.4e-3;
    p.omega = omega_from_negativity(p.sigma, en);
    p.lambda = 7.02e-4;
    p.T = 4.0;
    p.tau = 50.0;
    return p;
}

cplx at(const GaussTerm& t, double x1, double x2)
{
    const std::array<double, 2> x{x1, x2};
    return t.value(x);
}

cplx at(const GaussSum& s, double x1, double x2)
{
    const std::array<double, 2> x{x1, x2};
    return s.value(x);
}

const PathSpec& find(const std::vector<PathSpec>& v, const std::string& label)
{
    for (const auto& p : v)
        if (p.label == label)
            return p;
    throw std::runtime_error("missing " + label);
}

} // namespace

TEST_CASE("initial state coefficients")
{
    SpdcParams p = fig6(2.0);
    const GaussTerm s = initial_state(p);
    const double s2 = p.sigma * p.sigma, o2 = p.omega * p.omega;
    // -(x1-x2)^2/(4 s2) - (x1+x2)^2/(4 o2), expanded by hand
    CHECK(s.q11().real() == doctest::Approx(-1 / (4 * s2) - 1 / (4 * o2)).epsilon(1e-14));
    CHECK(s.q22().real() == doctest::Approx(-1 / (4 * s2) - 1 / (4 * o2)).epsilon(1e-14));
    CHECK(s.q12().real() == doctest::Approx(1 / (2 * s2) - 1 / (2 * o2)).epsilon(1e-14));
    CHECK(norm_sq(GaussSum{s}) == doctest::Approx(1.0).epsilon(1e-12));

    p.omega = p.sigma;
    CHECK(std::abs(initial_state(p).q12()) <= 1e-9);
}

TEST_CASE("chain evolution matches the closed form and conserves the norm")
{
    for (double en : {0.3, 1.0, 2.0}) {
        const SpdcParams p = fig6(en);
        const GaussTerm s0 = initial_state(p);
        for (double t : {0.5, 4.0, 50.0, 600.0}) {
            const GaussTerm a = evolve(s0, t, p), b = evolved_closed_form(p, t);
            for (auto [x1, x2] : {std::pair{0.0, 0.0}, std::pair{0.01, -0.02}, std::pair{0.05, 0.04}}) {
                const cplx va = at(a, x1, x2), vb = at(b, x1, x2);
                CHECK(std::abs(va - vb) <= 1e-12 * std::abs(vb));
            }
            CHECK(std::abs(norm_sq(GaussSum{a}) - 1.0) <= 1e-10);
        }
        CHECK(at(evolve(s0, 0.0, p), 0.01, 0.02) == at(s0, 0.01, 0.02));
    }
}

TEST_CASE("relative width at the slits matches the closed-form denominator")
{
    const SpdcParams p = fig6(1.0);
    const GaussSum s{evolve(initial_state(p), 4.0, p)};
    const auto m1 = position_moments(s, 0), m2 = position_moments(s, 1);
    const double var_rel = m1.mean_sq + m2.mean_sq - 2 * position_cross_moment(s, 0, 1);
    const double var_com = m1.mean_sq + m2.mean_sq + 2 * position_cross_moment(s, 0, 1);
    const double a = p.alpha(4.0);
    // |sigma^2 + i alpha|^2 / sigma^2 for x1 - x2, same with Omega for x1 + x2.
    CHECK(var_rel == doctest::Approx(std::norm(cplx(p.sigma * p.sigma, a)) / (p.sigma * p.sigma)).epsilon(1e-10));
    CHECK(var_com == doctest::Approx(std::norm(cplx(p.omega * p.omega, a)) / (p.omega * p.omega)).epsilon(1e-10));
}

TEST_CASE("log negativity")
{
    SpdcParams p = fig6(0.0);
    CHECK(log_negativity(p) == 0.0);
    p.omega = p.sigma * std::pow(10.0, 0.4);
    CHECK(log_negativity(p) == doctest::Approx(0.4).epsilon(1e-14));
    p.omega = 100 * p.sigma;
    CHECK(log_negativity(p) == 2.0);
}

TEST_CASE("Pearson correlation")
{
    SpdcParams p = fig6(2.0);
    // Closed form against moments of the evolved state.
    for (double t : {0.0, 4.0, 100.0, 600.0}) {
        const GaussSum s{evolve(initial_state(p), t, p)};
        CHECK(pearson(p, t) == doctest::Approx(pearson_of_state(s)).epsilon(1e-9));
    }
    // Monotone decrease until the sign flip, then the negative limit.
    double prev = pearson(p, 0.0);
    for (double t = 1.0; t < 5000.0; t *= 1.5) {
        const double r = pearson(p, t);
        CHECK(r < prev);
        prev = r;
    }
    const double s2 = p.sigma * p.sigma, o2 = p.omega * p.omega;
    CHECK(pearson(p, 1e9) == doctest::Approx(-(o2 - s2) / (o2 + s2)).epsilon(1e-9));
    p.omega = p.sigma;
    CHECK(pearson(p, 0.0) == 0.0);
    CHECK(pearson(p, 40.0) == 0.0);
}

TEST_CASE("classical intensity is symmetric under photon exchange")
{
    for (double en : {0.3, 2.0}) {
        const SpdcParams p = fig6(en);
        const auto sl = SlitArray::double_slit(0.1, 5e-3);
        const GaussSum c = path_sum(p, sl, branches::classical_double(), 1.0);
        const auto xs = PointSet::linspace(-3.0, 3.0, 61);
        double worst = 0.0;
        for (double x1 : xs)
            for (double x2 : xs) {
                const double a = std::norm(at(c, x1, x2)), b = std::norm(at(c, x2, x1));
                worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
            }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("ud branch equals du with the photons exchanged")
{
    const SpdcParams p = fig6(0.4);
    const auto sl = SlitArray::double_slit(0.1, 5e-3);
    const auto set = branches::classical_double();
    const GaussTerm ud = path_term(p, sl, find(set, "ud"), 0.0);
    const GaussTerm du = path_term(p, sl, find(set, "du"), 0.0);
    for (auto [x1, x2] : {std::pair{0.3, -0.1}, std::pair{-1.0, 0.7}}) {
        const cplx a = at(ud, x1, x2), b = at(du, x2, x1);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("mirrored kink paths")
{
    const SpdcParams p = fig6(0.4);
    const auto sl = SlitArray::double_slit(0.1, 5e-3);
    const auto set = branches::kink_a();
    const GaussTerm a1 = path_term(p, sl, find(set, "a1"), 1.0);
    const GaussTerm a3 = path_term(p, sl, find(set, "a3"), 1.0);
    for (auto [x1, x2] : {std::pair{0.3, -0.1}, std::pair{-1.0, 0.7}, std::pair{0.0, 0.0}}) {
        const cplx a = at(a1, x1, x2), b = at(a3, -x1, -x2);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("path sets follow the branch tables")
{
    CHECK(branches::classical_double().size() == 4);
    CHECK(branches::kink_a().size() == 4);
    CHECK(branches::kink_b().size() == 4);
    CHECK(branches::classical_triple().size() == 9);
    // a paths: both photons enter the same slit; b paths: different slits.
    for (const auto& k : branches::kink_a())
        CHECK(k.photon1.slits.front() == k.photon2.slits.front());
    for (const auto& k : branches::kink_b())
        CHECK(k.photon1.slits.front() != k.photon2.slits.front());
    for (const auto& k : branches::double_kink()) {
        CHECK(k.photon1.slits.size() == 2);
        CHECK(k.photon2.slits.size() == 2);
    }
    CHECK_THROWS_AS(branches::by_name("nope"), InvalidParameter);
}

TEST_CASE("loop with vanishing inter-slit time is guarded")
{
    const SpdcParams p = fig6(2.0);
    const auto sl = SlitArray::double_slit(0.1, 5e-3);
    const auto loops = branches::loop();
    CHECK_THROWS_AS(path_term(p, sl, loops[0], 0.0), InvalidDuration);
    for (double eps : {1e-3, 1e-6}) {
        const cplx v = at(path_term(p, sl, loops[0], eps), 0.1, 0.0);
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
    }
}

TEST_CASE("transit time from the cropped biphoton state")
{
    // Independent estimate: finite-difference derivative of the cropped
    // classical state on a grid, <k^2> = int |d psi/dx1|^2 / int |psi|^2.
    const SpdcParams p = fig6(0.4);
    const auto sl = SlitArray::double_slit(0.1, 5e-3);
    const GaussSum s = cropped_state(p, sl);
    const int n = 801;
    const double lo = -0.1, hi = 0.1, h = (hi - lo) / (n - 1), dx = 1e-6;
    double num = 0.0, den = 0.0;
    cplx mean = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x1 = lo + i * h, x2 = lo + j * h;
            const cplx v = at(s, x1, x2);
            const cplx dv = (at(s, x1 + dx, x2) - at(s, x1 - dx, x2)) / (2 * dx);
            num += std::norm(dv);
            den += std::norm(v);
            mean += std::conj(v) * cplx(0.0, -1.0) * dv;
        }
    const double k2 = num / den, k1 = (mean / den).real();
    const double eps_fd = 0.1 * p.species().mass_over_hbar() / std::sqrt(k2 - k1 * k1);
    const double eps = transit_time(p, sl);
    CHECK(eps == doctest::Approx(eps_fd).epsilon(1e-5));
    // Derived value at these parameters (marginal spread).
    CHECK(eps == doctest::Approx(20.39318).epsilon(1e-5));
}

TEST_CASE("coincidence fringes have half the single-sweep period")
{
    SpdcParams p = fig6(2.0);
    p.prefactor = false;
    const auto sl = SlitArray::double_slit(0.1, 5e-3);
    const GaussSum c = path_sum(p, sl, branches::classical_double(), 1.0);
    const auto xs = PointSet::linspace(-1.0, 1.0, 4001);
    std::vector<double> single, coinc;
    for (double x : xs) {
        single.push_back(std::norm(at(c, x, 0.0)));
        coinc.push_back(std::norm(at(c, x, x)));
    }
    const double ratio = fringe_period(xs, coinc) / fringe_period(xs, single);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("invalid parameters are rejected")
{
    SpdcParams p = fig6(1.0);
    p.T = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);
    p = fig6(1.0);
    CHECK_THROWS_AS(SlitArray::double_slit(0.1, 0.0).validate(), InvalidParameter);
    CHECK_THROWS_AS(evolve(initial_state(p), -1.0, p), InvalidDuration);
}
