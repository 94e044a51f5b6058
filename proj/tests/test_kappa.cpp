#include "sorkin/errors.hpp"
#include "sorkin/kappa.hpp"

#include "doctest.h"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstring>

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
    p.prefactor = false;
    return p;
}

BiphotonSetup double_setup(double en, const std::string& set)
{
    BiphotonSetup s;
    s.params = fig6(en);
    s.slits = SlitArray::double_slit(0.1, 5e-3);
    s.classical = branches::classical_double();
    s.nonclassical = branches::by_name(set);
    return s;
}

MatterParams electron(int slits)
{
    MatterParams e;
    e.species = Species::massive(si::electron_mass, 50e-12);
    e.sigma0 = 62e-9;
    e.d = 272e-9;
    e.beta = 31e-9;
    e.n_slits = slits;
    e.T = e.species.flight_time(slits == 3 ? 0.24 : 0.305);
    e.tau = e.species.flight_time(slits == 3 ? 0.305 : 0.24);
    return e;
}

MatterParams neutron()
{
    MatterParams n;
    n.species = Species::massive(si::neutron_mass, 2e-9);
    n.sigma0 = 7e-6;
    n.d = 125e-6;
    n.beta = 7e-6;
    n.T = 26.4e-3;
    n.tau = 26.4e-3;
    return n;
}

bool bit_identical(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

} // namespace

TEST_CASE("no exotic paths gives a vanishing Sorkin parameter")
{
    auto s = double_setup(0.4, "kink_a");
    s.nonclassical.clear();
    const auto k = biphoton_kappa(s, PointSet::sweep(PointSet::linspace(-3, 3, 101), 0.0));
    for (double v : k.map.kappa)
        CHECK(v == 0.0);
    CHECK(k.map.kappa_max_abs == 0.0);

    // Classical branches only.
    const MatterParams p = electron(3);
    std::vector<Branch> br;
    for (int j = 0; j < 3; ++j)
        br.push_back({GaussSum{classical_term(p, j)}, 1u << j});
    const auto m = kappa_inclusion_exclusion(br, 3, PointSet::line(PointSet::linspace(-2e-3, 2e-3, 101)), false);
    for (double v : m.kappa)
        CHECK(v == 0.0);
}

TEST_CASE("Sorkin parameter integrates to zero for normalized intensities")
{
    SUBCASE("matter waves")
    {
        for (const MatterParams& p : {neutron(), electron(2)}) {
            const double eps = transit_time(p);
            const double w = p.species.mass > 1e-28 ? 3e-3 : 2e-3;
            const auto xs = PointSet::linspace(-w, w, 2001);
            const auto z = zero_integral(classical_sum(p), kink_sum(p, eps), xs);
            CHECK(z.ratio() <= 1e-3);
        }
    }
    SUBCASE("biphoton triple slit")
    {
        SpdcParams p = fig6(2.0);
        p.lambda = 8.1e-4;
        p.T = p.tau = 600.0;
        const auto a = triple_slit_amplitudes(p, SlitArray::triple_slit(0.1, 0.03));
        const auto xs = PointSet::linspace(-5.0, 5.0, 401);
        CHECK(zero_integral(a.classical, a.nonclassical, xs, xs).ratio() <= 1e-3);
    }
    SUBCASE("biphoton double slit")
    {
        const auto s = double_setup(0.4, "kink_a");
        const double eps = resolved_eps(s.params, s.slits);
        const auto c = path_sum(s.params, s.slits, s.classical, eps);
        const auto n = path_sum(s.params, s.slits, s.nonclassical, eps);
        const auto xs = PointSet::linspace(-5.0, 5.0, 401);
        CHECK(zero_integral(c, n, xs, xs).ratio() <= 1e-3);
    }
}

TEST_CASE("normalization modes differ by a positive factor")
{
    const auto s = double_setup(0.4, "kink_a");
    const auto pts = PointSet::sweep(PointSet::linspace(-3, 3, 601), 0.0);
    const auto a = biphoton_kappa(s, pts, Normalization::total0).map;
    const auto b = biphoton_kappa(s, pts, Normalization::central).map;
    CHECK(a.argmax == b.argmax);
    const double f = a.denominator / b.denominator;
    CHECK(f > 0.0);
    for (std::size_t i = 0; i < a.kappa.size(); ++i)
        CHECK(std::abs(b.kappa[i] - f * a.kappa[i]) <= 1e-14 * std::abs(b.kappa[i]) + 1e-300);
}

TEST_CASE("cross-term numerator equals the intensity difference in extended precision")
{
    using big = boost::multiprecision::cpp_bin_float_50;
    const MatterParams p = neutron();
    const double eps = transit_time(p);
    const GaussSum c = classical_sum(p);
    for (const GaussSum& n : {kink_sum(p, eps), loop_sum(p, eps)}) {
        for (double x : {0.0, 1e-4, 7e-4, 2e-3}) {
            const std::array<double, 1> at{x};
            const cplx a = c.value(at), b = n.value(at);
            const double num = 2.0 * std::real(std::conj(a) * b) + std::norm(b);
            const big ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
            const big diff = (ar + br) * (ar + br) + (ai + bi) * (ai + bi) - ar * ar - ai * ai;
            const double ref = static_cast<double>(diff);
            CHECK(std::abs(num - ref) <= 1e-10 * std::abs(ref));
        }
    }
}

TEST_CASE("serial and parallel evaluation agree bit for bit")
{
    SpdcParams p = fig6(2.0);
    p.lambda = 8.1e-4;
    p.T = p.tau = 600.0;
    const auto a = triple_slit_amplitudes(p, SlitArray::triple_slit(0.1, 0.03));
    const auto xs = PointSet::linspace(-4.0, 4.0, 61);
    const PointSet pts = PointSet::surface(xs, xs);
    CHECK(bit_identical(evaluate_serial(a.nonclassical, pts, 0.0), evaluate_parallel(a.nonclassical, pts, 0.0)));
    const auto ks = kappa_exact(a.classical, a.nonclassical, pts, Normalization::total0, Exec::serial);
    const auto kp = kappa_exact(a.classical, a.nonclassical, pts, Normalization::total0, Exec::parallel);
    CHECK(std::memcmp(ks.kappa.data(), kp.kappa.data(), ks.kappa.size() * sizeof(double)) == 0);

    const MatterParams m = electron(3);
    const auto br = matter_branches(m, transit_time(m));
    const PointSet line = PointSet::line(PointSet::linspace(-2e-3, 2e-3, 301));
    const auto is = kappa_inclusion_exclusion(br, 3, line, false, Normalization::total0, Exec::serial);
    const auto ip = kappa_inclusion_exclusion(br, 3, line, false, Normalization::total0, Exec::parallel);
    CHECK(std::memcmp(is.kappa.data(), ip.kappa.data(), is.kappa.size() * sizeof(double)) == 0);
}

TEST_CASE("single-point scans equal the direct map")
{
    const auto s = double_setup(0.4, "kink_a");
    const auto pts = PointSet::sweep(PointSet::linspace(-3, 3, 301), 0.0);
    const auto direct = biphoton_kappa(s, pts).map;
    const auto en = scan_negativity(s, {0.4}, pts);
    REQUIRE(en.size() == 1);
    CHECK(en[0].kappa_max_abs == direct.kappa_max_abs);
    const auto tt = scan_pearson(s, {4.0}, pts);
    CHECK(tt[0].kappa_max_abs == direct.kappa_max_abs);
    CHECK(tt[0].rho_T == doctest::Approx(pearson(s.params, 4.0)));
}

TEST_CASE("Sorkin maximum is highest where the slit correlation is positive")
{
    const auto s = double_setup(0.4, "kink_a");
    const auto pts = PointSet::sweep(PointSet::linspace(-3, 3, 601), 0.0);
    const auto scan = scan_pearson(s, {0.5, 4.0, 32.0, 64.0, 128.0, 256.0, 512.0, 4096.0}, pts);
    double positive = 0.0, negative = 0.0;
    for (const auto& p : scan)
        (p.rho_T >= 0.2 ? positive : negative) = std::max(p.rho_T >= 0.2 ? positive : negative, p.kappa_max_abs);
    CHECK(positive > negative);
    // Large T: the curve saturates as rho approaches its negative limit.
    CHECK(std::abs(scan.back().kappa_max_abs - scan[scan.size() - 2].kappa_max_abs) <= 0.02 * scan.back().kappa_max_abs);
}

TEST_CASE("degenerate normalization is reported")
{
    CHECK_THROWS_AS(kappa_exact(GaussSum(2), GaussSum(2), PointSet::origin(2)), ZeroDenominator);
    CHECK_THROWS_AS(parse_normalization("peak"), InvalidParameter);
}
