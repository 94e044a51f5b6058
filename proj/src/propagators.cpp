#include "sorkin/propagators.hpp"

#include "sorkin/errors.hpp"

#include <cmath>
#include <numbers>

namespace sorkin {

namespace {
constexpr double kPi = std::numbers::pi;
}

Species Species::photon(double lambda_mm, double c_mm_per_ps)
{
    if (!(lambda_mm > 0.0) || !(c_mm_per_ps > 0.0))
        throw InvalidParameter("photon wavelength and c must be positive");
    Species s;
    s.kind = Kind::photon;
    s.lambda = lambda_mm;
    s.c = c_mm_per_ps;
    return s;
}

Species Species::massive(double mass_kg, double lambda_db_m, double c_m_per_s)
{
    if (!(mass_kg > 0.0) || !(lambda_db_m > 0.0) || !(c_m_per_s > 0.0))
        throw InvalidParameter("mass, de Broglie wavelength and c must be positive");
    Species s;
    s.kind = Kind::massive;
    s.mass = mass_kg;
    s.lambda = lambda_db_m;
    s.c = c_m_per_s;
    return s;
}

double Species::mass_over_hbar() const
{
    if (kind == Kind::photon)
        return 2.0 * kPi / (lambda * c);
    return mass / si::hbar;
}

double Species::flight_time(double length) const
{
    if (kind == Kind::photon)
        return length / c;
    return length * mass * lambda / si::h;
}

Kernel free_kernel(const Species& s, double dt, bool prefactor)
{
    if (!(dt > 0.0))
        throw InvalidDuration("propagation time must be positive, got " + std::to_string(dt));
    const double a = s.mass_over_hbar() / (2.0 * dt);
    Kernel k;
    k.duration = dt;
    k.term.set_quadratic(0, 0, cplx(0.0, a));
    k.term.set_quadratic(1, 1, cplx(0.0, a));
    k.term.set_quadratic(0, 1, cplx(0.0, -2.0 * a));
    if (prefactor)
        k.term.set_log_amp(0.5 * std::log(cplx(0.0, -a / kPi))); // sqrt(a / (i pi))
    return k;
}

double transit_time(double d, const GaussSum& state, const Species& s, SpreadMode mode, int var)
{
    MomentumMoments mm;
    if (mode == SpreadMode::relative) {
        if (state.vars() != 2)
            throw InvalidParameter("relative spread needs a two-particle state");
        const std::array<double, 2> w{1.0, -1.0};
        mm = momentum_moments(state, w);
    } else {
        mm = momentum_moments(state, var);
    }
    const double dk = mm.spread();
    if (!(dk > 0.0))
        throw ZeroVariance("momentum spread vanishes; transit time undefined");
    return d * s.mass_over_hbar() / dk;
}

cplx relativistic_factor(double x, double x0, double dt, const Species& s)
{
    return 1.0 + relativistic_correction(x, x0, dt, s);
}

cplx relativistic_correction(double x, double x0, double dt, const Species& s)
{
    if (s.kind != Species::Kind::massive)
        throw NotApplicable("relativistic correction applies to massive particles only");
    if (!(dt > 0.0))
        throw InvalidDuration("propagation time must be positive");
    const double u2 = (x - x0) * (x - x0);
    const double c2 = s.c * s.c;
    const double real = 3.0 * u2 / (4.0 * c2 * dt * dt);
    const double imag = s.mass_over_hbar() * u2 * u2 / (8.0 * c2 * dt * dt * dt);
    return {real, imag};
}

} // namespace sorkin
