#pragma once

#include "sorkin/cgauss.hpp"

namespace sorkin {

namespace si {
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double h = 6.62607015e-34;     // J s
inline constexpr double c = 299792458.0;        // m/s
inline constexpr double electron_mass = 9.1093837015e-31;
inline constexpr double neutron_mass = 1.67492749804e-27;
} // namespace si

/// Photons live in {mm, ps}; massive particles in SI.
struct Species
{
    enum class Kind { photon, massive };

    Kind kind = Kind::photon;
    double lambda = 0.0; ///< optical wavelength (mm) or de Broglie wavelength (m)
    double c = 0.3;      ///< speed of light in the species' units
    double mass = 0.0;   ///< kg, massive only

    static Species photon(double lambda_mm, double c_mm_per_ps = 0.3);
    static Species massive(double mass_kg, double lambda_db_m, double c_m_per_s = si::c);

    /// m/hbar; for photons the effective mass k0 hbar / c gives 2 pi / (lambda c).
    double mass_over_hbar() const;
    /// Distance to flight time: L / c for photons, L m lambda_dB / h otherwise.
    double flight_time(double length) const;
};

/// Free propagator exp(i s (x - x0)^2 / (2 dt)) with s = m/hbar, optionally
/// times sqrt(s / (2 pi i dt)).
Kernel free_kernel(const Species& s, double dt, bool prefactor = true);

enum class SpreadMode {
    marginal, ///< wavenumber spread of one particle's coordinate
    relative, ///< spread of k1 - k2 (two-particle states only)
};

/// Inter-slit transit time d * (m/hbar) / Delta k of the given state.
/// The state is normalized internally.
double transit_time(double d, const GaussSum& state, const Species& s,
                    SpreadMode mode = SpreadMode::marginal, int var = 0);

/// Bracket of the 1/c^2-corrected propagator with Euclidean time substituted:
/// 1 + 3u^2 / (4 c^2 dt^2) + i m u^4 / (8 hbar c^2 dt^3), u = x - x0.
cplx relativistic_factor(double x, double x0, double dt, const Species& s);

/// relativistic_factor - 1, without the rounding of forming 1 + small first.
cplx relativistic_correction(double x, double x0, double dt, const Species& s);

} // namespace sorkin
