#pragma once

// Sorkin parameters. Numerators are always assembled from cross terms
// 2 Re(conj(psi_c) psi_nc) + |psi_nc|^2, never by subtracting intensities:
// values near 1e-22 are far below the rounding of an O(1) intensity.

#include "sorkin/biphoton.hpp"
#include "sorkin/grid.hpp"
#include "sorkin/matterwave.hpp"
#include "sorkin/quadrature.hpp"

#include <string>
#include <vector>

namespace sorkin {

enum class Normalization {
    central, ///< maximum of the total intensity over the grid
    total0,  ///< total intensity at the origin
};

Normalization parse_normalization(const std::string& s);
std::string to_string(Normalization n);

struct SorkinMap
{
    PointSet points;
    std::vector<double> kappa;
    double kappa_max_abs = 0.0;
    std::size_t argmax = 0;
    Normalization mode = Normalization::total0;
    double denominator = 0.0; ///< in the units of the scaled amplitudes

    std::array<double, 2> argmax_point() const { return points.p.at(argmax); }
};

/// Sorkin map from amplitudes already sampled on `pts` (same scale for all).
/// c0 and nc0 are the amplitudes at the origin.
SorkinMap kappa_from_values(const std::vector<cplx>& c, const std::vector<cplx>& nc, cplx c0, cplx nc0,
                            const PointSet& pts, Normalization mode);

/// (I_total - I_c) / I0 with I_total = |psi_c + psi_nc|^2.
SorkinMap kappa_exact(const GaussSum& classical, const GaussSum& nc, const PointSet& pts,
                      Normalization mode = Normalization::total0, Exec exec = Exec::parallel);

/// An amplitude attached to the set of slits it passes (bit j for slit j).
struct Branch
{
    GaussSum amp{1};
    unsigned slits = 0;
};

/// Single-particle multi-slit branches: one classical branch per slit plus
/// every kink j -> l.
std::vector<Branch> matter_branches(const MatterParams& p, double eps);

/// Inclusion-exclusion over slit subsets, I_ABC - I_AB - I_BC - I_CA + I_A + I_B + I_C
/// (or its analogue for any slit count), divided by I0. Expanded over pairs of
/// branches: a pair contributes iff together they cover every slit, so the
/// sum is exact and free of cancellation. With `first_order` only
/// classical x non-classical pairs are kept, which for three slits is
/// 2 Re[psi_A*(psi_BC + psi_CB) + psi_B*(psi_AC + psi_CA) + psi_C*(psi_AB + psi_BA)].
/// I0 is the total intensity of all branches (at the origin or the grid maximum).
SorkinMap kappa_inclusion_exclusion(const std::vector<Branch>& branches, int n_slits, const PointSet& pts,
                                    bool first_order, Normalization mode = Normalization::total0,
                                    Exec exec = Exec::parallel);

SorkinMap kappa_first_order(const std::vector<Branch>& branches, int n_slits, const PointSet& pts,
                            Normalization mode = Normalization::total0, Exec exec = Exec::parallel);

struct ZeroIntegral
{
    double integral = 0.0;     ///< of kappa built from unit-norm intensities
    double abs_integral = 0.0; ///< of |kappa|
    double ratio() const { return abs_integral > 0.0 ? std::abs(integral) / abs_integral : 0.0; }
};

/// Trapezoid integral of (I_nc/N_nc - I_c/N_c) / I0 over an evenly spaced
/// line (one coordinate) or surface (two). The norms N come from exact
/// overlaps, so only the grid truncation and spacing enter.
ZeroIntegral zero_integral(const GaussSum& classical, const GaussSum& nc, const std::vector<double>& x1s,
                           const std::vector<double>& x2s = {});

// ---- biphoton set-ups and scans --------------------------------------------

struct BiphotonSetup
{
    SpdcParams params;
    SlitArray slits;
    std::vector<PathSpec> classical;
    std::vector<PathSpec> nonclassical;
};

struct BiphotonKappa
{
    SorkinMap map;
    double eps = 0.0;
};

BiphotonKappa biphoton_kappa(const BiphotonSetup& s, const PointSet& pts,
                             Normalization mode = Normalization::total0, Exec exec = Exec::parallel);

struct ScanPoint
{
    double en = 0.0;    ///< log negativity
    double omega = 0.0; ///< mm
    double T = 0.0;     ///< ps
    double rho_T = 0.0; ///< Pearson correlation at the slits
    double eps = 0.0;   ///< ps
    double kappa_max_abs = 0.0;
    std::array<double, 2> argmax{};
};

/// Omega = sigma 10^E_N at each point; eps re-derived unless fixed in the set-up.
std::vector<ScanPoint> scan_negativity(const BiphotonSetup& base, const std::vector<double>& en,
                                       const PointSet& pts, Normalization mode = Normalization::total0);

/// Varies the source-to-slit time at the set-up's Omega.
std::vector<ScanPoint> scan_pearson(const BiphotonSetup& base, const std::vector<double>& T, const PointSet& pts,
                                    Normalization mode = Normalization::total0);

// ---- matter waves ------------------------------------------------------------

/// Double- or triple-slit Sorkin map with the 1/c^2 propagator correction on
/// the classical legs as the only non-classical ingredient.
SorkinMap relativistic_kappa(const MatterParams& p, const std::vector<double>& xs, const QuadConfig& cfg,
                             Normalization mode = Normalization::total0);

} // namespace sorkin
