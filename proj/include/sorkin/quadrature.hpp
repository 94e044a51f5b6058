#pragma once

// Brute-force nested quadrature of propagator chains. Used as an independent
// check of the closed-form engine and for the relativistic legs, whose
// polynomial factors leave the Gaussian family.

#include "sorkin/cgauss.hpp"
#include "sorkin/propagators.hpp"
#include "sorkin/slits.hpp"

#include <functional>
#include <span>
#include <vector>

namespace sorkin {

struct QuadConfig
{
    int order = 20;            ///< Gauss-Legendre points per panel (10, 15, 20, 25 or 30)
    double half_width = 8.0;   ///< domain half-width in local Gaussian widths
    int max_refinements = 6;   ///< panel doublings before giving up
    double tol = 1e-8;         ///< relative change between successive levels
    double nodes_per_oscillation = 12.0;
    int min_panels = 4;

    void validate() const;
};

/// Multiplies a kernel: f(x_out, x_in).
using CorrectionFn = std::function<cplx(double, double)>;

struct ChainLeg
{
    double duration = 0.0;
    double window_center = 0.0; ///< window at the end of the leg
    double window_width = 0.0;  ///< 0: no window (screen leg)
    CorrectionFn correction;    ///< empty: plain kernel
};

/// Single-coordinate chain: source term, then legs; the last leg ends on the screen.
struct ChainSpec
{
    Species species;
    bool prefactor = true;
    GaussTerm source{1};
    double source_center = 0.0;
    double source_width = 0.0;
    std::vector<ChainLeg> legs;
};

/// Amplitudes at the screen points. Convergence is judged on the maximum
/// change over all points relative to the largest amplitude.
std::vector<cplx> chain_amplitudes(const ChainSpec& chain, std::span<const double> xs,
                                   const QuadConfig& cfg);

/// Two photons leaving the slit plane: `at_slits` is the uncropped state in
/// (y1, y2); each photon then follows its route to the screen.
struct PairChainSpec
{
    Species species;
    bool prefactor = true;
    GaussTerm at_slits{2};
    SlitArray slits;
    Route photon1;
    Route photon2;
    double eps = 0.0;
    double tau = 0.0;
};

cplx pair_chain_amplitude(const PairChainSpec& spec, double x1, double x2, const QuadConfig& cfg);

/// Gauss-Legendre rule on [a, b] split into `panels` equal panels.
struct Rule
{
    std::vector<double> x;
    std::vector<double> w;
};
Rule panel_rule(double a, double b, int panels, int order);

} // namespace sorkin
