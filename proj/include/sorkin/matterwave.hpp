#pragma once

// Single massive particle through a double or triple slit (SI units).

#include "sorkin/cgauss.hpp"
#include "sorkin/propagators.hpp"
#include "sorkin/slits.hpp"

#include <span>
#include <vector>

namespace sorkin {

struct QuadConfig;

struct MatterParams
{
    Species species;
    double sigma0 = 0.0; ///< initial packet width (m)
    double d = 0.0;      ///< slit pitch (m)
    double beta = 0.0;   ///< slit width (m)
    int n_slits = 2;
    double T = 0.0;   ///< source to slits (s)
    double tau = 0.0; ///< slits to screen (s)
    double eps = 0.0; ///< inter-slit time (s); <= 0 means derive from the state
    bool prefactor = true;

    void validate() const;
    /// m sigma0^2 / hbar
    double tau0() const;
    /// Double slit at -d/2, +d/2 or triple slit at -d, 0, +d.
    SlitArray slits() const;
};

/// (sigma0 sqrt(pi))^(-1/2) exp(-x^2 / (2 sigma0^2)).
GaussTerm matter_initial_state(const MatterParams& p);

/// Free packet at the slit plane, before cropping.
GaussTerm matter_at_slits(const MatterParams& p);

/// Sum of the windowed packets at the slit plane.
GaussSum matter_cropped_state(const MatterParams& p);

double transit_time(const MatterParams& p);
double resolved_eps(const MatterParams& p);

/// Amplitude terms at the screen. Slit indices follow MatterParams::slits().
GaussTerm classical_term(const MatterParams& p, int j);
GaussTerm kink_term(const MatterParams& p, int j, int l, double eps);
/// j -> k -> j, two inter-slit legs of eps each (per pitch crossed).
GaussTerm loop_term(const MatterParams& p, int j, int k, double eps);

GaussSum classical_sum(const MatterParams& p);
GaussSum kink_sum(const MatterParams& p, double eps);
GaussSum loop_sum(const MatterParams& p, double eps);

cplx psi_classical(const MatterParams& p, int j, double x);
cplx psi_kink(const MatterParams& p, int j, int l, double x);
cplx psi_loop(const MatterParams& p, int j, int k, double x);

/// Change of the slit-j classical amplitude when both legs carry the 1/c^2
/// correction, evaluated by nested quadrature at each screen point.
std::vector<cplx> relativistic_delta(const MatterParams& p, int j, std::span<const double> xs,
                                     const QuadConfig& cfg);

/// Classical amplitude with relativistic legs: closed form plus the quadrature delta.
cplx psi_classical_relativistic(const MatterParams& p, int j, double x, const QuadConfig& cfg);

} // namespace sorkin
