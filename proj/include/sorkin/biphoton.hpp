#pragma once

// Double-Gaussian biphoton in transverse coordinates (x1, x2), units mm / ps.

#include "sorkin/cgauss.hpp"
#include "sorkin/propagators.hpp"
#include "sorkin/slits.hpp"

#include <string>
#include <vector>

namespace sorkin {

struct SpdcParams
{
    double sigma = 0.0;  ///< relative-coordinate width (mm)
    double omega = 0.0;  ///< centre-of-mass width (mm)
    double lambda = 0.0; ///< wavelength (mm)
    double T = 0.0;      ///< source to slits (ps)
    double tau = 0.0;    ///< slits to screen (ps)
    double eps = 0.0;    ///< inter-slit time (ps); <= 0 means derive from the state
    double c = 0.3;      ///< mm/ps
    bool prefactor = true;
    SpreadMode spread = SpreadMode::marginal;

    void validate() const;
    Species species() const { return Species::photon(lambda, c); }
    /// lambda c t / (2 pi)
    double alpha(double t) const;
};

/// Omega = sigma * 10^E_N.
double omega_from_negativity(double sigma, double en);

enum class PathClass { classical, kink_a, kink_b, double_kink, loop, triple_kink };

struct PathSpec
{
    std::string label;
    PathClass cls = PathClass::classical;
    Route photon1;
    Route photon2;
};

/// The same path with the photons exchanged (x1 <-> x2).
PathSpec exchanged(const PathSpec& p, std::string label);

/// Path sets. Double slit: index 0 is the lower slit (-d/2, "d"), index 1 the
/// upper slit (+d/2, "u"). Triple slit: indices 0, 1, 2 at -d, 0, +d.
namespace branches {
std::vector<PathSpec> classical_double(); ///< uu, dd, ud, du
std::vector<PathSpec> kink_a();           ///< a1..a4: both photons enter the same slit
std::vector<PathSpec> kink_b();           ///< b1..b4: photons enter different slits
std::vector<PathSpec> double_kink();      ///< both photons kink
std::vector<PathSpec> loop();             ///< one photon loops back through its first slit
std::vector<PathSpec> classical_triple(); ///< nine two-photon combinations
std::vector<PathSpec> kink_triple();      ///< both through j, then one photon hops to l != j
std::vector<PathSpec> by_name(const std::string& set);
} // namespace branches

/// psi0(x1,x2) = (pi sigma Omega)^(-1/2) exp(-(x1-x2)^2/(4 sigma^2) - (x1+x2)^2/(4 Omega^2)).
GaussTerm initial_state(const SpdcParams& p);

/// Free evolution of both photons by t >= 0 through the propagator chain.
GaussTerm evolve(const GaussTerm& state, double t, const SpdcParams& p);

/// Evolved state written directly in closed form (independent of the chain).
GaussTerm evolved_closed_form(const SpdcParams& p, double t);

/// E_N = log10(Omega / sigma).
double log_negativity(const SpdcParams& p);

/// Transverse Pearson correlation of the freely evolved pair.
double pearson(const SpdcParams& p, double t);

/// Same quantity from the position moments of a two-photon state.
double pearson_of_state(const GaussSum& s);

/// Classical branches at the slit plane after cropping (no propagation past the slits).
GaussSum cropped_state(const SpdcParams& p, const SlitArray& slits);

/// Inter-slit transit time from the cropped classical state.
double transit_time(const SpdcParams& p, const SlitArray& slits);

/// p.eps if positive, otherwise the transit-time estimate.
double resolved_eps(const SpdcParams& p, const SlitArray& slits);

/// Screen amplitude of one path as a term in (x1, x2).
GaussTerm path_term(const SpdcParams& p, const SlitArray& slits, const PathSpec& path, double eps);

GaussSum path_sum(const SpdcParams& p, const SlitArray& slits, const std::vector<PathSpec>& paths,
                  double eps);

cplx classical_amplitude(const SpdcParams& p, const SlitArray& slits, const std::string& branch,
                         double x1, double x2);
cplx kink_amplitude(const SpdcParams& p, const SlitArray& slits, const std::string& path,
                    double x1, double x2);
cplx other_exotic_amplitude(const SpdcParams& p, const SlitArray& slits, const PathSpec& path,
                            double x1, double x2);

struct TripleSlitAmplitudes
{
    GaussSum classical{2};
    GaussSum nonclassical{2};
    double eps = 0.0;
};

TripleSlitAmplitudes triple_slit_amplitudes(const SpdcParams& p, const SlitArray& slits);

} // namespace sorkin
