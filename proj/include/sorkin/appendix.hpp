#pragma once

// Literal transcriptions of the published closed forms for the classical and
// kink biphoton amplitudes and the classical, kink and loop matter-wave
// amplitudes, plus a cross-check against the chain engine.
//
// The published forms contain apparent typos. Each family is available as
// printed (`literal`) and, where the intended expression can be derived, in a
// repaired form (`repaired`); the report lists both.

#include "sorkin/biphoton.hpp"
#include "sorkin/matterwave.hpp"

#include <string>
#include <vector>

namespace sorkin::appendix {

enum class Variant { literal, repaired };

// ---- biphoton, classical branch, coordinates r = (x1+x2)/2, q = (x1-x2)/2 ---

struct BiphotonClassical
{
    double c[5]{}; ///< c1..c5
    double a[4]{}; ///< a1..a4
    double theta = 0.0;
    double zeta = 0.0; ///< a5 = theta + zeta
    double A = 0.0;
    cplx omega, Sigma;
};

/// d1, d2 per the branch table (d_i = -2 * centre of photon i's slit).
BiphotonClassical biphoton_classical(const SpdcParams& p, double d, double beta, double d1, double d2,
                                     Variant v = Variant::literal);

// ---- biphoton, single kink, coordinates (x1, x2) ----------------------------

struct BiphotonKink
{
    double c[6]{}; ///< c1..c6
    double a[5]{}; ///< a1..a5
    double theta = 0.0;
    double zeta = 0.0; ///< a6 = theta + zeta
    double A = 0.0;
    cplx chi1, chi2, chi3, Theta;
};

/// d1: photon 1 first slit, d2: photon 2 slit, d3: photon 1 second slit
/// (each -2 * centre).
BiphotonKink biphoton_kink(const SpdcParams& p, double d, double beta, double eps, double d1, double d2, double d3,
                           Variant v = Variant::literal);

// ---- matter wave, classical -------------------------------------------------

struct MatterClassical
{
    double B2 = 0.0;    ///< squared beam width
    double R = 0.0;     ///< wavefront curvature radius (s)
    double D = 0.0;     ///< packet separation
    double Delta = 0.0; ///< linear phase rate
    double theta = 0.0;
    double mu = 0.0; ///< Gouy phase
    double b2 = 0.0; ///< free-packet width squared at the slits
    double r = 0.0;  ///< free-packet curvature radius (s)
    double amplitude = 0.0;
};

/// Slit at +d/2 for sign = +1, -d/2 for sign = -1 (d -> -d).
MatterClassical matter_classical(const MatterParams& p, int sign, Variant v = Variant::literal);

// ---- matter wave, kink and loop --------------------------------------------

struct MatterExotic
{
    double c[3]{}; ///< c1..c3
    double a[2]{}; ///< a1, a2
    double theta = 0.0;
    double mu = 0.0; ///< a3 = theta + mu
    double A = 0.0;
    std::vector<cplx> pivots; ///< Gamma_1..3 or gamma_0..3
};

/// +d/2 -> -d/2 for sign = +1; the mirror path for sign = -1.
MatterExotic matter_kink(const MatterParams& p, double eps, int sign, Variant v = Variant::literal);

/// +d/2 -> -d/2 -> +d/2 for sign = +1; the mirror path for sign = -1.
MatterExotic matter_loop(const MatterParams& p, double eps, int sign, Variant v = Variant::literal);

// ---- cross-check -----------------------------------------------------------

struct Entry
{
    std::string section;     ///< "biphoton-classical", "matter-kink", ...
    std::string branch;      ///< branch label
    std::string coefficient; ///< coefficient name
    std::string variant;     ///< "literal" or "repaired"
    double published = 0.0;
    double engine = 0.0;
    double delta = 0.0; ///< relative, or absolute radians (mod pi/2) for Gouy phases
    bool phase_mod = false;
};

struct Report
{
    std::vector<Entry> entries;
    /// Entries with delta above `threshold`.
    std::vector<Entry> itemized(double threshold = 1e-6) const;
    /// Largest delta among the given section prefix and variant.
    double max_delta(const std::string& section_prefix, const std::string& variant) const;
    std::string to_json(int indent = 2) const;
};

/// Classical and kink biphoton branches (double slit).
Report crosscheck_biphoton(const SpdcParams& p, double d, double beta, double eps);

/// Classical, kink and loop matter-wave branches (double slit).
Report crosscheck_matter(const MatterParams& p, double eps);

} // namespace sorkin::appendix
