#pragma once

#include "sorkin/cgauss.hpp"
#include "sorkin/propagators.hpp"

#include <string>
#include <vector>

namespace sorkin {

/// Gaussian slits of common width beta; centers strictly increasing.
struct SlitArray
{
    std::vector<double> centers;
    double beta = 0.0;

    /// Centers -d/2, +d/2.
    static SlitArray double_slit(double d, double beta);
    /// Centers -d, 0, +d.
    static SlitArray triple_slit(double d, double beta);

    void validate() const;
    std::size_t size() const { return centers.size(); }
    /// Smallest center-to-center spacing.
    double pitch() const;
    /// Hop time between slits i and j: eps per pitch crossed.
    double hop_time(int i, int j, double eps) const;
};

/// Ordered slit visits of one particle.
struct Route
{
    std::vector<int> slits;
    bool classical() const { return slits.size() == 1; }
};

struct RouteOptions
{
    double eps = 0.0;      ///< inter-slit transit time
    double tau = 0.0;      ///< slits to screen
    bool prefactor = true; ///< keep propagator normalization
};

/// Applies the route to coordinate `var` of a state already propagated to the
/// slit plane: window, inter-slit legs with windows, then the leg to the screen.
GaussTerm apply_route(const GaussTerm& at_slits, const Species& s, const SlitArray& slits,
                      const Route& route, const RouteOptions& opt, int var = 0);

/// Human-readable route, e.g. "1>0" for slit 1 then slit 0.
std::string route_label(const Route& r);

} // namespace sorkin
