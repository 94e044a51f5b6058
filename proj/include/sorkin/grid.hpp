#pragma once

// Screen sampling of amplitude sums. The parallel evaluator splits points over
// OpenMP threads; every point goes through the same arithmetic as the serial
// one, so the two agree bit for bit.

#include "sorkin/cgauss.hpp"

#include <array>
#include <vector>

namespace sorkin {

enum class Exec { serial, parallel };

/// Screen points in one or two coordinates (the second is ignored for vars == 1).
struct PointSet
{
    int vars = 1;
    std::vector<std::array<double, 2>> p;

    std::size_t size() const { return p.size(); }

    /// n evenly spaced values on [lo, hi] (n >= 2, or n == 1 gives lo).
    static std::vector<double> linspace(double lo, double hi, int n);
    static PointSet line(const std::vector<double>& xs);
    /// (x, x2) for fixed x2.
    static PointSet sweep(const std::vector<double>& xs, double x2);
    /// (x, x): coincidence detection at the same point.
    static PointSet diagonal(const std::vector<double>& xs);
    /// Full surface, x1 index major.
    static PointSet surface(const std::vector<double>& x1s, const std::vector<double>& x2s);
    /// The origin in the given number of coordinates.
    static PointSet origin(int vars);
};

/// Largest Re(log value) over the terms at point `at`; a common scale that
/// keeps grid values in range.
double log_scale_at(const GaussSum& s, std::span<const double> at);

/// exp(log - log_scale) summed over terms, per point.
std::vector<cplx> evaluate(const GaussSum& s, const PointSet& pts, double log_scale,
                           Exec exec = Exec::parallel);

/// Serial reference: plain loop, no threading.
std::vector<cplx> evaluate_serial(const GaussSum& s, const PointSet& pts, double log_scale);

/// OpenMP loop over points.
std::vector<cplx> evaluate_parallel(const GaussSum& s, const PointSet& pts, double log_scale);

/// Median spacing of the local maxima of a sampled curve that reach
/// `min_fraction` of its largest value. Zero when fewer than two qualify.
double fringe_period(const std::vector<double>& xs, const std::vector<double>& values, double min_fraction = 0.1);

} // namespace sorkin
