#include "sorkin/grid.hpp"

#include "sorkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sorkin {

std::vector<double> PointSet::linspace(double lo, double hi, int n)
{
    if (n < 1)
        throw InvalidParameter("grid needs at least one point");
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        v[i] = lo + h * i;
    v.back() = hi;
    return v;
}

PointSet PointSet::line(const std::vector<double>& xs)
{
    PointSet s;
    s.vars = 1;
    for (double x : xs)
        s.p.push_back({x, 0.0});
    return s;
}

PointSet PointSet::sweep(const std::vector<double>& xs, double x2)
{
    PointSet s;
    s.vars = 2;
    for (double x : xs)
        s.p.push_back({x, x2});
    return s;
}

PointSet PointSet::diagonal(const std::vector<double>& xs)
{
    PointSet s;
    s.vars = 2;
    for (double x : xs)
        s.p.push_back({x, x});
    return s;
}

PointSet PointSet::surface(const std::vector<double>& x1s, const std::vector<double>& x2s)
{
    PointSet s;
    s.vars = 2;
    s.p.reserve(x1s.size() * x2s.size());
    for (double a : x1s)
        for (double b : x2s)
            s.p.push_back({a, b});
    return s;
}

PointSet PointSet::origin(int vars)
{
    PointSet s;
    s.vars = vars;
    s.p.push_back({0.0, 0.0});
    return s;
}

double log_scale_at(const GaussSum& s, std::span<const double> at)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : s.terms())
        m = std::max(m, t.log_value(at).real());
    return std::isfinite(m) ? m : 0.0;
}

namespace {

void check(const GaussSum& s, const PointSet& pts)
{
    if (!s.empty() && s.vars() != pts.vars)
        throw InvalidParameter("point set and amplitude sum have different coordinate counts");
}

inline cplx point_value(const GaussSum& s, const PointSet& pts, std::size_t i, double log_scale)
{
    return s.scaled_value(std::span<const double>(pts.p[i].data(), static_cast<std::size_t>(pts.vars)),
                          log_scale);
}

} // namespace

std::vector<cplx> evaluate_serial(const GaussSum& s, const PointSet& pts, double log_scale)
{
    check(s, pts);
    std::vector<cplx> out(pts.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = point_value(s, pts, i, log_scale);
    return out;
}

std::vector<cplx> evaluate_parallel(const GaussSum& s, const PointSet& pts, double log_scale)
{
    check(s, pts);
    std::vector<cplx> out(pts.size());
    const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = point_value(s, pts, static_cast<std::size_t>(i), log_scale);
    return out;
}

std::vector<cplx> evaluate(const GaussSum& s, const PointSet& pts, double log_scale, Exec exec)
{
    return exec == Exec::serial ? evaluate_serial(s, pts, log_scale) : evaluate_parallel(s, pts, log_scale);
}

double fringe_period(const std::vector<double>& xs, const std::vector<double>& values, double min_fraction)
{
    if (xs.size() != values.size())
        throw InvalidParameter("fringe_period: size mismatch");
    double top = 0.0;
    for (double v : values)
        top = std::max(top, v);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] >= min_fraction * top)
            peaks.push_back(xs[i]);
    if (peaks.size() < 2)
        return 0.0;
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i)
        gaps.push_back(peaks[i + 1] - peaks[i]);
    std::sort(gaps.begin(), gaps.end());
    const std::size_t m = gaps.size() / 2;
    return gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
}

} // namespace sorkin
