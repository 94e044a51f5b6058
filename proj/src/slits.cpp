#include "sorkin/slits.hpp"

#include "sorkin/errors.hpp"

#include <cmath>
#include <limits>

namespace sorkin {

SlitArray SlitArray::double_slit(double d, double beta)
{
    SlitArray s{{-0.5 * d, 0.5 * d}, beta};
    s.validate();
    return s;
}

SlitArray SlitArray::triple_slit(double d, double beta)
{
    SlitArray s{{-d, 0.0, d}, beta};
    s.validate();
    return s;
}

void SlitArray::validate() const
{
    if (!(beta > 0.0))
        throw InvalidParameter("slit width beta must be positive");
    if (centers.empty())
        throw InvalidParameter("slit array is empty");
    for (std::size_t i = 1; i < centers.size(); ++i)
        if (!(centers[i] > centers[i - 1]))
            throw InvalidParameter("slit centers must be strictly increasing");
}

double SlitArray::pitch() const
{
    double p = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < centers.size(); ++i)
        p = std::min(p, centers[i] - centers[i - 1]);
    return p;
}

double SlitArray::hop_time(int i, int j, double eps) const
{
    const double hops = std::round(std::abs(centers.at(j) - centers.at(i)) / pitch());
    return eps * hops;
}

GaussTerm apply_route(const GaussTerm& at_slits, const Species& s, const SlitArray& slits,
                      const Route& route, const RouteOptions& opt, int var)
{
    if (route.slits.empty())
        throw InvalidParameter("route visits no slit");
    GaussTerm t = apply_window(at_slits, slits.centers.at(route.slits[0]), slits.beta, var);
    for (std::size_t i = 1; i < route.slits.size(); ++i) {
        const int from = route.slits[i - 1];
        const int to = route.slits[i];
        if (from == to)
            throw InvalidParameter("route revisits the same slit without a hop");
        const double dt = slits.hop_time(from, to, opt.eps);
        if (!(dt > 0.0))
            throw InvalidDuration("inter-slit transit time must be positive");
        t = apply_kernel(t, free_kernel(s, dt, opt.prefactor), var);
        t = apply_window(t, slits.centers.at(to), slits.beta, var);
    }
    return apply_kernel(t, free_kernel(s, opt.tau, opt.prefactor), var);
}

std::string route_label(const Route& r)
{
    std::string out;
    for (std::size_t i = 0; i < r.slits.size(); ++i) {
        if (i)
            out += '>';
        out += std::to_string(r.slits[i]);
    }
    return out;
}

} // namespace sorkin
