#pragma once

// Brute-force amplitudes by nested Gauss-Legendre quadrature, sharing no code
// with the closed-form chain except the parameter structs.

#include "sorkin/biphoton.hpp"
#include "sorkin/matterwave.hpp"
#include "sorkin/quadrature.hpp"

#include <span>
#include <vector>

namespace sorkin {

/// Two-photon path amplitude at (x1, x2). The state at the slit plane is the
/// closed-form free evolution; both photons' routes are integrated numerically.
cplx quadrature_amplitude(const SpdcParams& p, const SlitArray& slits, const PathSpec& path, double x1, double x2,
                          double eps, const QuadConfig& cfg = {});

/// Single-particle route amplitude at each screen point, integrating the
/// source coordinate and every slit coordinate.
std::vector<cplx> quadrature_amplitudes(const MatterParams& p, const Route& route, std::span<const double> xs,
                                        double eps, const QuadConfig& cfg = {});

cplx quadrature_amplitude(const MatterParams& p, const Route& route, double x, double eps,
                          const QuadConfig& cfg = {});

/// Freely evolved biphoton psi(x1, x2, t) by direct two-dimensional
/// quadrature of the initial state against both propagators.
cplx quadrature_free_pair(const SpdcParams& p, double t, double x1, double x2, const QuadConfig& cfg = {});

} // namespace sorkin
