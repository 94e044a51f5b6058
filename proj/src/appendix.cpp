#include "sorkin/appendix.hpp"

#include "sorkin/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <numbers>

namespace sorkin::appendix {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double re(cplx z) { return z.real(); }
double im(cplx z) { return z.imag(); }
cplx inv(cplx z) { return 1.0 / z; }

/// atan(Im z / Re z), the principal value used in the printed phases.
double atan_ratio(cplx z) { return std::atan(z.imag() / z.real()); }

} // namespace

BiphotonClassical biphoton_classical(const SpdcParams& p, double d, double beta, double d1, double d2, Variant v)
{
    p.validate();
    (void)d;
    const double lam = p.lambda, c = p.c, t = p.T, tau = p.tau;
    const double alpha = p.alpha(t);
    const double b2 = beta * beta, b4 = b2 * b2;
    const double K1 = kPi / (lam * c * tau);
    const double K2 = 4.0 * kPi * kPi / (lam * lam * c * c * tau * tau);

    BiphotonClassical o;
    if (v == Variant::literal) {
        o.omega = 1.0 / b2 + 2.0 * kPi / (I * lam * c * tau)
                  + 1.0 / (p.omega * p.omega + I * lam * c * t / (2.0 * kPi * p.omega));
        o.Sigma = 1.0 / b2 + 2.0 * kPi / (I * lam * c * tau)
                  + 1.0 / (p.sigma * p.sigma + I * lam * c * t / (2.0 * kPi * p.sigma));
        o.c[0] = -K2 * re(inv(o.omega));
        o.c[1] = -K2 * re(inv(o.Sigma));
        o.c[2] = -K1 * ((d1 + d2) / b2) * im(inv(o.omega));
        o.c[3] = K1 * ((d1 - d2) / b2) * im(inv(o.Sigma));
        o.c[4] = -(d1 * d1 + d2 * d2) / (8.0 * b2) - (d1 + d2) * (d1 + d2) / (4.0 * b4) * re(inv(4.0 * o.omega))
                 + (-d1 + d2) * (-d1 + d2) / b4 * re(inv(4.0 * o.Sigma));
        o.a[0] = 2.0 * kPi / (lam * c * t) + K2 * im(inv(o.omega));
        o.a[1] = 2.0 * kPi / (lam * c * t) + K2 * im(inv(o.Sigma));
        o.a[2] = -K1 * (d1 + d2) / b2 * re(inv(o.omega));
        o.a[3] = K1 * (d1 - d2) / b2 * re(inv(o.Sigma));
        o.theta = -(d1 + d2) * (d1 + d2) / (4.0 * b4) * im(inv(4.0 * o.omega))
                  + (-d1 + d2) * (-d1 + d2) / b4 * im(inv(4.0 * o.Sigma));
        o.zeta = 0.5 * atan_ratio(o.omega * o.Sigma);
        o.A = K1 / std::sqrt(kPi * std::abs(o.omega) * std::abs(o.Sigma) * std::abs(cplx(p.sigma, alpha / p.sigma))
                             * std::abs(cplx(p.omega, alpha / p.omega)));
        return o;
    }

    // Completing the square in u = y1 + y2 and v = y1 - y2; omega and Sigma
    // are four times the pivots of u and v.
    const double s = 2.0 * kPi / (lam * c);
    o.omega = 1.0 / b2 - I * s / tau + 1.0 / (p.omega * p.omega + I * alpha);
    o.Sigma = 1.0 / b2 - I * s / tau + 1.0 / (p.sigma * p.sigma + I * alpha);
    const double sp = d1 + d2, sm = d1 - d2;
    o.c[0] = -K2 * re(inv(o.omega));
    o.c[1] = -K2 * re(inv(o.Sigma));
    o.c[2] = -K1 * sp / b2 * im(inv(o.omega));
    o.c[3] = -K1 * sm / b2 * im(inv(o.Sigma));
    o.c[4] = -(d1 * d1 + d2 * d2) / (8.0 * b2) + sp * sp / (16.0 * b4) * re(inv(o.omega))
             + sm * sm / (16.0 * b4) * re(inv(o.Sigma));
    o.a[0] = s / tau - K2 * im(inv(o.omega));
    o.a[1] = s / tau - K2 * im(inv(o.Sigma));
    o.a[2] = K1 * sp / b2 * re(inv(o.omega));
    o.a[3] = K1 * sm / b2 * re(inv(o.Sigma));
    o.theta = sp * sp / (16.0 * b4) * im(inv(o.omega)) + sm * sm / (16.0 * b4) * im(inv(o.Sigma));
    o.zeta = -0.5 * std::arg(o.omega * o.Sigma);
    o.A = 2.0 * K1 / std::sqrt(kPi * std::abs(o.omega) * std::abs(o.Sigma) * std::abs(cplx(p.sigma, alpha / p.sigma))
                               * std::abs(cplx(p.omega, alpha / p.omega)));
    return o;
}

BiphotonKink biphoton_kink(const SpdcParams& p, double d, double beta, double eps, double d1, double d2, double d3,
                           Variant v)
{
    p.validate();
    (void)d;
    const double lam = p.lambda, c = p.c, t = p.T, tau = p.tau;
    const double b2 = beta * beta, b4 = b2 * b2;
    const double l = lam * c;
    const cplx Om = 1.0 / (p.omega * p.omega + I * l * t / (2.0 * kPi));
    const cplx Sg = 1.0 / (p.sigma * p.sigma + I * l * t / (2.0 * kPi));

    BiphotonKink o;
    o.Theta = v == Variant::literal ? 1.0 / (p.omega * p.omega + I * I * l * t / (2.0 * kPi)) - Sg : Om - Sg;
    const cplx Th = o.Theta;
    o.chi3 = 1.0 / (2.0 * b2) + kPi / (I * l * eps) + Om + Sg;
    o.chi2 = 1.0 / (2.0 * b2) + kPi / (I * l * tau) + Om + Sg - Th * Th / (4.0 * o.chi3);
    o.chi1 = 1.0 / (2.0 * b2) + kPi / (I * l * eps) + kPi / (I * l * tau) + kPi / (l * l * eps * eps * o.chi3)
             + kPi * kPi * Th * Th / (4.0 * l * l * eps * eps * o.chi2 * o.chi3 * o.chi3);
    const cplx x1 = o.chi1, x2 = o.chi2, x3 = o.chi3;
    const double pi2 = kPi * kPi, pi3 = pi2 * kPi;
    const double D12 = d1 / tau + d2 / eps;

    o.c[0] = -(pi2 / (l * l * tau * tau)) * re(inv(x1));
    // Theta^2 sits outside the printed bracket; it is complex, so it is
    // multiplied in before taking the real part.
    o.c[1] = -std::pow(kPi / (l * tau), 2) * re(inv(x2))
             + re(std::pow(pi2 * Th / (2.0 * l * l * tau * eps), 2.0) * inv(x1 * x2 * x2 * x3 * x3));
    o.c[2] = -(pi3 / (l * l * l * tau * tau * eps)) * im(inv(x1 * x2 * x3));
    o.c[3] = re(pi2 * d3 / (2.0 * l * tau * b2) * im(inv(x1))
                - pi2 * Th / (4.0 * l * l * tau * b2) * D12 * re(inv(x1 * x2 * x3))
                + pi2 * Th * Th * d1 / (8.0 * l * l * tau * tau * b2) * re(inv(x1 * x2 * x3 * x3)));
    o.c[4] = re(kPi * d2 / (2.0 * l * tau * b2) * im(inv(x2))
                - pi3 * Th * Th / (8.0 * l * l * l * tau * eps * b2) * D12 * im(inv(x1 * x2 * x2 * x3 * x3))
                + pi3 * Th * Th * Th * d1 / (16.0 * l * l * l * tau * eps * eps * b2) * im(inv(x1 * x2 * x2 * x3 * x3 * x3))
                - pi2 * d3 / (4.0 * l * l * tau * eps * b2) * re(inv(x1 * x2 * x3)));
    o.c[5] = re((d1 * d1 + d2 * d2 + d3 * d3) / (8.0 * b2)
                + 1.0 / (16.0 * b4) * re(d1 * d1 / x3 + d2 * d2 / x2 + d3 * d3 / x1)
                + kPi * Th * d3 / (16.0 * l * b4) * D12 * im(inv(x1 * x2 * x3))
                + pi2 * Th * Th * Th * d1 / (64.0 * l * l * eps * b4) * D12 * re(inv(x1 * x2 * x2 * x3 * x3 * x3))
                - pi2 * Th * Th / (64.0 * l * l * b4) * D12 * D12 * re(inv(x1 * x2 * x2 * x3 * x3))
                - kPi * d1 * d3 * Th * Th / (32.0 * l * eps * b4) * im(inv(x1 * x2 * x3 * x3))
                - pi2 * d1 * d1 * Th * Th * Th * Th / (4.0 * 64.0 * l * l * eps * eps * b4)
                      * re(inv(x1 * x2 * x2 * x3 * x3 * x3 * x3)));
    o.a[0] = kPi / (l * tau) + (pi2 / (l * l * tau * tau)) * im(inv(x1));
    o.a[1] = kPi / (l * tau) + (pi2 / (l * l * tau * tau)) * im(inv(x2))
             - im(std::pow(pi2 * Th / (2.0 * l * l * tau * eps), 2.0) * inv(x1 * x2 * x2 * x3 * x3));
    o.a[2] = -(pi3 / (l * l * l * tau * tau * eps)) * re(inv(x1 * x2 * x3));
    o.a[3] = re(pi2 * d3 / (2.0 * l * tau * b2) * re(inv(x1))
                - pi2 * Th / (4.0 * l * l * tau * b2) * D12 * im(inv(x1 * x2 * x3))
                - pi2 * Th * Th * d1 / (8.0 * l * l * tau * tau * b2) * im(inv(x1 * x2 * x3 * x3)));
    o.a[4] = re(kPi * d2 / (2.0 * l * tau * b2) * re(inv(x2))
                + pi3 * Th * Th / (8.0 * l * l * l * tau * eps * b2) * D12 * re(inv(x1 * x2 * x2 * x3 * x3))
                + pi3 * Th * Th * Th * d1 / (16.0 * l * l * l * tau * eps * eps * b2) * re(inv(x1 * x2 * x2 * x3 * x3 * x3))
                + pi2 * d3 / (4.0 * l * l * tau * eps * b2) * im(inv(x1 * x2 * x3)));
    o.theta = re(-1.0 / (16.0 * b4) * im(d1 * d1 / x3 + d2 * d2 / x2 + d3 * d3 / x1)
                 + kPi * Th * d3 / (16.0 * l * b4) * D12 * re(inv(x1 * x2 * x3))
                 - pi2 * Th * Th * Th * d1 / (64.0 * l * l * eps * b4) * D12 * im(inv(x1 * x2 * x2 * x3 * x3 * x3))
                 + pi2 * Th * Th / (64.0 * l * l * b4) * D12 * D12 * im(inv(x1 * x2 * x2 * x3 * x3))
                 - kPi * d1 * d3 * Th * Th / (32.0 * l * eps * b4) * re(inv(x1 * x2 * x3 * x3))
                 + pi2 * d1 * d1 * Th * Th * Th * Th / (4.0 * 64.0 * l * l * eps * eps * b4)
                       * im(inv(x1 * x2 * x2 * x3 * x3 * x3 * x3)));
    const cplx prod = x1 * x2 * x3;
    o.zeta = -0.5 * std::atan(prod.real() / prod.imag());

    const BiphotonClassical cl = biphoton_classical(p, d, beta, d1, d2, Variant::literal);
    const double alpha = p.alpha(t);
    o.A = 1.0
          / std::sqrt(kPi * std::abs(cl.omega) * std::abs(cl.Sigma) * std::abs(cplx(p.sigma, alpha / p.sigma))
                      * std::abs(cplx(p.omega, alpha / p.omega)))
          * std::pow(kPi, 1.5) / (l * std::sqrt(eps * tau * std::abs(prod)));
    return o;
}

MatterClassical matter_classical(const MatterParams& p, int sign, Variant v)
{
    p.validate();
    const double s = p.species.mass_over_hbar();
    const double d = sign * p.d, t = p.T, tau = p.tau, sig0 = p.sigma0;
    const double tau0 = p.tau0();
    const double b2 = p.beta * p.beta, b4 = b2 * b2;

    MatterClassical o;
    o.b2 = sig0 * sig0 * (1.0 + (t / tau0) * (t / tau0));
    o.r = t * (1.0 + (tau0 / t) * (tau0 / t));
    const double G = 1.0 / b2 + 1.0 / o.b2;
    const double H = s * (1.0 / tau + 1.0 / o.r);
    o.B2 = (G * G + H * H) / ((s / tau) * (s / tau) * G);
    if (v == Variant::literal)
        o.R = tau * (G * G + H * H) / (G + (t / (sig0 * o.b2)) * (1.0 / tau + 1.0 / o.r));
    else
        o.R = tau * (G * G + H * H) / (G * G + s * (t / (tau0 * o.b2)) * (1.0 / tau + 1.0 / o.r));
    o.D = (1.0 + tau / o.r) / (1.0 + b2 / o.b2) * d;
    o.Delta = tau * sig0 * sig0 * d / (2.0 * tau0 * b2 * o.B2);
    o.theta = s * d * d * (1.0 / tau + 1.0 / o.r) / (8.0 * b4 * (G * G + H * H));
    o.mu = -0.5 * std::atan((t + tau * (1.0 + sig0 * sig0 / b2)) / (tau0 * (1.0 - t * tau * sig0 * sig0 / (tau0 * tau0 * b2))));
    o.amplitude = 1.0 / std::sqrt(p.beta * std::sqrt(kPi));
    return o;
}

MatterExotic matter_kink(const MatterParams& p, double eps, int sign, Variant v)
{
    p.validate();
    if (!(eps > 0.0))
        throw InvalidDuration("inter-slit time must be positive");
    const double s = p.species.mass_over_hbar();
    const double m = p.species.mass, hb = si::hbar;
    const double d = sign * p.d, t = p.T, tau = p.tau;
    const double b2 = p.beta * p.beta, b4 = b2 * b2;

    const cplx G1 = 1.0 / (2.0 * p.sigma0 * p.sigma0) + I * s / (2.0 * t);
    const cplx G2 = 1.0 / (2.0 * b2) + I * s / (2.0 * t) + I * s / (2.0 * eps) + s * s / (4.0 * t * t * G1);
    const cplx G3 = 1.0 / (2.0 * b2) + I * s / (2.0 * eps) + I * s / (2.0 * tau) + s * s / (4.0 * eps * eps * G2);

    MatterExotic o;
    o.pivots = {G1, G2, G3};
    o.c[0] = -s * s / (4.0 * tau * tau) * re(inv(G3));
    o.c[1] = s * d / (4.0 * tau * b2) * im(inv(G3)) - s * s * d / (8.0 * tau * eps * b2) * re(inv(G2 * G3));
    o.a[0] = s / (2.0 * tau) + s * s / (4.0 * tau * tau) * im(inv(G3));
    o.theta = -d * d / (16.0 * b4) * im(inv(G2)) - d * d / (16.0 * b4) * im(inv(G3))
              + s * d * d / (16.0 * eps * b4) * re(inv(G2 * G3)) + s * s * d * d / (64.0 * eps * eps * b4) * im(inv(G2 * G2 * G3));
    o.A = 1.0 / std::sqrt(p.sigma0 * std::sqrt(kPi)) * std::pow(s / 2.0, 1.5)
          / std::sqrt(t * eps * tau * std::abs(G1 * G2 * G3));
    if (v == Variant::literal) {
        o.c[2] = -d * d / (4.0 * b2) + d * d / (16.0 * b4) * re(inv(G2)) + d * d / (16.0 * b4) * re(inv(G3))
                 + d * d / (16.0 * hb * eps * b4) * im(inv(G2 * G3)) - d * d / (64.0 * hb * hb * eps * eps * b4) * im(inv(G2 * G2 * G3));
        o.a[1] = m * d / (4.0 * hb * tau * b2) * re(inv(G3)) + m * m * d / (8.0 * hb * hb * tau * b2) * im(inv(G2 * G3));
        o.mu = -0.5 * atan_ratio(G1 * G2 * G3);
    } else {
        o.c[2] = -d * d / (4.0 * b2) + d * d / (16.0 * b4) * re(inv(G2)) + d * d / (16.0 * b4) * re(inv(G3))
                 + s * d * d / (16.0 * eps * b4) * im(inv(G2 * G3)) - s * s * d * d / (64.0 * eps * eps * b4) * re(inv(G2 * G2 * G3));
        o.a[1] = s * d / (4.0 * tau * b2) * re(inv(G3)) + s * s * d / (8.0 * tau * eps * b2) * im(inv(G2 * G3));
        o.mu = 0.5 * atan_ratio(G1 * G2 * G3);
    }
    return o;
}

MatterExotic matter_loop(const MatterParams& p, double eps, int sign, Variant v)
{
    p.validate();
    if (!(eps > 0.0))
        throw InvalidDuration("inter-slit time must be positive");
    const double s = p.species.mass_over_hbar();
    const double m = p.species.mass, hb = si::hbar;
    const double d = sign * p.d, t = p.T, tau = p.tau;
    const double b2 = p.beta * p.beta, b4 = b2 * b2;
    const double e = eps;

    const cplx g0 = 1.0 / (2.0 * p.sigma0 * p.sigma0) + I * s / (2.0 * t);
    const cplx g1 = 1.0 / (2.0 * b2) + I * s / (2.0 * t) + I * s / (2.0 * e) + s * s / (4.0 * t * t * g0);
    const cplx g2 = 1.0 / (2.0 * b2) + I * s / e + s * s / (4.0 * e * e * g1);
    const cplx g3 = 1.0 / (2.0 * b2) + I * s / (2.0 * e) + I * s / (2.0 * tau) + s * s / (4.0 * e * e * g2);

    MatterExotic o;
    o.pivots = {g0, g1, g2, g3};
    o.c[0] = -s * s / (4.0 * tau * tau) * re(inv(g3));
    o.mu = 0.5 * atan_ratio(g0 * g1 * g2 * g3);
    o.A = 1.0 / std::sqrt(p.sigma0 * std::sqrt(kPi)) * (s * s / (4.0 * std::sqrt(t * e * e * tau * std::abs(g0 * g1 * g2 * g3))));

    if (v == Variant::literal) {
        const double m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
        const double h2 = hb * hb, h3 = h2 * hb, h4 = h2 * h2;
        o.c[1] = -m * d / (4.0 * b2 * hb * tau) * im(inv(g3)) + m2 * d / (16.0 * b2 * h2 * tau * e) * re(inv(g2 * g3))
                 + m3 * d / (64.0 * b2 * h3 * tau * e * e) * im(inv(g1 * g2 * g3));
        o.c[2] = -3.0 * d * d / (8.0 * b2) + d * d / (16.0 * b4) * re(inv(g1)) + d * d / (16.0 * b4) * re(inv(g2))
                 + d * d / (16.0 * b4) * re(inv(g3)) - m2 * d * d / (256.0 * b4 * h2 * e * e) * re(inv(g1 * g2))
                 + m4 * d * d / (4096.0 * b4 * h4 * e * e) * re(inv(g1 * g1 * g2 * g2 * g3))
                 - m2 * d * d / (128.0 * b4 * h2 * e * e) * re(inv(g1 * g2 * g3))
                 - m * d * d / (32.0 * b4 * hb * e) * re(inv(g1 * g2) + inv(g2 * g3))
                 - m2 * d * d / (256.0 * b4 * h2 * e * e) * re(inv(g2 * g2 * g3))
                 - m3 * d * d / (512.0 * b4 * h3 * e * e * e) * im(inv(g1 * g2 * g2 * g3));
        o.a[0] = m / (2.0 * hb * tau) + m2 / (4.0 * hb * tau * tau) * im(inv(g3));
        o.a[1] = -m * d / (4.0 * b2 * hb * tau) * re(inv(g3)) + m2 * d / (16.0 * b2 * hb * tau * e) * im(inv(g2 * g3))
                 + m3 * d / (64.0 * b2 * h3 * tau * e * e) * re(inv(g1 * g2 * g3));
        o.theta = -3.0 * d * d / (8.0 * b2) - d * d / (16.0 * b4) * im(inv(g1)) - d * d / (16.0 * b4) * im(inv(g2))
                  + d * d / (16.0 * b4) * im(inv(g3)) + m2 * d * d / (256.0 * b4 * h2 * e * e) * im(inv(g1 * g1 * g2))
                  - m4 * d * d / (4096.0 * b4 * h4 * e * e) * im(inv(g1 * g1 * g2 * g2 * g3))
                  + m2 * d * d / (128.0 * b4 * h2 * e * e) * im(inv(g1 * g2 * g3))
                  + m * d * d / (32.0 * b4 * hb * e) * re(inv(g1 * g2) + inv(g2 * g3))
                  + m2 * d * d / (256.0 * b4 * h2 * e * e) * im(inv(g2 * g2 * g3))
                  - m3 * d * d / (512.0 * b4 * h3 * e * e * e) * re(inv(g1 * g2 * g2 * g3));
        return o;
    }

    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    o.c[1] = -s * d / (4.0 * b2 * tau) * im(inv(g3)) + s2 * d / (8.0 * b2 * tau * e) * re(inv(g2 * g3))
             + s3 * d / (16.0 * b2 * tau * e * e) * im(inv(g1 * g2 * g3));
    o.c[2] = -3.0 * d * d / (8.0 * b2) + d * d / (16.0 * b4) * (re(inv(g1)) + re(inv(g2)) + re(inv(g3)))
             + s * d * d / (16.0 * e * b4) * im(inv(g1 * g2) + inv(g2 * g3))
             - s2 * d * d / (64.0 * e * e * b4) * re(inv(g1 * g1 * g2) + inv(g2 * g2 * g3))
             - s2 * d * d / (32.0 * e * e * b4) * re(inv(g1 * g2 * g3))
             - s3 * d * d / (64.0 * e * e * e * b4) * im(inv(g1 * g2 * g2 * g3))
             + s4 * d * d / (256.0 * e * e * e * e * b4) * re(inv(g1 * g1 * g2 * g2 * g3));
    o.a[0] = s / (2.0 * tau) + s2 / (4.0 * tau * tau) * im(inv(g3));
    o.a[1] = -s * d / (4.0 * b2 * tau) * re(inv(g3)) - s2 * d / (8.0 * b2 * tau * e) * im(inv(g2 * g3))
             + s3 * d / (16.0 * b2 * tau * e * e) * re(inv(g1 * g2 * g3));
    o.theta = -d * d / (16.0 * b4) * (im(inv(g1)) + im(inv(g2)) + im(inv(g3)))
              + s * d * d / (16.0 * e * b4) * re(inv(g1 * g2) + inv(g2 * g3))
              + s2 * d * d / (64.0 * e * e * b4) * im(inv(g1 * g1 * g2) + inv(g2 * g2 * g3))
              + s2 * d * d / (32.0 * e * e * b4) * im(inv(g1 * g2 * g3))
              - s3 * d * d / (64.0 * e * e * e * b4) * re(inv(g1 * g2 * g2 * g3))
              - s4 * d * d / (256.0 * e * e * e * e * b4) * im(inv(g1 * g1 * g2 * g2 * g3));
    return o;
}

// ---- cross-check -----------------------------------------------------------

namespace {

/// Relative difference; values below `floor` in magnitude count as zero.
double rel_delta(double published, double engine, double floor)
{
    const double den = std::max({std::abs(engine), floor});
    return std::abs(published - engine) / den;
}

/// |a - b| modulo pi/2, the ambiguity of a halved principal arctangent.
double phase_delta(double a, double b)
{
    return std::abs(std::remainder(a - b, 0.5 * kPi));
}

struct Adder
{
    Report& r;
    std::string section, branch, variant;

    void value(const std::string& name, double pub, double eng, double floor)
    {
        r.entries.push_back({section, branch, name, variant, pub, eng, rel_delta(pub, eng, floor), false});
    }
    void phase(const std::string& name, double pub, double eng)
    {
        r.entries.push_back({section, branch, name, variant, pub, eng, phase_delta(pub, eng), true});
    }
};

const char* variant_name(Variant v) { return v == Variant::literal ? "literal" : "repaired"; }

} // namespace

std::vector<Entry> Report::itemized(double threshold) const
{
    std::vector<Entry> out;
    for (const auto& e : entries)
        if (!(e.delta <= threshold))
            out.push_back(e);
    return out;
}

double Report::max_delta(const std::string& section_prefix, const std::string& variant) const
{
    double m = 0.0;
    for (const auto& e : entries)
        if (e.section.rfind(section_prefix, 0) == 0 && e.variant == variant)
            m = std::max(m, std::isfinite(e.delta) ? e.delta : INFINITY);
    return m;
}

std::string Report::to_json(int indent) const
{
    auto entry_json = [](const Entry& e) {
        return nlohmann::json{{"section", e.section},         {"branch", e.branch},
                              {"coefficient", e.coefficient}, {"variant", e.variant},
                              {"published", e.published},     {"engine", e.engine},
                              {"delta", e.delta},             {"delta_kind", e.phase_mod ? "abs_rad_mod_pi/2" : "relative"}};
    };
    nlohmann::json j;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries)
        j["entries"].push_back(entry_json(e));
    j["itemized_threshold"] = 1e-6;
    j["itemized"] = nlohmann::json::array();
    for (const auto& e : itemized(1e-6))
        j["itemized"].push_back(entry_json(e));
    return j.dump(indent);
}

Report crosscheck_biphoton(const SpdcParams& p0, double d, double beta, double eps)
{
    SpdcParams p = p0;
    p.prefactor = true;
    p.validate();
    const SlitArray slits = SlitArray::double_slit(d, beta);
    const GaussTerm at_slits = evolve(initial_state(p), p.T, p);
    Report rep;

    // Classical branches in (r, q): x1 = r + q, x2 = r - q.
    for (const auto& path : branches::classical_double()) {
        const GaussTerm t = path_term(p, slits, path, eps);
        const double d1 = -2.0 * slits.centers[path.photon1.slits[0]];
        const double d2 = -2.0 * slits.centers[path.photon2.slits[0]];
        const cplx q11 = t.quadratic(0, 0), q22 = t.quadratic(1, 1), q12 = t.quadratic(0, 1);
        const cplx r2 = q11 + q22 + q12, qq = q11 + q22 - q12;
        const cplx lr = t.linear(0) + t.linear(1), lq = t.linear(0) - t.linear(1);
        const double gouy = t.log_amp().imag() - at_slits.log_amp().imag() + 0.5 * kPi;
        const double amp = std::exp(t.log_amp().real());
        for (Variant v : {Variant::literal, Variant::repaired}) {
            const auto a = biphoton_classical(p, d, beta, d1, d2, v);
            Adder add{rep, "biphoton-classical", path.label, variant_name(v)};
            // Coefficients that vanish by symmetry are compared against the
            // branch's own scale.
            const double fq = 1e-6 * std::max(std::abs(r2), std::abs(qq));
            const double fl = 1e-6 * std::max(std::abs(lr), std::abs(lq));
            const double fc = 1e-6 * std::abs(t.constant());
            add.value("c1", a.c[0], r2.real(), fq);
            add.value("c2", a.c[1], qq.real(), fq);
            add.value("c3", a.c[2], lr.real(), fl);
            add.value("c4", a.c[3], lq.real(), fl);
            add.value("c5", a.c[4], t.constant().real(), fc);
            add.value("a1", a.a[0], r2.imag(), fq);
            add.value("a2", a.a[1], qq.imag(), fq);
            add.value("a3", a.a[2], lr.imag(), fl);
            add.value("a4", a.a[3], lq.imag(), fl);
            add.value("theta", a.theta, t.constant().imag(), fc);
            add.phase("zeta", a.zeta, gouy);
            add.value("A", a.A, amp, 0.0);
        }
    }

    // Kink branches a1, a3, b1, b3 in (x1, x2).
    std::vector<PathSpec> kinks;
    for (const auto& set : {branches::kink_a(), branches::kink_b()})
        for (const auto& k : set)
            if (k.label == "a1" || k.label == "a3" || k.label == "b1" || k.label == "b3")
                kinks.push_back(k);
    for (const auto& path : kinks) {
        const GaussTerm t = path_term(p, slits, path, eps);
        const double d1 = -2.0 * slits.centers[path.photon1.slits[0]];
        const double d3 = -2.0 * slits.centers[path.photon1.slits[1]];
        const double d2 = -2.0 * slits.centers[path.photon2.slits[0]];
        const double gouy = t.log_amp().imag() - at_slits.log_amp().imag() + 0.75 * kPi;
        const double amp = std::exp(t.log_amp().real());
        const auto a = biphoton_kink(p, d, beta, eps, d1, d2, d3, Variant::literal);
        Adder add{rep, "biphoton-kink", path.label, "literal"};
        const double fq = 1e-9 / (d * d), fl = 1e-9 / d, fc = 1e-9;
        add.value("c1", a.c[0], t.quadratic(0, 0).real(), fq);
        add.value("c2", a.c[1], t.quadratic(1, 1).real(), fq);
        add.value("c3", a.c[2], t.quadratic(0, 1).real(), fq);
        add.value("c4", a.c[3], t.linear(0).real(), fl);
        add.value("c5", a.c[4], t.linear(1).real(), fl);
        add.value("c6", a.c[5], t.constant().real(), fc);
        add.value("a1", a.a[0], t.quadratic(0, 0).imag(), fq);
        add.value("a2", a.a[1], t.quadratic(1, 1).imag(), fq);
        add.value("a3", a.a[2], t.quadratic(0, 1).imag(), fq);
        add.value("a4", a.a[3], t.linear(0).imag(), fl);
        add.value("a5", a.a[4], t.linear(1).imag(), fl);
        add.value("theta", a.theta, t.constant().imag(), fc);
        add.phase("zeta", a.zeta, gouy);
        add.value("A", a.A, amp, 0.0);
    }
    return rep;
}

Report crosscheck_matter(const MatterParams& p0, double eps)
{
    MatterParams p = p0;
    p.prefactor = true;
    p.n_slits = 2;
    p.validate();
    Report rep;
    const double fq = 1e-9 / (p.d * p.d), fl = 1e-9 / p.d, fc = 1e-9;
    const double s = p.species.mass_over_hbar();

    // Slit A is the one at +d/2 (index 1), B at -d/2 (index 0).
    for (int sign : {+1, -1}) {
        const int a_idx = sign > 0 ? 1 : 0, b_idx = sign > 0 ? 0 : 1;
        const std::string ab = sign > 0 ? "A" : "B";

        const GaussTerm t = classical_term(p, a_idx);
        const double B2 = -1.0 / (2.0 * t.quadratic(0, 0).real());
        const double R = s / (2.0 * t.quadratic(0, 0).imag());
        const double D = 2.0 * B2 * t.linear(0).real();
        const double Delta = -t.linear(0).imag();
        const double mu = t.log_amp().imag() + 0.5 * kPi;
        const double amp = std::exp(t.log_amp().real() + t.constant().real() + D * D / (8.0 * B2));

        // Free packet at the slits.
        const GaussTerm free = apply_kernel(matter_initial_state(p), free_kernel(p.species, p.T, true));
        const double b2 = -1.0 / (2.0 * free.quadratic(0, 0).real());
        const double r = s / (2.0 * free.quadratic(0, 0).imag());

        for (Variant v : {Variant::literal, Variant::repaired}) {
            const auto a = matter_classical(p, sign, v);
            Adder add{rep, "matter-classical", ab, variant_name(v)};
            add.value("B_A^2", a.B2, B2, 0.0);
            add.value("R_A", a.R, R, 0.0);
            add.value("D_A", a.D, D, 1e-9 * p.d);
            add.value("Delta_A", a.Delta, Delta, fl);
            add.value("theta_A", a.theta, t.constant().imag(), fc);
            add.phase("mu_A", a.mu, mu);
            add.value("b^2", a.b2, b2, 0.0);
            add.value("r", a.r, r, 0.0);
            if (v == Variant::literal)
                add.value("amplitude", a.amplitude, amp, 0.0);
        }

        const GaussTerm k = kink_term(p, a_idx, b_idx, eps);
        const GaussTerm l = loop_term(p, a_idx, b_idx, eps);
        for (Variant v : {Variant::literal, Variant::repaired}) {
            for (int which = 0; which < 2; ++which) {
                const GaussTerm& e = which == 0 ? k : l;
                const auto a = which == 0 ? matter_kink(p, eps, sign, v) : matter_loop(p, eps, sign, v);
                const int kernels = which == 0 ? 3 : 4;
                const std::string label = which == 0 ? ab + (sign > 0 ? "B" : "A") : "loop-" + ab + (sign > 0 ? "B" : "A");
                Adder add{rep, which == 0 ? "matter-kink" : "matter-loop", label, variant_name(v)};
                add.value("c1", a.c[0], e.quadratic(0, 0).real(), fq);
                add.value("c2", a.c[1], e.linear(0).real(), fl);
                add.value("c3", a.c[2], e.constant().real(), fc);
                add.value("a1", a.a[0], e.quadratic(0, 0).imag(), fq);
                add.value("a2", a.a[1], e.linear(0).imag(), fl);
                add.value("theta", a.theta, e.constant().imag(), fc);
                add.phase("mu", a.mu, e.log_amp().imag() + kernels * 0.25 * kPi);
                add.value("A", a.A, std::exp(e.log_amp().real()), 0.0);
            }
        }
    }
    return rep;
}

} // namespace sorkin::appendix
