#pragma once

// Exact algebra of complex Gaussian terms
//
//     A * exp( sum_ij M_ij x_i x_j + sum_i l_i x_i + k )
//
// in up to four real variables. Every amplitude in the library is a finite
// sum of such terms; propagation, slit windows and overlaps are closed under
// multiplication and Gaussian integration (completion of the square).
//
// The amplitude is carried as log A so that exotic-path terms many orders of
// magnitude below the classical ones never underflow.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace sorkin {

using cplx = std::complex<double>;

class GaussTerm
{
public:
    static constexpr int kMaxVars = 4;

    /// Unit term (all coefficients and log-amplitude zero) in `vars` variables.
    explicit GaussTerm(int vars = 1);

    int vars() const { return vars_; }

    cplx log_amp() const { return log_amp_; }
    void set_log_amp(cplx v) { log_amp_ = v; }
    void add_log_amp(cplx v) { log_amp_ += v; }

    /// Coefficient of x_i*x_j as it appears in the polynomial (i == j: x_i^2).
    cplx quadratic(int i, int j) const;
    void set_quadratic(int i, int j, cplx v);
    void add_quadratic(int i, int j, cplx v);

    cplx linear(int i) const { return lin_[i]; }
    void set_linear(int i, cplx v) { lin_[i] = v; }
    void add_linear(int i, cplx v) { lin_[i] += v; }

    cplx constant() const { return k_; }
    void set_constant(cplx v) { k_ = v; }
    void add_constant(cplx v) { k_ += v; }

    // Two-variable view: q11 x1^2 + q22 x2^2 + q12 x1 x2 + l1 x1 + l2 x2 + k.
    cplx q11() const { return quadratic(0, 0); }
    cplx q22() const { return quadratic(1, 1); }
    cplx q12() const { return quadratic(0, 1); }
    cplx l1() const { return linear(0); }
    cplx l2() const { return linear(1); }
    cplx k() const { return k_; }

    /// Symmetric-matrix entry M_ij (exponent = x^T M x + ...).
    cplx sym(int i, int j) const { return m_[i][j]; }

    /// Natural log of the term at x (complex; exp of it is the value).
    cplx log_value(std::span<const double> x) const;
    cplx value(std::span<const double> x) const;

    /// Re(M) strictly negative definite.
    bool normalizable() const;

private:
    int vars_;
    cplx log_amp_{};
    std::array<std::array<cplx, kMaxVars>, kMaxVars> m_{};
    std::array<cplx, kMaxVars> lin_{};
    cplx k_{};
};

using GaussTerm2 = GaussTerm;

/// Finite sum of terms sharing the same variable count. Empty sums are zero.
class GaussSum
{
public:
    explicit GaussSum(int vars = 1) : vars_(vars) {}
    GaussSum(std::initializer_list<GaussTerm> terms);

    int vars() const { return vars_; }
    const std::vector<GaussTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(const GaussTerm& t);
    void append(const GaussSum& other);

    cplx value(std::span<const double> x) const;
    /// Sum of exp(log_value - log_scale); used to keep grids in range.
    cplx scaled_value(std::span<const double> x, double log_scale) const;

private:
    int vars_;
    std::vector<GaussTerm> terms_;
};

/// Propagator for one leg: a two-variable term over (x_out, x_in).
struct Kernel
{
    GaussTerm term{2};
    double duration = 0.0;
};

// ---- term algebra ---------------------------------------------------------

GaussTerm multiply(const GaussTerm& a, const GaussTerm& b);
GaussTerm conj(const GaussTerm& t);

/// Integrates variable `var` over the real line. Throws NonIntegrable when the
/// effective quadratic coefficient has a non-negative real part.
GaussTerm integrate_out(const GaussTerm& t, int var);

/// Same as integrate_out but also admits purely imaginary quadratic
/// coefficients (Fresnel integrals, defined by the usual limiting procedure).
GaussTerm integrate_out_fresnel(const GaussTerm& t, int var);

/// log of the integral over all variables.
cplx log_integral(const GaussTerm& t);

/// New zero-coefficient variable inserted at position `pos`.
GaussTerm insert_var(const GaussTerm& t, int pos);
GaussTerm swap_vars(const GaussTerm& t, int i, int j);
/// x -> -x in every variable.
GaussTerm reflect(const GaussTerm& t);
/// Drops the trailing variables by evaluating them at zero.
GaussTerm restrict_to(const GaussTerm& t, int vars);

/// exp(-(x_var - center)^2 / (2 beta^2)) in `vars` variables.
GaussTerm window_term(int vars, int var, double center, double beta);

// ---- sums ----------------------------------------------------------------

GaussSum multiply(const GaussSum& s, const GaussTerm& t);
GaussSum integrate_out(const GaussSum& s, int var);
GaussSum swap_vars(const GaussSum& s, int i, int j);
GaussSum reflect(const GaussSum& s);

/// Multiplies by the kernel in (x_out, x_in = old var) and integrates the old
/// variable out; the new variable takes the old one's place.
GaussTerm apply_kernel(const GaussTerm& t, const Kernel& k, int var = 0);
GaussSum apply_kernel(const GaussSum& s, const Kernel& k, int var = 0);

/// Fresnel-Huygens composition: first `first`, then `second`.
Kernel compose(const Kernel& first, const Kernel& second);

GaussTerm apply_window(const GaussTerm& t, double center, double beta, int var = 0);
GaussSum apply_window(const GaussSum& s, double center, double beta, int var = 0);

// ---- overlaps and moments -------------------------------------------------

/// <a|b> = integral of conj(a) * b.
cplx overlap(const GaussTerm& a, const GaussTerm& b);
cplx overlap(const GaussSum& a, const GaussSum& b);

double norm_sq(const GaussSum& s);

struct PositionMoments
{
    double norm = 0;
    double mean = 0;    ///< <x_v>
    double mean_sq = 0; ///< <x_v^2>
};

struct MomentumMoments
{
    double norm = 0;
    double mean = 0;    ///< <k_w> with k = -i d/dx (multiply by hbar for p)
    double mean_sq = 0; ///< <k_w^2>
    double spread() const;
};

PositionMoments position_moments(const GaussSum& s, int var);

/// <x_i x_j> over the normalized state.
double position_cross_moment(const GaussSum& s, int i, int j);

/// Moments of the wavenumber along direction w: k_w = sum_i w_i (-i d/dx_i).
MomentumMoments momentum_moments(const GaussSum& s, std::span<const double> w);
MomentumMoments momentum_moments(const GaussSum& s, int var);

} // namespace sorkin
