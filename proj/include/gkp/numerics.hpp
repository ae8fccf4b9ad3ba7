#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gkp/errors.hpp"

namespace gkp {

using cplx = std::complex<double>;

/// Accuracy request for scalar integrals and iterative solvers.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    void validate() const;
};

/// One-dimensional Gaussian lattice sum sum_z exp(-pi (z+shift)^2 / s^2),
/// truncated to a window whose omitted mass is certified below tail_tol.
struct LatticeSumSpec {
    double s = 1.0;
    double shift = 0.0;
    double tail_tol = 1e-14;
    void validate() const;
};

/// exp(-pi x^2 / s^2). Throws std::domain_error for s <= 0.
double gaussian_rho(double s, double x);

/// Window radius r such that the discrete-Gaussian tail bound
/// 2 exp(-(3 pi / 4)(r/s)^2) drops below tail_tol.
double lattice_tail_radius(double s, double tail_tol);

/// Periodic Gaussian f_s(t) = sum_{z in Z} exp(-pi (z+t)^2 / s^2).
double periodic_gaussian(const LatticeSumSpec& spec);

struct DiscreteTail {
    double bound;      // 2 exp(-(3 pi/4) (r/s)^2)
    double empirical;  // Pr[|X_s| >= r] summed exactly
};

/// Tail probability of the discrete Gaussian Pr[X = z] ~ exp(-pi z^2/s^2),
/// together with its analytic bound.
DiscreteTail discrete_gaussian_tail(double s, double r);

/// Mass of the unit-norm Gaussian of width delta captured by [-eps, eps];
/// equals erf(eps/delta).
double truncated_gaussian_mass(double delta, double eps);

/// Closed form of int exp(i a x^2 + i b x) dx over the real line for
/// Im(a) > 0: sqrt(pi i / a) exp(-i b^2 / (4a)). The square-root branch is
/// the principal one, which is continuous in a and gives sqrt(pi) at
/// (a, b) = (i, 0).
cplx fresnel_gaussian_integral(cplx a, double b);

/// Closed form of int_{lo}^{hi} exp(-a x^2 + b x) dx for Re(a) > 0 via the
/// complex error function. Infinite limits are allowed
/// (lo = -inf, hi = +inf give the full-line Gaussian integral).
cplx gaussian_integral(cplx a, cplx b, double lo, double hi);

/// Complex error function erf(z), accurate to ~1e-13 absolute on the
/// argument ranges that arise from truncated Gaussian integrals.
cplx cerf(cplx z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
cplx faddeeva_w(cplx z);

struct QuadResult {
    cplx value{};
    double error = 0.0;   // certified absolute-error estimate
    int panels = 0;
};

/// Adaptive Gauss-Kronrod quadrature of a complex-valued integrand with an
/// absolute-error target. `breakpoints` seeds the initial subdivision (used
/// by callers whose integrands have features far narrower than the
/// interval). Throws AccuracyError carrying the best estimate when the
/// panel budget is exhausted before the target is met.
QuadResult quad_complex_full(const std::function<cplx(double)>& f, double lo, double hi,
                             Tolerance tol, const std::vector<double>& breakpoints = {},
                             int max_panels = 4000);

cplx quad_complex(const std::function<cplx(double)>& f, double lo, double hi, Tolerance tol,
                  const std::vector<double>& breakpoints = {});

}  // namespace gkp
