#include <array>
#include <cmath>
#include <numbers>

#include "gkp/numerics.hpp"

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = 0.5641895835477562869;

// Weideman's rational approximation of the Faddeeva function on the closed
// upper half-plane (SIAM J. Numer. Anal. 31, 1497 (1994)). The expansion
// coefficients are Fourier coefficients of exp(-t^2)(L^2+t^2) under the
// substitution t = L tan(theta/2); N = 64 keeps the uniform error near
// double precision.
constexpr int kWeidemanN = 64;

struct WeidemanTable {
    double L;
    std::array<double, kWeidemanN> a;
};

WeidemanTable build_weideman() {
    WeidemanTable tab{};
    const int M = 2 * kWeidemanN;
    const int M2 = 2 * M;
    tab.L = std::sqrt(kWeidemanN / std::sqrt(2.0));

    std::array<long double, 2 * kWeidemanN> f{};  // f[j] = f(theta_j), j = 0..M-1; even in j
    f[0] = tab.L * tab.L;                         // t(0) = 0
    for (int j = 1; j < M; ++j) {
        const long double t = tab.L * std::tan(0.5L * kPi * j / M);
        f[j] = std::exp(-t * t) * (tab.L * tab.L + t * t);
    }
    for (int n = 1; n <= kWeidemanN; ++n) {
        long double c = f[0];
        for (int j = 1; j < M; ++j) c += 2.0L * f[j] * std::cos(kPi * j * n / (long double)M);
        tab.a[n - 1] = static_cast<double>(c / M2);
    }
    return tab;
}

const WeidemanTable& weideman() {
    static const WeidemanTable tab = build_weideman();
    return tab;
}

cplx faddeeva_weideman(cplx z) {
    const WeidemanTable& tab = weideman();
    const cplx iz(-z.imag(), z.real());
    const cplx denom = tab.L - iz;
    const cplx Z = (tab.L + iz) / denom;
    cplx p(0.0, 0.0);
    for (int n = kWeidemanN - 1; n >= 0; --n) p = p * Z + tab.a[n];
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

// Laplace continued fraction, accurate for large |z| in the upper half-plane.
cplx faddeeva_contfrac(cplx z) {
    constexpr int kDepth = 32;
    cplx t(0.0, 0.0);
    for (int n = kDepth; n >= 1; --n) t = (0.5 * n) / (z - t);
    return cplx(0.0, kInvSqrtPi) / (z - t);
}

}  // namespace

cplx faddeeva_w(cplx z) {
    if (z.imag() < 0.0) {
        // w(z) = 2 exp(-z^2) - w(-z); only mild excursions below the axis
        // are expected from rounding in callers.
        return 2.0 * std::exp(-z * z) - faddeeva_w(-z);
    }
    if (std::norm(z) >= 144.0) return faddeeva_contfrac(z);
    return faddeeva_weideman(z);
}

cplx cerf(cplx z) {
    if (z.imag() == 0.0) return cplx(std::erf(z.real()), 0.0);
    if (z.real() < 0.0) return -cerf(-z);
    // erfc(z) = exp(-z^2) w(iz) for Re(z) >= 0
    const cplx iz(-z.imag(), z.real());
    return 1.0 - std::exp(-z * z) * faddeeva_w(iz);
}

}  // namespace gkp
