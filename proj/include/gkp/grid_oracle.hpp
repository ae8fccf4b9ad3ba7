#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gkp/gkp_states.hpp"
#include "gkp/numerics.hpp"

namespace gkp {

/// Dense wavefunction on the uniform grid x_k = -L + k (2L/N), N a power
/// of two. Values are immutable by convention: operations return new grids.
struct GridState {
    double L = 0.0;
    std::vector<cplx> psi;

    int n() const { return static_cast<int>(psi.size()); }
    double h() const { return 2.0 * L / n(); }
    double x(int k) const { return -L + k * h(); }
};

/// Pointwise evaluation of the position wavefunction including post_ops.
/// Throws std::domain_error when the grid cannot carry the state (support
/// outside [-L, L] or peaks unresolved), detected via the norm defect.
GridState render(const PeakSumState& state, double L, int N);

double grid_norm_sq(const GridState& g);
cplx grid_inner(const GridState& a, const GridState& b);
/// Probability mass in the outermost 1/16 of the grid on each side.
double boundary_mass(const GridState& g);

/// psi(x) -> psi(x - beta); exact sample roll when beta is a lattice
/// multiple, band-limited (spectral) shift otherwise.
GridState apply_shift(const GridState& g, double beta);

/// Pointwise multiplication by exp(i (a x^2 + b x)); norm preserved exactly.
GridState apply_qpoly_phase(const GridState& g, double a, double b);

/// Squeeze M_alpha: alpha^{-1/2} psi(x/alpha) via band-limited resampling.
GridState apply_squeeze(const GridState& g, double alpha);

/// Fourier transform with kernel (2 pi)^{-1/2} int f(x) e^{-ipx} dx,
/// realized by a centered DFT; the result lives on the dual grid with
/// half-width pi N / (2 L). Throws AccuracyError when boundary mass in
/// either domain exceeds 1e-8 (aliasing).
GridState apply_fourier(const GridState& g);
/// Inverse transform (kernel e^{+ipx}).
GridState apply_fourier_inverse(const GridState& g);

struct ConvergeResult {
    cplx value{};
    double error = 0.0;
    double L = 0.0;
    int N = 0;
};

/// Doubles N and, independently, L until successive values of the scalar
/// functional differ by less than tol.abs_tol; the last delta is the error
/// estimate. Throws AccuracyError past the budget.
ConvergeResult converge(const std::function<cplx(double, int)>& compute, double L0, int N0,
                        Tolerance tol, long max_points = 1L << 24, int max_L_doublings = 3);

/// CSV dump (x, Re, Im) for plotting.
void dump_csv(const GridState& g, const std::string& path);

}  // namespace gkp
