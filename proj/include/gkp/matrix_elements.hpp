#pragma once

#include <string>

#include <Eigen/Dense>

#include "gkp/gkp_states.hpp"
#include "gkp/grid_oracle.hpp"

namespace gkp {

/// The Gaussian unitaries whose code-space matrix elements we compute:
///   PauliX      exp(-i m sqrt(2 pi / d) P)        (m = power)
///   PauliZPower exp(+i m sqrt(2 pi / d) Q)
///   Fourier     exp(+i pi (Q^2 + P^2) / 4)
///   Phase       exp(+i (Q^2 + c_d sqrt(2 pi / d) Q) / 2),  c_d = d mod 2
struct GateSpec {
    enum class Kind { PauliX, PauliZPower, Fourier, Phase };
    Kind kind = Kind::PauliX;
    int power = 1;
    std::string name() const;
};

/// d x d matrix M_{j,k} = <basis_out(j), W basis_in(k)> between truncated
/// code bases. For the Fourier gate, `values` follows the transform-kernel
/// convention in which M_{0,0} is positive real in the ideal-code limit;
/// the physical-gate matrix is gate_phase * values.
struct MatrixElements {
    Eigen::MatrixXcd values;
    cplx gate_phase{1.0, 0.0};
    GkpParams in_params;
    GkpParams out_params;
    GateSpec gate;
    std::string method;  // "analytic", "grid", or "comb"
    double error_estimate = 0.0;
};

/// Analytic matrix of the position-shift gate X^power. Off-band entries
/// vanish exactly (disjoint truncated supports); in-band entries are 1 or
/// the lattice-shift overlap sum.
MatrixElements mat_pauli_x(const GkpParams& p, Tolerance tol = {}, int power = 1);

/// Analytic matrix of Z^m (diagonal). The shared diagonal scalar is the
/// truncated-Gaussian oscillatory integral, evaluated by adaptive
/// quadrature and verified against the error-function closed form.
MatrixElements mat_pauli_z(const GkpParams& p, int m, Tolerance tol = {});

/// Diagonal of the phase gate via the peak decomposition: each lattice site
/// contributes a Fresnel-type truncated Gaussian integral (closed form,
/// spot-checked against quadrature).
MatrixElements mat_phase(const GkpParams& p, Tolerance tol = {});

enum class FourierMethod { Auto, Grid, Comb };

/// Matrix of the Fourier gate between the code bases of p and its dual
/// parameters. Grid path: rendered states, discrete transform, grid
/// convergence. Comb path: momentum-space peak alignment (Poisson-resummed
/// envelope), used automatically when the required grid would exceed the
/// point budget.
MatrixElements mat_fourier(const GkpParams& p, Tolerance tol = {},
                           FourierMethod method = FourierMethod::Auto,
                           long max_grid_points = 1L << 24);

/// Grid-path evaluation of any gate's matrix (the independent cross-check);
/// grid sizes are chosen from the state's support and bandwidth, then
/// refined until entries stabilize within tol.abs_tol.
MatrixElements mat_grid(const GateSpec& gate, const GkpParams& p, Tolerance tol = {},
                        long max_grid_points = 1L << 24);

/// Closed form of <Psi^eps, e^{2 pi i m Q} Psi^eps> (the Z-gate diagonal
/// scalar) via the complex error function.
double pauli_z_scalar_closed_form(const GkpParams& p, int m);

/// Phase-gate diagonal scalar <GKP^eps, e^{i pi (d Q^2 + (2j + c_d) Q)} GKP^eps>
/// by the peak decomposition; defined for any eps < 1/2 (no orthogonality
/// requirement). Spot-checked against quadrature to 1e-9.
cplx phase_diagonal_scalar(const GkpParams& p, int j, Tolerance tol = {});

std::string to_json(const MatrixElements& M);

}  // namespace gkp
