#pragma once

#include <optional>

#include <Eigen/Dense>

#include "gkp/numerics.hpp"

namespace gkp {

using ComplexMatrix = Eigen::MatrixXcd;

/// Largest singular value.
double operator_norm(const ComplexMatrix& B);

/// Crawford number (inner numerical radius) c(B) = min over the numerical
/// range of |z|, computed by convex duality: max(0, max_theta lambda_min of
/// the rotated Hermitian part), with a coarse scan refined to abs_tol using
/// the Lipschitz bound |d lambda_min / d theta| <= ||B||.
double crawford(const ComplexMatrix& B, Tolerance tol = {});

/// Independent oracle: multi-start local minimization of |<psi, B psi>| on
/// the unit sphere. Returns the best value found (an upper bound on c(B)).
double crawford_bruteforce(const ComplexMatrix& B, int n_starts, unsigned long seed);

/// Diagonal-dominance lower bound on c(B):
/// min_j (|Re B_jj| - 1/2 sum_{l != j} |B_jl + conj(B_lj)|), valid when
/// Re B_jj >= 0 for all j; nullopt otherwise.
std::optional<double> alpha_bound(const ComplexMatrix& A);

/// Phase-corrected diagonal-dominance bound; requires nonzero diagonal.
double phase_corrected_bound(const ComplexMatrix& B);

/// Bound for s-sparse matrices with nonzero diagonal:
/// min_j |B_jj| - (s-1) max_{j != l} |B_jl| - ||B|| max_j |B_jj/|B_jj| - 1|.
/// Throws std::domain_error if some row or column has more than s nonzeros.
double sparse_bound(const ComplexMatrix& B, int s);

/// Bound 1 - 7 (d max_j |1 - B_jj|)^{1/2} for matrices with row and column
/// l2-sums at most 1 and nonzero diagonal.
double subnormalized_bound(const ComplexMatrix& B);

}  // namespace gkp
