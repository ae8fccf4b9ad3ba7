#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkp/matrix_elements.hpp"
#include "gkp/numerical_range.hpp"

namespace gkp {

/// Logical target unitary on C^d with its conventional matrix.
struct LogicalTarget {
    Eigen::MatrixXcd U;
    std::string label;  // "X", "Z", "P", "F", "custom"
};

LogicalTarget logical_x(int d, int power = 1);     // X|x> = |x+1 mod d>
LogicalTarget logical_z(int d, int power = 1);     // Z|x> = omega^x |x>
LogicalTarget logical_phase(int d);                // P|x> = omega^{x(x+c_d)/2}|x>
LogicalTarget logical_fourier(int d);              // F_{j,k} = omega^{jk}/sqrt(d)

/// B_{j,k} = sum_m conj(U_{m,j}) M_{m,k}, i.e. B = U^dagger M.
ComplexMatrix build_B(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& U);
ComplexMatrix build_B(const MatrixElements& M, const LogicalTarget& U);

/// Certified two-sided bounds on the composable logical gate error of a
/// unitary implementation, derived from the Crawford number of B.
struct GateErrorCertificate {
    double crawford_c = 1.0;
    double lower = 0.0;           // 2 sqrt(1 - c^2)
    double upper = 0.0;           // min(5 sqrt(1 - c^2), 2)
    double shortcut_upper = 2.0;  // matrix-element shortcut; may be vacuous (> 2)
    bool regime_ok = true;        // parameters inside the proven hypotheses
    std::vector<std::string> provenance;
};

/// Requires an (almost) unitary implementation: ||B|| <= 1 + 1e-8.
GateErrorCertificate certificate(const ComplexMatrix& B, Tolerance tol = {});

/// Upper bound without the unitarity assumption:
/// sqrt(2) (1 + ||B||^4 - 2 c(B))^{1/2} + 3 ||W|| (1 - c(B)^2)^{1/2}.
double nonunitary_bound(const ComplexMatrix& B, double w_norm, Tolerance tol = {});

struct ShortcutBounds {
    std::optional<double> sparse;  // 8 ((1 - min|B_jj|) + (s-1) max off)^{1/2}
    double general = 2.0;          // 19 d^{3/8} (max |U - M|)^{1/4}
};

/// Matrix-element shortcut bounds; the sparse branch is present only when
/// B is s-sparse with real nonzero diagonal.
ShortcutBounds shortcut_bounds(const MatrixElements& M, const LogicalTarget& U,
                               std::optional<int> s = std::nullopt);

/// No-go analysis of the phase-gate implementation at one parameter point.
struct NogoReport {
    double b00_abs = 0.0;
    double lower_bound = 0.0;  // 2 (1 - |B00|)
    double cap_const = 0.0;    // 49/50 + 16 (delta/eps)^4
    double cap_gaussian = 0.0; // 1/sqrt(1 + 2 (d delta/kappa)^2) + kappa + 16 (delta/eps)^4
    bool regime_ok = false;    // kappa < 1/250 and 2 pi d delta / kappa >= 1
    bool cap_const_ok = false;
    bool cap_gaussian_ok = false;
    double error_estimate = 0.0;
};

NogoReport nogo_check(const GkpParams& p, Tolerance tol = {});

/// Asymmetric-squeezing scenario: the phase gate fails on the code or on
/// its Fourier image; reports both and the max of the two lower bounds.
struct AsymmetricNogo {
    NogoReport code;
    NogoReport dual;
    double max_lower = 0.0;
    bool regime_ok = false;  // delta <= 1/(80 d) and kappa < d^{-6}
};

AsymmetricNogo asymmetric_nogo(const GkpParams& p, Tolerance tol = {});

struct TransferInterval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Transfers a certificate to a code whose basis vectors are delta-close:
/// [(2/5) err - 4 sqrt(d delta), (5/2) err + 10 sqrt(d delta)].
TransferInterval continuity_transfer(const GateErrorCertificate& cert, double delta, int d);

/// Symmetric (polar-decomposition) orthogonalization xi = A G^{-1/2};
/// output spans the input and is orthonormal. Throws std::domain_error for
/// a numerically singular Gram matrix.
std::vector<Eigen::VectorXcd> lowdin_orthogonalize(const std::vector<Eigen::VectorXcd>& vectors);

std::string to_json(const GateErrorCertificate& cert, const std::string& gate,
                    const GkpParams& params);

}  // namespace gkp
