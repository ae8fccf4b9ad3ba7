#include "gkp/gate_error.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace gkp {

namespace {
constexpr double kPi = std::numbers::pi;

cplx omega_pow(int d, double e) { return std::exp(cplx(0.0, 2.0 * kPi * e / d)); }
}  // namespace

LogicalTarget logical_x(int d, int power) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) U((k + power) % d, k) = 1.0;
    return {U, power == 1 ? "X" : "X^" + std::to_string(power)};
}

LogicalTarget logical_z(int d, int power) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < d; ++j) U(j, j) = omega_pow(d, static_cast<double>(power) * j);
    return {U, power == 1 ? "Z" : "Z^" + std::to_string(power)};
}

LogicalTarget logical_phase(int d) {
    const int cd = d % 2;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < d; ++j) U(j, j) = omega_pow(d, 0.5 * (j * j + cd * j));
    return {U, "P"};
}

LogicalTarget logical_fourier(int d) {
    Eigen::MatrixXcd U(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) U(j, k) = s * omega_pow(d, static_cast<double>(j) * k);
    return {U, "F"};
}

ComplexMatrix build_B(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& U) {
    if (M.rows() != U.rows() || M.cols() != U.cols() || M.rows() != M.cols())
        throw std::domain_error("build_B: dimension mismatch");
    return U.adjoint() * M;
}

ComplexMatrix build_B(const MatrixElements& M, const LogicalTarget& U) {
    return build_B(M.values, U.U);
}

GateErrorCertificate certificate(const ComplexMatrix& B, Tolerance tol) {
    const double bnorm = operator_norm(B);
    if (bnorm > 1.0 + 1e-8)
        throw std::domain_error("certificate: ||B|| > 1 + 1e-8; use nonunitary_bound");
    GateErrorCertificate cert;
    cert.crawford_c = std::clamp(crawford(B, tol), 0.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - cert.crawford_c * cert.crawford_c));
    cert.lower = 2.0 * s;
    cert.upper = std::min(5.0 * s, 2.0);
    cert.shortcut_upper = 2.0;
    cert.provenance = {"c = inner numerical radius (theta-sweep duality)",
                       "lower = 2 sqrt(1 - c^2)", "upper = min(5 sqrt(1 - c^2), 2)"};
    return cert;
}

double nonunitary_bound(const ComplexMatrix& B, double w_norm, Tolerance tol) {
    if (w_norm < 0.0) throw std::domain_error("nonunitary_bound: w_norm must be >= 0");
    const double c = crawford(B, tol);
    const double bn = operator_norm(B);
    const double first = std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 + std::pow(bn, 4) - 2.0 * c));
    const double second = 3.0 * w_norm * std::sqrt(std::max(0.0, 1.0 - c * c));
    return first + second;
}

ShortcutBounds shortcut_bounds(const MatrixElements& M, const LogicalTarget& U,
                               std::optional<int> s) {
    const int d = static_cast<int>(U.U.rows());
    const ComplexMatrix B = build_B(M, U);
    ShortcutBounds out;

    const double dev = (U.U - M.values).cwiseAbs().maxCoeff();
    out.general = 19.0 * std::pow(d, 3.0 / 8.0) * std::pow(dev, 0.25);

    // sparse branch: verify s-sparsity and a real nonzero diagonal
    const double zero_tol = 1e-12;
    int max_nz = 0;
    bool diag_ok = true;
    for (int j = 0; j < d; ++j) {
        int row_nz = 0, col_nz = 0;
        for (int l = 0; l < d; ++l) {
            if (std::abs(B(j, l)) > zero_tol) ++row_nz;
            if (std::abs(B(l, j)) > zero_tol) ++col_nz;
        }
        max_nz = std::max({max_nz, row_nz, col_nz});
        if (std::abs(B(j, j)) <= zero_tol || std::abs(B(j, j).imag()) > 1e-10) diag_ok = false;
    }
    const int s_eff = s.value_or(max_nz);
    if (diag_ok && max_nz <= s_eff) {
        double min_diag = std::numeric_limits<double>::infinity();
        double max_off = 0.0;
        for (int j = 0; j < d; ++j) {
            min_diag = std::min(min_diag, std::abs(B(j, j)));
            for (int l = 0; l < d; ++l)
                if (l != j) max_off = std::max(max_off, std::abs(B(j, l)));
        }
        out.sparse =
            8.0 * std::sqrt(std::max(0.0, (1.0 - min_diag) + (s_eff - 1) * max_off));
    }
    return out;
}

NogoReport nogo_check(const GkpParams& p, Tolerance tol) {
    p.validate();
    NogoReport rep;
    // B_{0,0} = <GKP^eps, e^{i pi (d Q^2 + c_d Q)} GKP^eps>; well-defined for
    // any eps < 1/2, independent of basis orthogonality
    rep.b00_abs = std::abs(phase_diagonal_scalar(p, 0, tol));
    rep.lower_bound = 2.0 * (1.0 - rep.b00_abs);
    const double ratio4 = std::pow(p.delta / p.eps, 4);
    rep.cap_const = 49.0 / 50.0 + 16.0 * ratio4;
    const double dd = p.d * p.delta / p.kappa;
    rep.cap_gaussian = 1.0 / std::sqrt(1.0 + 2.0 * dd * dd) + p.kappa + 16.0 * ratio4;
    rep.regime_ok = (p.kappa < 1.0 / 250.0) && (2.0 * kPi * p.d * p.delta / p.kappa >= 1.0);
    rep.error_estimate = 1e-11;
    rep.cap_const_ok = rep.b00_abs <= rep.cap_const + rep.error_estimate;
    rep.cap_gaussian_ok = rep.b00_abs <= rep.cap_gaussian + rep.error_estimate;
    return rep;
}

AsymmetricNogo asymmetric_nogo(const GkpParams& p, Tolerance tol) {
    AsymmetricNogo out;
    out.code = nogo_check(p, tol);
    out.dual = nogo_check(fourier_dual_params(p), tol);
    out.max_lower = std::max(out.code.lower_bound, out.dual.lower_bound);
    out.regime_ok =
        (p.delta <= 1.0 / (80.0 * p.d)) && (p.kappa < std::pow(static_cast<double>(p.d), -6.0));
    return out;
}

TransferInterval continuity_transfer(const GateErrorCertificate& cert, double delta, int d) {
    if (delta < 0.0) throw std::domain_error("continuity_transfer: delta must be >= 0");
    const double shift = std::sqrt(d * delta);
    TransferInterval t;
    t.lower = std::max(0.0, 0.4 * cert.lower - 4.0 * shift);
    t.upper = 2.5 * cert.upper + 10.0 * shift;
    return t;
}

std::vector<Eigen::VectorXcd> lowdin_orthogonalize(const std::vector<Eigen::VectorXcd>& vectors) {
    if (vectors.empty()) return {};
    const int d = static_cast<int>(vectors.size());
    const long n = vectors[0].size();
    Eigen::MatrixXcd A(n, d);
    for (int k = 0; k < d; ++k) {
        if (vectors[k].size() != n)
            throw std::domain_error("lowdin_orthogonalize: inconsistent dimensions");
        A.col(k) = vectors[k];
    }
    const Eigen::MatrixXcd G = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const auto& ev = es.eigenvalues();
    if (ev(0) < 1e-12 * std::max(ev(d - 1), 1.0))
        throw std::domain_error("lowdin_orthogonalize: Gram matrix numerically singular");
    Eigen::VectorXd inv_sqrt(d);
    for (int i = 0; i < d; ++i) inv_sqrt(i) = 1.0 / std::sqrt(ev(i));
    const Eigen::MatrixXcd Ginv =
        es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::MatrixXcd Xi = A * Ginv;
    std::vector<Eigen::VectorXcd> out(d);
    for (int k = 0; k < d; ++k) out[k] = Xi.col(k);
    return out;
}

std::string to_json(const GateErrorCertificate& cert, const std::string& gate,
                    const GkpParams& params) {
    nlohmann::json j;
    j["gate"] = gate;
    j["params"] = {{"kappa", params.kappa}, {"delta", params.delta}, {"eps", params.eps},
                   {"d", params.d}};
    j["c"] = cert.crawford_c;
    j["lower"] = cert.lower;
    j["upper"] = cert.upper;
    j["shortcut_upper"] = cert.shortcut_upper;
    j["regime_ok"] = cert.regime_ok;
    j["provenance"] = cert.provenance;
    return j.dump(2);
}

}  // namespace gkp
