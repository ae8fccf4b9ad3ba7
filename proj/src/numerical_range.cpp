#include "gkp/numerical_range.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda_min_rotated(const ComplexMatrix& B, double theta) {
    const cplx phase = std::exp(cplx(0.0, theta));
    const ComplexMatrix H = 0.5 * (phase * B + std::conj(phase) * B.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw AccuracyError("crawford: eigensolver failure", cplx{}, 1.0);
    return es.eigenvalues()(0);
}

}  // namespace

double operator_norm(const ComplexMatrix& B) {
    if (B.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(B);
    return svd.singularValues()(0);
}

double crawford(const ComplexMatrix& B, Tolerance tol) {
    tol.validate();
    if (B.rows() != B.cols() || B.rows() < 1)
        throw std::domain_error("crawford: needs a square matrix, d >= 1");
    const double lip = std::max(B.norm(), 1e-300);  // Frobenius >= operator norm

    constexpr int kScan = 720;
    std::vector<double> g(kScan);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScan; ++i) {
        g[i] = lambda_min_rotated(B, 2.0 * kPi * i / kScan);
        best = std::max(best, g[i]);
    }
    double gap = 2.0 * kPi / kScan;
    if (best + lip * gap <= 0.0) return 0.0;  // 0 lies in the numerical range

    // Refine every bracket that could still contain the global maximum:
    // iterated sub-scans, each shrinking the bracket 16-fold.
    const double theta_tol = std::min(1e-12, 0.1 * tol.abs_tol / lip);
    double refined_best = best;
    for (int i = 0; i < kScan; ++i) {
        if (g[i] + 2.0 * lip * gap < best) continue;
        double lo = 2.0 * kPi * (i - 1) / kScan;
        double hi = 2.0 * kPi * (i + 1) / kScan;
        while (hi - lo > theta_tol) {
            constexpr int kSub = 32;
            double sub_best = -std::numeric_limits<double>::infinity();
            int sub_arg = 0;
            for (int j = 0; j <= kSub; ++j) {
                const double th = lo + (hi - lo) * j / kSub;
                const double val = lambda_min_rotated(B, th);
                if (val > sub_best) {
                    sub_best = val;
                    sub_arg = j;
                }
            }
            refined_best = std::max(refined_best, sub_best);
            const double step = (hi - lo) / kSub;
            const double center = lo + step * sub_arg;
            lo = center - step;
            hi = center + step;
            if (sub_best + 2.0 * lip * step < refined_best) break;  // bracket lost the race
        }
    }
    return std::max(0.0, refined_best);
}

double crawford_bruteforce(const ComplexMatrix& B, int n_starts, unsigned long seed) {
    const int d = static_cast<int>(B.rows());
    if (d < 1 || B.cols() != d) throw std::domain_error("crawford_bruteforce: square matrix");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto value = [&](const Eigen::VectorXcd& psi) { return std::norm(cplx(psi.dot(B * psi))); };
    auto gradient = [&](const Eigen::VectorXcd& psi) {
        const Eigen::VectorXcd Bp = B * psi;
        const Eigen::VectorXcd Bap = B.adjoint() * psi;
        const cplx val = psi.dot(Bp);
        // gradient of |<psi,B psi>|^2 with respect to conj(psi) on the sphere
        return Eigen::VectorXcd(std::conj(val) * (Bp - val * psi) +
                                val * (Bap - std::conj(val) * psi));
    };

    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < n_starts; ++trial) {
        Eigen::VectorXcd psi(d);
        for (int i = 0; i < d; ++i) psi(i) = cplx(gauss(rng), gauss(rng));
        psi.normalize();

        // projected gradient descent with Barzilai-Borwein steps
        double f = value(psi);
        Eigen::VectorXcd grad = gradient(psi);
        double step = 0.1 / std::max(grad.norm(), 1e-12);
        for (int iter = 0; iter < 600; ++iter) {
            const double gn = grad.norm();
            if (gn < 1e-14) break;
            Eigen::VectorXcd cand = (psi - step * grad).normalized();
            double fc = value(cand);
            int backtrack = 0;
            while (fc > f && backtrack++ < 40) {
                step *= 0.4;
                cand = (psi - step * grad).normalized();
                fc = value(cand);
            }
            if (fc > f) break;
            const Eigen::VectorXcd g2 = gradient(cand);
            const Eigen::VectorXcd dpsi = cand - psi;
            const Eigen::VectorXcd dg = g2 - grad;
            const double denom = std::abs(cplx(dpsi.dot(dg)));
            step = denom > 1e-300 ? dpsi.squaredNorm() / denom : step * 1.5;
            psi = cand;
            f = fc;
            grad = g2;
        }
        // pattern-search polish with shrinking random tangent steps
        double radius = 1e-3;
        while (radius > 1e-10) {
            bool improved = false;
            for (int probe = 0; probe < 12; ++probe) {
                Eigen::VectorXcd dir(d);
                for (int i = 0; i < d; ++i) dir(i) = cplx(gauss(rng), gauss(rng));
                const Eigen::VectorXcd cand = (psi + radius * dir).normalized();
                const double fc = value(cand);
                if (fc < f) {
                    psi = cand;
                    f = fc;
                    improved = true;
                }
            }
            if (!improved) radius *= 0.35;
        }
        best = std::min(best, std::sqrt(f));
    }
    return best;
}

std::optional<double> alpha_bound(const ComplexMatrix& A) {
    const int d = static_cast<int>(A.rows());
    for (int j = 0; j < d; ++j)
        if (A(j, j).real() < 0.0) return std::nullopt;
    double alpha = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
        double off = 0.0;
        for (int l = 0; l < d; ++l)
            if (l != j) off += std::abs(A(j, l) + std::conj(A(l, j)));
        alpha = std::min(alpha, std::abs(A(j, j).real()) - 0.5 * off);
    }
    return alpha;
}

double phase_corrected_bound(const ComplexMatrix& B) {
    const int d = static_cast<int>(B.rows());
    std::vector<double> phi(d);
    for (int j = 0; j < d; ++j) {
        if (B(j, j) == cplx(0.0, 0.0))
            throw std::domain_error("phase_corrected_bound: zero diagonal entry");
        phi[j] = std::arg(B(j, j));
    }
    double base = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
        double off = 0.0;
        for (int l = 0; l < d; ++l)
            if (l != j)
                off += std::abs(std::exp(cplx(0.0, -phi[j])) * B(j, l) +
                                std::exp(cplx(0.0, phi[l])) * std::conj(B(l, j)));
        base = std::min(base, std::abs(B(j, j)) - 0.5 * off);
    }
    double max_rot = 0.0;
    for (int j = 0; j < d; ++j)
        max_rot = std::max(max_rot, std::abs(std::exp(cplx(0.0, phi[j])) - 1.0));
    return base - operator_norm(B) * max_rot;
}

double sparse_bound(const ComplexMatrix& B, int s) {
    const int d = static_cast<int>(B.rows());
    if (s < 1 || s > d) throw std::domain_error("sparse_bound: s out of range");
    const double zero_tol = 1e-14 * std::max(1.0, B.cwiseAbs().maxCoeff());
    for (int j = 0; j < d; ++j) {
        int row_nz = 0, col_nz = 0;
        for (int l = 0; l < d; ++l) {
            if (std::abs(B(j, l)) > zero_tol) ++row_nz;
            if (std::abs(B(l, j)) > zero_tol) ++col_nz;
        }
        if (row_nz > s || col_nz > s)
            throw std::domain_error("sparse_bound: matrix is not s-sparse");
    }
    double min_diag = std::numeric_limits<double>::infinity();
    double max_rot = 0.0;
    for (int j = 0; j < d; ++j) {
        const double m = std::abs(B(j, j));
        if (m == 0.0) throw std::domain_error("sparse_bound: zero diagonal entry");
        min_diag = std::min(min_diag, m);
        max_rot = std::max(max_rot, std::abs(B(j, j) / m - 1.0));
    }
    double max_off = 0.0;
    for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
            if (j != l) max_off = std::max(max_off, std::abs(B(j, l)));
    return min_diag - (s - 1) * max_off - operator_norm(B) * max_rot;
}

double subnormalized_bound(const ComplexMatrix& B) {
    const int d = static_cast<int>(B.rows());
    for (int j = 0; j < d; ++j) {
        if (B(j, j) == cplx(0.0, 0.0))
            throw std::domain_error("subnormalized_bound: zero diagonal entry");
        if (B.row(j).squaredNorm() > 1.0 + 1e-10 || B.col(j).squaredNorm() > 1.0 + 1e-10)
            throw std::domain_error("subnormalized_bound: rows/columns not subnormalized");
    }
    double worst = 0.0;
    for (int j = 0; j < d; ++j) worst = std::max(worst, std::abs(1.0 - B(j, j)));
    return 1.0 - 7.0 * std::sqrt(d * worst);
}

}  // namespace gkp
