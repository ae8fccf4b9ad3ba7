#include <cmath>
#include <numbers>

#include <doctest.h>

#include "gkp/matrix_elements.hpp"

using namespace gkp;

namespace {
constexpr double kPi = std::numbers::pi;

void check_row_subnormalization(const Eigen::MatrixXcd& M, double slack) {
    for (int j = 0; j < M.rows(); ++j) {
        CHECK(M.row(j).squaredNorm() <= 1.0 + slack);
        CHECK(M.col(j).squaredNorm() <= 1.0 + slack);
    }
}
}  // namespace

TEST_CASE("pauli X matrix: structure and values") {
    const GkpParams p = GkpParams::symmetric(0.1, 2);
    const MatrixElements M = mat_pauli_x(p);
    CHECK(M.method == "analytic");
    // off-band entries vanish exactly
    CHECK(std::abs(M.values(0, 0)) == 0.0);
    CHECK(std::abs(M.values(1, 1)) == 0.0);
    // in-band entry is exactly 1, wrap entry is the lattice-shift overlap
    CHECK(M.values(1, 0).real() == 1.0);
    const double wrap = M.values(0, 1).real();
    CHECK(wrap == doctest::Approx(0.99750312239746012).epsilon(1e-10));  // frozen lattice sum
    CHECK(wrap >= 1.0 - 0.1 * 0.1);
    CHECK(wrap <= 1.0);
    check_row_subnormalization(M.values, 1e-12);

    for (int d : {3, 4}) {
        const MatrixElements Md = mat_pauli_x(GkpParams::symmetric(0.05, d));
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                if (j == (k + 1) % d) {
                    CHECK(Md.values(j, k).real() >= 1.0 - 0.05 * 0.05);
                    CHECK(Md.values(j, k).real() <= 1.0 + 1e-12);
                } else {
                    CHECK(std::abs(Md.values(j, k)) == 0.0);
                }
            }
    }
}

TEST_CASE("pauli X powers compose lattice shifts") {
    const GkpParams p = GkpParams::symmetric(0.05, 2);
    const MatrixElements M3 = mat_pauli_x(p, {}, 3);
    // d=2, power 3: entries are the t=1 and t=2 lattice-shift overlaps
    CHECK(M3.values(1, 0).real() == doctest::Approx(0.99937519527181625).epsilon(1e-10));
    CHECK(M3.values(0, 1).real() == doctest::Approx(0.99750312239746012).epsilon(1e-10));
    CHECK(std::abs(M3.values(0, 0)) == 0.0);
    const MatrixElements M0 = mat_pauli_x(p, {}, 0);
    CHECK(M0.values.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
}

TEST_CASE("pauli Z matrix: diagonal scalar and symmetry") {
    const GkpParams p = GkpParams::symmetric(0.05, 2);
    const MatrixElements M = mat_pauli_z(p, 1);
    // frozen quadrature value of the truncated-Gaussian cosine integral
    const double scalar = 0.99984376220639549;
    CHECK(M.values(0, 0).real() == doctest::Approx(scalar).epsilon(1e-10));
    CHECK((M.values(1, 1) * std::exp(cplx(0.0, -2.0 * kPi / 2))).real() ==
          doctest::Approx(scalar).epsilon(1e-10));
    CHECK(std::abs(M.values(0, 1)) == 0.0);

    // rotated diagonals are real and obey the displaced-state lower bound
    for (int d : {2, 3})
        for (int m : {1, 2}) {
            const GkpParams q = GkpParams::symmetric(0.1, d);
            const MatrixElements Mm = mat_pauli_z(q, m);
            for (int j = 0; j < d; ++j) {
                const cplx rot =
                    Mm.values(j, j) * std::exp(cplx(0.0, -2.0 * kPi * m * j / d));
                CHECK(std::abs(rot.imag()) < 1e-10);
                CHECK(rot.real() >= 1.0 - 10.0 * std::pow(d * q.delta, 2) / (d * d) * d * d -
                                        16.0 * std::pow(q.delta / q.eps, 4) - 1e-10);
                CHECK(rot.real() <= 1.0 + 1e-10);
            }
            // M(-m) is the conjugate transpose of M(m)
            const MatrixElements Mneg = mat_pauli_z(q, -m);
            CHECK((Mneg.values - Mm.values.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        }

    CHECK(mat_pauli_z(p, 0).values.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
    CHECK_THROWS_AS(mat_pauli_z(p, 5), std::domain_error);
    // frozen value at an asymmetric point
    const MatrixElements Ma = mat_pauli_z(GkpParams::symmetric(0.2, 3), 2);
    CHECK((Ma.values(0, 0)).real() == doctest::Approx(0.99556541748309281).epsilon(1e-9));
}

TEST_CASE("phase gate matrix: diagonal scalars") {
    const GkpParams p = GkpParams::symmetric(0.05, 3);
    const MatrixElements M = mat_phase(p);
    CHECK(std::abs(M.values(0, 1)) == 0.0);
    // frozen closed-form lattice sums (scipy reference)
    const cplx s0(8.944147675424e-01, 2.372442952453e-05);
    const cplx s1(8.943153936450e-01, 2.371652196714e-05);
    const cplx s2(8.941166789720e-01, 2.370071124495e-05);
    const int cd = 1;
    auto diag_scalar = [&](int j) {
        return M.values(j, j) * std::exp(cplx(0.0, -kPi * (j * j + cd * j) / 3.0));
    };
    CHECK(std::abs(diag_scalar(0) - s0) < 1e-9);
    CHECK(std::abs(diag_scalar(1) - s1) < 1e-9);
    CHECK(std::abs(diag_scalar(2) - s2) < 1e-9);

    // modulus cap from the Gaussian phase-expectation bound
    const double dd = p.d * p.delta / p.kappa;
    const double cap = 1.0 / std::sqrt(1.0 + 2.0 * dd * dd) + p.kappa +
                       16.0 * std::pow(p.delta / p.eps, 4);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(M.values(j, j)) <= cap + 1e-9);
    check_row_subnormalization(M.values, 1e-9);
}

TEST_CASE("analytic matrices agree with the grid oracle") {
    for (int d : {2, 3}) {
        const GkpParams p = GkpParams::symmetric(0.1, d);
        {
            const MatrixElements a = mat_pauli_x(p);
            const MatrixElements g = mat_grid({GateSpec::Kind::PauliX, 1}, p, {1e-9, 0.0});
            CHECK((a.values - g.values).cwiseAbs().maxCoeff() <
                  std::max(1e-8, g.error_estimate));
        }
        {
            const MatrixElements a = mat_pauli_z(p, 1);
            const MatrixElements g = mat_grid({GateSpec::Kind::PauliZPower, 1}, p, {1e-9, 0.0});
            CHECK((a.values - g.values).cwiseAbs().maxCoeff() <
                  std::max(1e-8, g.error_estimate));
        }
        {
            const MatrixElements a = mat_pauli_z(p, 2);
            const MatrixElements g = mat_grid({GateSpec::Kind::PauliZPower, 2}, p, {1e-9, 0.0});
            CHECK((a.values - g.values).cwiseAbs().maxCoeff() <
                  std::max(1e-8, g.error_estimate));
        }
    }
    {
        const GkpParams p = GkpParams::symmetric(0.1, 2);
        const MatrixElements a = mat_phase(p);
        const MatrixElements g = mat_grid({GateSpec::Kind::Phase, 1}, p, {1e-9, 0.0});
        CHECK((a.values - g.values).cwiseAbs().maxCoeff() < std::max(1e-8, g.error_estimate));
    }
}

TEST_CASE("fourier matrix: comb and grid paths agree with the dense-kernel reference") {
    // frozen numpy dense-kernel quadrature, d=2 kappa=0.4 symmetric
    Eigen::MatrixXcd ref2(2, 2);
    ref2 << cplx(7.070924526429e-01, 0.0), cplx(7.000570488953e-01, 0.0),
        cplx(7.000570488953e-01, 0.0), cplx(-6.930916401442e-01, 8.824359253463e-05);
    const GkpParams p2 = GkpParams::symmetric(0.4, 2);
    const MatrixElements grid2 = mat_fourier(p2, {1e-9, 0.0}, FourierMethod::Grid);
    CHECK((grid2.values - ref2).cwiseAbs().maxCoeff() < 2e-6);
    const MatrixElements comb2 = mat_fourier(p2, {1e-9, 0.0}, FourierMethod::Comb);
    CHECK((comb2.values - ref2).cwiseAbs().maxCoeff() < 2e-6);
    CHECK((comb2.values - grid2.values).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(grid2.out_params.kappa == doctest::Approx(p2.kappa));  // symmetric fixed point
    check_row_subnormalization(grid2.values, 1e-8);

    // d=3 kappa=0.45: phases of omega^{jk} discriminate the kernel sign
    Eigen::MatrixXcd ref3(3, 3);
    ref3 << cplx(5.773419402868e-01, 0.0), cplx(5.741036016734e-01, 0.0),
        cplx(5.644971628530e-01, 0.0), cplx(5.741036016734e-01, 0.0),
        cplx(-2.854118377283e-01, 4.944167980282e-01), cplx(-2.807241843116e-01, -4.860928710834e-01),
        cplx(5.644971628530e-01, 0.0), cplx(-2.807241843116e-01, -4.860928710834e-01),
        cplx(-2.758535354102e-01, 4.780591562734e-01);
    const GkpParams p3 = GkpParams::symmetric(0.45, 3);
    const MatrixElements grid3 = mat_fourier(p3, {1e-9, 0.0}, FourierMethod::Grid);
    CHECK((grid3.values - ref3).cwiseAbs().maxCoeff() < 2e-6);
    const MatrixElements comb3 = mat_fourier(p3, {1e-9, 0.0}, FourierMethod::Comb);
    CHECK((comb3.values - ref3).cwiseAbs().maxCoeff() < 2e-6);
}

TEST_CASE("fourier matrix at asymmetric squeezing: comb and grid paths agree") {
    // delta strictly below kappa/(2 pi d): in and out codes differ
    GkpParams p = GkpParams::symmetric(0.3, 2);
    p.delta *= 0.5;
    const MatrixElements grid = mat_fourier(p, {1e-9, 0.0}, FourierMethod::Grid);
    const MatrixElements comb = mat_fourier(p, {1e-9, 0.0}, FourierMethod::Comb);
    CHECK(grid.out_params.kappa == doctest::Approx(2.0 * kPi * 2 * p.delta));
    CHECK(grid.out_params.delta == doctest::Approx(0.3 / (4.0 * kPi)));
    CHECK((grid.values - comb.values).cwiseAbs().maxCoeff() < 1e-7);
    check_row_subnormalization(grid.values, 1e-8);
}

TEST_CASE("fourier matrix: method selection and hypotheses") {
    const GkpParams p = GkpParams::symmetric(0.2, 2);
    // tiny budget forces the comb path
    const MatrixElements comb = mat_fourier(p, {1e-9, 0.0}, FourierMethod::Auto, 1 << 10);
    CHECK(comb.method == "comb");
    GkpParams bad = p;
    bad.delta = 2.0 * p.delta;  // violates delta <= kappa/(2 pi d)
    CHECK_THROWS_AS(mat_fourier(bad), std::domain_error);
    CHECK(comb.gate_phase == std::exp(cplx(0.0, kPi / 4.0)));
}

TEST_CASE("fourier phase covariance on the grid") {
    // <j_out|F+|k_in> = omega^{jk} <0_out| e^{+ik beta Q} F+ e^{+ij beta Q} |0_in>
    const GkpParams p = GkpParams::symmetric(0.25, 3);
    const double beta = std::sqrt(2.0 * kPi / 3.0);
    const double L = 135.0;
    const int N = 1 << 15;
    const MatrixElements M = mat_fourier(p, {1e-8, 0.0}, FourierMethod::Grid);
    const GkpParams out = fourier_dual_params(p);
    for (int j : {1, 2})
        for (int k : {0, 2}) {
            GridState in0 = render(code_basis_state(p, kPeakwiseTruncated, 0, 1e-17), L, N);
            in0 = apply_qpoly_phase(in0, 0.0, j * beta);
            GridState t = apply_fourier_inverse(in0);
            GridState out0 = render(code_basis_state(out, kPeakwiseTruncated, 0, 1e-17), t.L, N);
            // bra side: <0| e^{+ik beta Q} corresponds to phase -k beta on the vector
            out0 = apply_qpoly_phase(out0, 0.0, -k * beta);
            const cplx rhs =
                std::exp(cplx(0.0, 2.0 * kPi * j * k / 3.0)) * grid_inner(out0, t);
            CHECK(std::abs(M.values(j, k) - rhs) < 1e-6);
        }
}

TEST_CASE("matrix elements serialize to json") {
    const MatrixElements M = mat_pauli_x(GkpParams::symmetric(0.1, 2));
    const std::string j = to_json(M);
    CHECK(j.find("\"gate\": \"X\"") != std::string::npos);
    CHECK(j.find("\"method\": \"analytic\"") != std::string::npos);
    CHECK(j.find("values") != std::string::npos);
    const MatrixElements F = mat_fourier(GkpParams::symmetric(0.3, 2), {1e-8, 0.0},
                                         FourierMethod::Comb);
    const std::string jf = to_json(F);
    CHECK(jf.find("values_physical") != std::string::npos);
}
