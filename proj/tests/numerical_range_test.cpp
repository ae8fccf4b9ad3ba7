#include <numbers>
#include <random>

#include <doctest.h>

#include "gkp/numerical_range.hpp"
#include "test_helpers.hpp"

using namespace gkp;
using test::hull_distance;
using test::random_matrix;
using test::random_unitary;

TEST_CASE("crawford closed-form examples") {
    ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
    CHECK(crawford(I2) == doctest::Approx(1.0).epsilon(1e-10));

    ComplexMatrix D(2, 2);
    D << 1.0, 0.0, 0.0, -1.0;
    CHECK(crawford(D) == doctest::Approx(0.0));

    ComplexMatrix Di(2, 2);
    Di << cplx(1.0, 0.0), 0.0, 0.0, cplx(0.0, 1.0);
    CHECK(crawford(Di) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));

    ComplexMatrix Nil(2, 2);
    Nil << 0.0, 1.0, 0.0, 0.0;
    CHECK(crawford(Nil) == doctest::Approx(0.0));
    CHECK(crawford_bruteforce(Nil, 16, 3) < 1e-6);
    CHECK(crawford_bruteforce(I2, 8, 3) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("crawford agrees with the multi-start oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix B = random_matrix(d, rng);
        const double c_dual = crawford(B, {1e-9, 0.0});
        const double c_brute = crawford_bruteforce(B, 40, 1000 + trial);
        CHECK(std::abs(c_dual - c_brute) < 1e-6);
    }
}

TEST_CASE("crawford matches the hull distance for normal matrices") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 4);
        Eigen::VectorXcd eigs(d);
        for (int i = 0; i < d; ++i) eigs(i) = cplx(g(rng), g(rng));
        const ComplexMatrix U = random_unitary(d, rng);
        const ComplexMatrix B = U * eigs.asDiagonal() * U.adjoint();
        CHECK(std::abs(crawford(B) - hull_distance(eigs)) < 1e-6);
    }
}

TEST_CASE("alpha bound") {
    CHECK(alpha_bound(ComplexMatrix::Identity(3, 3)).value() == doctest::Approx(1.0));
    ComplexMatrix A(2, 2);
    A << 1.0, 0.2, 0.0, 1.0;
    CHECK(alpha_bound(A).value() == doctest::Approx(0.9));
    A(0, 0) = cplx(-0.1, 0.0);
    CHECK(!alpha_bound(A).has_value());
}

TEST_CASE("phase corrected bound") {
    std::mt19937_64 rng(5);
    // real positive diagonal: reduces to the alpha bound
    for (int t = 0; t < 10; ++t) {
        const int d = 2 + static_cast<int>(rng() % 4);
        ComplexMatrix B = 0.05 * random_matrix(d, rng);
        for (int j = 0; j < d; ++j) B(j, j) = 0.8 + 0.1 * j;
        CHECK(phase_corrected_bound(B) == doctest::Approx(alpha_bound(B).value()).epsilon(1e-12));
    }
    // scalar with a pure phase: bound = 1 - |e^{i phi} - 1|
    ComplexMatrix S(1, 1);
    const double phi = 0.37;
    S(0, 0) = std::exp(cplx(0.0, phi));
    CHECK(phase_corrected_bound(S) ==
          doctest::Approx(1.0 - std::abs(std::exp(cplx(0.0, phi)) - 1.0)).epsilon(1e-12));

    ComplexMatrix Z = ComplexMatrix::Zero(2, 2);
    CHECK_THROWS_AS(phase_corrected_bound(Z), std::domain_error);
}

TEST_CASE("sparse and subnormalized bounds") {
    ComplexMatrix D = ComplexMatrix::Zero(3, 3);
    D.diagonal() << 0.5, 0.7, 0.9;
    CHECK(sparse_bound(D, 1) == doctest::Approx(0.5));
    CHECK(sparse_bound(ComplexMatrix::Identity(4, 4), 1) == doctest::Approx(1.0));
    ComplexMatrix full = ComplexMatrix::Constant(3, 3, cplx(0.1, 0.0));
    CHECK_THROWS_AS(sparse_bound(full, 1), std::domain_error);

    CHECK(subnormalized_bound(ComplexMatrix::Identity(3, 3)) == doctest::Approx(1.0));
    const double delta = 0.01;
    ComplexMatrix shrunk = (1.0 - delta) * ComplexMatrix::Identity(4, 4);
    CHECK(subnormalized_bound(shrunk) == doctest::Approx(1.0 - 7.0 * std::sqrt(4 * delta)));
    ComplexMatrix big = 1.5 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(subnormalized_bound(big), std::domain_error);
}

TEST_CASE("every applicable analytic bound stays below crawford") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 5);
        ComplexMatrix B;
        switch (trial % 3) {
            case 0:  // near-identity with noise
                B = ComplexMatrix::Identity(d, d) + 0.1 * random_matrix(d, rng);
                break;
            case 1:  // subnormalized: damped unitary near the identity
                B = 0.95 * (ComplexMatrix::Identity(d, d) +
                            0.05 * random_unitary(d, rng))
                        .eval();
                B *= 0.95 / operator_norm(B);
                break;
            default:  // sparse diagonal-ish
                B = ComplexMatrix::Zero(d, d);
                for (int j = 0; j < d; ++j) B(j, j) = 0.7 + 0.05 * j;
                B(0, d - 1) = 0.05;
                B(d - 1, 0) = cplx(0.0, 0.05);
                break;
        }
        const double c = crawford(B, {1e-10, 0.0});
        if (auto a = alpha_bound(B)) {
            CHECK(*a <= c + 1e-9);
            ++checked;
        }
        bool diag_ok = true;
        for (int j = 0; j < d; ++j)
            if (B(j, j) == cplx(0.0, 0.0)) diag_ok = false;
        if (diag_ok) CHECK(phase_corrected_bound(B) <= c + 1e-9);
        try {
            const double sb = sparse_bound(B, d);
            CHECK(sb <= c + 1e-9);
        } catch (const std::domain_error&) {  // hypotheses not met for this sample
        }
        try {
            const double nb = subnormalized_bound(B);
            CHECK(nb <= c + 1e-9);
        } catch (const std::domain_error&) {
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("crawford is 1-Lipschitz in the operator norm") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const int d = 2 + static_cast<int>(rng() % 4);
        const ComplexMatrix A = random_matrix(d, rng);
        const ComplexMatrix B = A + 0.05 * random_matrix(d, rng);
        CHECK(std::abs(crawford(A) - crawford(B)) <= operator_norm(A - B) + 2e-9);
    }
}

TEST_CASE("perturbation bound c(SAT)") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 25; ++t) {
        const int d = 2 + static_cast<int>(rng() % 3);
        const ComplexMatrix A = random_matrix(d, rng);
        const ComplexMatrix S = ComplexMatrix::Identity(d, d) + 0.05 * random_matrix(d, rng);
        const ComplexMatrix T = ComplexMatrix::Identity(d, d) + 0.05 * random_matrix(d, rng);
        const double lhs = crawford(S * A * T);
        const double na = operator_norm(A);
        const double rhs = crawford(A) -
                           na * operator_norm(S - ComplexMatrix::Identity(d, d)) *
                               operator_norm(T) -
                           operator_norm(T - ComplexMatrix::Identity(d, d)) * na;
        CHECK(lhs >= rhs - 1e-9);
    }
}

TEST_CASE("inner numerical radius is invariant under implementing the adjoint") {
    // finite-dimensional stand-ins: W unitary on C^N with embedded d-dim
    // code bases; B = U^dag Enc_out^dag W Enc_in, Btilde from (W^dag, U^dag)
    std::mt19937_64 rng(53);
    for (int t = 0; t < 15; ++t) {
        const int d = 2 + static_cast<int>(rng() % 3);
        const int N = d + 4 + static_cast<int>(rng() % 4);
        const ComplexMatrix W = random_unitary(N, rng);
        const ComplexMatrix U = random_unitary(d, rng);
        const ComplexMatrix enc_in = random_unitary(N, rng).leftCols(d);
        const ComplexMatrix enc_out = random_unitary(N, rng).leftCols(d);
        const ComplexMatrix C = enc_out.adjoint() * W * enc_in;
        const ComplexMatrix B = U.adjoint() * C;
        const ComplexMatrix Btilde = U * C.adjoint();
        CHECK(std::abs(crawford(B) - crawford(Btilde)) < 1e-8);
    }
}
