#include <cmath>
#include <numbers>

#include <doctest.h>

#include "gkp/gkp_states.hpp"
#include "gkp/grid_oracle.hpp"

using namespace gkp;

namespace {
constexpr double kPi = std::numbers::pi;

double real_overlap(const PeakSumState& a, const PeakSumState& b) {
    const cplx v = overlap(a, b, {1e-12, 0.0});
    CHECK(std::abs(v.imag()) < 1e-12);
    return v.real();
}
}  // namespace

TEST_CASE("parameter validation and factories") {
    CHECK_THROWS_AS(GkpParams({-0.1, 0.01, 0.25, 2}).validate(), std::domain_error);
    CHECK_THROWS_AS(GkpParams({0.1, -0.01, 0.25, 2}).validate(), std::domain_error);
    CHECK_THROWS_AS(GkpParams({0.1, 0.01, 0.7, 2}).validate(), std::domain_error);
    CHECK_THROWS_AS(GkpParams({0.1, 0.01, 0.25, 1}).validate(), std::domain_error);
    CHECK_THROWS_AS(GkpParams({0.1, 0.01, 0.3, 2}).validate(true), std::domain_error);

    const GkpParams s = GkpParams::symmetric(0.1, 3);
    CHECK(s.delta == doctest::Approx(0.1 / (6.0 * kPi)));
    CHECK(s.eps == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("fourier dual parameter map") {
    const GkpParams p{0.12, 0.003, 0.25, 2};
    const GkpParams q = fourier_dual_params(p);
    CHECK(q.kappa == doctest::Approx(2.0 * kPi * 2 * 0.003));
    CHECK(q.delta == doctest::Approx(0.12 / (2.0 * kPi * 2)));
    // involution
    const GkpParams r = fourier_dual_params(q);
    CHECK(r.kappa == doctest::Approx(p.kappa));
    CHECK(r.delta == doctest::Approx(p.delta));
    // symmetric squeezing is the fixed point
    const GkpParams s = GkpParams::symmetric(0.07, 4);
    const GkpParams sd = fourier_dual_params(s);
    CHECK(sd.kappa == doctest::Approx(s.kappa));
    CHECK(sd.delta == doctest::Approx(s.delta));
}

TEST_CASE("normalization constants: valid sandwich and duality") {
    // The peak-overlap corrections are exponentially small, so every
    // constant sits just below 1; the linear lower bounds hold with slack.
    for (double kappa : {0.05, 0.1, 0.2, 0.4}) {
        const double delta = 0.04, eps = 0.25;
        const GkpParams p{kappa, delta, eps, 2};
        const double ck = normalization_constant(kPeakwiseTruncated, p, {1e-12, 0.0});
        CHECK(ck >= 1.0 - kappa / 3.0);
        CHECK(ck <= 1.0 + 1e-12);
        const double ckd = normalization_constant(kPeakwiseUntruncated, p, {1e-12, 0.0});
        CHECK(ckd >= 1.0 - kappa / 3.0 - 3.0 * delta);
        CHECK(ckd <= ck + 1e-12);
        const double dkd = normalization_constant(kPointwiseUntruncated, p, {1e-12, 0.0});
        CHECK(dkd >= 1.0 - 3.0 * delta - kappa / 2.0);
        CHECK(dkd <= 1.0 + 1e-9);
        const double ekd = normalization_constant(kPointwiseTruncated, p, {1e-12, 0.0});
        CHECK(ekd >= 1.0 - kappa / 2.0);
        CHECK(ekd <= 1.0 + 1e-6);
    }
    // kappa -> 0 limit
    CHECK(normalization_constant(kPeakwiseTruncated, {1e-3, 0.01, 0.25, 2}, {1e-12, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // duality D_{2 pi delta, kappa/(2 pi)} = C_{kappa, delta}
    for (auto [kappa, delta] : {std::pair{0.3, 0.1}, std::pair{0.2, 0.05}}) {
        const double ckd =
            normalization_constant(kPeakwiseUntruncated, {kappa, delta, 0.25, 2}, {1e-12, 0.0});
        const double dual = normalization_constant(
            kPointwiseUntruncated, {2.0 * kPi * delta, kappa / (2.0 * kPi), 0.25, 2},
            {1e-12, 0.0});
        CHECK(dual == doctest::Approx(ckd).epsilon(1e-10));
    }
}

TEST_CASE("make_state: unit norm, support, certified window") {
    for (const StateFamily f :
         {kPeakwiseTruncated, kPeakwiseUntruncated, kPointwiseTruncated, kPointwiseUntruncated}) {
        const PeakSumState st = make_state(f, {0.15, 0.03, 0.2, 2});
        CHECK(real_overlap(st, st) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // truncated families vanish between the truncation intervals
    const PeakSumState tr = make_state(kPeakwiseTruncated, {0.2, 0.02, 0.2, 2});
    CHECK(tr.eval_base(0.5) == 0.0);
    CHECK(tr.eval_base(1.3) == 0.0);
    CHECK(tr.eval_base(1.1) > 0.0);

    // window radius is certified by the discrete-Gaussian tail bound
    const double kappa = 0.25, tail = 1e-12;
    const PeakSumState st = make_state(kPeakwiseTruncated, {kappa, 0.01, 0.25, 2}, tail);
    const double s = std::sqrt(kPi) / kappa;
    const double bound =
        2.0 * std::exp(-(3.0 * kPi / 4.0) * (st.window / s) * (st.window / s));
    CHECK(bound < tail);

    CHECK_THROWS_AS(make_state(kPeakwiseTruncated, {1e-9, 0.01, 0.25, 2}), ResourceError);
}

TEST_CASE("code basis states: frame and orthonormality") {
    const GkpParams p = GkpParams::symmetric(0.2, 3);
    CHECK_THROWS_AS(code_basis_state(p, kPeakwiseTruncated, 3), std::domain_error);
    CHECK_THROWS_AS(code_basis_state(p, kPeakwiseTruncated, -1), std::domain_error);

    const PeakSumState b0 = code_basis_state(p, kPeakwiseTruncated, 0);
    CHECK(b0.frame_scale() == doctest::Approx(std::sqrt(2.0 * kPi * 3)));
    CHECK(b0.frame_shift() == doctest::Approx(0.0));

    for (int j = 0; j < 3; ++j) {
        const PeakSumState bj = code_basis_state(p, kPeakwiseTruncated, j);
        CHECK(bj.frame_shift() == doctest::Approx(j * std::sqrt(2.0 * kPi / 3)));
        for (int k = 0; k < 3; ++k) {
            const PeakSumState bk = code_basis_state(p, kPeakwiseTruncated, k);
            const double expected = (j == k) ? 1.0 : 0.0;
            CHECK(real_overlap(bj, bk) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("basis state renders match the shifted-squeezed base render") {
    const GkpParams p = GkpParams::symmetric(0.25, 2);
    const PeakSumState base = make_state(kPeakwiseTruncated, p);
    const PeakSumState b1 = code_basis_state(p, kPeakwiseTruncated, 1);
    const double L = 64.0;
    const int N = 1 << 14;
    const GridState g1 = render(b1, L, N);
    // manual shifted/squeezed evaluation of the base state
    const double alpha = std::sqrt(4.0 * kPi);
    const double beta = std::sqrt(kPi);
    double l2 = 0.0;
    for (int k = 0; k < N; ++k) {
        const double x = g1.x(k);
        const double manual = base.eval_base((x - beta) / alpha) / std::sqrt(alpha);
        l2 += std::norm(g1.psi[k] - manual);
    }
    CHECK(std::sqrt(l2 * g1.h()) < 1e-10);
}

TEST_CASE("analytic overlaps match the grid oracle") {
    const GkpParams p{0.2, 0.03, 0.25, 2};
    const PeakSumState a = make_state(kPeakwiseUntruncated, p);
    const PeakSumState b = make_state(kPeakwiseTruncated, p);
    const double got = real_overlap(a, b);
    const GridState ga = render(a, 40.0, 1 << 14);
    const GridState gb = render(b, 40.0, 1 << 14);
    CHECK(got == doctest::Approx(grid_inner(ga, gb).real()).epsilon(1e-8));
}

TEST_CASE("closeness lemmas hold on a parameter grid") {
    // peakwise truncated vs untruncated, peakwise hypotheses kappa<1/4
    for (double kappa : {0.05, 0.2})
        for (double delta : {0.01, 0.05})
            for (double eps : {0.2, 0.4}) {
                const GkpParams p{kappa, delta, eps, 2};
                const double v = real_overlap(make_state(kPeakwiseUntruncated, p),
                                              make_state(kPeakwiseTruncated, p));
                CHECK(v >= 1.0 - 7.0 * delta - 2.0 * std::pow(delta / eps, 4) - 1e-10);
                CHECK(v <= 1.0 + 1e-10);
            }
    // pointwise truncated vs untruncated, eps >= delta
    for (double kappa : {0.1, 0.4})
        for (double delta : {0.02, 0.1}) {
            const double eps = 0.3;
            const GkpParams p{kappa, delta, eps, 2};
            const double v = real_overlap(make_state(kPointwiseUntruncated, p),
                                          make_state(kPointwiseTruncated, p));
            CHECK(v >= 1.0 - kappa - 3.0 * delta - 2.0 * std::pow(delta / eps, 4) - 1e-10);
        }
    // peakwise vs pointwise untruncated
    for (double kappa : {0.1, 0.3})
        for (double delta : {0.02, 0.1}) {
            const GkpParams p{kappa, delta, 0.25, 2};
            const double v = real_overlap(make_state(kPeakwiseUntruncated, p),
                                          make_state(kPointwiseUntruncated, p));
            CHECK(v >= 1.0 - 2.0 * kappa - 3.0 * delta - 1e-10);
        }
    // pointwise untruncated vs peakwise truncated
    {
        const GkpParams p{0.2, 0.04, 0.25, 2};
        const double v = real_overlap(make_state(kPointwiseUntruncated, p),
                                      make_state(kPeakwiseTruncated, p));
        CHECK(v >= 1.0 - 2.0 * 0.2 - 7.0 * std::sqrt(0.04) - 2.0 * std::pow(0.04 / 0.25, 2));
        CHECK(v == doctest::Approx(0.999992000096).epsilon(1e-5));  // frozen grid quadrature
    }
    // different truncation radii on the pointwise family
    {
        const int d = 2;
        const GkpParams pe{0.1, 0.02, 0.25, 2};
        const GkpParams ped{0.1, 0.02, 0.25 / d, 2};
        const double v = real_overlap(make_state(kPointwiseTruncated, ped),
                                      make_state(kPointwiseTruncated, pe));
        CHECK(v >= 1.0 - 3.0 * std::sqrt(0.1) - 5.0 * std::sqrt(0.02) -
                       4.0 * std::pow(0.02 * d / 0.25, 2));
    }
}

TEST_CASE("frozen overlap anchors") {
    {
        const GkpParams p{0.2, 0.05, 0.25, 2};
        const double v = real_overlap(make_state(kPeakwiseUntruncated, p),
                                      make_state(kPointwiseUntruncated, p));
        CHECK(v == doctest::Approx(0.999987500234).epsilon(2e-6));
    }
    {
        const GkpParams p{0.05, 0.05, 0.01, 2};
        const double v = real_overlap(make_state(kPeakwiseUntruncated, p),
                                      make_state(kPeakwiseTruncated, p));
        // the truncated and untruncated states are far apart when delta/eps
        // is large
        CHECK(v * v <= 15.0 / 16.0 + std::pow(0.01 / 0.05, 2) / (4.0 * kPi) +
                           4.0 * std::pow(0.05, 4));
        CHECK(v == doctest::Approx(0.47191375187684291).epsilon(1e-9));
    }
}

TEST_CASE("fractional relative shifts: partially overlapping supports") {
    // truncated supports [z +- 0.45] against a copy shifted by 0.3 overlap
    // on part of each peak; compare the analytic pair engine with the grid
    const GkpParams p{0.25, 0.08, 0.45, 2};
    const PeakSumState a = make_state(kPeakwiseTruncated, p);
    PeakSumState b = make_state(kPeakwiseTruncated, p);
    b.post_ops.push_back({1.0, 0.3});
    const double got = real_overlap(a, b);
    const GridState ga = render(a, 40.0, 1 << 15);
    const GridState gb = render(b, 40.0, 1 << 15);
    const double ref = grid_inner(ga, gb).real();
    CHECK(got == doctest::Approx(ref).epsilon(5e-6));
    CHECK(got > 0.01);  // genuinely nonzero partial overlap
}

TEST_CASE("overlaps are invariant under shared post operations") {
    const GkpParams p{0.2, 0.04, 0.25, 2};
    PeakSumState a = make_state(kPeakwiseUntruncated, p);
    PeakSumState b = make_state(kPeakwiseTruncated, p);
    const double plain = real_overlap(a, b);
    a.post_ops.push_back({2.5, 0.7});
    b.post_ops.push_back({2.5, 0.7});
    CHECK(real_overlap(a, b) == doctest::Approx(plain).epsilon(1e-12));

    PeakSumState c = make_state(kPeakwiseTruncated, p);
    c.post_ops.push_back({1.7, 0.0});
    CHECK_THROWS_AS(overlap(a, c, Tolerance{}), UnsupportedCase);
}
