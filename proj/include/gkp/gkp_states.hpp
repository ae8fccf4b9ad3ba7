#pragma once

#include <vector>

#include "gkp/numerics.hpp"

namespace gkp {

/// Squeezing / truncation parameters of one approximate GKP code.
/// kappa is the inverse width of the Gaussian envelope, delta the width of
/// the individual peaks, eps the half-width of each peak's support after
/// truncation, d the qudit dimension.
struct GkpParams {
    double kappa = 0.1;
    double delta = 0.01;
    double eps = 0.25;
    int d = 2;

    /// Basic positivity checks; with for_code_basis also eps <= 1/(2d),
    /// which makes truncated basis states exactly orthogonal.
    void validate(bool for_code_basis = false) const;

    /// Symmetric squeezing delta = kappa/(2 pi d) with eps = 1/(2d).
    static GkpParams symmetric(double kappa, int d);
};

/// Parameter map implemented by the Fourier-transform gate:
/// (kappa', delta') = (2 pi d delta, kappa / (2 pi d)).
GkpParams fourier_dual_params(const GkpParams& p);

enum class Envelope { Peakwise, Pointwise };

/// Selects one of the four integer-spaced state families: the envelope can
/// be attached per peak or multiplied pointwise, and the peaks can be
/// truncated to [-eps, eps] around each lattice site or not.
struct StateFamily {
    Envelope envelope = Envelope::Peakwise;
    bool truncated = true;
    bool operator==(const StateFamily&) const = default;
};

inline constexpr StateFamily kPeakwiseUntruncated{Envelope::Peakwise, false};
inline constexpr StateFamily kPeakwiseTruncated{Envelope::Peakwise, true};
inline constexpr StateFamily kPointwiseUntruncated{Envelope::Pointwise, false};
inline constexpr StateFamily kPointwiseTruncated{Envelope::Pointwise, true};

/// Squeeze-then-shift record; a list of these composes to one affine frame
/// x -> (x - shift_total)/scale_total.
struct PostOp {
    double squeeze = 1.0;  // M_alpha, alpha > 0
    double shift = 0.0;    // position translation
};

/// One Gaussian (or truncated Gaussian) peak exp(-a (x - mu)^2 + c) with
/// support [lo, hi]; lo/hi are +-infinity for untruncated peaks. The
/// centered form keeps pair integrals free of large-exponent cancellation
/// at distant lattice sites, and amplitude factors folded into c in log
/// space survive even when they underflow a bare double.
struct Peak {
    double lo, hi;
    double a, mu, c;
};

/// Symbolic wavefunction: a weighted sum of (truncated) Gaussian peaks on
/// the integer lattice, composed with an optional squeeze/shift frame.
class PeakSumState {
public:
    StateFamily family;
    GkpParams params;
    double norm_const = 1.0;  // the applicable C_kappa, C_{kappa,delta}, D, or E
    double tail_tol = 1e-12;
    long window = 0;           // peaks cover lattice sites -window..window
    std::vector<Peak> peaks;   // index i corresponds to site i - window
    std::vector<PostOp> post_ops;

    double frame_scale() const;  // total squeeze A
    double frame_shift() const;  // total shift B
    /// Wavefunction value in the base (integer-spaced) frame.
    double eval_base(double u) const;
    /// Wavefunction value including post_ops.
    double eval(double x) const;
};

/// Exact normalization constant of the given family, via finite lattice
/// sums / Gram integrals with certified tails.
double normalization_constant(StateFamily family, const GkpParams& p, Tolerance tol);

/// Builds a normalized state whose lattice window omits envelope mass
/// below tail_tol.
PeakSumState make_state(StateFamily family, const GkpParams& p, double tail_tol = 1e-12);

/// Code basis state |j>: base state with post_ops
/// [squeeze sqrt(2 pi d), shift j sqrt(2 pi / d)].
PeakSumState code_basis_state(const GkpParams& p, StateFamily family, int j,
                              double tail_tol = 1e-12);

/// Analytic inner product <a, b>. Both states must live in the same squeeze
/// frame (shifts are commuted into the lattice analytically); otherwise an
/// UnsupportedCase is thrown and callers fall back to the grid engine.
cplx overlap(const PeakSumState& a, const PeakSumState& b, Tolerance tol);

/// Normalized squared envelope weights w_z = eta_kappa(z)^2 / sum eta^2
/// over the certified window; returns the window radius through *window.
std::vector<double> envelope_weights_sq(const GkpParams& p, double tail_tol, long* window);

}  // namespace gkp
