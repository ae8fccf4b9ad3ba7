#include "gkp/gkp_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxWindow = 5'000'000;

double log_eta(double kappa, double z) {
    return 0.5 * std::log(kappa) - 0.25 * std::log(kPi) - 0.5 * kappa * kappa * z * z;
}

// log of the peak-shape prefactor 1/(pi^{1/4} sqrt(delta)), with the
// truncated families renormalized by 1/sqrt(erf(eps/delta)).
double log_peak_pref(const GkpParams& p, bool truncated) {
    double lp = -0.25 * std::log(kPi) - 0.5 * std::log(p.delta);
    if (truncated) lp -= 0.5 * std::log(truncated_gaussian_mass(p.delta, p.eps));
    return lp;
}

// erf(hi) - erf(lo) without cancellation in the tails.
double erf_diff(double lo, double hi) {
    if (lo > 0.0 && hi > 0.0) return std::erfc(lo) - std::erfc(hi);
    if (lo < 0.0 && hi < 0.0) return std::erfc(-hi) - std::erfc(-lo);
    return std::erf(hi) - std::erf(lo);
}

// int_{lo}^{hi} exp(-a (x - mu)^2 + c) dx for real coefficients, a > 0.
double centered_gaussian_integral(double a, double mu, double c, double lo, double hi) {
    const double sa = std::sqrt(a);
    const double alo = std::isinf(lo) ? -kInf : sa * (lo - mu);
    const double ahi = std::isinf(hi) ? kInf : sa * (hi - mu);
    const double ediff = (std::isinf(alo) && std::isinf(ahi)) ? 2.0 : erf_diff(alo, ahi);
    return std::exp(c) * std::sqrt(kPi) / (2.0 * sa) * ediff;
}

long envelope_window(const GkpParams& p, double tail_tol) {
    // eta_kappa(z)^2 is proportional to rho_s(z) with s = sqrt(pi)/kappa;
    // the discrete-Gaussian tail bound certifies the omitted mass.
    const double s = std::sqrt(kPi) / p.kappa;
    const double r = lattice_tail_radius(s, tail_tol);
    const long w = static_cast<long>(std::ceil(r)) + 1;
    if (w > kMaxWindow) throw ResourceError("envelope_window: lattice window exceeds budget");
    return w;
}

std::vector<Peak> raw_peaks(StateFamily family, const GkpParams& p, long window) {
    std::vector<Peak> peaks;
    peaks.reserve(2 * window + 1);
    const double lp = log_peak_pref(p, family.truncated);
    const double inv2d2 = 1.0 / (2.0 * p.delta * p.delta);
    for (long z = -window; z <= window; ++z) {
        Peak pk;
        const double zd = static_cast<double>(z);
        pk.lo = family.truncated ? zd - p.eps : -kInf;
        pk.hi = family.truncated ? zd + p.eps : kInf;
        if (family.envelope == Envelope::Peakwise) {
            pk.a = inv2d2;
            pk.mu = zd;
            pk.c = lp + log_eta(p.kappa, zd);
        } else {
            // eta_kappa(x) * peak(x - z): merge the two centered Gaussians
            const double ae = 0.5 * p.kappa * p.kappa;
            pk.a = inv2d2 + ae;
            pk.mu = zd * inv2d2 / pk.a;
            pk.c = -(ae * inv2d2 / pk.a) * zd * zd + lp + 0.5 * std::log(p.kappa) -
                   0.25 * std::log(kPi);
        }
        peaks.push_back(pk);
    }
    return peaks;
}

// Sum over peak pairs of int conj(p_i) q_j with q shifted by t.
double pair_sum(const std::vector<Peak>& pa, long wa, const std::vector<Peak>& pb, long wb,
                double t) {
    // neighbor cutoff from the combined Gaussian widths
    double sig2 = 0.0;
    if (!pa.empty()) sig2 += 1.0 / (2.0 * pa[pa.size() / 2].a);
    if (!pb.empty()) sig2 += 1.0 / (2.0 * pb[pb.size() / 2].a);
    const long cut = static_cast<long>(std::ceil(std::sqrt(2.0 * sig2 * 75.0))) + 2;

    double sum = 0.0;
    for (long za = -wa; za <= wa; ++za) {
        const Peak& A = pa[za + wa];
        const long zb_mid = std::lround(static_cast<double>(za) - t);
        for (long zb = zb_mid - cut; zb <= zb_mid + cut; ++zb) {
            if (zb < -wb || zb > wb) continue;
            const Peak& B = pb[zb + wb];
            const double lo = std::max(A.lo, B.lo + t);
            const double hi = std::min(A.hi, B.hi + t);
            if (!(lo < hi)) continue;
            const double mu_b = B.mu + t;
            const double asum = A.a + B.a;
            const double mu = (A.a * A.mu + B.a * mu_b) / asum;
            const double cross = -(A.a * B.a / asum) * (A.mu - mu_b) * (A.mu - mu_b);
            sum += centered_gaussian_integral(asum, mu, A.c + B.c + cross, lo, hi);
        }
    }
    return sum;
}

}  // namespace

void GkpParams::validate(bool for_code_basis) const {
    if (!(kappa > 0.0)) throw std::domain_error("GkpParams: kappa must be > 0");
    if (!(delta > 0.0)) throw std::domain_error("GkpParams: delta must be > 0");
    if (!(eps > 0.0 && eps <= 0.5)) throw std::domain_error("GkpParams: eps must be in (0, 1/2]");
    if (d < 2) throw std::domain_error("GkpParams: d must be >= 2");
    if (for_code_basis && eps > 0.5 / d + 1e-15)
        throw std::domain_error("GkpParams: code basis needs eps <= 1/(2d)");
}

GkpParams GkpParams::symmetric(double kappa, int d) {
    GkpParams p;
    p.kappa = kappa;
    p.d = d;
    p.delta = kappa / (2.0 * kPi * d);
    p.eps = 0.5 / d;
    p.validate(true);
    return p;
}

GkpParams fourier_dual_params(const GkpParams& p) {
    p.validate();
    GkpParams q = p;
    q.kappa = 2.0 * kPi * p.d * p.delta;
    q.delta = p.kappa / (2.0 * kPi * p.d);
    return q;
}

double PeakSumState::frame_scale() const {
    double a = 1.0;
    for (const PostOp& op : post_ops) a *= op.squeeze;
    return a;
}

double PeakSumState::frame_shift() const {
    double a = 1.0, b = 0.0;
    for (const PostOp& op : post_ops) {
        a *= op.squeeze;
        b = b * op.squeeze + op.shift;
    }
    return b;
}

double PeakSumState::eval_base(double u) const {
    const long zc = std::lround(u);
    double v = 0.0;
    const long reach = family.truncated ? 1 : std::max<long>(1, static_cast<long>(9.0 * params.delta) + 1);
    for (long z = zc - reach; z <= zc + reach; ++z) {
        if (z < -window || z > window) continue;
        const Peak& pk = peaks[z + window];
        if (u < pk.lo || u > pk.hi) continue;
        v += std::exp(-pk.a * (u - pk.mu) * (u - pk.mu) + pk.c);
    }
    return v;
}

double PeakSumState::eval(double x) const {
    const double A = frame_scale();
    const double B = frame_shift();
    return eval_base((x - B) / A) / std::sqrt(A);
}

double normalization_constant(StateFamily family, const GkpParams& p, Tolerance tol) {
    p.validate();
    tol.validate();
    const double tail = std::min(1e-12, tol.abs_tol);
    const long w = envelope_window(p, tail);
    std::vector<Peak> pk = raw_peaks(family, p, w);
    const double self = pair_sum(pk, w, pk, w, 0.0);
    if (!(self > 0.0)) throw ResourceError("normalization_constant: degenerate Gram sum");
    return 1.0 / std::sqrt(self);
}

PeakSumState make_state(StateFamily family, const GkpParams& p, double tail_tol) {
    p.validate();
    if (family.truncated && !(p.eps < 0.5))
        throw std::domain_error("make_state: truncated families need eps < 1/2");
    PeakSumState st;
    st.family = family;
    st.params = p;
    st.tail_tol = tail_tol;
    st.window = envelope_window(p, tail_tol);
    st.peaks = raw_peaks(family, p, st.window);
    const double self = pair_sum(st.peaks, st.window, st.peaks, st.window, 0.0);
    st.norm_const = 1.0 / std::sqrt(self);
    const double lognc = std::log(st.norm_const);
    for (Peak& pk : st.peaks) pk.c += lognc;
    return st;
}

PeakSumState code_basis_state(const GkpParams& p, StateFamily family, int j, double tail_tol) {
    p.validate(family.truncated);
    if (j < 0 || j >= p.d) throw std::domain_error("code_basis_state: j out of range");
    PeakSumState st = make_state(family, p, tail_tol);
    const double alpha = std::sqrt(2.0 * kPi * p.d);
    st.post_ops.push_back({alpha, 0.0});
    if (j != 0) st.post_ops.push_back({1.0, j * std::sqrt(2.0 * kPi / p.d)});
    return st;
}

cplx overlap(const PeakSumState& a, const PeakSumState& b, Tolerance tol) {
    tol.validate();
    const double Aa = a.frame_scale(), Ab = b.frame_scale();
    if (std::abs(Aa - Ab) > 1e-12 * std::max(Aa, Ab))
        throw UnsupportedCase("overlap: states live in different squeeze frames");
    const double t = (b.frame_shift() - a.frame_shift()) / Aa;
    return cplx(pair_sum(a.peaks, a.window, b.peaks, b.window, t), 0.0);
}

std::vector<double> envelope_weights_sq(const GkpParams& p, double tail_tol, long* window) {
    p.validate();
    const long w = envelope_window(p, tail_tol);
    std::vector<double> lw(2 * w + 1);
    double lmax = -kInf;
    for (long z = -w; z <= w; ++z) {
        lw[z + w] = 2.0 * log_eta(p.kappa, static_cast<double>(z));
        lmax = std::max(lmax, lw[z + w]);
    }
    double total = 0.0;
    std::vector<double> out(lw.size());
    for (size_t i = 0; i < lw.size(); ++i) {
        out[i] = std::exp(lw[i] - lmax);
        total += out[i];
    }
    for (double& v : out) v /= total;
    if (window) *window = w;
    return out;
}

}  // namespace gkp
