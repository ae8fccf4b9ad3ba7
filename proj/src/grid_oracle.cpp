#include "gkp/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

// FFTW plan creation is not thread-safe; execution on the planned buffer is.
void fft_inplace(std::vector<cplx>& v, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(v.size()),
                                reinterpret_cast<fftw_complex*>(v.data()),
                                reinterpret_cast<fftw_complex*>(v.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
}

void require_pow2(int n) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::domain_error("grid: N must be a power of two, N >= 4");
}

// Centered transform: out_n = (h/sqrt(2 pi)) (-1)^n sum_k (-1)^k psi_k w^{kn}
// with w = e^{-2 pi i k n / N} for the e^{-ipx} kernel. Requires 4 | N so
// the global phase e^{-i pi N/2} is unity.
GridState centered_transform(const GridState& g, int sign) {
    const int N = g.n();
    require_pow2(N);
    if (N % 4 != 0) throw std::domain_error("grid: Fourier needs 4 | N");
    GridState out;
    out.L = kPi * N / (2.0 * g.L);
    out.psi.resize(N);
    std::vector<cplx> buf(N);
    for (int k = 0; k < N; ++k) buf[k] = (k % 2 == 0) ? g.psi[k] : -g.psi[k];
    fft_inplace(buf, sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD);
    const double pref = g.h() / std::sqrt(2.0 * kPi);
    for (int n = 0; n < N; ++n) out.psi[n] = (n % 2 == 0 ? pref : -pref) * buf[n];
    return out;
}

}  // namespace

double grid_norm_sq(const GridState& g) {
    double s = 0.0;
    for (const cplx& v : g.psi) s += std::norm(v);
    return s * g.h();
}

cplx grid_inner(const GridState& a, const GridState& b) {
    if (a.n() != b.n() || std::abs(a.L - b.L) > 1e-9 * std::max(a.L, b.L))
        throw std::domain_error("grid_inner: grids do not match");
    cplx s{};
    for (int k = 0; k < a.n(); ++k) s += std::conj(a.psi[k]) * b.psi[k];
    return s * a.h();
}

double boundary_mass(const GridState& g) {
    const int band = std::max(1, g.n() / 16);
    double s = 0.0;
    for (int k = 0; k < band; ++k) s += std::norm(g.psi[k]) + std::norm(g.psi[g.n() - 1 - k]);
    return s * g.h();
}

GridState render(const PeakSumState& state, double L, int N) {
    require_pow2(N);
    if (!(L > 0.0)) throw std::domain_error("render: L must be > 0");
    GridState g;
    g.L = L;
    g.psi.resize(N);
    for (int k = 0; k < N; ++k) g.psi[k] = cplx(state.eval(g.x(k)), 0.0);
    const double defect = std::abs(grid_norm_sq(g) - 1.0);
    if (defect > 1e-8)
        throw std::domain_error("render: grid cannot represent the state (norm defect " +
                                std::to_string(defect) + ")");
    return g;
}

GridState apply_shift(const GridState& g, double beta) {
    const int N = g.n();
    const double h = g.h();
    const double steps = beta / h;
    const long si = std::lround(steps);
    GridState out;
    out.L = g.L;
    out.psi.assign(N, cplx{});
    if (std::abs(steps - static_cast<double>(si)) < 1e-9) {
        double lost = 0.0;
        for (int k = 0; k < N; ++k) {
            const long k2 = k + si;
            if (k2 < 0 || k2 >= N)
                lost += std::norm(g.psi[k]);
            else
                out.psi[k2] = g.psi[k];
        }
        if (lost * h > 1e-12) throw std::domain_error("apply_shift: support leaves the grid");
        return out;
    }
    // band-limited shift: multiply by e^{-i p beta} in the dual domain
    const double guard = std::abs(beta) + 3.0 * h;
    double edge = 0.0;
    for (int k = 0; k < N; ++k)
        if (g.L - std::abs(g.x(k)) < guard) edge += std::norm(g.psi[k]);
    if (edge * h > 1e-10) throw std::domain_error("apply_shift: support leaves the grid");
    GridState hat = centered_transform(g, -1);
    for (int n = 0; n < N; ++n) {
        const double p = hat.x(n);
        hat.psi[n] *= std::exp(cplx(0.0, -p * beta));
    }
    out = centered_transform(hat, +1);
    out.L = g.L;
    return out;
}

GridState apply_qpoly_phase(const GridState& g, double a, double b) {
    GridState out = g;
    for (int k = 0; k < out.n(); ++k) {
        const double x = out.x(k);
        out.psi[k] *= std::exp(cplx(0.0, a * x * x + b * x));
    }
    return out;
}

GridState apply_squeeze(const GridState& g, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("apply_squeeze: alpha must be > 0");
    const int N = g.n();
    require_pow2(N);
    if (alpha > 1.0) {
        // psi(x/alpha) spreads the support by alpha
        double outside = 0.0;
        const double keep = g.L / alpha - 2.0 * g.h();
        for (int k = 0; k < N; ++k)
            if (std::abs(g.x(k)) > keep) outside += std::norm(g.psi[k]);
        if (outside * g.h() > 1e-10)
            throw std::domain_error("apply_squeeze: rescaled support leaves the grid");
    } else {
        // bandwidth grows by 1/alpha; the upper spectral band must be empty
        GridState hat = centered_transform(g, -1);
        double high = 0.0;
        const double pmax = alpha * hat.L * (1.0 - 1.0 / 16.0);
        for (int n = 0; n < N; ++n)
            if (std::abs(hat.x(n)) > pmax) high += std::norm(hat.psi[n]);
        if (high * hat.h() > 1e-8)
            throw AccuracyError("apply_squeeze: insufficient bandwidth for contraction",
                                cplx{}, high * hat.h());
    }

    // Trigonometric interpolant evaluated at x_j / alpha via a Bluestein
    // chirp-z transform: S(y) = sum_m c_m e^{i pi m y / L}.
    std::vector<cplx> c(g.psi);
    fft_inplace(c, FFTW_FORWARD);
    for (int m = 0; m < N; ++m) c[m] /= static_cast<double>(N);
    // c index m in 0..N-1 corresponds to frequency m for m < N/2, m - N else;
    // fold in the (-1)^m factor from the grid offset.
    std::vector<cplx> d(N);
    const double y0 = -g.L / alpha;
    const double deltay = g.h() / alpha;
    auto wpow = [&](double e) {  // W^e with W = exp(i pi deltay / L)
        return std::exp(cplx(0.0, kPi * deltay / g.L * e));
    };
    for (int idx = 0; idx < N; ++idx) {
        const int m = idx < N / 2 ? idx : idx - N;
        const cplx cm = ((m % 2 == 0) ? 1.0 : -1.0) * c[idx];
        // reindex to mt = m + N/2 in 0..N-1
        const int mt = m + N / 2;
        d[mt] = cm * std::exp(cplx(0.0, kPi * m * y0 / g.L));
    }
    // S_j = W^{-jN/2} sum_mt d_mt W^{j mt}; Bluestein with length-M FFTs
    int M = 1;
    while (M < 2 * N - 1) M <<= 1;
    std::vector<cplx> u(M, cplx{}), v(M, cplx{});
    for (int mt = 0; mt < N; ++mt) u[mt] = d[mt] * wpow(0.5 * static_cast<double>(mt) * mt);
    for (int l = -(N - 1); l <= N - 1; ++l) {
        const cplx val = wpow(-0.5 * static_cast<double>(l) * l);
        v[(l + M) % M] = val;
    }
    fft_inplace(u, FFTW_FORWARD);
    fft_inplace(v, FFTW_FORWARD);
    for (int i = 0; i < M; ++i) u[i] *= v[i];
    fft_inplace(u, FFTW_BACKWARD);
    GridState out;
    out.L = g.L;
    out.psi.resize(N);
    const double scale = 1.0 / (std::sqrt(alpha) * M);
    for (int j = 0; j < N; ++j) {
        const cplx s = u[j] * wpow(0.5 * static_cast<double>(j) * j) *
                       wpow(-0.5 * static_cast<double>(j) * N);
        out.psi[j] = s * scale;
    }
    return out;
}

GridState apply_fourier(const GridState& g) {
    if (boundary_mass(g) > 1e-8)
        throw AccuracyError("apply_fourier: boundary mass in position domain", cplx{},
                            boundary_mass(g));
    GridState out = centered_transform(g, -1);
    if (boundary_mass(out) > 1e-8)
        throw AccuracyError("apply_fourier: boundary mass in momentum domain", cplx{},
                            boundary_mass(out));
    return out;
}

GridState apply_fourier_inverse(const GridState& g) {
    if (boundary_mass(g) > 1e-8)
        throw AccuracyError("apply_fourier_inverse: boundary mass", cplx{}, boundary_mass(g));
    GridState out = centered_transform(g, +1);
    if (boundary_mass(out) > 1e-8)
        throw AccuracyError("apply_fourier_inverse: boundary mass", cplx{}, boundary_mass(out));
    return out;
}

ConvergeResult converge(const std::function<cplx(double, int)>& compute, double L0, int N0,
                        Tolerance tol, long max_points, int max_L_doublings) {
    tol.validate();
    require_pow2(N0);
    double L = L0;
    long N = N0;
    cplx value = compute(L, static_cast<int>(N));
    double last_delta = std::numeric_limits<double>::infinity();

    // stabilize in N at fixed L, then test an L doubling, repeat
    int l_doublings = 0;
    for (;;) {
        bool n_converged = false;
        while (2 * N <= max_points) {
            const cplx refined = compute(L, static_cast<int>(2 * N));
            last_delta = std::abs(refined - value);
            N *= 2;
            value = refined;
            if (last_delta < tol.abs_tol) {
                n_converged = true;
                break;
            }
        }
        if (!n_converged)
            throw AccuracyError("converge: N budget exhausted", value, last_delta);
        if (l_doublings >= max_L_doublings)
            throw AccuracyError("converge: L budget exhausted", value, last_delta);
        if (2 * N > max_points)
            throw AccuracyError("converge: point budget exhausted", value, last_delta);
        const cplx wide = compute(2.0 * L, static_cast<int>(2 * N));
        const double dL = std::abs(wide - value);
        if (dL < tol.abs_tol) {
            return {value, std::max(last_delta, dL), L, static_cast<int>(N)};
        }
        L *= 2.0;
        N *= 2;
        value = wide;
        ++l_doublings;
    }
}

void dump_csv(const GridState& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_csv: cannot open " + path);
    out << "x,re,im\n";
    for (int k = 0; k < g.n(); ++k)
        out << g.x(k) << "," << g.psi[k].real() << "," << g.psi[k].imag() << "\n";
}

}  // namespace gkp
