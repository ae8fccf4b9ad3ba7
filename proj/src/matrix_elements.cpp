#include "gkp/matrix_elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;

double log_eta(double kappa, double z) {
    return 0.5 * std::log(kappa) - 0.25 * std::log(kPi) - 0.5 * kappa * kappa * z * z;
}

long window_radius(double kappa, double tail_tol) {
    const double s = std::sqrt(kPi) / kappa;
    return static_cast<long>(std::ceil(lattice_tail_radius(s, tail_tol))) + 1;
}

cplx omega_pow(int d, double exponent) {  // omega_d^exponent with real exponent
    return std::exp(cplx(0.0, 2.0 * kPi * exponent / d));
}

// C_kappa^2 sum_z eta(z) eta(z+t) -- the lattice-shift overlap of the
// truncated peakwise state with itself.
double shift_overlap(const GkpParams& p, long t, double tail_tol) {
    if (t == 0) return 1.0;
    const long w = window_radius(p.kappa, tail_tol) + std::abs(t);
    double num = 0.0, den = 0.0;
    for (long z = -w; z <= w; ++z) {
        const double lz = log_eta(p.kappa, static_cast<double>(z));
        den += std::exp(2.0 * lz);
        num += std::exp(lz + log_eta(p.kappa, static_cast<double>(z + t)));
    }
    return num / den;
}

std::vector<double> spike_breakpoints(double width, double eps) {
    std::vector<double> bp;
    for (double w = width; w < eps; w *= 2.0) {
        bp.push_back(-w);
        bp.push_back(w);
    }
    return bp;
}

// <Psi^eps, e^{i(pi d Q^2 + b Q)} Psi^eps> via the error-function closed form.
cplx phase_peak_closed(const GkpParams& p, double b) {
    const double norm = 1.0 / (std::sqrt(kPi) * p.delta * truncated_gaussian_mass(p.delta, p.eps));
    const cplx a(1.0 / (p.delta * p.delta), -kPi * p.d);
    return norm * gaussian_integral(a, cplx(0.0, b), -p.eps, p.eps);
}

cplx phase_peak_quad(const GkpParams& p, double b, Tolerance tol) {
    const double norm = 1.0 / (std::sqrt(kPi) * p.delta * truncated_gaussian_mass(p.delta, p.eps));
    const double inv_d2 = 1.0 / (p.delta * p.delta);
    auto f = [&](double x) {
        return std::exp(cplx(-x * x * inv_d2, kPi * p.d * x * x + b * x));
    };
    QuadResult q = quad_complex_full(f, -p.eps, p.eps, tol, spike_breakpoints(p.delta, p.eps),
                                     200000);
    return norm * q.value;
}

double max_abs_diff(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

struct GridPlan {
    double L;
    long N;
};

// Grid half-width from the certified lattice window, bandwidth from the
// dual window; N covers the time-bandwidth product with margin.
GridPlan plan_grid(const GkpParams& in, const GkpParams& out, double extra_bandwidth,
                   double shift_headroom) {
    const double tail = 1e-17;  // analytic tail bound ~ sqrt(tail) stays below 1e-8
    const double alpha = std::sqrt(2.0 * kPi * in.d);
    const double supp_in = alpha * (window_radius(in.kappa, tail) + in.eps + 1.0);
    const double supp_out = alpha * (window_radius(out.kappa, tail) + out.eps + 1.0);
    GridPlan plan;
    plan.L = 1.02 * (std::max(supp_in, supp_out) + shift_headroom);
    // momentum extent of a GKP state = position extent of its Fourier dual
    const double bw_in = alpha * (window_radius(2.0 * kPi * in.d * in.delta, tail) + 1.0);
    const double bw_out = alpha * (window_radius(2.0 * kPi * out.d * out.delta, tail) + 1.0);
    const double B = 1.05 * std::max(bw_in, bw_out) + extra_bandwidth;
    long n = 8;
    const double need = 2.0 * plan.L * B / kPi * 1.1;
    while (static_cast<double>(n) < need) n <<= 1;
    plan.N = n;
    return plan;
}

Eigen::MatrixXcd eval_gate_on_grid(const GateSpec& gate, const GkpParams& in,
                                   const GkpParams& out, double L, long N) {
    const int d = in.d;
    const double beta = std::sqrt(2.0 * kPi / d);
    Eigen::MatrixXcd M(d, d);
    for (int k = 0; k < d; ++k) {
        GridState gk = render(code_basis_state(in, kPeakwiseTruncated, k, 1e-17), L,
                              static_cast<int>(N));
        GridState wk;
        switch (gate.kind) {
            case GateSpec::Kind::PauliX:
                wk = apply_shift(gk, gate.power * beta);
                break;
            case GateSpec::Kind::PauliZPower:
                wk = apply_qpoly_phase(gk, 0.0, gate.power * beta);
                break;
            case GateSpec::Kind::Phase:
                wk = apply_qpoly_phase(gk, 0.5, 0.5 * (d % 2) * beta);
                break;
            case GateSpec::Kind::Fourier:
                wk = apply_fourier_inverse(gk);
                break;
        }
        for (int j = 0; j < d; ++j) {
            GridState oj = render(code_basis_state(out, kPeakwiseTruncated, j, 1e-17), wk.L,
                                  static_cast<int>(N));
            M(j, k) = grid_inner(oj, wk);
        }
    }
    return M;
}

MatrixElements mat_fourier_comb(const GkpParams& p, Tolerance tol);

}  // namespace

std::string GateSpec::name() const {
    switch (kind) {
        case Kind::PauliX:
            return power == 1 ? "X" : "X^" + std::to_string(power);
        case Kind::PauliZPower:
            return power == 1 ? "Z" : "Z^" + std::to_string(power);
        case Kind::Fourier:
            return "F";
        case Kind::Phase:
            return "P";
    }
    return "?";
}

MatrixElements mat_pauli_x(const GkpParams& p, Tolerance tol, int power) {
    p.validate(true);
    tol.validate();
    if (power < 0) throw std::domain_error("mat_pauli_x: power must be >= 0");
    const double tail = std::min(1e-14, tol.abs_tol);
    MatrixElements M;
    M.gate = {GateSpec::Kind::PauliX, power};
    M.in_params = M.out_params = p;
    M.method = "analytic";
    M.values = Eigen::MatrixXcd::Zero(p.d, p.d);
    for (int k = 0; k < p.d; ++k) {
        const int j = (k + power) % p.d;
        const long t = (k + power - j) / p.d;
        M.values(j, k) = shift_overlap(p, t, tail);
    }
    M.error_estimate = 10.0 * tail + 1e-14;
    return M;
}

double pauli_z_scalar_closed_form(const GkpParams& p, int m) {
    const double norm = 1.0 / (std::sqrt(kPi) * p.delta * truncated_gaussian_mass(p.delta, p.eps));
    const cplx v = gaussian_integral(cplx(1.0 / (p.delta * p.delta), 0.0),
                                     cplx(0.0, 2.0 * kPi * m), -p.eps, p.eps);
    return norm * v.real();
}

MatrixElements mat_pauli_z(const GkpParams& p, int m, Tolerance tol) {
    p.validate(true);
    tol.validate();
    if (std::abs(m) > p.d) throw std::domain_error("mat_pauli_z: requires |m| <= d");
    MatrixElements M;
    M.gate = {GateSpec::Kind::PauliZPower, m};
    M.in_params = M.out_params = p;
    M.method = "analytic";
    M.values = Eigen::MatrixXcd::Zero(p.d, p.d);

    double scalar = 1.0;
    double err = 1e-15;
    if (m != 0) {
        const double norm =
            1.0 / (std::sqrt(kPi) * p.delta * truncated_gaussian_mass(p.delta, p.eps));
        const double inv_d2 = 1.0 / (p.delta * p.delta);
        auto f = [&](double x) { return std::exp(cplx(-x * x * inv_d2, 2.0 * kPi * m * x)); };
        QuadResult q = quad_complex_full(f, -p.eps, p.eps, tol,
                                         spike_breakpoints(p.delta, p.eps), 200000);
        scalar = norm * q.value.real();
        err = norm * q.error + 1e-14;
        const double closed = pauli_z_scalar_closed_form(p, m);
        const double dev = std::abs(scalar - closed);
        if (dev > 1e-9)
            throw AccuracyError("mat_pauli_z: quadrature and closed form disagree", scalar, dev);
        err = std::max(err, dev);
    }
    for (int j = 0; j < p.d; ++j) M.values(j, j) = omega_pow(p.d, m * j) * scalar;
    M.error_estimate = err;
    return M;
}

cplx phase_diagonal_scalar(const GkpParams& p, int j, Tolerance tol) {
    p.validate();
    tol.validate();
    const double tail = std::min(1e-14, tol.abs_tol);
    long w = 0;
    const std::vector<double> weights = envelope_weights_sq(p, tail, &w);
    const int cd = p.d % 2;

    cplx scalar{};
    for (long y = -w; y <= w; ++y) {
        const double b = kPi * (2.0 * p.d * y + 2.0 * j + cd);
        scalar += weights[y + w] * phase_peak_closed(p, b);
    }
    // dual-route guard on a spread of lattice sites
    double spot_dev = 0.0;
    for (long y : {-w, -w / 2, 0L, w / 2, w}) {
        const double b = kPi * (2.0 * p.d * y + 2.0 * j + cd);
        const cplx closed = phase_peak_closed(p, b);
        const cplx quad = phase_peak_quad(p, b, {1e-11, 0.0});
        spot_dev = std::max(spot_dev, std::abs(closed - quad));
    }
    if (spot_dev > 1e-9)
        throw AccuracyError("phase_diagonal_scalar: closed form and quadrature disagree", scalar,
                            spot_dev);
    return scalar;
}

MatrixElements mat_phase(const GkpParams& p, Tolerance tol) {
    p.validate(true);
    tol.validate();
    MatrixElements M;
    M.gate = {GateSpec::Kind::Phase, 1};
    M.in_params = M.out_params = p;
    M.method = "analytic";
    M.values = Eigen::MatrixXcd::Zero(p.d, p.d);
    const int cd = p.d % 2;
    for (int j = 0; j < p.d; ++j)
        M.values(j, j) =
            omega_pow(p.d, 0.5 * (j * j + cd * j)) * phase_diagonal_scalar(p, j, tol);
    M.error_estimate = 1e-11;
    return M;
}

MatrixElements mat_grid(const GateSpec& gate, const GkpParams& p, Tolerance tol,
                        long max_grid_points) {
    p.validate(true);
    tol.validate();
    const GkpParams out = gate.kind == GateSpec::Kind::Fourier ? fourier_dual_params(p) : p;
    const double beta = std::sqrt(2.0 * kPi / p.d);
    double extra_bw = 0.0, shift_room = 0.0;
    if (gate.kind == GateSpec::Kind::PauliX) shift_room = std::abs(gate.power) * beta + 1.0;
    if (gate.kind == GateSpec::Kind::PauliZPower) extra_bw = std::abs(gate.power) * beta + 1.0;
    GridPlan plan = plan_grid(p, out, 0.0, shift_room);
    if (gate.kind == GateSpec::Kind::Phase) extra_bw = plan.L + 1.0;  // phase gradient at the edge
    if (extra_bw > 0.0) plan = plan_grid(p, out, extra_bw, shift_room);
    if (plan.N > max_grid_points)
        throw ResourceError("mat_grid: required grid exceeds the point budget (N = " +
                            std::to_string(plan.N) + ")");

    MatrixElements M;
    M.gate = gate;
    M.in_params = p;
    M.out_params = out;
    M.method = "grid";
    if (gate.kind == GateSpec::Kind::Fourier) M.gate_phase = std::exp(cplx(0.0, kPi / 4.0));

    double L = plan.L;
    long N = plan.N;
    Eigen::MatrixXcd cur = eval_gate_on_grid(gate, p, out, L, N);
    double delta = std::numeric_limits<double>::infinity();
    bool n_ok = false;
    while (2 * N <= max_grid_points) {
        Eigen::MatrixXcd next = eval_gate_on_grid(gate, p, out, L, 2 * N);
        delta = max_abs_diff(cur, next);
        N *= 2;
        cur = next;
        if (delta < tol.abs_tol) {
            n_ok = true;
            break;
        }
    }
    if (!n_ok) throw AccuracyError("mat_grid: N budget exhausted", cur(0, 0), delta);
    // The lattice window certifies the L-truncation analytically (tail 1e-17
    // in mass, ~3e-9 in amplitude); one widening check runs when affordable.
    double l_delta = 3e-9;
    if (2 * N <= max_grid_points) {
        Eigen::MatrixXcd wide = eval_gate_on_grid(gate, p, out, 2.0 * L, 2 * N);
        l_delta = max_abs_diff(cur, wide);
        if (l_delta > tol.abs_tol)
            throw AccuracyError("mat_grid: result not converged in L", cur(0, 0), l_delta);
    }
    M.values = cur;
    M.error_estimate = std::max(delta, l_delta);

    if (gate.kind == GateSpec::Kind::Fourier) {
        // report the transform-kernel convention (positive-real M00 in the
        // ideal limit); eval produced exactly that
    }
    return M;
}

namespace {

MatrixElements mat_fourier_comb(const GkpParams& p, Tolerance tol) {
    const GkpParams out = fourier_dual_params(p);
    const int d = p.d;
    const double alpha = std::sqrt(2.0 * kPi * d);
    const double tail = 1e-15;

    const double c_in = normalization_constant(kPeakwiseTruncated, p, {1e-12, 0.0});
    const double c_out = normalization_constant(kPeakwiseTruncated, out, {1e-12, 0.0});
    const double pref = c_in * c_out * alpha * std::sqrt(2.0 * kPi);

    const double dlt_out = out.delta;           // width of the out-state peaks
    const double wD = p.kappa / (2.0 * kPi * d);  // u-width of the momentum comb
    const double u0 = std::min(p.eps, 14.0 * (dlt_out + wD));

    // out-state peak and in-peak Fourier transform, both unit-norm shapes
    const double nt_out =
        1.0 / (std::pow(kPi, 0.25) * std::sqrt(dlt_out) *
               std::sqrt(truncated_gaussian_mass(dlt_out, out.eps)));
    const double nt_in = 1.0 / (std::pow(kPi, 0.25) * std::sqrt(p.delta) *
                                std::sqrt(truncated_gaussian_mass(p.delta, p.eps)));
    const cplx a_in(1.0 / (2.0 * p.delta * p.delta), 0.0);
    auto that = [&](double q) {  // Fourier transform of the truncated in-peak at momentum q
        return nt_in / std::sqrt(2.0 * kPi) *
               gaussian_integral(a_in, cplx(0.0, -q), -p.eps, p.eps);
    };
    auto psi_out = [&](double u) { return nt_out * std::exp(-u * u / (2.0 * dlt_out * dlt_out)); };
    auto comb = [&](double u) {  // sqrt(2 pi)-free momentum comb around the aligned peak
        double s = 0.0;
        for (int m = -1; m <= 1; ++m) {
            const double v = 2.0 * kPi * (m + d * u);
            const double e = -v * v / (2.0 * p.kappa * p.kappa);
            if (e > -700.0) s += std::exp(e);
        }
        return s / (std::pow(kPi, 0.25) * std::sqrt(p.kappa));
    };

    const long w_out = window_radius(out.kappa, tail);
    std::vector<double> eta_out(2 * w_out + 1);
    double eta_sum = 0.0;
    for (long y = -w_out; y <= w_out; ++y) {
        eta_out[y + w_out] = std::exp(log_eta(out.kappa, static_cast<double>(y)));
        eta_sum += eta_out[y + w_out];
    }

    std::vector<double> bp = spike_breakpoints(dlt_out, u0);
    for (double v : spike_breakpoints(wD, u0)) bp.push_back(v);

    Tolerance quad_tol;
    quad_tol.abs_tol = std::max(0.3 * tol.abs_tol / (pref * eta_sum), 1e-16);

    MatrixElements M;
    M.gate = {GateSpec::Kind::Fourier, 1};
    M.in_params = p;
    M.out_params = out;
    M.method = "comb";
    M.gate_phase = std::exp(cplx(0.0, kPi / 4.0));
    M.values = Eigen::MatrixXcd::Zero(d, d);

    double err = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            cplx acc{};
            double qerr = 0.0;
            for (long y = -w_out; y <= w_out; ++y) {
                const double eta = eta_out[y + w_out];
                if (eta < 1e-300) continue;
                auto f = [&](double u) {
                    const double q = 2.0 * kPi * (d * (u + y) + j);
                    return psi_out(u) * comb(u) * that(q) *
                           std::exp(cplx(0.0, 2.0 * kPi * k * u));
                };
                QuadResult qr = quad_complex_full(f, -u0, u0, quad_tol, bp, 50000);
                acc += eta * qr.value;
                qerr += eta * qr.error;
            }
            M.values(j, k) = omega_pow(d, static_cast<double>(j) * k) * pref * acc;
            err = std::max(err, pref * qerr);
        }
    }
    // neglected mass: |u| > u0 window cut and the lattice tails
    const double neglect = (u0 < p.eps)
                               ? pref * eta_sum * 2.0 * (p.eps - u0) * psi_out(u0) * comb(0.0)
                               : 0.0;
    M.error_estimate = err + neglect + 10.0 * tail + 1e-11;
    return M;
}

}  // namespace

MatrixElements mat_fourier(const GkpParams& p, Tolerance tol, FourierMethod method,
                           long max_grid_points) {
    p.validate(true);
    tol.validate();
    const double sym = p.kappa / (2.0 * kPi * p.d);
    if (p.delta > sym * (1.0 + 1e-12))
        throw std::domain_error("mat_fourier: requires delta <= kappa/(2 pi d)");
    if (p.eps + 1e-15 < sym)
        throw std::domain_error("mat_fourier: requires kappa/(2 pi d) <= eps");

    if (method == FourierMethod::Comb) return mat_fourier_comb(p, tol);
    if (method == FourierMethod::Grid)
        return mat_grid({GateSpec::Kind::Fourier, 1}, p, tol, max_grid_points);

    const GkpParams out = fourier_dual_params(p);
    const GridPlan plan = plan_grid(p, out, 0.0, 0.0);
    if (2 * plan.N <= max_grid_points)
        return mat_grid({GateSpec::Kind::Fourier, 1}, p, tol, max_grid_points);
    return mat_fourier_comb(p, tol);
}

std::string to_json(const MatrixElements& M) {
    nlohmann::json j;
    j["gate"] = M.gate.name();
    auto params_json = [](const GkpParams& p) {
        return nlohmann::json{{"kappa", p.kappa}, {"delta", p.delta}, {"eps", p.eps}, {"d", p.d}};
    };
    j["in_params"] = params_json(M.in_params);
    j["out_params"] = params_json(M.out_params);
    j["method"] = M.method;
    j["error_estimate"] = M.error_estimate;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < M.values.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < M.values.cols(); ++c)
            row.push_back({M.values(r, c).real(), M.values(r, c).imag()});
        rows.push_back(row);
    }
    j["values"] = rows;
    if (M.gate.kind == GateSpec::Kind::Fourier) {
        j["gate_phase"] = {M.gate_phase.real(), M.gate_phase.imag()};
        nlohmann::json prows = nlohmann::json::array();
        for (int r = 0; r < M.values.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < M.values.cols(); ++c) {
                const cplx v = M.gate_phase * M.values(r, c);
                row.push_back({v.real(), v.imag()});
            }
            prows.push_back(row);
        }
        j["values_physical"] = prows;
    }
    return j.dump(2);
}

}  // namespace gkp
