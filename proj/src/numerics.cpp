#include "gkp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gkp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxLatticeTerms = 20'000'000;
}  // namespace

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) throw std::domain_error("Tolerance: abs_tol must be > 0");
    if (!(rel_tol >= 0.0)) throw std::domain_error("Tolerance: rel_tol must be >= 0");
}

void LatticeSumSpec::validate() const {
    if (!(s > 0.0)) throw std::domain_error("LatticeSumSpec: s must be > 0");
    if (!(tail_tol > 0.0)) throw std::domain_error("LatticeSumSpec: tail_tol must be > 0");
}

double gaussian_rho(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gaussian_rho: s must be > 0");
    return std::exp(-kPi * x * x / (s * s));
}

double lattice_tail_radius(double s, double tail_tol) {
    if (!(s > 0.0)) throw std::domain_error("lattice_tail_radius: s must be > 0");
    if (!(tail_tol > 0.0)) throw std::domain_error("lattice_tail_radius: tail_tol must be > 0");
    if (tail_tol >= 2.0) return 0.0;
    return s * std::sqrt(std::log(2.0 / tail_tol) * 4.0 / (3.0 * kPi));
}

double periodic_gaussian(const LatticeSumSpec& spec) {
    spec.validate();
    const double r = lattice_tail_radius(spec.s, spec.tail_tol);
    const long lo = static_cast<long>(std::floor(-spec.shift - r)) - 1;
    const long hi = static_cast<long>(std::ceil(-spec.shift + r)) + 1;
    if (hi - lo + 1 > kMaxLatticeTerms)
        throw ResourceError("periodic_gaussian: lattice window exceeds term budget");
    double sum = 0.0;
    for (long z = lo; z <= hi; ++z) sum += gaussian_rho(spec.s, static_cast<double>(z) + spec.shift);
    return sum;
}

DiscreteTail discrete_gaussian_tail(double s, double r) {
    if (!(s > 0.0)) throw std::domain_error("discrete_gaussian_tail: s must be > 0");
    if (!(r > 0.0)) throw std::domain_error("discrete_gaussian_tail: r must be > 0");
    DiscreteTail out;
    out.bound = 2.0 * std::exp(-(3.0 * kPi / 4.0) * (r / s) * (r / s));

    const double total = periodic_gaussian({s, 0.0, 1e-18});
    long z = static_cast<long>(std::ceil(r));
    if (static_cast<double>(z) < r) ++z;  // strict |z| >= r
    double tail = 0.0;
    for (;; ++z) {
        const double term = gaussian_rho(s, static_cast<double>(z));
        tail += term;
        if (term < 1e-300 || term < 1e-18 * (tail + 1e-300)) break;
        if (z > kMaxLatticeTerms) throw ResourceError("discrete_gaussian_tail: term budget");
    }
    out.empirical = 2.0 * tail / total;
    return out;
}

double truncated_gaussian_mass(double delta, double eps) {
    if (!(delta > 0.0)) throw std::domain_error("truncated_gaussian_mass: delta must be > 0");
    if (!(eps > 0.0)) throw std::domain_error("truncated_gaussian_mass: eps must be > 0");
    return std::erf(eps / delta);
}

cplx fresnel_gaussian_integral(cplx a, double b) {
    if (!(a.imag() > 0.0))
        throw std::domain_error("fresnel_gaussian_integral: needs Im(a) > 0");
    const cplx ia = cplx(0.0, kPi) / a;  // Re(pi i / a) > 0 for Im(a) > 0
    return std::sqrt(ia) * std::exp(cplx(0.0, -1.0) * (b * b) / (4.0 * a));
}

cplx gaussian_integral(cplx a, cplx b, double lo, double hi) {
    if (!(a.real() > 0.0)) throw std::domain_error("gaussian_integral: needs Re(a) > 0");
    const cplx sa = std::sqrt(a);  // principal branch, Re > 0
    const cplx shift = b / (2.0 * a);
    const cplx pref = std::exp(b * b / (4.0 * a)) * std::sqrt(kPi) / (2.0 * sa);
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    const cplx e_hi = hi_inf ? cplx(1.0, 0.0) : cerf(sa * (hi - shift));
    const cplx e_lo = lo_inf ? cplx(-1.0, 0.0) : cerf(sa * (lo - shift));
    return pref * (e_hi - e_lo);
}

namespace {

struct Panel {
    double lo, hi;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<cplx(double)>& f, double lo, double hi) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    const cplx v = gk::integrate(f, lo, hi, 0, 0.0, &err);
    return {lo, hi, v, err};
}

}  // namespace

QuadResult quad_complex_full(const std::function<cplx(double)>& f, double lo, double hi,
                             Tolerance tol, const std::vector<double>& breakpoints,
                             int max_panels) {
    tol.validate();
    if (!(lo < hi)) throw std::domain_error("quad_complex: requires lo < hi");

    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel> heap;
    cplx total{};
    double total_err = 0.0;
    int n_panels = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = eval_panel(f, cuts[i], cuts[i + 1]);
        total += p.value;
        total_err += p.err;
        heap.push(p);
        ++n_panels;
    }

    auto target = [&](cplx v) { return std::max(tol.abs_tol, tol.rel_tol * std::abs(v)); };
    while (total_err > target(total) && n_panels < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {  // interval at double resolution
            heap.push(worst);
            break;
        }
        Panel a = eval_panel(f, worst.lo, mid);
        Panel b = eval_panel(f, mid, worst.hi);
        total += a.value + b.value - worst.value;
        total_err += a.err + b.err - worst.err;
        heap.push(a);
        heap.push(b);
        ++n_panels;
    }
    if (total_err > target(total))
        throw AccuracyError("quad_complex: panel budget exhausted", total, total_err);
    return {total, total_err, n_panels};
}

cplx quad_complex(const std::function<cplx(double)>& f, double lo, double hi, Tolerance tol,
                  const std::vector<double>& breakpoints) {
    return quad_complex_full(f, lo, hi, tol, breakpoints).value;
}

}  // namespace gkp
