#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gkp {

/// A computation exceeded its lattice-window or subdivision budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine could not certify the requested accuracy.
/// Carries the best estimate obtained together with its error bound.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, std::complex<double> best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
    std::complex<double> best_estimate;
    double error_bound;
};

/// Requested combination is outside the analytic fast path; callers are
/// expected to fall back to the grid engine.
class UnsupportedCase : public std::runtime_error {
public:
    explicit UnsupportedCase(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gkp
