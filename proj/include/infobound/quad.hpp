#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "infobound/core.hpp"

namespace infobound {

struct Interval {
    double lo;
    double hi;
};

/// Cached Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre integral of f over the interval.
/// Throws on NaN/Inf from f, reporting the offending abscissa.
double integrate(const std::function<double(double)>& f, Interval support, const QuadConfig& cfg);

/// Accumulates term(0) + term(1) + ... until the running term is negligible
/// relative to the partial sum (and no longer growing). Throws if the series
/// has not converged within 1e7 terms.
double sum_series(const std::function<double(std::int64_t)>& term, const QuadConfig& cfg);

/// Upper incomplete gamma Gamma(s, u) = int_u^inf x^{s-1} e^{-x} dx, s > 0.
/// Integer s uses the exact finite-sum recurrence in log space; real s uses a
/// continued fraction / series pair.
double upper_incomplete_gamma(double s, double u);

/// ln Gamma(y+1, u) for integer y >= 0; never overflows.
double log_upper_incomplete_gamma_int(std::int64_t y, double u);

/// Bisection root of f on [lo, hi]; requires a sign change.
double find_root_bisect(const std::function<double(double)>& f, double lo, double hi,
                        const QuadConfig& cfg);

}  // namespace infobound
