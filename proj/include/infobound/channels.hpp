#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "infobound/core.hpp"
#include "infobound/quad.hpp"

namespace infobound {

/// Closed-form reference results for the linear Gaussian channel with a
/// Gaussian prior.
struct GaussianClosedForms {
    double mi;    // 0.5 ln(1 + SNR)
    double mmse;  // (sigma_X^-2 + a^2 sigma_N^-2)^-1
    double fi;    // a^2 / sigma_N^2
    double snr;   // a^2 sigma_X^2 / sigma_N^2
};
GaussianClosedForms gaussian_closed_forms(double var_x, double a, double b, double var_n);

/// Marginal p(y) of the linear Poisson channel under a negative-exponential
/// prior, evaluated in log space via the incomplete-gamma form. Successive-y
/// queries are O(1) amortized (the incomplete-gamma partial sum is cached).
class PoissonMarginal {
public:
    PoissonMarginal(double xbar, double a, double b);

    double log_p(std::int64_t y) const;
    double p(std::int64_t y) const { return std::exp(log_p(y)); }

    double xbar() const { return xbar_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double mean_y() const { return a_ * xbar_ + b_; }

private:
    double xbar_, a_, b_;
    double log_alpha_;   // ln[aX/(aX+1)]
    double log_axp1_;    // ln(aX+1)
    double big_u_;       // b(aX+1)/(aX)
    double log_u_;       // ln big_u_
    mutable std::vector<double> log_q_;         // ln sum_{k<=y} U^k/k!
    mutable std::vector<double> log_term_;      // ln U^y/y! at the last cached y
};

double poisson_marginal(double xbar, double a, double b, std::int64_t y);

/// MMSE of the Poisson channel / negative-exponential prior via the marginal
/// series (valid for any bias). For b = 0 the closed form xbar^2/(1+a*xbar)
/// is returned after checking the series agrees with it to 1e-8 relative.
double poisson_mmse(double xbar, double a, double b, const QuadConfig& cfg);

/// The pure series route (no zero-bias shortcut); used directly by tests.
double poisson_mmse_series(double xbar, double a, double b, const QuadConfig& cfg);

double poisson_mmse_closed_b0(double xbar, double a);

/// Exact MI of the Poisson channel / negative-exponential prior:
/// prior-averaged rate term by quadrature plus the marginal entropy series.
double poisson_mi(double xbar, double a, double b, const QuadConfig& cfg);

/// Largest y needed to cover 1 - tail of the marginal mass (plus the series
/// term-ratio guard); used to size brute-force sums in tests and joint models.
std::int64_t poisson_marginal_extent(const PoissonMarginal& marginal, const QuadConfig& cfg);

}  // namespace infobound
