#pragma once

#include <utility>
#include <vector>

#include "infobound/core.hpp"
#include "infobound/quad.hpp"

namespace infobound {

struct PosteriorSummary {
    double y;
    double posterior_mean;
    double posterior_variance;
};

/// Thrown when the evidence P(y) underflows and the posterior is undefined.
class DegenerateEvidenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// E(X | Y = y) by quadrature over the prior support (log-space weighting).
double posterior_mean(const PriorSpec& p, const ChannelModel& c, double y, const QuadConfig& cfg);

PosteriorSummary posterior_summary(const PriorSpec& p, const ChannelModel& c, double y,
                                   const QuadConfig& cfg);

/// MMSE via E(X^2) - E[Xhat^2]. Poisson channels use the marginal-series
/// route (negative-exponential prior required).
double mmse(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg);

std::vector<PosteriorSummary> posterior_variance_profile(const PriorSpec& p, const ChannelModel& c,
                                                         const std::vector<double>& y_grid,
                                                         const QuadConfig& cfg);

/// MMSE from the first measurement alone and from the joint pair of
/// conditionally independent measurements; joint can never exceed single.
std::pair<double, double> mmse_two_measurements(const PriorSpec& p, const ChannelModel& c1,
                                                const ChannelModel& c2, const QuadConfig& cfg);

/// E(X^2) under the prior (NegExp: the analytic 2*xbar^2).
double prior_second_moment(const PriorSpec& p);

}  // namespace infobound
