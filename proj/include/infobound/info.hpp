#pragma once

#include <vector>

#include "infobound/core.hpp"
#include "infobound/quad.hpp"

namespace infobound {

/// J(Y|x) sampled on a grid of x values.
struct FiProfile {
    std::vector<double> xs;
    std::vector<double> j_values;
};

/// Finite input distribution (atoms with probabilities).
struct DiscretePrior {
    std::vector<double> atoms;
    std::vector<double> probs;
};

/// Two-input linear Gaussian channel y_i = a_i x_i + n_i with independent
/// Gaussian priors on the components and shared noise variance.
struct TwoInputGaussian {
    double gain_x;
    double gain_u;
    double var_x;
    double var_u;
    double noise_var;
};

double differential_entropy(const PriorSpec& p, const QuadConfig& cfg);

/// Exact MI. Continuous channel: h(Y) - h(Y|X) by nested quadrature.
/// Poisson channel (negative-exponential prior only): marginal-series form.
double mutual_information_exact(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg);

/// E_{Y|x}[score^2], numerically (quadrature or mass-truncated series).
double fisher_information(const ChannelModel& c, double x, const QuadConfig& cfg);

FiProfile fisher_information_profile(const ChannelModel& c, const std::vector<double>& xs,
                                     const QuadConfig& cfg);

/// Second-order MI approximation: (1/2) int P(x) (x - xbar)^2 J(Y|x) dx.
double mi_second_order(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg);

/// Chapman-Robbins information K(x, x') = E_{Y|x}[((P(y|x') - P(y|x)) / P(y|x))^2].
double chapman_robbins_K(const ChannelModel& c, double x, double x_prime, const QuadConfig& cfg);

/// Second-order MI upper bound for discrete inputs:
/// (1/2) E_X E_X' [K(X, X')] over independent draws from the atom distribution.
double mi_upper_bound_discrete(const DiscretePrior& p, const ChannelModel& c, const QuadConfig& cfg);

/// Second-order MI for the two-input diagonal Gaussian model, by iterated
/// quadrature of the defining double integral.
double mi_second_order_mimo(const TwoInputGaussian& model, const QuadConfig& cfg);

}  // namespace infobound
