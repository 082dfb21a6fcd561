#pragma once

#include "infobound/core.hpp"
#include "infobound/estimate.hpp"
#include "infobound/info.hpp"
#include "infobound/quad.hpp"

namespace infobound {

/// A bound value that may be infinite (deterministic channel, MMSE = 0).
struct BoundValue {
    double value;
    bool infinite;
};

/// h(X) - (1/2) ln(2 pi e MMSE); may be negative (then trivial).
BoundValue mi_lower_bound(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg);

/// (1/2) ln(2 pi e MMSE) >= h(X|Y).
BoundValue equivocation_upper_bound(const PriorSpec& p, const ChannelModel& c,
                                    const QuadConfig& cfg);

/// Root in a*xbar of the zero-bias Poisson lower bound; equals 2*pi/e - 1.
double bound_threshold_zero_bias(const QuadConfig& cfg);

/// The zero-bias Poisson lower-bound value at normalized gain a*xbar
/// (independent of xbar itself).
double zero_bias_bound_value(double a_xbar);

struct DerivativeCheck {
    double derivative;  // finite-difference d MI / d SNR
    double rhs;         // MMSE / (2 sigma_X^2)
};
DerivativeCheck gaussian_mi_snr_derivative_check(double var_x, double a, double var_n,
                                                 const QuadConfig& cfg);

struct MimoBoundResult {
    double bound;     // h(X) - (N/2) ln(2 pi e MMSE_avg)
    double exact_mi;  // sum of per-component scalar MIs (diagonal model)
    double mmse_avg;
};
MimoBoundResult mimo_mi_lower_bound(const TwoInputGaussian& model, const QuadConfig& cfg);

/// Bundle of every per-pair quantity, with inequality flags.
InfoReport make_info_report(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg);

}  // namespace infobound
