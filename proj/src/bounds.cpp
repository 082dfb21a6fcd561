#include "infobound/bounds.hpp"

#include <cmath>
#include <limits>

#include "infobound/channels.hpp"

namespace infobound {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kTwoPiE = 17.079468445347132;
}  // namespace

BoundValue equivocation_upper_bound(const PriorSpec& p, const ChannelModel& c,
                                    const QuadConfig& cfg) {
    const double m = mmse(p, c, cfg);
    if (m <= 0.0) return {-std::numeric_limits<double>::infinity(), true};
    return {0.5 * std::log(kTwoPiE * m), false};
}

BoundValue mi_lower_bound(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg) {
    const double m = mmse(p, c, cfg);
    if (m <= 0.0) return {std::numeric_limits<double>::infinity(), true};
    return {differential_entropy(p, cfg) - 0.5 * std::log(kTwoPiE * m), false};
}

double zero_bias_bound_value(double a_xbar) {
    // Eq-33 MMSE makes MMSE/xbar^2 = 1/(1 + a*xbar)
    return 0.5 * (1.0 - std::log(kTwoPi / (1.0 + a_xbar)));
}

double bound_threshold_zero_bias(const QuadConfig& cfg) {
    return find_root_bisect([](double t) { return zero_bias_bound_value(t); }, 0.25, 4.0, cfg);
}

DerivativeCheck gaussian_mi_snr_derivative_check(double var_x, double a, double var_n,
                                                 const QuadConfig& cfg) {
    if (var_x <= 0 || var_n <= 0 || a <= 0)
        throw std::invalid_argument("gaussian_mi_snr_derivative_check: parameters must be positive");
    const double snr = a * a * var_x / var_n;
    const double h = cfg.fd_step_rel * snr;
    const PriorSpec prior = PriorSpec::gaussian(0.0, var_x);
    auto mi_at = [&](double s) {
        const double gain = std::sqrt(s * var_n / var_x);
        return mutual_information_exact(prior, ChannelModel::gaussian_linear(gain, 0.0, var_n), cfg);
    };
    DerivativeCheck r;
    r.derivative = (mi_at(snr + h) - mi_at(snr - h)) / (2.0 * h);
    r.rhs = mmse(prior, ChannelModel::gaussian_linear(a, 0.0, var_n), cfg) / (2.0 * var_x);
    return r;
}

MimoBoundResult mimo_mi_lower_bound(const TwoInputGaussian& model, const QuadConfig& cfg) {
    (void)cfg;
    const double h_x = 0.5 * std::log(kTwoPiE * model.var_x) + 0.5 * std::log(kTwoPiE * model.var_u);
    const double m1 = 1.0 / (1.0 / model.var_x + model.gain_x * model.gain_x / model.noise_var);
    const double m2 = 1.0 / (1.0 / model.var_u + model.gain_u * model.gain_u / model.noise_var);
    MimoBoundResult r;
    r.mmse_avg = 0.5 * (m1 + m2);
    r.bound = h_x - std::log(kTwoPiE * r.mmse_avg);  // N/2 = 1 for N = 2
    const double snr1 = model.gain_x * model.gain_x * model.var_x / model.noise_var;
    const double snr2 = model.gain_u * model.gain_u * model.var_u / model.noise_var;
    r.exact_mi = 0.5 * std::log1p(snr1) + 0.5 * std::log1p(snr2);
    return r;
}

InfoReport make_info_report(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg) {
    InfoReport rep;
    rep.h_x = differential_entropy(p, cfg);
    rep.mi_exact = mutual_information_exact(p, c, cfg);
    rep.mi_second_order = mi_second_order(p, c, cfg);
    rep.mmse = mmse(p, c, cfg);
    const BoundValue lb = mi_lower_bound(p, c, cfg);
    rep.mi_lower_bound = lb.value;
    rep.mi_lower_bound_infinite = lb.infinite;

    const double lo = p.support_lo(cfg);
    const double hi = p.support_hi(cfg);
    std::vector<double> xs;
    for (int i = 0; i < 17; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / 17.0;
        if (c.kind() == ChannelModel::Kind::PoissonLinear && c.rate(x) <= 0) continue;
        xs.push_back(x);
    }
    const FiProfile prof = fisher_information_profile(c, xs, cfg);
    for (std::size_t i = 0; i < prof.xs.size(); ++i)
        rep.fi_profile.emplace_back(prof.xs[i], prof.j_values[i]);

    rep.flags["mmse_le_prior_variance"] = rep.mmse <= p.variance() + 1e-9;
    rep.flags["mi_ge_lower_bound"] = lb.infinite || rep.mi_exact >= rep.mi_lower_bound - 1e-6;
    rep.flags["mi_nonnegative"] = rep.mi_exact >= -1e-9;
    const BoundValue eq = equivocation_upper_bound(p, c, cfg);
    rep.flags["equivocation_bounded"] =
        eq.infinite || (rep.h_x - rep.mi_exact) <= eq.value + 1e-6;
    return rep;
}

}  // namespace infobound
