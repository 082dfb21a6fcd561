#include "infobound/channels.hpp"

#include <cmath>

namespace infobound {

GaussianClosedForms gaussian_closed_forms(double var_x, double a, double b, double var_n) {
    (void)b;  // the bias carries no information
    if (var_x <= 0 || var_n <= 0) throw std::invalid_argument("variances must be positive");
    GaussianClosedForms r;
    r.snr = a * a * var_x / var_n;
    r.mi = 0.5 * std::log1p(r.snr);
    r.mmse = 1.0 / (1.0 / var_x + a * a / var_n);
    r.fi = a * a / var_n;
    return r;
}

PoissonMarginal::PoissonMarginal(double xbar, double a, double b) : xbar_(xbar), a_(a), b_(b) {
    if (xbar <= 0) throw std::invalid_argument("PoissonMarginal: xbar must be positive");
    if (a <= 0) throw std::invalid_argument("PoissonMarginal: gain must be positive");
    if (b < 0) throw std::invalid_argument("PoissonMarginal: bias must be nonnegative");
    const double ax = a * xbar;
    log_alpha_ = std::log(ax) - std::log1p(ax);
    log_axp1_ = std::log1p(ax);
    big_u_ = b * (ax + 1.0) / ax;
    log_u_ = b > 0 ? std::log(big_u_) : 0.0;
    log_q_.push_back(0.0);     // ln 1 at y = 0
    log_term_.push_back(0.0);  // ln U^0/0!
}

double PoissonMarginal::log_p(std::int64_t y) const {
    if (y < 0) throw std::domain_error("PoissonMarginal: y must be nonnegative");
    if (b_ == 0.0) {
        // geometric law: p(y) = alpha^y / (aX+1)
        return y * log_alpha_ - log_axp1_;
    }
    // ln p(y) = y ln(alpha) - ln(aX+1) - b + ln sum_{k<=y} U^k/k!
    // (the exp(b/aX) prefactor and e^{-U} from Gamma(y+1,U) combine to e^{-b})
    while (static_cast<std::int64_t>(log_q_.size()) <= y) {
        const std::int64_t k = static_cast<std::int64_t>(log_q_.size());
        const double lt = log_term_.back() + log_u_ - std::log(static_cast<double>(k));
        const double prev = log_q_.back();
        const double hi = std::max(prev, lt);
        log_q_.push_back(hi + std::log(std::exp(prev - hi) + std::exp(lt - hi)));
        log_term_.push_back(lt);
    }
    return y * log_alpha_ - log_axp1_ - b_ + log_q_[static_cast<std::size_t>(y)];
}

double poisson_marginal(double xbar, double a, double b, std::int64_t y) {
    return PoissonMarginal(xbar, a, b).p(y);
}

double poisson_mmse_closed_b0(double xbar, double a) { return xbar * xbar / (1.0 + a * xbar); }

namespace {

// Runs a series over y with the truncation rule: cumulative marginal mass
// exceeds 1 - series_tail_mass AND the current term has fallen below 1e-16 of
// the accumulated sum.
template <typename TermFn>
double accumulate_marginal_series(const PoissonMarginal& marginal, const QuadConfig& cfg,
                                  TermFn&& term_at) {
    const double mean_y = marginal.mean_y();
    const std::int64_t min_y = static_cast<std::int64_t>(mean_y + 10.0 * std::sqrt(mean_y)) + 10;
    double sum = 0.0, comp = 0.0, mass = 0.0, p_prev = 0.0, t_prev = 0.0;
    for (std::int64_t y = 0; y < 10'000'000; ++y) {
        const double t = term_at(y);
        const double u = t - comp;
        const double s = sum + u;
        comp = (s - sum) - u;
        sum = s;
        const double p = marginal.p(y);
        mass += p;
        // accumulated mass can plateau a hair below 1 - tail from rounding
        // alone; the geometric bound is rigorous because p(y+1)/p(y)
        // decreases monotonically toward alpha < 1
        const double ratio = p_prev > 0.0 ? p / p_prev : 1.0;
        const bool tail_ok = mass > 1.0 - cfg.series_tail_mass ||
                             (ratio < 1.0 && p * ratio / (1.0 - ratio) < cfg.series_tail_mass);
        // bound the remaining series, not just the last term: past the mode
        // |t| decays geometrically, so tail <= |t| r / (1 - r)
        const double tr = std::abs(t_prev) > 0.0 ? std::abs(t) / std::abs(t_prev) : 1.0;
        const bool term_tail_ok =
            std::abs(t) == 0.0 ||
            (tr < 1.0 && std::abs(t) * tr / (1.0 - tr) < 1e-16 * std::abs(sum));
        if (y >= min_y && tail_ok && term_tail_ok) return sum;
        p_prev = p;
        t_prev = t;
    }
    throw std::runtime_error("Poisson marginal series did not converge within 1e7 terms");
}

}  // namespace

double poisson_mmse_series(double xbar, double a, double b, const QuadConfig& cfg) {
    PoissonMarginal marginal(xbar, a, b);
    const double series = accumulate_marginal_series(marginal, cfg, [&](std::int64_t y) {
        const double lp1 = marginal.log_p(y + 1);
        const double lp0 = marginal.log_p(y);
        const double yp1 = static_cast<double>(y + 1);
        return yp1 * yp1 * std::exp(2.0 * lp1 - lp0);
    });
    return 2.0 * xbar * xbar + 2.0 * (b / a) * xbar + (b * b) / (a * a) - series / (a * a);
}

double poisson_mmse(double xbar, double a, double b, const QuadConfig& cfg) {
    const double series_value = poisson_mmse_series(xbar, a, b, cfg);
    if (b == 0.0) {
        const double closed = poisson_mmse_closed_b0(xbar, a);
        if (std::abs(series_value - closed) > 1e-8 * closed)
            throw std::runtime_error("zero-bias Poisson MMSE series disagrees with closed form");
        return closed;
    }
    return series_value;
}

double poisson_mi(double xbar, double a, double b, const QuadConfig& cfg) {
    PoissonMarginal marginal(xbar, a, b);
    const double rate_term = integrate(
        [&](double x) {
            const double r = a * x + b;
            const double w = std::exp(-x / xbar) / xbar;
            if (r <= 0.0) return 0.0;
            return w * r * (std::log(r) - 1.0);
        },
        Interval{0.0, 60.0 * xbar}, cfg);
    const double entropy_term = accumulate_marginal_series(marginal, cfg, [&](std::int64_t y) {
        const double lp = marginal.log_p(y);
        const double p = std::exp(lp);
        if (p == 0.0) return 0.0;
        return p * (lp + std::lgamma(static_cast<double>(y) + 1.0));
    });
    return rate_term - entropy_term;
}

std::int64_t poisson_marginal_extent(const PoissonMarginal& marginal, const QuadConfig& cfg) {
    const double mean_y = marginal.mean_y();
    const std::int64_t min_y = static_cast<std::int64_t>(mean_y + 10.0 * std::sqrt(mean_y)) + 10;
    double mass = 0.0, p_prev = 0.0;
    for (std::int64_t y = 0; y < 10'000'000; ++y) {
        const double p = marginal.p(y);
        mass += p;
        const double ratio = p_prev > 0.0 ? p / p_prev : 1.0;
        const bool tail_ok = mass > 1.0 - cfg.series_tail_mass ||
                             (ratio < 1.0 && p * ratio / (1.0 - ratio) < cfg.series_tail_mass);
        if (y >= min_y && tail_ok) return y;
        p_prev = p;
    }
    throw std::runtime_error("Poisson marginal mass did not reach target within 1e7 terms");
}

}  // namespace infobound
