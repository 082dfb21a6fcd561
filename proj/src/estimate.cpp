#include "infobound/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infobound/channels.hpp"

namespace infobound {

namespace {

constexpr double kLogUnderflow = -690.0;  // ~ln(1e-300)

struct PosteriorMoments {
    double log_evidence;  // ln P(y)
    double mean;
    double second_moment;
};

PosteriorMoments posterior_moments(const PriorSpec& p, const ChannelModel& c, double y,
                                   const QuadConfig& cfg) {
    const double lo = p.support_lo(cfg);
    const double hi = p.support_hi(cfg);
    const GaussRule& rule = gauss_legendre(cfg.gauss_nodes);
    const double center = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);

    std::vector<double> lw(cfg.gauss_nodes, -std::numeric_limits<double>::infinity());
    std::vector<double> xs(cfg.gauss_nodes);
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.gauss_nodes; ++i) {
        const double x = center + half * rule.nodes[i];
        xs[i] = x;
        const double px = p.density(x);
        if (px <= 0) continue;
        lw[i] = std::log(px) + c.logpdf(y, x);
        m = std::max(m, lw[i]);
    }
    if (!std::isfinite(m)) throw DegenerateEvidenceError("evidence underflow: P(y) < 1e-300");
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < cfg.gauss_nodes; ++i) {
        if (!std::isfinite(lw[i])) continue;
        const double w = rule.weights[i] * std::exp(lw[i] - m);
        s0 += w;
        s1 += w * xs[i];
        s2 += w * xs[i] * xs[i];
    }
    const double log_evidence = m + std::log(half * s0);
    if (log_evidence < kLogUnderflow)
        throw DegenerateEvidenceError("evidence underflow: P(y) < 1e-300");
    return {log_evidence, s1 / s0, s2 / s0};
}

}  // namespace

double prior_second_moment(const PriorSpec& p) {
    if (p.kind() == PriorSpec::Kind::NegExp) return 2.0 * p.mean() * p.mean();
    return p.variance() + p.mean() * p.mean();
}

double posterior_mean(const PriorSpec& p, const ChannelModel& c, double y, const QuadConfig& cfg) {
    return posterior_moments(p, c, y, cfg).mean;
}

PosteriorSummary posterior_summary(const PriorSpec& p, const ChannelModel& c, double y,
                                   const QuadConfig& cfg) {
    const PosteriorMoments mo = posterior_moments(p, c, y, cfg);
    return {y, mo.mean, std::max(0.0, mo.second_moment - mo.mean * mo.mean)};
}

double mmse(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg) {
    if (c.kind() == ChannelModel::Kind::PoissonLinear) {
        if (p.kind() != PriorSpec::Kind::NegExp)
            throw std::invalid_argument("mmse: PoissonLinear requires a NegExp prior");
        return poisson_mmse(p.mean(), c.gain(), c.bias(), cfg);
    }
    const double x_lo = p.support_lo(cfg);
    const double x_hi = p.support_hi(cfg);
    const double m1 = c.gain() * x_lo + c.bias();
    const double m2 = c.gain() * x_hi + c.bias();
    const double pad = cfg.support_halfwidth_sigmas * std::sqrt(c.noise_variance());
    const double mean_sq_estimator = integrate(
        [&](double y) {
            const PosteriorMoments mo = posterior_moments(p, c, y, cfg);
            return std::exp(mo.log_evidence) * mo.mean * mo.mean;
        },
        Interval{std::min(m1, m2) - pad, std::max(m1, m2) + pad}, cfg);
    return prior_second_moment(p) - mean_sq_estimator;
}

std::vector<PosteriorSummary> posterior_variance_profile(const PriorSpec& p, const ChannelModel& c,
                                                         const std::vector<double>& y_grid,
                                                         const QuadConfig& cfg) {
    std::vector<PosteriorSummary> out;
    out.reserve(y_grid.size());
    for (double y : y_grid) out.push_back(posterior_summary(p, c, y, cfg));
    return out;
}

namespace {

// Outer integration points for one measurement: Gauss-Legendre nodes for a
// continuous channel, exhaustive 0..ymax enumeration for a discrete one.
struct OutcomeGrid {
    std::vector<double> points;
    std::vector<double> weights;  // quadrature weights (1 for discrete outcomes)
};

OutcomeGrid outcome_grid(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg,
                         int nodes) {
    OutcomeGrid g;
    if (c.kind() == ChannelModel::Kind::GaussianLinear) {
        const double x_lo = p.support_lo(cfg);
        const double x_hi = p.support_hi(cfg);
        const double m1 = c.gain() * x_lo + c.bias();
        const double m2 = c.gain() * x_hi + c.bias();
        const double pad = cfg.support_halfwidth_sigmas * std::sqrt(c.noise_variance());
        const double lo = std::min(m1, m2) - pad;
        const double hi = std::max(m1, m2) + pad;
        const GaussRule& rule = gauss_legendre(nodes);
        const double center = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        for (int i = 0; i < nodes; ++i) {
            g.points.push_back(center + half * rule.nodes[i]);
            g.weights.push_back(half * rule.weights[i]);
        }
        return g;
    }
    const double r_hi = std::max(c.rate(p.support_lo(cfg)), c.rate(p.support_hi(cfg)));
    const std::int64_t y_max = static_cast<std::int64_t>(r_hi + 10.0 * std::sqrt(r_hi)) + 20;
    for (std::int64_t y = 0; y <= y_max; ++y) {
        g.points.push_back(static_cast<double>(y));
        g.weights.push_back(1.0);
    }
    return g;
}

}  // namespace

std::pair<double, double> mmse_two_measurements(const PriorSpec& p, const ChannelModel& c1,
                                                const ChannelModel& c2, const QuadConfig& cfg) {
    const double single = mmse(p, c1, cfg);

    const int outer_nodes = std::min(cfg.gauss_nodes, 128);
    const OutcomeGrid gy = outcome_grid(p, c1, cfg, outer_nodes);
    const OutcomeGrid gz = outcome_grid(p, c2, cfg, outer_nodes);

    const double x_lo = p.support_lo(cfg);
    const double x_hi = p.support_hi(cfg);
    const GaussRule& rule = gauss_legendre(cfg.gauss_nodes);
    const double center = 0.5 * (x_hi + x_lo), half = 0.5 * (x_hi - x_lo);

    std::vector<double> xs(cfg.gauss_nodes), log_prior(cfg.gauss_nodes);
    for (int i = 0; i < cfg.gauss_nodes; ++i) {
        xs[i] = center + half * rule.nodes[i];
        const double px = p.density(xs[i]);
        log_prior[i] = px > 0 ? std::log(px) : -std::numeric_limits<double>::infinity();
    }

    double mean_sq_joint = 0.0;
    for (std::size_t iy = 0; iy < gy.points.size(); ++iy) {
        for (std::size_t iz = 0; iz < gz.points.size(); ++iz) {
            double m = -std::numeric_limits<double>::infinity();
            std::vector<double> lw(cfg.gauss_nodes);
            for (int i = 0; i < cfg.gauss_nodes; ++i) {
                if (!std::isfinite(log_prior[i])) {
                    lw[i] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                lw[i] = log_prior[i] + c1.logpdf(gy.points[iy], xs[i]) +
                        c2.logpdf(gz.points[iz], xs[i]);
                m = std::max(m, lw[i]);
            }
            if (!std::isfinite(m) || m < kLogUnderflow) continue;
            double s0 = 0.0, s1 = 0.0;
            for (int i = 0; i < cfg.gauss_nodes; ++i) {
                if (!std::isfinite(lw[i])) continue;
                const double w = rule.weights[i] * std::exp(lw[i] - m);
                s0 += w;
                s1 += w * xs[i];
            }
            if (s0 <= 0.0) continue;
            // (int x P p1 p2 dx)^2 / (int P p1 p2 dx), with the half-width
            // jacobian folded in once
            mean_sq_joint += gy.weights[iy] * gz.weights[iz] * half * std::exp(m) * s1 * s1 / s0;
        }
    }
    const double joint = prior_second_moment(p) - mean_sq_joint;
    return {single, joint};
}

}  // namespace infobound
