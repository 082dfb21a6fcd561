#include "infobound/info.hpp"

#include <algorithm>
#include <cmath>

#include "infobound/channels.hpp"

namespace infobound {

namespace {

constexpr double kTwoPiE = 17.079468445347132;  // 2*pi*e

Interval conditional_y_support(const ChannelModel& c, double x_lo, double x_hi,
                               const QuadConfig& cfg) {
    const double m1 = c.gain() * x_lo + c.bias();
    const double m2 = c.gain() * x_hi + c.bias();
    const double pad = cfg.support_halfwidth_sigmas * std::sqrt(c.noise_variance());
    return {std::min(m1, m2) - pad, std::max(m1, m2) + pad};
}

// Conditional expectation E_{Y|x}[g(y)] for the Poisson branch, truncated by
// conditional mass.
template <typename Fn>
double poisson_conditional_mean(const ChannelModel& c, double x, const QuadConfig& cfg, Fn&& g) {
    const double r = c.rate(x);
    if (r <= 0) throw std::domain_error("Poisson rate a*x + b must be positive");
    const std::int64_t min_y = static_cast<std::int64_t>(r + 10.0 * std::sqrt(r)) + 10;
    double sum = 0.0, mass = 0.0;
    double log_p = -r;  // ln p(0|x)
    const double log_r = std::log(r);
    for (std::int64_t y = 0;; ++y) {
        const double p = std::exp(log_p);
        sum += p * g(static_cast<double>(y));
        mass += p;
        if (y >= min_y && mass > 1.0 - cfg.series_tail_mass) return sum;
        if (y > 10'000'000) throw std::runtime_error("Poisson conditional series did not converge");
        log_p += log_r - std::log(static_cast<double>(y + 1));
    }
}

}  // namespace

double differential_entropy(const PriorSpec& p, const QuadConfig& cfg) {
    switch (p.kind()) {
        case PriorSpec::Kind::Gaussian:
            return 0.5 * std::log(kTwoPiE * p.variance());
        case PriorSpec::Kind::NegExp:
            return 1.0 + std::log(p.mean());
        case PriorSpec::Kind::Tabulated: {
            (void)cfg;
            const auto& xs = p.grid();
            const auto& ds = p.grid_density();
            auto plogp = [](double d) { return d > 0 ? -d * std::log(d) : 0.0; };
            double h = 0.0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i)
                h += 0.5 * (xs[i + 1] - xs[i]) * (plogp(ds[i]) + plogp(ds[i + 1]));
            return h;
        }
    }
    return 0.0;
}

double mutual_information_exact(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg) {
    if (c.kind() == ChannelModel::Kind::PoissonLinear) {
        if (p.kind() != PriorSpec::Kind::NegExp)
            throw std::invalid_argument(
                "mutual_information_exact: PoissonLinear requires a NegExp prior");
        return poisson_mi(p.mean(), c.gain(), c.bias(), cfg);
    }
    const double x_lo = p.support_lo(cfg);
    const double x_hi = p.support_hi(cfg);
    const Interval ys = conditional_y_support(c, x_lo, x_hi, cfg);
    const double h_y_given_x = 0.5 * std::log(kTwoPiE * c.noise_variance());
    const double h_y = integrate(
        [&](double y) {
            const double py = integrate(
                [&](double x) { return p.density(x) * std::exp(c.logpdf(y, x)); },
                Interval{x_lo, x_hi}, cfg);
            return py > 0 ? -py * std::log(py) : 0.0;
        },
        ys, cfg);
    return h_y - h_y_given_x;
}

double fisher_information(const ChannelModel& c, double x, const QuadConfig& cfg) {
    if (c.kind() == ChannelModel::Kind::GaussianLinear) {
        const Interval ys = conditional_y_support(c, x, x, cfg);
        return integrate(
            [&](double y) {
                const double s = c.score(y, x);
                return std::exp(c.logpdf(y, x)) * s * s;
            },
            ys, cfg);
    }
    return poisson_conditional_mean(c, x, cfg, [&](double y) {
        const double s = c.score(y, x);
        return s * s;
    });
}

FiProfile fisher_information_profile(const ChannelModel& c, const std::vector<double>& xs,
                                     const QuadConfig& cfg) {
    FiProfile prof;
    prof.xs = xs;
    prof.j_values.reserve(xs.size());
    for (double x : xs) prof.j_values.push_back(fisher_information(c, x, cfg));
    return prof;
}

double mi_second_order(const PriorSpec& p, const ChannelModel& c, const QuadConfig& cfg) {
    const double xbar = p.mean();
    return 0.5 * integrate(
                     [&](double x) {
                         const double d = x - xbar;
                         return p.density(x) * d * d * fisher_information(c, x, cfg);
                     },
                     Interval{p.support_lo(cfg), p.support_hi(cfg)}, cfg);
}

double chapman_robbins_K(const ChannelModel& c, double x, double x_prime, const QuadConfig& cfg) {
    if (x == x_prime) return 0.0;
    // integrand (p' - p)^2 / p expanded as p'^2/p - 2p' + p, evaluated in log
    // space so the ratio term stays finite far into the tails
    if (c.kind() == ChannelModel::Kind::GaussianLinear) {
        const double m1 = c.gain() * x + c.bias();
        const double m2 = c.gain() * x_prime + c.bias();
        const double m_ratio = 2.0 * m2 - m1;  // mean of the p'^2/p lobe
        const double pad = cfg.support_halfwidth_sigmas * std::sqrt(c.noise_variance());
        const Interval ys{std::min({m1, m2, m_ratio}) - pad, std::max({m1, m2, m_ratio}) + pad};
        return integrate(
            [&](double y) {
                const double l1 = c.logpdf(y, x);
                const double l2 = c.logpdf(y, x_prime);
                return std::exp(2.0 * l2 - l1) - 2.0 * std::exp(l2) + std::exp(l1);
            },
            ys, cfg);
    }
    const double r1 = c.rate(x);
    const double r2 = c.rate(x_prime);
    if (r1 <= 0 || r2 <= 0) throw std::domain_error("Poisson rate a*x + b must be positive");
    const double r_max = std::max({r1, r2, r2 * r2 / r1});
    const std::int64_t min_y = static_cast<std::int64_t>(r_max + 10.0 * std::sqrt(r_max)) + 10;
    double sum = 0.0, mass1 = 0.0, mass2 = 0.0;
    for (std::int64_t y = 0;; ++y) {
        const double yd = static_cast<double>(y);
        const double l1 = c.logpdf(yd, x);
        const double l2 = c.logpdf(yd, x_prime);
        sum += std::exp(2.0 * l2 - l1) - 2.0 * std::exp(l2) + std::exp(l1);
        mass1 += std::exp(l1);
        mass2 += std::exp(l2);
        if (y >= min_y && mass1 > 1.0 - cfg.series_tail_mass && mass2 > 1.0 - cfg.series_tail_mass)
            return sum;
        if (y > 10'000'000)
            throw std::runtime_error("Chapman-Robbins series did not converge within 1e7 terms");
    }
}

double mi_upper_bound_discrete(const DiscretePrior& p, const ChannelModel& c,
                               const QuadConfig& cfg) {
    if (p.atoms.size() != p.probs.size() || p.atoms.empty())
        throw std::invalid_argument("mi_upper_bound_discrete: malformed atom distribution");
    double bound = 0.0;
    for (std::size_t i = 0; i < p.atoms.size(); ++i)
        for (std::size_t j = 0; j < p.atoms.size(); ++j) {
            if (i == j) continue;
            bound += 0.5 * p.probs[i] * p.probs[j] * chapman_robbins_K(c, p.atoms[i], p.atoms[j], cfg);
        }
    return bound;
}

double mi_second_order_mimo(const TwoInputGaussian& model, const QuadConfig& cfg) {
    const double jxx = model.gain_x * model.gain_x / model.noise_var;
    const double juu = model.gain_u * model.gain_u / model.noise_var;
    const double jxu = model.gain_x * model.gain_u / model.noise_var;
    const PriorSpec px = PriorSpec::gaussian(0.0, model.var_x);
    const PriorSpec pu = PriorSpec::gaussian(0.0, model.var_u);
    const Interval ix{px.support_lo(cfg), px.support_hi(cfg)};
    const Interval iu{pu.support_lo(cfg), pu.support_hi(cfg)};
    return 0.5 * integrate(
                     [&](double x) {
                         return px.density(x) *
                                integrate(
                                    [&](double u) {
                                        return pu.density(u) *
                                               (x * x * jxx + 2.0 * x * u * jxu + u * u * juu);
                                    },
                                    iu, cfg);
                     },
                     ix, cfg);
}

}  // namespace infobound
