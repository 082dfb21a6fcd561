#include "infobound/core.hpp"

#include <cmath>
#include <algorithm>

namespace infobound {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void QuadConfig::validate() const {
    if (gauss_nodes <= 0) throw std::invalid_argument("gauss_nodes must be positive");
    if (support_halfwidth_sigmas <= 0) throw std::invalid_argument("support_halfwidth_sigmas must be positive");
    if (series_tail_mass <= 0 || series_tail_mass >= 1e-6)
        throw std::invalid_argument("series_tail_mass must be in (0, 1e-6)");
    if (root_tol <= 0) throw std::invalid_argument("root_tol must be positive");
    if (fd_step_rel <= 0) throw std::invalid_argument("fd_step_rel must be positive");
}

PriorSpec PriorSpec::gaussian(double mean, double variance) {
    if (variance <= 0) throw std::invalid_argument("Gaussian prior variance must be positive");
    PriorSpec p;
    p.kind_ = Kind::Gaussian;
    p.mean_ = mean;
    p.variance_ = variance;
    return p;
}

PriorSpec PriorSpec::neg_exp(double mean) {
    if (mean <= 0) throw std::invalid_argument("NegExp prior mean must be positive");
    PriorSpec p;
    p.kind_ = Kind::NegExp;
    p.mean_ = mean;
    p.variance_ = mean * mean;  // analytic property of the negative-exponential law
    return p;
}

PriorSpec PriorSpec::tabulated(std::vector<double> grid, std::vector<double> density) {
    if (grid.size() < 2 || grid.size() != density.size())
        throw std::invalid_argument("Tabulated prior needs matching grid/density with >= 2 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (density[i] < 0) throw std::invalid_argument("Tabulated density must be nonnegative");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw std::invalid_argument("Tabulated grid must be strictly increasing");
    }
    double mass = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double dx = grid[i + 1] - grid[i];
        mass += 0.5 * dx * (density[i] + density[i + 1]);
        m1 += 0.5 * dx * (grid[i] * density[i] + grid[i + 1] * density[i + 1]);
        m2 += 0.5 * dx * (grid[i] * grid[i] * density[i] + grid[i + 1] * grid[i + 1] * density[i + 1]);
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("Tabulated density must integrate to 1 (trapezoid, 1e-9)");
    PriorSpec p;
    p.kind_ = Kind::Tabulated;
    p.mean_ = m1;
    p.variance_ = m2 - m1 * m1;
    p.grid_ = std::move(grid);
    p.density_ = std::move(density);
    return p;
}

double PriorSpec::density(double x) const {
    switch (kind_) {
        case Kind::Gaussian: {
            const double d = x - mean_;
            return std::exp(-d * d / (2.0 * variance_)) / std::sqrt(kTwoPi * variance_);
        }
        case Kind::NegExp:
            if (x < 0) return 0.0;
            return std::exp(-x / mean_) / mean_;
        case Kind::Tabulated: {
            if (x < grid_.front() || x > grid_.back())
                throw std::domain_error("Tabulated prior queried outside its grid");
            // linear interpolation on the grid
            auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
            if (it == grid_.begin()) return density_.front();
            const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
            const std::size_t lo = hi - 1;
            const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
            return density_[lo] + t * (density_[hi] - density_[lo]);
        }
    }
    return 0.0;
}

double PriorSpec::support_lo(const QuadConfig& cfg) const {
    switch (kind_) {
        case Kind::Gaussian: return mean_ - cfg.support_halfwidth_sigmas * std::sqrt(variance_);
        case Kind::NegExp: return 0.0;
        case Kind::Tabulated: return grid_.front();
    }
    return 0.0;
}

double PriorSpec::support_hi(const QuadConfig& cfg) const {
    switch (kind_) {
        case Kind::Gaussian: return mean_ + cfg.support_halfwidth_sigmas * std::sqrt(variance_);
        case Kind::NegExp: return 60.0 * mean_;  // tail mass e^-60 < 1e-26
        case Kind::Tabulated: return grid_.back();
    }
    return 0.0;
}

ChannelModel ChannelModel::gaussian_linear(double gain, double bias, double noise_variance) {
    if (noise_variance <= 0) throw std::invalid_argument("Gaussian channel noise variance must be positive");
    ChannelModel c;
    c.kind_ = Kind::GaussianLinear;
    c.gain_ = gain;
    c.bias_ = bias;
    c.noise_variance_ = noise_variance;
    return c;
}

ChannelModel ChannelModel::poisson_linear(double gain, double bias) {
    if (gain <= 0) throw std::invalid_argument("Poisson channel gain must be positive");
    if (bias < 0) throw std::invalid_argument("Poisson channel bias must be nonnegative");
    ChannelModel c;
    c.kind_ = Kind::PoissonLinear;
    c.gain_ = gain;
    c.bias_ = bias;
    c.noise_variance_ = 0.0;
    return c;
}

double ChannelModel::logpdf(double y, double x) const {
    if (kind_ == Kind::GaussianLinear) {
        const double d = y - gain_ * x - bias_;
        return -d * d / (2.0 * noise_variance_) - 0.5 * std::log(kTwoPi * noise_variance_);
    }
    const double r = rate(x);
    if (r <= 0) throw std::domain_error("Poisson rate a*x + b must be positive");
    if (y < 0 || y != std::floor(y)) throw std::domain_error("Poisson outcome must be a nonnegative integer");
    return y * std::log(r) - r - std::lgamma(y + 1.0);
}

double ChannelModel::score(double y, double x) const {
    if (kind_ == Kind::GaussianLinear)
        return gain_ * (y - gain_ * x - bias_) / noise_variance_;
    const double r = rate(x);
    if (r <= 0) throw std::domain_error("Poisson rate a*x + b must be positive");
    if (y < 0 || y != std::floor(y)) throw std::domain_error("Poisson outcome must be a nonnegative integer");
    return gain_ * y / r - gain_;
}

double prior_density(const PriorSpec& p, double x) { return p.density(x); }
double channel_logpdf(const ChannelModel& c, double y, double x) { return c.logpdf(y, x); }
double channel_score(const ChannelModel& c, double y, double x) { return c.score(y, x); }

}  // namespace infobound
