#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infobound {

/// Numerical configuration shared by all quadrature / series computations.
struct QuadConfig {
    int gauss_nodes = 256;               // Gauss-Legendre node count
    double support_halfwidth_sigmas = 12.0;  // Gaussian support truncation
    double series_tail_mass = 1e-12;     // stop criterion for sums over y
    double root_tol = 1e-9;              // bisection tolerance
    double fd_step_rel = 1e-5;           // relative finite-difference step

    void validate() const;
};

class PriorSpec {
public:
    enum class Kind { Gaussian, NegExp, Tabulated };

    static PriorSpec gaussian(double mean, double variance);
    static PriorSpec neg_exp(double mean);
    static PriorSpec tabulated(std::vector<double> grid, std::vector<double> density);

    Kind kind() const { return kind_; }
    double mean() const { return mean_; }
    double variance() const { return variance_; }

    /// P(x); zero outside support. Tabulated queries outside the grid throw.
    double density(double x) const;

    double support_lo(const QuadConfig& cfg) const;
    double support_hi(const QuadConfig& cfg) const;

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& grid_density() const { return density_; }

private:
    PriorSpec() = default;
    Kind kind_ = Kind::Gaussian;
    double mean_ = 0.0;
    double variance_ = 1.0;
    std::vector<double> grid_;
    std::vector<double> density_;
};

class ChannelModel {
public:
    enum class Kind { GaussianLinear, PoissonLinear };

    static ChannelModel gaussian_linear(double gain, double bias, double noise_variance);
    static ChannelModel poisson_linear(double gain, double bias);

    Kind kind() const { return kind_; }
    bool discrete_output() const { return kind_ == Kind::PoissonLinear; }
    double gain() const { return gain_; }
    double bias() const { return bias_; }
    double noise_variance() const { return noise_variance_; }

    /// ln P(y|x). Poisson branch works in log space (safe up to y ~ 1e6).
    double logpdf(double y, double x) const;

    /// d/dx ln P(y|x), analytic.
    double score(double y, double x) const;

    double rate(double x) const { return gain_ * x + bias_; }  // Poisson only

private:
    ChannelModel() = default;
    Kind kind_ = Kind::GaussianLinear;
    double gain_ = 1.0;
    double bias_ = 0.0;
    double noise_variance_ = 1.0;
};

/// Computed quantities for one (prior, channel) pair.
struct InfoReport {
    double h_x = 0.0;
    double mi_exact = 0.0;
    double mi_second_order = 0.0;
    double mmse = 0.0;
    double mi_lower_bound = 0.0;
    bool mi_lower_bound_infinite = false;
    std::vector<std::pair<double, double>> fi_profile;  // (x, J(Y|x))
    std::map<std::string, bool> flags;
};

double prior_density(const PriorSpec& p, double x);
double channel_logpdf(const ChannelModel& c, double y, double x);
double channel_score(const ChannelModel& c, double y, double x);

}  // namespace infobound
