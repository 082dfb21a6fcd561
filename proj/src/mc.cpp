#include "infobound/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "infobound/channels.hpp"
#include "infobound/estimate.hpp"

namespace infobound {

namespace {

constexpr double kLnTwoPi = 1.8378770664093454836;

// --- PRNG: xoshiro256++ with splitmix64 seeding, one stream per batch ---

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed ^ (0xA0761D6478BD642FULL * (stream + 1));
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0, 1].
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double neg_exp(double mean) { return -mean * std::log(uniform()); }

    std::int64_t poisson(double rate) {
        if (rate <= 0) return 0;
        return rate < 30.0 ? poisson_inversion(rate) : poisson_ptrs(rate);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::int64_t poisson_inversion(double rate) {
        const double L = std::exp(-rate);
        double p = 1.0;
        std::int64_t k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > L);
        return k - 1;
    }

    // Hormann's transformed rejection (PTRS): exact for rate >= ~10.
    std::int64_t poisson_ptrs(double mu) {
        const double bb = 0.931 + 2.53 * std::sqrt(mu);
        const double aa = -0.059 + 0.02483 * bb;
        const double inv_alpha = 1.1239 + 1.1328 / (bb - 3.4);
        const double v_r = 0.9277 - 3.6224 / (bb - 2.0);
        const double log_mu = std::log(mu);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * aa / us + bb) * u + mu + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
            if (kf < 0 || (us < 0.013 && v > us)) continue;
            const double k = kf;
            if (std::log(v) + std::log(inv_alpha) - std::log(aa / (us * us) + bb) <=
                k * log_mu - mu - std::lgamma(k + 1.0))
                return static_cast<std::int64_t>(kf);
        }
    }

    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// --- Prior sampling ---

class TabulatedSampler {
public:
    explicit TabulatedSampler(const PriorSpec& p) : grid_(p.grid()), dens_(p.grid_density()) {
        cdf_.resize(grid_.size(), 0.0);
        for (std::size_t i = 1; i < grid_.size(); ++i)
            cdf_[i] = cdf_[i - 1] +
                      0.5 * (dens_[i] + dens_[i - 1]) * (grid_[i] - grid_[i - 1]);
        const double total = cdf_.back();
        for (auto& c : cdf_) c /= total;
        for (auto& d : dens_) d /= total;
    }

    double sample(double u) const {
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t i = it == cdf_.begin()
                                  ? 1
                                  : static_cast<std::size_t>(it - cdf_.begin());
        const std::size_t j = std::min(i, cdf_.size() - 1);
        const double h = grid_[j] - grid_[j - 1];
        const double p0 = dens_[j - 1];
        const double slope = (dens_[j] - p0) / h;
        const double target = u - cdf_[j - 1];
        // solve p0 t + slope t^2 / 2 = target for t in [0, h]
        double t;
        if (std::fabs(slope) < 1e-300) {
            t = p0 > 0 ? target / p0 : 0.0;
        } else {
            const double disc = p0 * p0 + 2.0 * slope * target;
            t = (-p0 + std::sqrt(std::max(0.0, disc))) / slope;
        }
        return grid_[j - 1] + std::clamp(t, 0.0, h);
    }

private:
    std::vector<double> grid_, dens_, cdf_;
};

double sample_prior(const PriorSpec& p, Rng& rng, const TabulatedSampler* tab) {
    switch (p.kind()) {
        case PriorSpec::Kind::Gaussian:
            return p.mean() + std::sqrt(p.variance()) * rng.normal();
        case PriorSpec::Kind::NegExp:
            return rng.neg_exp(p.mean());
        case PriorSpec::Kind::Tabulated:
            return tab->sample(rng.uniform());
    }
    throw std::logic_error("sample_prior: unreachable");
}

// --- Memoized Poisson/NegExp marginal table (grown on demand) ---

class PoissonTables {
public:
    PoissonTables(double xbar, double a, double b) : marginal_(xbar, a, b) {}

    double log_p(std::int64_t y) {
        grow(y);
        return log_p_[static_cast<std::size_t>(y)];
    }

    double posterior_mean(std::int64_t y) {
        grow(y + 1);
        return xhat_[static_cast<std::size_t>(y)];
    }

private:
    void grow(std::int64_t y) {
        while (static_cast<std::int64_t>(log_p_.size()) <= y) {
            const std::int64_t k = static_cast<std::int64_t>(log_p_.size());
            log_p_.push_back(marginal_.log_p(k));
            if (k >= 1) {
                // conditional mean: ((y+1) p(y+1) / p(y) - b) / a
                const double ratio =
                    static_cast<double>(k) * std::exp(log_p_[k] - log_p_[k - 1]);
                xhat_.push_back((ratio - marginal_.b()) / marginal_.a());
            }
        }
    }

    PoissonMarginal marginal_;
    std::vector<double> log_p_;
    std::vector<double> xhat_;
};

// --- Batch driver ---

struct BatchAccumulator {
    double sum = 0.0;
    std::int64_t accepted = 0;
    std::int64_t skipped = 0;
};

McResult run_batches(const McConfig& mcfg,
                     const std::function<void(Rng&, std::int64_t, BatchAccumulator&)>& body) {
    mcfg.validate();
    const std::int64_t per_batch = mcfg.n_samples / mcfg.batches;
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(mcfg.batches));
    std::int64_t skipped = 0;
    for (int b = 0; b < mcfg.batches; ++b) {
        Rng rng(mcfg.seed, static_cast<std::uint64_t>(b));
        BatchAccumulator acc;
        body(rng, per_batch, acc);
        skipped += acc.skipped;
        means.push_back(acc.accepted > 0 ? acc.sum / static_cast<double>(acc.accepted) : 0.0);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    const double nb = static_cast<double>(means.size());
    const double se = std::sqrt(var / (nb * (nb - 1.0)));
    McResult r;
    r.estimate = mean;
    r.stderr_est = se;
    r.skipped = skipped;
    r.skip_warning = static_cast<double>(skipped) > 1e-3 * static_cast<double>(mcfg.n_samples);
    return r;
}

}  // namespace

void McConfig::validate() const {
    if (n_samples < 10'000) throw std::invalid_argument("McConfig: n_samples must be >= 1e4");
    if (batches <= 0) throw std::invalid_argument("McConfig: batches must be positive");
    if (n_samples % batches != 0)
        throw std::invalid_argument("McConfig: batches must divide n_samples");
}

McResult mc_mmse(const PriorSpec& p, const ChannelModel& c, const McConfig& mcfg,
                 const QuadConfig& cfg) {
    cfg.validate();
    const bool tabulated = p.kind() == PriorSpec::Kind::Tabulated;
    const TabulatedSampler tab_sampler = tabulated ? TabulatedSampler(p)
                                                   : TabulatedSampler(PriorSpec::tabulated(
                                                         {0.0, 1.0}, {1.0, 1.0}));
    const TabulatedSampler* tab = tabulated ? &tab_sampler : nullptr;

    if (c.kind() == ChannelModel::Kind::GaussianLinear &&
        p.kind() == PriorSpec::Kind::Gaussian) {
        const double a = c.gain(), b = c.bias(), vn = c.noise_variance();
        const double k = a * p.variance() / (a * a * p.variance() + vn);
        const double sn = std::sqrt(vn);
        return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
            for (std::int64_t i = 0; i < n; ++i) {
                const double x = p.mean() + std::sqrt(p.variance()) * rng.normal();
                const double y = a * x + b + sn * rng.normal();
                const double xhat = p.mean() + k * (y - a * p.mean() - b);
                const double e = xhat - x;
                acc.sum += e * e;
                ++acc.accepted;
            }
        });
    }

    if (c.kind() == ChannelModel::Kind::PoissonLinear) {
        if (p.kind() != PriorSpec::Kind::NegExp)
            throw std::invalid_argument("mc_mmse: PoissonLinear requires a NegExp prior");
        if (c.gain() == 0.0) {
            return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
                for (std::int64_t i = 0; i < n; ++i) {
                    const double x = rng.neg_exp(p.mean());
                    const double e = p.mean() - x;
                    acc.sum += e * e;
                    ++acc.accepted;
                }
            });
        }
        PoissonTables tables(p.mean(), c.gain(), c.bias());
        return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
            for (std::int64_t i = 0; i < n; ++i) {
                const double x = rng.neg_exp(p.mean());
                const std::int64_t y = rng.poisson(c.rate(x));
                const double e = tables.posterior_mean(y) - x;
                acc.sum += e * e;
                ++acc.accepted;
            }
        });
    }

    // general continuous fallback: quadrature posterior mean per sample
    const double a = c.gain(), b = c.bias();
    const double sn = std::sqrt(c.noise_variance());
    return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = sample_prior(p, rng, tab);
            const double y = a * x + b + sn * rng.normal();
            try {
                const double xhat = posterior_mean(p, c, y, cfg);
                const double e = xhat - x;
                acc.sum += e * e;
                ++acc.accepted;
            } catch (const DegenerateEvidenceError&) {
                ++acc.skipped;
            }
        }
    });
}

McResult mc_mi(const PriorSpec& p, const ChannelModel& c, const McConfig& mcfg,
               const QuadConfig& cfg) {
    cfg.validate();

    if (c.kind() == ChannelModel::Kind::GaussianLinear &&
        p.kind() == PriorSpec::Kind::Gaussian) {
        const double a = c.gain(), b = c.bias(), vn = c.noise_variance();
        const double vy = a * a * p.variance() + vn;
        const double my = a * p.mean() + b;
        const double sn = std::sqrt(vn);
        return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
            for (std::int64_t i = 0; i < n; ++i) {
                const double x = p.mean() + std::sqrt(p.variance()) * rng.normal();
                const double y = a * x + b + sn * rng.normal();
                const double d = y - a * x - b;
                const double log_cond = -0.5 * (kLnTwoPi + std::log(vn)) - 0.5 * d * d / vn;
                const double dm = y - my;
                const double log_marg = -0.5 * (kLnTwoPi + std::log(vy)) - 0.5 * dm * dm / vy;
                acc.sum += log_cond - log_marg;
                ++acc.accepted;
            }
        });
    }

    if (c.kind() == ChannelModel::Kind::PoissonLinear) {
        if (p.kind() != PriorSpec::Kind::NegExp)
            throw std::invalid_argument("mc_mi: PoissonLinear requires a NegExp prior");
        if (c.gain() == 0.0) {
            McResult r{0.0, 0.0, 0, false};
            mcfg.validate();
            return r;
        }
        PoissonTables tables(p.mean(), c.gain(), c.bias());
        return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
            for (std::int64_t i = 0; i < n; ++i) {
                const double x = rng.neg_exp(p.mean());
                const std::int64_t y = rng.poisson(c.rate(x));
                acc.sum += c.logpdf(static_cast<double>(y), x) - tables.log_p(y);
                ++acc.accepted;
            }
        });
    }

    // general continuous fallback: log-evidence per sample by quadrature
    const bool tabulated = p.kind() == PriorSpec::Kind::Tabulated;
    const TabulatedSampler tab_sampler = tabulated ? TabulatedSampler(p)
                                                   : TabulatedSampler(PriorSpec::tabulated(
                                                         {0.0, 1.0}, {1.0, 1.0}));
    const TabulatedSampler* tab = tabulated ? &tab_sampler : nullptr;
    const double a = c.gain(), b = c.bias();
    const double sn = std::sqrt(c.noise_variance());
    return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = sample_prior(p, rng, tab);
            const double y = a * x + b + sn * rng.normal();
            const double lo = p.support_lo(cfg), hi = p.support_hi(cfg);
            const double evidence = integrate(
                [&](double xp) {
                    const double px = p.density(xp);
                    return px > 0 ? px * std::exp(c.logpdf(y, xp)) : 0.0;
                },
                Interval{lo, hi}, cfg);
            if (!(evidence > 0.0) || !std::isfinite(evidence)) {
                ++acc.skipped;
                continue;
            }
            acc.sum += c.logpdf(y, x) - std::log(evidence);
            ++acc.accepted;
        }
    });
}

McResult mc_mmse_nuisance(const NuisanceGaussianParams& p, bool condition_on_u,
                          const McConfig& mcfg) {
    p.validate();
    const double sxu = std::sqrt(p.var_x_given_u);
    const double su = std::sqrt(p.var_u);
    const double sn = std::sqrt(p.noise_var);
    return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
        for (std::int64_t i = 0; i < n; ++i) {
            const double u = p.mean_u + su * rng.normal();
            const double x = p.coupling * u + sxu * rng.normal();
            const double y = p.gain_x * x + p.gain_u * u + sn * rng.normal();
            const NuisanceEstimates est = mmse_estimators(p, y, u);
            const double xhat = condition_on_u ? est.conditional : est.marginal;
            const double e = xhat - x;
            acc.sum += e * e;
            ++acc.accepted;
        }
    });
}

McResult mc_mi_nuisance(const NuisanceGaussianParams& p, const McConfig& mcfg) {
    p.validate();
    const ChannelModel marg = marginalized_channel(p);
    const double mx = p.mean_x();
    const double vy = p.var_y();
    const double my = p.gain_x * mx + p.gain_u * p.mean_u;
    const double sxu = std::sqrt(p.var_x_given_u);
    const double su = std::sqrt(p.var_u);
    const double sn = std::sqrt(p.noise_var);
    return run_batches(mcfg, [&](Rng& rng, std::int64_t n, BatchAccumulator& acc) {
        for (std::int64_t i = 0; i < n; ++i) {
            const double u = p.mean_u + su * rng.normal();
            const double x = p.coupling * u + sxu * rng.normal();
            const double y = p.gain_x * x + p.gain_u * u + sn * rng.normal();
            const double log_cond = marg.logpdf(y, x);
            const double dm = y - my;
            const double log_marg = -0.5 * (kLnTwoPi + std::log(vy)) - 0.5 * dm * dm / vy;
            acc.sum += log_cond - log_marg;
            ++acc.accepted;
        }
    });
}

}  // namespace infobound
