#pragma once

#include <cstdint>

#include "infobound/core.hpp"
#include "infobound/nuisance.hpp"
#include "infobound/quad.hpp"

namespace infobound {

/// Monte Carlo sampling configuration. Estimates are bit-identical for a
/// fixed seed; each batch owns an independent PRNG stream.
struct McConfig {
    std::int64_t n_samples = 2'000'000;
    std::uint64_t seed = 42;
    int batches = 20;

    void validate() const;
};

struct McResult {
    double estimate;
    double stderr_est;      // batch-based standard error
    std::int64_t skipped;   // degenerate samples excluded
    bool skip_warning;      // skipped > 0.1% of n_samples
};

/// Empirical average of (Xhat(Y) - X)^2 with the analytic/quadrature
/// posterior mean as the estimator.
McResult mc_mmse(const PriorSpec& p, const ChannelModel& c, const McConfig& mcfg,
                 const QuadConfig& cfg);

/// Empirical average of ln P(y|x) - ln P(y) over sampled (x, y).
McResult mc_mi(const PriorSpec& p, const ChannelModel& c, const McConfig& mcfg,
               const QuadConfig& cfg);

/// Nuisance-model MMSE from sampled (X, U, N) triples. condition_on_u
/// selects the informed estimator Xhat_u (superscript -) vs the
/// marginal Xhat (superscript +).
McResult mc_mmse_nuisance(const NuisanceGaussianParams& p, bool condition_on_u,
                          const McConfig& mcfg);

/// Nuisance-model I(X;Y) from sampled triples.
McResult mc_mi_nuisance(const NuisanceGaussianParams& p, const McConfig& mcfg);

}  // namespace infobound
