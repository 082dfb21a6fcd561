#pragma once

#include "infobound/core.hpp"
#include "infobound/quad.hpp"

namespace infobound {

/// Correlated two-input Gaussian model: Y = a X + b U + N with
/// U ~ N(mean_u, var_u), X|U ~ N(coupling * U, var_x_given_u),
/// N ~ N(0, noise_var).
struct NuisanceGaussianParams {
    double gain_x;         // a
    double gain_u;         // b
    double coupling;       // alpha
    double var_x_given_u;  // sigma_{X|U}^2  (>= 0)
    double var_u;          // sigma_U^2
    double mean_u;         // Ubar
    double noise_var;      // sigma_N^2

    void validate() const;

    double var_x() const { return var_x_given_u + coupling * coupling * var_u; }
    double mean_x() const { return coupling * mean_u; }
    double var_u_given_x() const {
        if (coupling == 0.0) return var_u;
        return 1.0 / (1.0 / var_u + coupling * coupling / var_x_given_u);
    }
    double var_y_given_x() const {
        // general term b^2 var_u * var_x_given_u / var_x; at the degenerate
        // corner var_x_given_u = 0, coupling = 0 the limit is b^2 var_u
        if (var_x_given_u == 0.0 && coupling == 0.0)
            return noise_var + gain_u * gain_u * var_u;
        return noise_var + gain_u * gain_u * var_u * var_x_given_u / var_x();
    }
    double var_y() const {
        const double g = gain_x * coupling + gain_u;
        return noise_var + gain_x * gain_x * var_x_given_u + g * g * var_u;
    }

    double chi() const { return gain_x * gain_x * var_x_given_u / noise_var; }
    double eta() const { return coupling * gain_x / gain_u; }
    double snr_u() const { return gain_u * gain_u * var_u / noise_var; }
};

/// I(X;Y) when the nuisance varies (superscript +).
double mi_with_nuisance(const NuisanceGaussianParams& p);

/// U-averaged conditional MI I(X;Y|U) (superscript -); independent of the
/// coupling, the nuisance gain and the nuisance variance.
double mi_without_nuisance(const NuisanceGaussianParams& p);

struct NuisanceMmse {
    double with_nuisance;     // MMSE^(+)
    double without_nuisance;  // MMSE^(-)
};
NuisanceMmse mmse_with_without_nuisance(const NuisanceGaussianParams& p);

struct NuisanceEstimates {
    double conditional;  // Xhat_u(y), nuisance held at u
    double marginal;     // Xhat(y), nuisance averaged out
};
NuisanceEstimates mmse_estimators(const NuisanceGaussianParams& p, double y, double u);

struct FiBlockMatrix {
    double j_xx, j_xu, j_uu;     // data-based blocks, shared scalar measurement
    bool crb_data_infinite;      // the pure-data 2x2 is singular
    bool j_uu_singular;          // gain_u == 0
    double crb_x_data;           // infinite unless j_uu_singular (then noise/a^2)
    double crb_x_with_prior;     // ((J + diag(1/var_x, 1/var_u))^-1)_xx
};
FiBlockMatrix fi_block_matrix(const NuisanceGaussianParams& p);

struct MarginalizedFi {
    double marginalized;  // J^(+), FI of the nuisance-marginalized channel
    double conditional;   // J^(-), U-averaged conditional FI
};
/// Requires coupling == 0 (statistically independent input and nuisance).
MarginalizedFi fi_marginalized_vs_conditional(const NuisanceGaussianParams& p,
                                              const QuadConfig& cfg);

/// The 1-D channel P(y|x) with the nuisance integrated out, as a
/// GaussianLinear model (effective gain, bias and noise variance).
ChannelModel marginalized_channel(const NuisanceGaussianParams& p);

/// Marginal prior on X (Gaussian).
PriorSpec marginal_x_prior(const NuisanceGaussianParams& p);

}  // namespace infobound
