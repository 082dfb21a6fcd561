#include "infobound/nuisance.hpp"

#include <cmath>

#include "infobound/info.hpp"

namespace infobound {

void NuisanceGaussianParams::validate() const {
    if (var_x_given_u < 0) throw std::invalid_argument("var_x_given_u must be >= 0");
    if (var_u <= 0) throw std::invalid_argument("var_u must be positive");
    if (noise_var <= 0) throw std::invalid_argument("noise_var must be positive");
}

double mi_with_nuisance(const NuisanceGaussianParams& p) {
    p.validate();
    return 0.5 * std::log(p.var_y() / p.var_y_given_x());
}

double mi_without_nuisance(const NuisanceGaussianParams& p) {
    p.validate();
    return 0.5 * std::log1p(p.gain_x * p.gain_x * p.var_x_given_u / p.noise_var);
}

NuisanceMmse mmse_with_without_nuisance(const NuisanceGaussianParams& p) {
    p.validate();
    const double a = p.gain_x, b = p.gain_u, al = p.coupling;
    const double sxu = p.var_x_given_u, su = p.var_u, sn = p.noise_var;
    NuisanceMmse r;
    r.without_nuisance = sxu * sn / (a * a * sxu + sn);
    const double g = a * al + b;
    r.with_nuisance = (sn * sxu + al * al * sn * su + b * b * sxu * su) /
                      (sn + a * a * sxu + g * g * su);
    return r;
}

NuisanceEstimates mmse_estimators(const NuisanceGaussianParams& p, double y, double u) {
    p.validate();
    if (p.gain_x == 0 || p.var_x_given_u == 0)
        throw std::invalid_argument("mmse_estimators: gain_x and var_x_given_u must be nonzero");
    const double a = p.gain_x, b = p.gain_u, al = p.coupling;
    const double sxu = p.var_x_given_u, sn = p.noise_var;
    const double sx = p.var_x();
    const double syx = p.var_y_given_x();

    const double f_minus = 1.0 / (1.0 / sn + 1.0 / (a * a * sxu));
    NuisanceEstimates r;
    r.conditional = f_minus * ((y - b * u) / (a * sn) + al * u / (a * a * sxu));

    const double eff_gain = a + b * al * p.var_u / sx;
    const double f_plus = 1.0 / (eff_gain * eff_gain / syx + 1.0 / sx);
    r.marginal = f_plus * ((y - b * p.mean_u * sxu / sx) * eff_gain / syx + al * p.mean_u / sx);
    return r;
}

FiBlockMatrix fi_block_matrix(const NuisanceGaussianParams& p) {
    p.validate();
    FiBlockMatrix r;
    r.j_xx = p.gain_x * p.gain_x / p.noise_var;
    r.j_uu = p.gain_u * p.gain_u / p.noise_var;
    r.j_xu = p.gain_x * p.gain_u / p.noise_var;
    r.j_uu_singular = (p.gain_u == 0.0);
    if (r.j_uu_singular) {
        r.crb_data_infinite = false;
        r.crb_x_data = p.noise_var / (p.gain_x * p.gain_x);
    } else {
        // single scalar measurement: Schur complement j_xx - j_xu^2/j_uu = 0
        r.crb_data_infinite = true;
        r.crb_x_data = std::numeric_limits<double>::infinity();
    }
    const double axx = r.j_xx + 1.0 / p.var_x();
    const double auu = r.j_uu + 1.0 / p.var_u;
    const double det = axx * auu - r.j_xu * r.j_xu;
    r.crb_x_with_prior = auu / det;
    return r;
}

ChannelModel marginalized_channel(const NuisanceGaussianParams& p) {
    p.validate();
    const double sx = p.var_x();
    if (sx <= 0) throw std::invalid_argument("marginalized_channel: var_x must be positive");
    const double eff_gain = p.gain_x + p.coupling * p.gain_u * p.var_u / sx;
    const double bias = p.gain_u * p.mean_u * p.var_x_given_u / sx;
    return ChannelModel::gaussian_linear(eff_gain, bias, p.var_y_given_x());
}

PriorSpec marginal_x_prior(const NuisanceGaussianParams& p) {
    return PriorSpec::gaussian(p.mean_x(), p.var_x());
}

MarginalizedFi fi_marginalized_vs_conditional(const NuisanceGaussianParams& p,
                                              const QuadConfig& cfg) {
    p.validate();
    if (p.coupling != 0.0)
        throw std::invalid_argument(
            "fi_marginalized_vs_conditional requires statistically independent input and "
            "nuisance (coupling == 0)");
    MarginalizedFi r;
    r.marginalized = fisher_information(marginalized_channel(p), p.mean_x(), cfg);
    // conditional channel given any fixed u: gain a, noise sigma_N^2
    const ChannelModel conditional =
        ChannelModel::gaussian_linear(p.gain_x, p.gain_u * p.mean_u, p.noise_var);
    r.conditional = fisher_information(conditional, p.mean_x(), cfg);
    return r;
}

}  // namespace infobound
