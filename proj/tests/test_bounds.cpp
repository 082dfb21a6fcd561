#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "infobound/bounds.hpp"
#include "infobound/channels.hpp"

using namespace infobound;

namespace {
const QuadConfig kCfg;
constexpr double kTwoPiOverEMinus1 = 1.3114546995818435;
}  // namespace

TEST_CASE("gaussian lower bound is tight") {
    for (double var_x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double snr : {0.1, 0.5, 1.0, 3.0, 10.0}) {
            const double a = std::sqrt(snr / var_x);
            const PriorSpec p = PriorSpec::gaussian(0.0, var_x);
            const ChannelModel c = ChannelModel::gaussian_linear(a, 0.0, 1.0);
            const BoundValue lb = mi_lower_bound(p, c, kCfg);
            const double exact = mutual_information_exact(p, c, kCfg);
            CHECK(!lb.infinite);
            CHECK(std::fabs(exact - lb.value) < 1e-6);
            CHECK(std::fabs(exact - 0.5 * std::log1p(snr)) < 1e-7);
        }
    }
    // a = 0: bound = 0 = MI exactly
    const PriorSpec p = PriorSpec::gaussian(0.0, 2.0);
    const ChannelModel c0 = ChannelModel::gaussian_linear(0.0, 0.0, 1.0);
    CHECK(std::fabs(mi_lower_bound(p, c0, kCfg).value) < 1e-8);
}

TEST_CASE("equivocation upper bound") {
    // Gaussian: equality with h(X|Y)
    const PriorSpec pg = PriorSpec::gaussian(0.0, 2.0);
    const ChannelModel cg = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    const double equiv = differential_entropy(pg, kCfg) - mutual_information_exact(pg, cg, kCfg);
    CHECK(equivocation_upper_bound(pg, cg, kCfg).value == doctest::Approx(equiv).epsilon(1e-7));

    // Poisson b=0, a xbar = 10: strict gap
    const PriorSpec pp = PriorSpec::neg_exp(1.0);
    const ChannelModel cp = ChannelModel::poisson_linear(10.0, 0.0);
    const double equiv_p =
        differential_entropy(pp, kCfg) - mutual_information_exact(pp, cp, kCfg);
    CHECK(equivocation_upper_bound(pp, cp, kCfg).value > equiv_p + 1e-3);

    // a -> 0 Gaussian: bound equals h(X)
    const ChannelModel c0 = ChannelModel::gaussian_linear(0.0, 0.0, 1.0);
    CHECK(equivocation_upper_bound(pg, c0, kCfg).value ==
          doctest::Approx(differential_entropy(pg, kCfg)).epsilon(1e-8));
}

TEST_CASE("zero-bias bound threshold") {
    CHECK(zero_bias_bound_value(1.0) < 0.0);
    CHECK(zero_bias_bound_value(2.0) > 0.0);
    CHECK(bound_threshold_zero_bias(kCfg) ==
          doctest::Approx(kTwoPiOverEMinus1).epsilon(1e-3));
    CHECK(std::fabs(zero_bias_bound_value(kTwoPiOverEMinus1)) < 1e-12);
    // bound value is scale-free in xbar: compare against the full expression
    for (double xbar : {0.5, 2.0}) {
        const double t = 3.0;
        const double mmse_v = poisson_mmse_closed_b0(xbar, t / xbar);
        const double full =
            1.0 + std::log(xbar) -
            0.5 * std::log(2.0 * 3.141592653589793 * std::exp(1.0) * mmse_v);
        CHECK(zero_bias_bound_value(t) == doctest::Approx(full).epsilon(1e-12));
    }
}

TEST_CASE("SNR derivative identity") {
    for (double snr : {0.1, 1.0, 3.0, 10.0}) {
        const DerivativeCheck dc = gaussian_mi_snr_derivative_check(1.0, std::sqrt(snr), 1.0, kCfg);
        CHECK(dc.derivative == doctest::Approx(dc.rhs).epsilon(1e-4));
    }
    const DerivativeCheck at1 = gaussian_mi_snr_derivative_check(1.0, 1.0, 1.0, kCfg);
    CHECK(at1.rhs == doctest::Approx(0.25).epsilon(1e-9));
    const DerivativeCheck at3 = gaussian_mi_snr_derivative_check(1.0, std::sqrt(3.0), 1.0, kCfg);
    CHECK(at3.rhs == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("MIMO lower bound") {
    // symmetric: bound equals exact MI
    const MimoBoundResult sym = mimo_mi_lower_bound({1.0, 1.0, 2.0, 2.0, 1.0}, kCfg);
    CHECK(sym.bound == doctest::Approx(sym.exact_mi).epsilon(1e-7));
    // zero gains: both vanish
    const MimoBoundResult zero = mimo_mi_lower_bound({0.0, 0.0, 1.0, 1.0, 1.0}, kCfg);
    CHECK(std::fabs(zero.bound) < 1e-12);
    CHECK(std::fabs(zero.exact_mi) < 1e-12);
    // asymmetric SNRs 1 and 9: strict gap
    const MimoBoundResult asym = mimo_mi_lower_bound({1.0, 3.0, 1.0, 1.0, 1.0}, kCfg);
    CHECK(asym.bound < asym.exact_mi - 1e-6);
}

TEST_CASE("poisson bound validity and b=0 gap trend") {
    // validity for all three bias values at a few gains
    for (double b : {0.0, 50.0, 100.0}) {
        for (double ax : {0.5, 5.0, 50.0, 200.0}) {
            const double mi = poisson_mi(1.0, ax, b, kCfg);
            const double mm = poisson_mmse(1.0, ax, b, kCfg);
            const double bound =
                1.0 - 0.5 * std::log(2.0 * 3.141592653589793 * std::exp(1.0) * mm);
            CHECK(mi >= bound - 1e-6);
        }
    }
    // gap decreasing in a xbar on [5, 200] for the zero-bias series
    double prev_gap = 1e300;
    for (double ax : {5.0, 10.0, 20.0, 50.0, 100.0, 200.0}) {
        const double mi = poisson_mi(1.0, ax, 0.0, kCfg);
        const double gap = mi - zero_bias_bound_value(ax);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("fig-2 trend: MI decreasing in bias at fixed gain") {
    for (double ax : {5.0, 20.0, 80.0}) {
        double prev = 1e300;
        for (double b : {0.0, 25.0, 50.0, 100.0, 200.0}) {
            const double mi = poisson_mi(1.0, ax, b, kCfg);
            CHECK(mi < prev);
            prev = mi;
        }
    }
}

TEST_CASE("info report bundles consistent flags") {
    const InfoReport rep = make_info_report(PriorSpec::gaussian(0.0, 1.0),
                                            ChannelModel::gaussian_linear(1.0, 0.0, 1.0), kCfg);
    CHECK(rep.flags.at("mmse_le_prior_variance"));
    CHECK(rep.flags.at("mi_ge_lower_bound"));
    CHECK(rep.flags.at("mi_nonnegative"));
    CHECK(rep.flags.at("equivocation_bounded"));
    CHECK(rep.mi_exact == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-7));
    CHECK(rep.fi_profile.size() == 17);

    const InfoReport rp = make_info_report(PriorSpec::neg_exp(1.0),
                                           ChannelModel::poisson_linear(5.0, 0.0), kCfg);
    CHECK(rp.flags.at("mmse_le_prior_variance"));
    CHECK(rp.flags.at("mi_ge_lower_bound"));
}
