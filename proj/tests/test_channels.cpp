#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "infobound/channels.hpp"
#include "infobound/estimate.hpp"
#include "infobound/info.hpp"

using namespace infobound;

namespace {
const QuadConfig kCfg;
}

TEST_CASE("gaussian closed forms") {
    const GaussianClosedForms zero = gaussian_closed_forms(2.0, 0.0, 0.0, 1.0);
    CHECK(zero.mi == 0.0);
    CHECK(zero.mmse == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(gaussian_closed_forms(3.0, 1.0, 0.0, 1.0).mi ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(gaussian_closed_forms(1.0, 2.0, 0.0, 4.0).fi == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("poisson marginal: geometric law at b=0") {
    CHECK(poisson_marginal(1.0, 1.0, 0.0, 0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(poisson_marginal(1.0, 1.0, 0.0, 1) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("poisson marginal: normalization and mean identities") {
    for (double b : {0.0, 1.0, 20.0}) {
        const PoissonMarginal m(1.5, 3.0, b);
        const std::int64_t extent = poisson_marginal_extent(m, kCfg);
        double mass = 0.0, mean_shift = 0.0;
        for (std::int64_t y = 0; y <= extent; ++y) {
            mass += m.p(y);
            mean_shift += static_cast<double>(y + 1) * m.p(y + 1);
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        // sum (y+1) p(y+1) = <Y> = a xbar + b
        CHECK(mean_shift == doctest::Approx(3.0 * 1.5 + b).epsilon(1e-9));
    }
}

TEST_CASE("poisson marginal: incomplete-gamma form matches brute-force mixture") {
    // p(y) = int_0^inf Pois(y; ax+b) NegExp(x; xbar) dx by quadrature
    const double xbar = 1.0, a = 2.0, b = 3.0;
    const ChannelModel c = ChannelModel::poisson_linear(a, b);
    const PriorSpec p = PriorSpec::neg_exp(xbar);
    for (std::int64_t y : {0, 1, 2, 5, 10, 25}) {
        const double direct = integrate(
            [&](double x) {
                return p.density(x) * std::exp(c.logpdf(static_cast<double>(y), x));
            },
            Interval{0.0, 60.0 * xbar}, kCfg);
        CHECK(poisson_marginal(xbar, a, b, y) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("poisson marginal survives large bias in log space") {
    // b/(a*xbar) = 800: the separate gamma and exp factors would overflow
    const double v = poisson_marginal(1.0, 1.0, 800.0, 800);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("poisson mmse: zero-bias closed form") {
    CHECK(poisson_mmse(1.0, 1.0, 0.0, kCfg) == doctest::Approx(0.5).epsilon(1e-14));
    for (double xbar : {0.5, 1.0, 5.0}) {
        for (double ax : {0.1, 1.0, 10.0, 100.0}) {
            const double a = ax / xbar;
            const double series = poisson_mmse_series(xbar, a, 0.0, kCfg);
            const double closed = poisson_mmse_closed_b0(xbar, a);
            CHECK(series == doctest::Approx(closed).epsilon(1e-8));
        }
    }
    // vanishing-gain limit recovers the prior variance xbar^2
    CHECK(poisson_mmse(2.0, 1e-8, 0.0, kCfg) == doctest::Approx(4.0).epsilon(1e-6));
    // large-gain limit vanishes
    CHECK(poisson_mmse(1.0, 1e4, 0.0, kCfg) < 1.1e-4);
}

TEST_CASE("poisson mmse with bias: against generic posterior-mean machinery") {
    // independent oracle: E(X^2) - sum_y p(y) xhat(y)^2 with xhat by quadrature
    const double xbar = 1.0, a = 3.0, b = 2.0;
    const PriorSpec p = PriorSpec::neg_exp(xbar);
    const ChannelModel c = ChannelModel::poisson_linear(a, b);
    const PoissonMarginal m(xbar, a, b);
    const std::int64_t extent = poisson_marginal_extent(m, kCfg);
    double mean_sq = 0.0;
    for (std::int64_t y = 0; y <= extent; ++y) {
        const double xh = posterior_mean(p, c, static_cast<double>(y), kCfg);
        mean_sq += m.p(y) * xh * xh;
    }
    const double oracle = 2.0 * xbar * xbar - mean_sq;
    CHECK(poisson_mmse(xbar, a, b, kCfg) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("poisson mi: values and monotonicity in bias") {
    // a -> 0 with b > 0: rate nearly independent of X
    CHECK(poisson_mi(1.0, 1e-6, 2.0, kCfg) == doctest::Approx(0.0).epsilon(1e-9));

    const double mi10 = poisson_mi(1.0, 10.0, 0.0, kCfg);
    const double mmse10 = poisson_mmse(1.0, 10.0, 0.0, kCfg);
    const double bound10 = 1.0 - 0.5 * std::log(2.0 * 3.141592653589793 * std::exp(1.0) * mmse10);
    CHECK(mi10 > bound10);

    double prev = mi10;
    for (double b : {50.0, 100.0}) {
        const double mi = poisson_mi(1.0, 10.0, b, kCfg);
        CHECK(mi < prev);
        prev = mi;
    }
}

TEST_CASE("posterior-mean numerator identity K(y) = (y+1)p(y+1)/a - (b/a)p(y)") {
    const double xbar = 1.0, a = 2.0, b = 1.5;
    const PriorSpec p = PriorSpec::neg_exp(xbar);
    const ChannelModel c = ChannelModel::poisson_linear(a, b);
    const PoissonMarginal m(xbar, a, b);
    for (std::int64_t y : {0, 1, 3, 8, 20}) {
        const double direct = integrate(
            [&](double x) {
                return x * p.density(x) * std::exp(c.logpdf(static_cast<double>(y), x));
            },
            Interval{0.0, 60.0 * xbar}, kCfg);
        const double identity =
            static_cast<double>(y + 1) * m.p(y + 1) / a - (b / a) * m.p(y);
        CHECK(identity == doctest::Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("generic machinery agrees with gaussian closed forms on a grid") {
    for (double var_x : {0.5, 1.0, 3.0}) {
        for (double a : {0.5, 1.0, 2.0}) {
            const PriorSpec p = PriorSpec::gaussian(0.0, var_x);
            const ChannelModel c = ChannelModel::gaussian_linear(a, 0.4, 1.0);
            const GaussianClosedForms cf = gaussian_closed_forms(var_x, a, 0.4, 1.0);
            CHECK(mutual_information_exact(p, c, kCfg) == doctest::Approx(cf.mi).epsilon(1e-7));
            CHECK(mmse(p, c, kCfg) == doctest::Approx(cf.mmse).epsilon(1e-7));
        }
    }
}
