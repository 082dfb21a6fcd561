#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "infobound/core.hpp"
#include "infobound/quad.hpp"

using namespace infobound;

namespace {
const QuadConfig kCfg;
}

TEST_CASE("QuadConfig validation") {
    QuadConfig c;
    CHECK_NOTHROW(c.validate());
    c.gauss_nodes = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = QuadConfig{};
    c.series_tail_mass = 1e-5;  // must stay < 1e-6
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("prior densities") {
    const PriorSpec ne = PriorSpec::neg_exp(1.0);
    CHECK(ne.density(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ne.density(-0.5) == 0.0);

    const PriorSpec g = PriorSpec::gaussian(0.0, 1.0);
    CHECK(g.density(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-13));

    // numeric normalization of each analytic prior
    for (const PriorSpec& p : {ne, g}) {
        const double mass = integrate([&](double x) { return p.density(x); },
                                      Interval{p.support_lo(kCfg), p.support_hi(kCfg)}, kCfg);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("tabulated prior interpolation and range errors") {
    const PriorSpec t = PriorSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    // integrate each linear piece separately so the kink sits on a panel edge
    const double mass =
        integrate([&](double x) { return t.density(x); }, Interval{0.0, 1.0}, kCfg) +
        integrate([&](double x) { return t.density(x); }, Interval{1.0, 2.0}, kCfg);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(t.mean() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(t.density(2.5), std::domain_error);
    CHECK_THROWS_AS(t.density(-0.1), std::domain_error);
}

TEST_CASE("channel logpdf values") {
    const ChannelModel pois = ChannelModel::poisson_linear(1.0, 0.0);
    CHECK(pois.logpdf(0.0, 2.0) == doctest::Approx(-2.0).epsilon(1e-14));

    const ChannelModel gauss = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    CHECK(gauss.logpdf(0.7, 0.7) ==
          doctest::Approx(-0.5 * std::log(2.0 * 3.141592653589793)).epsilon(1e-14));

    const ChannelModel p2 = ChannelModel::poisson_linear(2.0, 1.0);
    CHECK(p2.logpdf(3.0, 1.0) ==
          doctest::Approx(std::log(27.0 * std::exp(-3.0) / 6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(p2.logpdf(3.0, -2.0), std::domain_error);
}

TEST_CASE("channel score: analytic values and finite-difference agreement") {
    const ChannelModel gauss = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    CHECK(gauss.score(0.3, 0.3) == doctest::Approx(0.0).epsilon(1e-14));

    const ChannelModel pois1 = ChannelModel::poisson_linear(1.0, 0.0);
    CHECK(pois1.score(4.0, 4.0) == doctest::Approx(0.0).epsilon(1e-14));

    const ChannelModel p2 = ChannelModel::poisson_linear(2.0, 1.0);
    CHECK(p2.score(5.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(0.2, 4.0);
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng);
        const double y = static_cast<double>(i % 7);
        for (const ChannelModel& c : {gauss, p2}) {
            const double h = 1e-6 * std::max(1.0, std::fabs(x));
            const double fd = (c.logpdf(y, x + h) - c.logpdf(y, x - h)) / (2.0 * h);
            const double sc = c.score(y, x);
            CHECK(sc == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("channel normalization over y") {
    const QuadConfig cfg;
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
        const ChannelModel g = ChannelModel::gaussian_linear(1.5, 0.3, 0.8);
        const double center = 1.5 * x + 0.3;
        const double pad = cfg.support_halfwidth_sigmas * std::sqrt(0.8);
        const double mass =
            integrate([&](double y) { return std::exp(g.logpdf(y, x)); },
                      Interval{center - pad, center + pad}, cfg);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (double x : {0.1, 1.0, 5.0}) {
        const ChannelModel p = ChannelModel::poisson_linear(2.0, 1.0);
        double mass = 0.0;
        const double rate = 2.0 * x + 1.0;
        const auto y_max = static_cast<std::int64_t>(rate + 12.0 * std::sqrt(rate) + 30.0);
        for (std::int64_t y = 0; y <= y_max; ++y)
            mass += std::exp(p.logpdf(static_cast<double>(y), x));
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("regularity: conditional score expectation vanishes") {
    const QuadConfig cfg;
    for (double x : {0.3, 1.0, 2.5}) {
        const ChannelModel g = ChannelModel::gaussian_linear(1.2, -0.5, 1.3);
        const double center = 1.2 * x - 0.5;
        const double pad = cfg.support_halfwidth_sigmas * std::sqrt(1.3);
        const double es =
            integrate([&](double y) { return std::exp(g.logpdf(y, x)) * g.score(y, x); },
                      Interval{center - pad, center + pad}, cfg);
        CHECK(std::fabs(es) < 1e-8);

        const ChannelModel p = ChannelModel::poisson_linear(3.0, 0.5);
        const double rate = 3.0 * x + 0.5;
        const auto y_max = static_cast<std::int64_t>(rate + 12.0 * std::sqrt(rate) + 30.0);
        double esp = 0.0;
        for (std::int64_t y = 0; y <= y_max; ++y) {
            const double yy = static_cast<double>(y);
            esp += std::exp(p.logpdf(yy, x)) * p.score(yy, x);
        }
        CHECK(std::fabs(esp) < 1e-8);
    }
}
