#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "infobound/channels.hpp"
#include "infobound/info.hpp"
#include "infobound/mc.hpp"

using namespace infobound;

namespace {
const QuadConfig kCfg;

McConfig cfg_n(std::int64_t n, std::uint64_t seed = 42) {
    McConfig m;
    m.n_samples = n;
    m.seed = seed;
    return m;
}
}  // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(cfg_n(100000).validate());
    CHECK_THROWS_AS(cfg_n(100).validate(), std::invalid_argument);
    McConfig bad = cfg_n(100001);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // batches must divide n
    McConfig nb = cfg_n(100000);
    nb.batches = 0;
    CHECK_THROWS_AS(nb.validate(), std::invalid_argument);
}

TEST_CASE("reproducibility: identical seeds give bit-identical results") {
    const PriorSpec p = PriorSpec::gaussian(0.0, 1.0);
    const ChannelModel c = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    const McResult r1 = mc_mmse(p, c, cfg_n(100000), kCfg);
    const McResult r2 = mc_mmse(p, c, cfg_n(100000), kCfg);
    CHECK(r1.estimate == r2.estimate);
    CHECK(r1.stderr_est == r2.stderr_est);
    const McResult r3 = mc_mmse(p, c, cfg_n(100000, 43), kCfg);
    CHECK(r3.estimate != r1.estimate);

    const McResult m1 = mc_mi(p, c, cfg_n(100000), kCfg);
    const McResult m2 = mc_mi(p, c, cfg_n(100000), kCfg);
    CHECK(m1.estimate == m2.estimate);
}

TEST_CASE("gaussian mmse concordance") {
    const PriorSpec p = PriorSpec::gaussian(0.0, 1.0);
    const ChannelModel c = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    const McResult r = mc_mmse(p, c, cfg_n(200000), kCfg);
    CHECK(std::fabs(r.estimate - 0.5) <= 3.0 * r.stderr_est);
    CHECK(r.stderr_est > 0.0);
    CHECK(r.skipped == 0);
    CHECK(!r.skip_warning);

    // a = 0: every sample contributes (X - mean)^2, mean -> prior variance
    const ChannelModel c0 = ChannelModel::gaussian_linear(0.0, 0.0, 1.0);
    const McResult r0 = mc_mmse(p, c0, cfg_n(200000), kCfg);
    CHECK(std::fabs(r0.estimate - 1.0) <= 3.0 * r0.stderr_est);
}

TEST_CASE("poisson mmse concordance") {
    const PriorSpec p = PriorSpec::neg_exp(1.0);
    const ChannelModel c = ChannelModel::poisson_linear(1.0, 0.0);
    const McResult r = mc_mmse(p, c, cfg_n(200000), kCfg);
    CHECK(std::fabs(r.estimate - 0.5) <= 3.0 * r.stderr_est);

    // biased, large-rate path exercises the high-rate sampler
    const ChannelModel cb = ChannelModel::poisson_linear(40.0, 5.0);
    const double exact = poisson_mmse(1.0, 40.0, 5.0, kCfg);
    const McResult rb = mc_mmse(p, cb, cfg_n(200000), kCfg);
    CHECK(std::fabs(rb.estimate - exact) <= 3.0 * rb.stderr_est);
}

TEST_CASE("mi concordance") {
    const PriorSpec pg = PriorSpec::gaussian(0.0, 3.0);
    const ChannelModel cg = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    const McResult rg = mc_mi(pg, cg, cfg_n(200000), kCfg);
    CHECK(std::fabs(rg.estimate - std::log(2.0)) <= 3.0 * rg.stderr_est);

    const ChannelModel c0 = ChannelModel::gaussian_linear(0.0, 0.0, 1.0);
    const McResult r0 = mc_mi(pg, c0, cfg_n(100000), kCfg);
    CHECK(std::fabs(r0.estimate) < 1e-12);

    const PriorSpec pp = PriorSpec::neg_exp(1.0);
    const ChannelModel cp = ChannelModel::poisson_linear(10.0, 0.0);
    const double exact = poisson_mi(1.0, 10.0, 0.0, kCfg);
    const McResult rp = mc_mi(pp, cp, cfg_n(200000), kCfg);
    CHECK(std::fabs(rp.estimate - exact) <= 3.0 * rp.stderr_est);
}

TEST_CASE("standard error shrinks roughly as 1/sqrt(n)") {
    const PriorSpec p = PriorSpec::gaussian(0.0, 1.0);
    const ChannelModel c = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
    const McResult small = mc_mmse(p, c, cfg_n(100000), kCfg);
    const McResult large = mc_mmse(p, c, cfg_n(400000), kCfg);
    const double ratio = small.stderr_est / large.stderr_est;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
}

TEST_CASE("nuisance-model monte carlo against closed forms") {
    const NuisanceGaussianParams p{1.0, 1.0, 0.5, 1.0, 5.0, 0.0, 1.0};
    const NuisanceMmse closed = mmse_with_without_nuisance(p);
    const McResult plus = mc_mmse_nuisance(p, false, cfg_n(200000));
    const McResult minus = mc_mmse_nuisance(p, true, cfg_n(200000));
    CHECK(std::fabs(plus.estimate - closed.with_nuisance) <= 3.0 * plus.stderr_est);
    CHECK(std::fabs(minus.estimate - closed.without_nuisance) <= 3.0 * minus.stderr_est);

    const McResult mi = mc_mi_nuisance(p, cfg_n(200000));
    CHECK(std::fabs(mi.estimate - mi_with_nuisance(p)) <= 3.0 * mi.stderr_est);
}
