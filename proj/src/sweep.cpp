#include "infobound/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "infobound/bounds.hpp"
#include "infobound/channels.hpp"
#include "infobound/estimate.hpp"
#include "infobound/info.hpp"
#include "infobound/mc.hpp"
#include "infobound/nuisance.hpp"

namespace infobound {

namespace {

constexpr double kTwoPiE = 17.079468445347132;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> make_grid(double lo, double hi, int n, bool log_scale) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        g[static_cast<std::size_t>(i)] =
            log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return g;
}

double get_override(const std::map<std::string, double>& o, const std::string& key,
                    double fallback) {
    const auto it = o.find(key);
    return it == o.end() ? fallback : it->second;
}

bool check_override_keys(const std::map<std::string, double>& o,
                         const std::set<std::string>& allowed, std::string& bad) {
    for (const auto& [k, v] : o) {
        (void)v;
        if (allowed.find(k) == allowed.end()) {
            bad = k;
            return false;
        }
    }
    return true;
}

}  // namespace

void write_csv(const CsvTable& t, std::ostream& os) {
    for (const auto& c : t.comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << fmt17(row[i]);
        os << "\n";
    }
}

int write_csv_file(const CsvTable& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
    if (!os) return 1;
    write_csv(t, os);
    os.flush();
    return os.good() ? 0 : 1;
}

namespace {

FigureResult usage_error(const std::string& msg) {
    FigureResult r;
    r.exit_code = 1;
    r.error = msg;
    return r;
}

FigureResult consistency_error(const std::string& msg) {
    FigureResult r;
    r.exit_code = 2;
    r.error = msg;
    return r;
}

FigureResult make_fig1(const std::map<std::string, double>& o) {
    std::string bad;
    if (!check_override_keys(o, {"points", "lo", "hi", "xbar", "b"}, bad))
        return usage_error("unknown override key: " + bad);
    const int points = static_cast<int>(get_override(o, "points", 60));
    const double lo = get_override(o, "lo", 0.5);
    const double hi = get_override(o, "hi", 200.0);
    const double xbar = get_override(o, "xbar", 1.0);
    if (points < 2 || lo <= 0 || hi <= lo || xbar <= 0)
        return usage_error("fig 1 overrides must satisfy points >= 2, 0 < lo < hi, xbar > 0");
    std::vector<double> bs = {0.0, 50.0, 100.0};
    if (o.count("b")) bs = {o.at("b")};

    const QuadConfig cfg;
    FigureResult r;
    r.table.comments = {"figure 1: mutual information vs normalized gain a*xbar",
                        "prior: negative exponential, xbar = " + fmt17(xbar),
                        "bound: h(X) - 0.5 ln(2 pi e MMSE)"};
    r.table.header = {"a_xbar", "b", "mi_exact", "mi_lower_bound"};
    for (double b : bs) {
        for (double ax : make_grid(lo, hi, points, true)) {
            const double a = ax / xbar;
            const double mi = poisson_mi(xbar, a, b, cfg);
            const double mmse_v = poisson_mmse(xbar, a, b, cfg);
            const double bound = 1.0 + std::log(xbar) - 0.5 * std::log(kTwoPiE * mmse_v);
            if (bound > mi + 1e-9)
                return consistency_error("fig 1 row a_xbar=" + fmt17(ax) + " b=" + fmt17(b) +
                                         ": bound exceeds exact MI");
            r.table.rows.push_back({ax, b, mi, bound});
        }
    }
    return r;
}

FigureResult make_fig2(const std::map<std::string, double>& o) {
    std::string bad;
    if (!check_override_keys(o, {"points", "lo", "hi", "xbar", "a_xbar"}, bad))
        return usage_error("unknown override key: " + bad);
    const int points = static_cast<int>(get_override(o, "points", 60));
    const double lo = get_override(o, "lo", 0.0);
    const double hi = get_override(o, "hi", 200.0);
    const double xbar = get_override(o, "xbar", 1.0);
    if (points < 2 || hi <= lo || lo < 0 || xbar <= 0)
        return usage_error("fig 2 overrides must satisfy points >= 2, 0 <= lo < hi, xbar > 0");
    std::vector<double> axs = {5.0, 20.0, 80.0};
    if (o.count("a_xbar")) axs = {o.at("a_xbar")};

    const QuadConfig cfg;
    FigureResult r;
    r.table.comments = {"figure 2: mutual information vs bias b",
                        "prior: negative exponential, xbar = " + fmt17(xbar)};
    r.table.header = {"b", "a_xbar", "mi_exact", "mi_lower_bound"};
    for (double ax : axs) {
        const double a = ax / xbar;
        for (double b : make_grid(lo, hi, points, false)) {
            const double mi = poisson_mi(xbar, a, b, cfg);
            const double mmse_v = poisson_mmse(xbar, a, b, cfg);
            const double bound = 1.0 + std::log(xbar) - 0.5 * std::log(kTwoPiE * mmse_v);
            if (bound > mi + 1e-9)
                return consistency_error("fig 2 row b=" + fmt17(b) + " a_xbar=" + fmt17(ax) +
                                         ": bound exceeds exact MI");
            r.table.rows.push_back({b, ax, mi, bound});
        }
    }
    return r;
}

FigureResult make_fig3(const std::map<std::string, double>& o) {
    std::string bad;
    if (!check_override_keys(o, {"points", "lo", "hi", "alpha", "s_u", "s_xu_fixed",
                                 "b_over_a_fixed"},
                             bad))
        return usage_error("unknown override key: " + bad);
    const int points = static_cast<int>(get_override(o, "points", 60));
    const double lo = get_override(o, "lo", 0.0);
    const double hi = get_override(o, "hi", 10.0);
    const double s_u = get_override(o, "s_u", 5.0);
    const double s_xu_fixed = get_override(o, "s_xu_fixed", 1.0);
    const double b_over_a_fixed = get_override(o, "b_over_a_fixed", 2.0);
    if (points < 2 || hi <= lo || lo < 0 || s_u <= 0)
        return usage_error("fig 3 overrides must satisfy points >= 2, 0 <= lo < hi, s_u > 0");
    std::vector<double> alphas = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    if (o.count("alpha")) alphas = {o.at("alpha")};

    FigureResult r;
    r.table.comments = {
        "figure 3: MI with (+) and without (-) nuisance variation",
        "normalization a = 1, sigma_N^2 = 1, mean_u = 0; S_U = " + fmt17(s_u),
        "variant 1 sweeps b/a with S_X|U fixed at " + fmt17(s_xu_fixed) + " (artifact choice)",
        "variant 2 sweeps S_X|U with b/a fixed at " + fmt17(b_over_a_fixed) +
            " (artifact choice)"};
    r.table.header = {"variant", "sweep_var", "alpha", "mi_plus", "mi_minus"};
    for (int variant = 1; variant <= 2; ++variant) {
        for (double alpha : alphas) {
            for (double v : make_grid(lo, hi, points, false)) {
                NuisanceGaussianParams p;
                p.gain_x = 1.0;
                p.gain_u = variant == 1 ? v : b_over_a_fixed;
                p.coupling = alpha;
                p.var_x_given_u = variant == 1 ? s_xu_fixed : v;
                p.var_u = s_u;
                p.mean_u = 0.0;
                p.noise_var = 1.0;
                if (p.var_x_given_u == 0.0 && p.coupling == 0.0) {
                    // degenerate constant input: both MIs are zero
                    r.table.rows.push_back({static_cast<double>(variant), v, alpha, 0.0, 0.0});
                    continue;
                }
                const double mi_plus = mi_with_nuisance(p);
                const double mi_minus = mi_without_nuisance(p);
                if (alpha == 0.0 && mi_plus > mi_minus + 1e-12)
                    return consistency_error("fig 3 row variant=" + std::to_string(variant) +
                                             " sweep_var=" + fmt17(v) +
                                             ": mi_plus exceeds mi_minus at alpha=0");
                r.table.rows.push_back(
                    {static_cast<double>(variant), v, alpha, mi_plus, mi_minus});
            }
        }
    }
    return r;
}

FigureResult make_fig4(const std::map<std::string, double>& o) {
    std::string bad;
    if (!check_override_keys(o, {"points", "lo", "hi", "eta", "snr_u"}, bad))
        return usage_error("unknown override key: " + bad);
    const int points = static_cast<int>(get_override(o, "points", 80));
    const double lo = get_override(o, "lo", 0.01);
    const double hi = get_override(o, "hi", 100.0);
    if (points < 2 || lo <= 0 || hi <= lo)
        return usage_error("fig 4 overrides must satisfy points >= 2, 0 < lo < hi");
    std::vector<double> etas = {0.0, 0.5, 1.0, 2.0};
    if (o.count("eta")) etas = {o.at("eta")};
    std::vector<double> snr_us = {10.0, 100.0};
    if (o.count("snr_u")) snr_us = {o.at("snr_u")};

    FigureResult r;
    r.table.comments = {"figure 4: MMSE with (+) and without (-) nuisance variation vs chi",
                        "normalization a = b = 1, sigma_N^2 = 1, mean_u = 0"};
    r.table.header = {"chi", "eta", "snr_u", "mmse_plus", "mmse_minus"};
    for (double snr_u : snr_us) {
        for (double eta : etas) {
            for (double chi : make_grid(lo, hi, points, true)) {
                NuisanceGaussianParams p;
                p.gain_x = 1.0;
                p.gain_u = 1.0;
                p.coupling = eta;  // eta = alpha a / b = alpha
                p.var_x_given_u = chi;  // chi = a^2 var_x_given_u / noise_var = var_x_given_u
                p.var_u = snr_u;        // snr_u = b^2 var_u / noise_var = var_u
                p.mean_u = 0.0;
                p.noise_var = 1.0;
                const NuisanceMmse m = mmse_with_without_nuisance(p);
                if (m.with_nuisance < m.without_nuisance - 1e-15)
                    return consistency_error("fig 4 row chi=" + fmt17(chi) + " eta=" +
                                             fmt17(eta) + ": mmse_plus below mmse_minus");
                r.table.rows.push_back({chi, eta, snr_u, m.with_nuisance, m.without_nuisance});
            }
        }
    }
    return r;
}

}  // namespace

FigureResult make_figure(int fig, const std::map<std::string, double>& overrides) {
    switch (fig) {
        case 1: return make_fig1(overrides);
        case 2: return make_fig2(overrides);
        case 3: return make_fig3(overrides);
        case 4: return make_fig4(overrides);
        default: return usage_error("figure number must be 1, 2, 3 or 4");
    }
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

namespace {

void add_check(std::vector<VerifyCheck>& out, const std::string& name, double lhs, double rhs,
               double tol, bool pass) {
    out.push_back({name, lhs, rhs, tol, pass});
}

void add_le_check(std::vector<VerifyCheck>& out, const std::string& name, double lhs,
                  double rhs, double tol) {
    add_check(out, name, lhs, rhs, tol, lhs <= rhs + tol);
}

void add_eq_check(std::vector<VerifyCheck>& out, const std::string& name, double lhs,
                  double rhs, double tol) {
    add_check(out, name, lhs, rhs, tol, std::fabs(lhs - rhs) <= tol);
}

void bounds_suite(std::vector<VerifyCheck>& out) {
    const QuadConfig cfg;
    constexpr double kTwoPiOverEMinus1 = 1.3114546995818435;  // 2*pi/e - 1

    add_eq_check(out, "bounds.threshold_root", bound_threshold_zero_bias(cfg),
                 kTwoPiOverEMinus1, 1e-3);
    add_eq_check(out, "bounds.threshold_value_at_root",
                 zero_bias_bound_value(kTwoPiOverEMinus1), 0.0, 1e-12);

    double max_gap = 0.0;
    for (double snr : {0.5, 1.0, 3.0, 10.0}) {
        const GaussianClosedForms gc = gaussian_closed_forms(1.0, std::sqrt(snr), 0.0, 1.0);
        const BoundValue lb = mi_lower_bound(PriorSpec::gaussian(0.0, 1.0),
                                             ChannelModel::gaussian_linear(std::sqrt(snr), 0.0, 1.0),
                                             cfg);
        max_gap = std::max(max_gap, std::fabs(lb.value - gc.mi));
    }
    add_eq_check(out, "bounds.gaussian_bound_tight", max_gap, 0.0, 1e-6);

    double max_viol = -std::numeric_limits<double>::infinity();
    for (double ax : {1.0, 5.0, 20.0, 80.0}) {
        for (double b : {0.0, 50.0}) {
            const double mi = poisson_mi(1.0, ax, b, cfg);
            const double mm = poisson_mmse(1.0, ax, b, cfg);
            const double bound = 1.0 - 0.5 * std::log(kTwoPiE * mm);
            max_viol = std::max(max_viol, bound - mi);
        }
    }
    add_le_check(out, "bounds.poisson_bound_le_exact", max_viol, 0.0, 1e-9);

    const DerivativeCheck dc = gaussian_mi_snr_derivative_check(1.0, 1.0, 1.0, cfg);
    add_eq_check(out, "bounds.mi_snr_derivative", dc.derivative, dc.rhs, 1e-5);

    double mimo_viol = -std::numeric_limits<double>::infinity();
    for (const TwoInputGaussian m : {TwoInputGaussian{1.0, 1.0, 1.0, 1.0, 1.0},
                                     TwoInputGaussian{2.0, 0.5, 1.0, 3.0, 1.0}}) {
        const MimoBoundResult r = mimo_mi_lower_bound(m, cfg);
        mimo_viol = std::max(mimo_viol, r.bound - r.exact_mi);
    }
    add_le_check(out, "bounds.mimo_bound_le_exact", mimo_viol, 0.0, 1e-9);

    double eq_viol = -std::numeric_limits<double>::infinity();
    {
        const PriorSpec pg = PriorSpec::gaussian(0.0, 2.0);
        const ChannelModel cg = ChannelModel::gaussian_linear(1.0, 0.0, 1.0);
        const BoundValue ub = equivocation_upper_bound(pg, cg, cfg);
        const double equiv = differential_entropy(pg, cfg) - mutual_information_exact(pg, cg, cfg);
        eq_viol = std::max(eq_viol, equiv - ub.value);

        const PriorSpec pp = PriorSpec::neg_exp(1.0);
        const ChannelModel cp = ChannelModel::poisson_linear(5.0, 0.0);
        const BoundValue ub2 = equivocation_upper_bound(pp, cp, cfg);
        const double equiv2 =
            differential_entropy(pp, cfg) - mutual_information_exact(pp, cp, cfg);
        eq_viol = std::max(eq_viol, equiv2 - ub2.value);
    }
    add_le_check(out, "bounds.equivocation_upper_bound", eq_viol, 0.0, 1e-6);

    double mmse_viol = -std::numeric_limits<double>::infinity();
    for (double snr : {0.5, 2.0}) {
        const PriorSpec pg = PriorSpec::gaussian(0.0, 1.0);
        const ChannelModel cg = ChannelModel::gaussian_linear(std::sqrt(snr), 0.0, 1.0);
        mmse_viol = std::max(mmse_viol, mmse(pg, cg, cfg) - 1.0);
    }
    mmse_viol = std::max(mmse_viol, poisson_mmse(1.0, 4.0, 0.0, cfg) - 1.0);
    add_le_check(out, "bounds.mmse_le_prior_variance", mmse_viol, 0.0, 1e-9);
}

NuisanceGaussianParams nuisance_from(double chi, double eta, double snr_u) {
    NuisanceGaussianParams p;
    p.gain_x = 1.0;
    p.gain_u = 1.0;
    p.coupling = eta;
    p.var_x_given_u = chi;
    p.var_u = snr_u;
    p.mean_u = 0.0;
    p.noise_var = 1.0;
    return p;
}

void nuisance_suite(std::vector<VerifyCheck>& out) {
    const QuadConfig cfg;

    {
        const NuisanceGaussianParams p = nuisance_from(2.0, 2.0, 5.0);  // chi = eta
        const NuisanceMmse m = mmse_with_without_nuisance(p);
        add_eq_check(out, "nuisance.chi_eq_eta_equality", m.with_nuisance, m.without_nuisance,
                     1e-12);
    }

    double mmse_viol = -std::numeric_limits<double>::infinity();
    for (double chi : {0.1, 1.0, 10.0})
        for (double eta : {0.0, 0.5, 2.0})
            for (double snr_u : {10.0, 100.0}) {
                const NuisanceMmse m = mmse_with_without_nuisance(nuisance_from(chi, eta, snr_u));
                mmse_viol = std::max(mmse_viol, m.without_nuisance - m.with_nuisance);
            }
    add_le_check(out, "nuisance.mmse_plus_ge_minus", mmse_viol, 0.0, 1e-15);

    double mi_viol = -std::numeric_limits<double>::infinity();
    for (double chi : {0.1, 1.0, 10.0})
        for (double snr_u : {1.0, 10.0}) {
            const NuisanceGaussianParams p = nuisance_from(chi, 0.0, snr_u);
            mi_viol = std::max(mi_viol, mi_with_nuisance(p) - mi_without_nuisance(p));
        }
    add_le_check(out, "nuisance.mi_minus_ge_plus_alpha0", mi_viol, 0.0, 1e-12);

    {
        const NuisanceGaussianParams p = nuisance_from(1.0, 0.0, 5.0);
        const MarginalizedFi fi = fi_marginalized_vs_conditional(p, cfg);
        add_le_check(out, "nuisance.fi_marginalized_le_conditional", fi.marginalized,
                     fi.conditional, 1e-6);
        add_eq_check(out, "nuisance.fi_marginalized_closed_form", fi.marginalized,
                     p.gain_x * p.gain_x / (p.noise_var + p.gain_u * p.gain_u * p.var_u), 1e-6);
    }

    {
        const FiBlockMatrix fb = fi_block_matrix(nuisance_from(1.0, 0.5, 5.0));
        add_check(out, "nuisance.crb_data_singular", fb.crb_data_infinite ? 1.0 : 0.0, 1.0, 0.0,
                  fb.crb_data_infinite);
    }

    {
        // closed-form MMSE+/MI+ agree with the quadrature route through the
        // marginalized 1-D channel
        const NuisanceGaussianParams p = nuisance_from(3.0, 0.5, 5.0);
        const PriorSpec prior = marginal_x_prior(p);
        const ChannelModel chan = marginalized_channel(p);
        add_eq_check(out, "nuisance.mmse_plus_quadrature", mmse(prior, chan, cfg),
                     mmse_with_without_nuisance(p).with_nuisance, 1e-7);
        add_eq_check(out, "nuisance.mi_plus_quadrature",
                     mutual_information_exact(prior, chan, cfg), mi_with_nuisance(p), 1e-6);
    }
}

struct OracleConfig {
    std::string name;
    std::function<double()> det_mi;
    std::function<double()> det_mmse;
    std::function<McResult(const McConfig&)> mc_mi_fn;
    std::function<McResult(const McConfig&)> mc_mmse_fn;
};

std::vector<OracleConfig> oracle_corpus(const QuadConfig& cfg) {
    std::vector<OracleConfig> corpus;

    struct G {
        double var_x, a, b, var_n;
    };
    const std::vector<G> gaussians = {{1, 1, 0, 1},    {3, 1, 0, 1},  {1, 0.5, 0, 1},
                                      {0.5, 2, 1, 1},  {2, 1, 0, 0.5}, {1, 3, 2, 1},
                                      {4, 0.7, 0, 2},  {1, 1.5, -1, 1}};
    for (const G& g : gaussians) {
        const PriorSpec p = PriorSpec::gaussian(0.0, g.var_x);
        const ChannelModel c = ChannelModel::gaussian_linear(g.a, g.b, g.var_n);
        const GaussianClosedForms cf = gaussian_closed_forms(g.var_x, g.a, g.b, g.var_n);
        std::ostringstream name;
        name << "gaussian_vx" << g.var_x << "_a" << g.a << "_b" << g.b << "_vn" << g.var_n;
        corpus.push_back({name.str(), [cf] { return cf.mi; }, [cf] { return cf.mmse; },
                          [p, c, cfg](const McConfig& m) { return mc_mi(p, c, m, cfg); },
                          [p, c, cfg](const McConfig& m) { return mc_mmse(p, c, m, cfg); }});
    }

    struct P {
        double xbar, a, b;
    };
    const std::vector<P> poissons = {{1, 1, 0}, {1, 10, 0}, {2, 5, 1},
                                     {1, 1, 5}, {1, 20, 2}, {0.5, 4, 0}};
    for (const P& q : poissons) {
        const PriorSpec p = PriorSpec::neg_exp(q.xbar);
        const ChannelModel c = ChannelModel::poisson_linear(q.a, q.b);
        std::ostringstream name;
        name << "poisson_x" << q.xbar << "_a" << q.a << "_b" << q.b;
        corpus.push_back({name.str(),
                          [q, cfg] { return poisson_mi(q.xbar, q.a, q.b, cfg); },
                          [q, cfg] { return poisson_mmse(q.xbar, q.a, q.b, cfg); },
                          [p, c, cfg](const McConfig& m) { return mc_mi(p, c, m, cfg); },
                          [p, c, cfg](const McConfig& m) { return mc_mmse(p, c, m, cfg); }});
    }

    const std::vector<NuisanceGaussianParams> nuisances = {
        {1, 1, 0, 1, 5, 0, 1},   {1, 1, 1, 1, 10, 0, 1}, {1, 1, 2, 0.5, 10, 1, 1},
        {2, 1, 0.5, 1, 5, 0, 1}, {1, 2, 0, 2, 5, 0, 1},  {1, 0.5, 1, 3, 2, 0.5, 1}};
    int idx = 0;
    for (const NuisanceGaussianParams& n : nuisances) {
        std::ostringstream name;
        name << "nuisance_" << idx++;
        corpus.push_back(
            {name.str(), [n] { return mi_with_nuisance(n); },
             [n] { return mmse_with_without_nuisance(n).with_nuisance; },
             [n](const McConfig& m) { return mc_mi_nuisance(n, m); },
             [n](const McConfig& m) { return mc_mmse_nuisance(n, false, m); }});
    }
    return corpus;
}

void oracles_suite(std::vector<VerifyCheck>& out, std::uint64_t seed) {
    const QuadConfig cfg;
    McConfig mcfg;
    mcfg.seed = seed;
    int passed = 0;
    int total = 0;
    for (const OracleConfig& oc : oracle_corpus(cfg)) {
        const McResult mi_mc = oc.mc_mi_fn(mcfg);
        const double mi_det = oc.det_mi();
        const bool mi_ok = std::fabs(mi_mc.estimate - mi_det) <= 3.0 * mi_mc.stderr_est;
        add_check(out, "oracles." + oc.name + ".mi", std::fabs(mi_mc.estimate - mi_det),
                  3.0 * mi_mc.stderr_est, 0.0, mi_ok);

        const McResult mm_mc = oc.mc_mmse_fn(mcfg);
        const double mm_det = oc.det_mmse();
        const bool mm_ok = std::fabs(mm_mc.estimate - mm_det) <= 3.0 * mm_mc.stderr_est;
        add_check(out, "oracles." + oc.name + ".mmse", std::fabs(mm_mc.estimate - mm_det),
                  3.0 * mm_mc.stderr_est, 0.0, mm_ok);

        passed += (mi_ok ? 1 : 0) + (mm_ok ? 1 : 0);
        total += 2;
    }
    add_check(out, "oracles.coverage", static_cast<double>(passed),
              static_cast<double>(total) * 38.0 / 40.0, 0.0,
              passed * 40 >= total * 38);
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<VerifyCheck> out;
    if (suite == "bounds") {
        bounds_suite(out);
    } else if (suite == "nuisance") {
        nuisance_suite(out);
    } else if (suite == "oracles") {
        oracles_suite(out, seed);
    } else if (suite == "all") {
        bounds_suite(out);
        nuisance_suite(out);
        oracles_suite(out, seed);
    } else {
        throw std::invalid_argument("unknown verify suite: " + suite);
    }
    return out;
}

std::string verify_report_json(const std::vector<VerifyCheck>& checks) {
    std::ostringstream os;
    os << "[\n";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const VerifyCheck& c = checks[i];
        os << "  {\"name\": \"" << c.name << "\", \"lhs\": " << fmt17(c.lhs)
           << ", \"rhs\": " << fmt17(c.rhs) << ", \"tolerance\": " << fmt17(c.tolerance)
           << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
           << (i + 1 < checks.size() ? "," : "") << "\n";
    }
    os << "]\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& model_params(const std::string& model) {
    static const std::set<std::string> gaussian = {"var_x", "mean_x", "gain", "bias", "var_n"};
    static const std::set<std::string> poisson = {"xbar", "gain", "bias"};
    static const std::set<std::string> nuisance = {"gain_x",         "gain_u", "coupling",
                                                   "var_x_given_u",  "var_u",  "mean_u",
                                                   "var_n"};
    if (model == "gaussian") return gaussian;
    if (model == "poisson") return poisson;
    return nuisance;
}

const std::set<std::string>& model_sweep_keys(const std::string& model) {
    static const std::set<std::string> gaussian = {"var_x", "mean_x", "gain",
                                                   "bias",  "var_n",  "snr"};
    static const std::set<std::string> poisson = {"xbar", "gain", "bias", "a_xbar"};
    static const std::set<std::string> nuisance = {"gain_x", "gain_u",        "coupling",
                                                   "var_u",  "var_x_given_u", "mean_u",
                                                   "var_n",  "chi"};
    if (model == "gaussian") return gaussian;
    if (model == "poisson") return poisson;
    return nuisance;
}

const std::set<std::string>& model_quantities(const std::string& model) {
    static const std::set<std::string> scalar = {"mi_exact", "mi_second_order", "mmse",
                                                 "mi_lower_bound", "fi"};
    static const std::set<std::string> nuisance = {"mi_plus", "mi_minus", "mmse_plus",
                                                   "mmse_minus"};
    if (model == "nuisance_gaussian") return nuisance;
    return scalar;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw SweepConfigError("invalid numeric value for key '" + key + "': " + value);
    }
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::map<std::string, std::string> raw;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') continue;  // section markers are cosmetic
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SweepConfigError("malformed line (expected key = value): " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw SweepConfigError("malformed line (empty key): " + line);
        if (raw.count(key)) throw SweepConfigError("duplicate key '" + key + "'");
        raw[key] = value;
    }

    const auto take = [&](const std::string& key) {
        const auto it = raw.find(key);
        if (it == raw.end()) return std::string();
        const std::string v = it->second;
        raw.erase(it);
        return v;
    };

    cfg.model = take("model");
    if (cfg.model != "gaussian" && cfg.model != "poisson" && cfg.model != "nuisance_gaussian")
        throw SweepConfigError("key 'model' must be gaussian, poisson or nuisance_gaussian");

    cfg.sweep_key = take("sweep");
    if (!model_sweep_keys(cfg.model).count(cfg.sweep_key))
        throw SweepConfigError("key 'sweep' names an unknown parameter '" + cfg.sweep_key +
                               "' for model " + cfg.model);

    const std::string start_s = take("start"), stop_s = take("stop"), count_s = take("count");
    if (start_s.empty() || stop_s.empty() || count_s.empty())
        throw SweepConfigError("keys 'start', 'stop' and 'count' are required");
    cfg.start = parse_double("start", start_s);
    cfg.stop = parse_double("stop", stop_s);
    cfg.count = static_cast<int>(parse_double("count", count_s));
    if (cfg.count < 2) throw SweepConfigError("key 'count' must be >= 2");

    cfg.scale = take("scale");
    if (cfg.scale.empty()) cfg.scale = "linear";
    if (cfg.scale != "linear" && cfg.scale != "log")
        throw SweepConfigError("key 'scale' must be linear or log");
    if (cfg.scale == "log" && cfg.start <= 0)
        throw SweepConfigError("key 'start' must be positive for a log scale");

    const std::string quantities = take("quantities");
    std::stringstream qs(quantities);
    std::string q;
    while (std::getline(qs, q, ',')) {
        q = trim(q);
        if (!q.empty()) cfg.quantities.push_back(q);
    }
    if (cfg.quantities.empty())
        throw SweepConfigError("key 'quantities' must name at least one quantity");
    for (const std::string& name : cfg.quantities)
        if (!model_quantities(cfg.model).count(name))
            throw SweepConfigError("key 'quantities' names unknown quantity '" + name +
                                   "' for model " + cfg.model);

    for (const auto& [key, value] : raw) {
        if (!model_params(cfg.model).count(key))
            throw SweepConfigError("unknown key '" + key + "' for model " + cfg.model);
        const double v = parse_double(key, value);
        if (key.rfind("var", 0) == 0 && v <= 0)
            throw SweepConfigError("key '" + key + "' must be a positive variance");
        if (key == "xbar" && v <= 0) throw SweepConfigError("key 'xbar' must be positive");
        cfg.fixed[key] = v;
    }
    return cfg;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SweepConfigError("cannot open config file: " + path);
    return parse_sweep_config(in);
}

namespace {

std::vector<double> eval_sweep_row(const SweepConfig& s, double v, const QuadConfig& cfg) {
    std::vector<double> row = {v};
    std::map<std::string, double> p = s.fixed;
    if (s.sweep_key != "snr" && s.sweep_key != "a_xbar" && s.sweep_key != "chi")
        p[s.sweep_key] = v;

    if (s.model == "nuisance_gaussian") {
        NuisanceGaussianParams np;
        np.gain_x = p.count("gain_x") ? p["gain_x"] : 1.0;
        np.gain_u = p.count("gain_u") ? p["gain_u"] : 1.0;
        np.coupling = p.count("coupling") ? p["coupling"] : 0.0;
        np.var_x_given_u = p.count("var_x_given_u") ? p["var_x_given_u"] : 1.0;
        np.var_u = p.count("var_u") ? p["var_u"] : 1.0;
        np.mean_u = p.count("mean_u") ? p["mean_u"] : 0.0;
        np.noise_var = p.count("var_n") ? p["var_n"] : 1.0;
        if (s.sweep_key == "chi")
            np.var_x_given_u = v * np.noise_var / (np.gain_x * np.gain_x);
        const NuisanceMmse m = mmse_with_without_nuisance(np);
        for (const std::string& q : s.quantities) {
            if (q == "mi_plus") row.push_back(mi_with_nuisance(np));
            else if (q == "mi_minus") row.push_back(mi_without_nuisance(np));
            else if (q == "mmse_plus") row.push_back(m.with_nuisance);
            else row.push_back(m.without_nuisance);
        }
        return row;
    }

    if (s.model == "poisson") {
        const double xbar = p.count("xbar") ? p["xbar"] : 1.0;
        double gain = p.count("gain") ? p["gain"] : 1.0;
        const double bias = p.count("bias") ? p["bias"] : 0.0;
        if (s.sweep_key == "a_xbar") gain = v / xbar;
        const PriorSpec prior = PriorSpec::neg_exp(xbar);
        const ChannelModel chan = ChannelModel::poisson_linear(gain, bias);
        for (const std::string& q : s.quantities) {
            if (q == "mi_exact") row.push_back(poisson_mi(xbar, gain, bias, cfg));
            else if (q == "mi_second_order") row.push_back(mi_second_order(prior, chan, cfg));
            else if (q == "mmse") row.push_back(poisson_mmse(xbar, gain, bias, cfg));
            else if (q == "mi_lower_bound")
                row.push_back(1.0 + std::log(xbar) -
                              0.5 * std::log(kTwoPiE * poisson_mmse(xbar, gain, bias, cfg)));
            else row.push_back(fisher_information(chan, xbar, cfg));
        }
        return row;
    }

    const double var_x = p.count("var_x") ? p["var_x"] : 1.0;
    const double mean_x = p.count("mean_x") ? p["mean_x"] : 0.0;
    double gain = p.count("gain") ? p["gain"] : 1.0;
    const double bias = p.count("bias") ? p["bias"] : 0.0;
    const double var_n = p.count("var_n") ? p["var_n"] : 1.0;
    if (s.sweep_key == "snr") gain = std::sqrt(v * var_n / var_x);
    const PriorSpec prior = PriorSpec::gaussian(mean_x, var_x);
    const ChannelModel chan = ChannelModel::gaussian_linear(gain, bias, var_n);
    for (const std::string& q : s.quantities) {
        if (q == "mi_exact") row.push_back(mutual_information_exact(prior, chan, cfg));
        else if (q == "mi_second_order") row.push_back(mi_second_order(prior, chan, cfg));
        else if (q == "mmse") row.push_back(mmse(prior, chan, cfg));
        else if (q == "mi_lower_bound") {
            const BoundValue b = mi_lower_bound(prior, chan, cfg);
            row.push_back(b.infinite ? std::numeric_limits<double>::infinity() : b.value);
        } else {
            row.push_back(fisher_information(chan, mean_x, cfg));
        }
    }
    return row;
}

}  // namespace

CsvTable run_sweep(const SweepConfig& s) {
    const QuadConfig cfg;
    CsvTable t;
    t.comments.push_back("model = " + s.model);
    for (const auto& [k, v] : s.fixed) t.comments.push_back(k + " = " + fmt17(v));
    t.header.push_back(s.sweep_key);
    for (const std::string& q : s.quantities) t.header.push_back(q);
    for (double v : make_grid(s.start, s.stop, s.count, s.scale == "log"))
        t.rows.push_back(eval_sweep_row(s, v, cfg));
    return t;
}

}  // namespace infobound
