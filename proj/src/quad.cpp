#include "infobound/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace infobound {

namespace {

GaussRule build_rule(int n) {
    // Newton iteration on Legendre P_n, symmetric nodes.
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, Interval support, const QuadConfig& cfg) {
    const GaussRule& rule = gauss_legendre(cfg.gauss_nodes);
    const double c = 0.5 * (support.hi + support.lo);
    const double h = 0.5 * (support.hi - support.lo);
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < cfg.gauss_nodes; ++i) {
        const double x = c + h * rule.nodes[i];
        const double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "integrand not finite at x = " << x;
            throw std::runtime_error(msg.str());
        }
        const double t = rule.weights[i] * v - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    return h * sum;
}

double sum_series(const std::function<double(std::int64_t)>& term, const QuadConfig& cfg) {
    (void)cfg;
    constexpr std::int64_t kMaxTerms = 10'000'000;
    double sum = 0.0, comp = 0.0, prev = 0.0;
    for (std::int64_t i = 0; i < kMaxTerms; ++i) {
        const double t = term(i);
        if (!std::isfinite(t)) throw std::runtime_error("series term not finite");
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (i > 0 && std::abs(t) <= 1e-16 * std::abs(sum) && std::abs(t) <= std::abs(prev))
            return sum;
        prev = t;
    }
    throw std::runtime_error("series did not converge within 1e7 terms");
}

double log_upper_incomplete_gamma_int(std::int64_t y, double u) {
    if (y < 0) throw std::domain_error("log_upper_incomplete_gamma_int: y must be >= 0");
    if (u < 0) throw std::domain_error("log_upper_incomplete_gamma_int: u must be >= 0");
    // Gamma(y+1, u) = y! e^{-u} sum_{k=0}^{y} u^k / k!
    if (u == 0.0) return std::lgamma(static_cast<double>(y) + 1.0);
    double log_q = 0.0;  // ln sum_{k<=j} u^k/k!, built incrementally
    const double log_u = std::log(u);
    double log_term = 0.0;  // ln u^k/k! at k
    for (std::int64_t k = 1; k <= y; ++k) {
        log_term += log_u - std::log(static_cast<double>(k));
        const double hi = std::max(log_q, log_term);
        log_q = hi + std::log(std::exp(log_q - hi) + std::exp(log_term - hi));
    }
    return std::lgamma(static_cast<double>(y) + 1.0) - u + log_q;
}

namespace {

// Regularized Q(s,u) by Lentz continued fraction, valid for u > s + 1.
double gamma_q_cf(double s, double u) {
    const double tiny = 1e-300;
    double b = u + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-u + s * std::log(u) - std::lgamma(s)) * h;
}

// Regularized P(s,u) by series, valid for u <= s + 1.
double gamma_p_series(double s, double u) {
    if (u == 0.0) return 0.0;
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= u / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-u + s * std::log(u) - std::lgamma(s));
}

}  // namespace

double upper_incomplete_gamma(double s, double u) {
    if (s <= 0) throw std::domain_error("upper_incomplete_gamma: s must be positive");
    if (u < 0) throw std::domain_error("upper_incomplete_gamma: u must be nonnegative");
    const double rounded = std::round(s);
    if (rounded >= 1.0 && std::abs(s - rounded) < 1e-12) {
        return std::exp(log_upper_incomplete_gamma_int(static_cast<std::int64_t>(rounded) - 1, u));
    }
    if (u < s + 1.0) return std::tgamma(s) * (1.0 - gamma_p_series(s, u));
    return std::tgamma(s) * gamma_q_cf(s, u);
}

double find_root_bisect(const std::function<double(double)>& f, double lo, double hi,
                        const QuadConfig& cfg) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("find_root_bisect: no sign change on bracket");
    while (hi - lo > cfg.root_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace infobound
