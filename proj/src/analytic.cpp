#include "subcrit/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "subcrit/composition.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/trees.hpp"

namespace subcrit {
namespace {

void require_k(unsigned k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

double eta(unsigned k) {
    require_k(k);
    // phi(y) = 2^k y - e^{y-1} is concave with phi(0) < 0 < phi(1); its
    // first root is the one we want.
    const double a = std::ldexp(1.0, static_cast<int>(k));
    double lo = 0, hi = 1;
    double y = 1.0 / (a * std::numbers::e);
    for (int it = 0; it < 200; ++it) {
        const double phi = a * y - std::exp(y - 1);
        if (phi == 0) return y;
        if (phi < 0) lo = y; else hi = y;
        const double dphi = a - std::exp(y - 1);
        double next = dphi > 0 ? y - phi / dphi : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - y);
        y = next;
        if (step <= 1e-17 * y) break;
    }
    return y;
}

double eta_via_tree_function(unsigned k) {
    require_k(k);
    return tree_function_eval(1.0 / (std::ldexp(1.0, static_cast<int>(k)) * std::numbers::e));
}

double gamma_minus_three_halves() { return 4.0 * std::sqrt(std::numbers::pi) / 3.0; }

double upper_series_singular_constant(unsigned k) {
    require_k(k);
    const double e = eta(k);
    const double kk = k;
    const double log_c = kk * (kk - 1) / 2 * std::numbers::ln2 + std::log(2 * std::numbers::sqrt2 / 3) -
                         log_factorial(k) + (1 - e) * (1 - e) / 2 + 1.5 * std::log1p(-e) + kk * std::log(e);
    return std::exp(log_c);
}

double log_asymp_upper_count(std::size_t n, unsigned k) {
    if (n < 1) throw std::invalid_argument("asymp_upper_count: n must be >= 1");
    const double nn = static_cast<double>(n);
    return std::log(upper_series_singular_constant(k) / gamma_minus_three_halves()) - 2.5 * std::log(nn) -
           nn * std::log(eta(k));
}

double asymp_upper_count(std::size_t n, unsigned k) { return std::exp(log_asymp_upper_count(n, k)); }

SingularityData singularity_data(unsigned k) {
    return SingularityData{k, eta(k), upper_series_singular_constant(k), gamma_minus_three_halves()};
}

KMConstants km_constants(unsigned k) {
    require_k(k);
    const double kk = k;
    const double log_inv_c = (kk + 1) * kk / 2 * std::numbers::ln2 + kk + log_factorial(k);
    return KMConstants{k, std::numbers::e * std::ldexp(1.0, static_cast<int>(k)), std::exp(-log_inv_c)};
}

double log_apex_forest_estimate(std::size_t n, unsigned k) {
    if (n < 1) throw std::invalid_argument("apex_forest_estimate: n must be >= 1");
    const KMConstants km = km_constants(k);
    const double nn = static_cast<double>(n);
    return std::log(km.c) - 2.5 * std::log(nn) + nn * std::log(km.zeta) + log_factorial(n);
}

double apex_forest_estimate(std::size_t n, unsigned k) { return std::exp(log_apex_forest_estimate(n, k)); }

double two_connected_prob_rate(unsigned k) { return std::exp(-eta(k)); }

bool planar_negligibility_check(unsigned k) { return PlanarConstants::beta > eta(k); }

// ---------------------------------------------------------------------------
// Certificate

namespace {

struct Root {
    bool bracketed = false;
    double tau = 0;
    double residual = 0;
    double remainder_share = 0;
};

Root solve_finite_radius(const BlockFunction& b, double tol) {
    const double radius = b.radius();
    auto f = [&](double gap) { return radius * (1 - gap) * b.d2_at_gap(gap) - 1; };
    double lo = 1e-300, hi = 1.0;  // f(lo) > 0 > f(hi) = -1 when bracketed
    Root r;
    if (!(f(lo) > 0)) return r;
    for (int it = 0; it < 4000 && hi / lo - 1 > 1e-15; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        const double v = f(mid);
        if (v == 0) {
            lo = hi = mid;
            break;
        }
        if (v > 0) lo = mid; else hi = mid;
        if (hi - lo < 1e-3 * hi && std::abs(v) <= tol * 1e-3) break;
    }
    const double gap = std::sqrt(lo * hi);
    r.bracketed = true;
    r.tau = radius * (1 - gap);
    r.residual = std::abs(f(gap));
    r.remainder_share = b.d2_remainder_share_at_gap(gap);
    return r;
}

Root solve_infinite_radius(const BlockFunction& b, double tol) {
    auto f = [&](double t) { return t * b.d2(t) - 1; };
    double lo = 0, hi = 1;
    Root r;
    while (!(f(hi) > 0)) {
        lo = hi;
        hi *= 2;
        if (hi > 1e12) return r;
    }
    for (int it = 0; it < 2000 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = f(mid);
        if (v == 0) {
            lo = hi = mid;
            break;
        }
        if (v > 0) hi = mid; else lo = mid;
        if (std::abs(v) <= tol * 1e-3 && hi - lo < 1e-12 * hi) break;
    }
    r.bracketed = true;
    r.tau = 0.5 * (lo + hi);
    r.residual = std::abs(f(r.tau));
    return r;
}

// t·B''(t) sampled on (0, radius) must be non-decreasing.
bool sampled_monotone(const BlockFunction& b) {
    double prev = -std::numeric_limits<double>::infinity();
    if (std::isfinite(b.radius())) {
        for (int i = 0; i <= 64; ++i) {
            const double gap = std::pow(10.0, -12.0 * i / 64.0);  // t increases with i
            const double v = b.radius() * (1 - gap) * b.d2_at_gap(gap);
            if (v < prev * (1 - 1e-12)) return false;
            prev = v;
        }
    } else {
        for (int i = 0; i <= 64; ++i) {
            const double t = std::ldexp(1.0, i - 32);
            const double v = t * b.d2(t);
            if (v < prev * (1 - 1e-12)) return false;
            prev = v;
        }
    }
    return true;
}

}  // namespace

SubcriticalityCertificate subcriticality_solve(const std::function<BlockFunction(std::size_t)>& block_at_order,
                                               double eta_value, const std::vector<std::size_t>& orders,
                                               SolveOptions options, unsigned k) {
    if (orders.empty()) throw std::invalid_argument("subcriticality_solve: need at least one truncation order");
    if (!(options.tol > 0) || !(options.drift_tol > 0) || !(options.cdot_rel_tol > 0)) throw std::invalid_argument("subcriticality_solve: tolerances must be positive");

    SubcriticalityCertificate cert;
    cert.k = k;
    cert.eta = eta_value;
    cert.orders = orders;
    cert.monotone = true;
    std::ostringstream diag;

    BlockFunction last;
    for (const std::size_t order : orders) {
        BlockFunction b = block_at_order(order);
        if (std::isfinite(eta_value) && b.radius() != eta_value)
            throw std::invalid_argument("subcriticality_solve: block function radius differs from eta");
        cert.monotone = cert.monotone && sampled_monotone(b);
        const Root root = std::isfinite(b.radius()) ? solve_finite_radius(b, options.tol)
                                                    : solve_infinite_radius(b, options.tol);
        cert.per_order.push_back(OrderResult{order, root.bracketed, root.tau, root.residual, root.remainder_share});
        if (!root.bracketed) diag << "order " << order << ": no root bracketed (t·B''(t) < 1 on (0, eta)); ";
        last = std::move(b);
    }

    const bool all_bracketed = std::all_of(cert.per_order.begin(), cert.per_order.end(),
                                           [](const OrderResult& r) { return r.bracketed; });
    if (!all_bracketed) {
        cert.diagnostic = diag.str();
        return cert;
    }

    const OrderResult& ref = cert.per_order.back();
    cert.tau = ref.tau;
    cert.residual = ref.residual;
    for (const auto& r : cert.per_order) cert.tau_drift = std::max(cert.tau_drift, std::abs(r.tau - ref.tau) / ref.tau);
    cert.margin = eta_value - cert.tau;
    cert.relative_gap = std::isfinite(eta_value) ? 1 - cert.tau / eta_value : 1.0;

    const double d1 = std::isfinite(last.radius()) ? last.d1_at_gap(cert.relative_gap) : last.d1(cert.tau);
    cert.rho = cert.tau * std::exp(-d1);
    try {
        cert.cdot_at_rho = evaluate_cdot_numeric(last, cert.rho);
    } catch (const std::domain_error& e) {
        diag << "C•(rho) evaluation failed: " << e.what() << "; ";
        cert.cdot_at_rho = std::numeric_limits<double>::quiet_NaN();
    }

    const bool cdot_ok = std::abs(cert.cdot_at_rho - cert.tau) <= options.cdot_rel_tol * cert.tau;
    if (!(cert.margin > 0)) diag << "tau is not below eta; ";
    if (!(cert.tau_drift <= options.drift_tol)) diag << "tau drifts across truncation orders; ";
    if (!cdot_ok) diag << "C•(rho) does not reproduce tau; ";
    if (!cert.monotone) diag << "t·B''(t) is not increasing on the sampled grid; ";
    if (cert.residual > options.tol) diag << "residual above tolerance; ";
    cert.valid = cert.margin > 0 && cert.tau_drift <= options.drift_tol && cdot_ok && cert.monotone &&
                 cert.residual <= options.tol;
    cert.diagnostic = diag.str();
    return cert;
}

TailModel gk_tail_model(unsigned k, const std::vector<BigInt>& block_counts, TailChoice tail) {
    const double e = eta(k);
    if (tail == TailChoice::continuity) return continuity_tail(block_counts, e);
    return TailModel{upper_series_singular_constant(k) / gamma_minus_three_halves(), e};
}

SubcriticalityCertificate certify_gk(unsigned k, std::size_t order, int n_oracle, TailChoice tail,
                                     SolveOptions options, unsigned jobs) {
    require_k(k);
    if (n_oracle < 4 || n_oracle > kMaxOracleVertices) throw std::invalid_argument("certify_gk: n_oracle must lie in [4, 8]");
    if (order < static_cast<std::size_t>(n_oracle)) throw std::invalid_argument("certify_gk: order must be >= n_oracle");
    std::vector<BigInt> counts;
    for (int n = 0; n <= n_oracle; ++n) counts.push_back(census(n, static_cast<int>(k), jobs).count_B);
    const TailModel model = gk_tail_model(k, counts, tail);
    auto at_order = [&](std::size_t N) { return BlockFunction::from_hybrid(hybrid_block_series(counts, model, N)); };
    return subcriticality_solve(at_order, model.eta, {order, 2 * order, 4 * order}, options, k);
}

}  // namespace subcrit
