#pragma once

// Numerical constants of the k-apex-forest block classes and the
// subcriticality certificate tau·B''(tau) = 1, rho = tau·exp(-B'(tau)).

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "subcrit/block_function.hpp"
#include "subcrit/blocks.hpp"

namespace subcrit {

/// Smallest positive root of 2^k·eta = e^{eta-1}, by safeguarded Newton.
double eta(unsigned k);
/// Same radius as T(1/(2^k e)) through the tree function.
double eta_via_tree_function(unsigned k);

/// Gamma(-3/2) = 4 sqrt(pi) / 3.
double gamma_minus_three_halves();

/// Coefficient of (1 - x/eta_k)^{3/2} in the singular expansion of U_k.
double upper_series_singular_constant(unsigned k);
/// (c_k / Gamma(-3/2))·n^{-5/2}·eta_k^{-n}, the leading term of [x^n]U_k.
double asymp_upper_count(std::size_t n, unsigned k);
double log_asymp_upper_count(std::size_t n, unsigned k);

struct SingularityData {
    unsigned k = 0;
    double eta = 0;
    double c_upper = 0;
    double gamma_minus_three_halves = 0;
};
SingularityData singularity_data(unsigned k);

/// Constants of the asymptotic count c·n^{-5/2}·zeta^n·n! of all k-apex forests.
struct KMConstants {
    unsigned k = 0;
    double zeta = 0;  ///< e·2^k
    double c = 0;     ///< (2^{C(k+1,2)} e^k k!)^{-1}
};
KMConstants km_constants(unsigned k);
double apex_forest_estimate(std::size_t n, unsigned k);
double log_apex_forest_estimate(std::size_t n, unsigned k);

/// e^{-eta_k} = (e·2^k·eta_k)^{-1}: exponential decay rate of the probability
/// that a random k-apex forest is 2-connected.
double two_connected_prob_rate(unsigned k);

/// Growth constants of 2-connected labelled planar graphs, alpha·n^{-7/2}·beta^{-n}·n!
/// (Gimenez and Noy). Stored, not computed.
struct PlanarConstants {
    static constexpr double alpha = 0.37042e-5;
    static constexpr double beta = 0.03819;
};
/// beta > eta_k: planar blocks are exponentially rarer than the k-apex-forest blocks.
bool planar_negligibility_check(unsigned k);

struct SolveOptions {
    double tol = 1e-10;        ///< residual tolerance for tau·B''(tau) = 1
    double drift_tol = 1e-6;   ///< relative spread of tau across truncation orders
    double cdot_rel_tol = 1e-6;  ///< |C•(rho) - tau| / tau; rho is a tangency, so only ~sqrt(eps) is attainable
};

struct OrderResult {
    std::size_t order = 0;
    bool bracketed = false;
    double tau = 0;
    double residual = 0;
    double remainder_share = 0;  ///< share of B''(tau) from beyond the explicit order
};

struct SubcriticalityCertificate {
    unsigned k = 0;
    double eta = 0;
    double tau = 0;
    double rho = 0;
    double cdot_at_rho = 0;
    double margin = 0;        ///< eta - tau
    double relative_gap = 0;  ///< 1 - tau/eta
    double tau_drift = 0;
    double residual = 0;
    bool monotone = false;
    bool valid = false;
    std::vector<std::size_t> orders;
    std::vector<OrderResult> per_order;
    std::string diagnostic;
};

/// Solves tau·B''(tau) = 1 on (0, eta) for the block function at every order,
/// then derives rho and checks C•(rho) = tau. An unbracketed root gives an
/// invalid certificate with a diagnostic, not an exception.
SubcriticalityCertificate subcriticality_solve(const std::function<BlockFunction(std::size_t)>& block_at_order,
                                               double eta, const std::vector<std::size_t>& orders,
                                               SolveOptions options = {}, unsigned k = 0);

enum class TailChoice { upper_bound, continuity };

/// Certificate for G_k with the hybrid block series: oracle block counts for
/// n <= n_oracle, then c·n^{-5/2}·eta_k^{-n} with c = c_k/Gamma(-3/2) from U_k
/// or fitted for continuity at n_oracle.
SubcriticalityCertificate certify_gk(unsigned k, std::size_t order, int n_oracle = 6,
                                     TailChoice tail = TailChoice::upper_bound, SolveOptions options = {},
                                     unsigned jobs = 1);
/// The tail model used by certify_gk.
TailModel gk_tail_model(unsigned k, const std::vector<BigInt>& block_counts, TailChoice tail);

}  // namespace subcrit
