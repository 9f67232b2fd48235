#include "subcrit/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subcrit/analytic.hpp"
#include "subcrit/blocks.hpp"
#include "subcrit/graph_oracle.hpp"

namespace subcrit {

std::vector<SandwichRow> sandwich_rows(unsigned k, int n_max, int oracle_max, unsigned jobs) {
    if (n_max < 1) throw std::invalid_argument("sandwich_rows: n_max must be >= 1");
    if (oracle_max > kMaxOracleVertices) throw std::invalid_argument("sandwich_rows: oracle_max must be <= 8");
    const std::size_t order = std::max<std::size_t>(static_cast<std::size_t>(n_max), k + 1);
    const TruncatedEGF U = upper_series(k, order);
    const TruncatedEGF L = lower_series(k, order) - lower_correction_series(k, order);
    std::vector<SandwichRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        SandwichRow r;
        r.n = n;
        const auto nn = static_cast<std::size_t>(n);
        const Rational lo = egf_count(L, nn), up = egf_count(U, nn);
        if (lo.get_den() != 1 || up.get_den() != 1) throw std::logic_error("sandwich_rows: non-integral bound");
        r.lower = lo.get_num();
        r.upper = up.get_num();
        if (n <= oracle_max) r.oracle = census(n, static_cast<int>(k), jobs).count_A;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<AsymptoticRow> asymptotic_rows(unsigned k, const std::vector<std::size_t>& ns) {
    if (ns.empty()) return {};
    const std::size_t order = std::max<std::size_t>(*std::max_element(ns.begin(), ns.end()), k + 1);
    const TruncatedEGF U = upper_series(k, order);
    std::vector<AsymptoticRow> rows;
    for (const std::size_t n : ns) {
        if (n < 1) throw std::invalid_argument("asymptotic_rows: n must be >= 1");
        AsymptoticRow r;
        r.n = n;
        r.log_exact = sgn(U[n]) > 0 ? log_rational(U[n]) : -std::numeric_limits<double>::infinity();
        r.log_asymp = log_asymp_upper_count(n, k);
        r.ratio = std::exp(r.log_exact - r.log_asymp);
        rows.push_back(r);
    }
    return rows;
}

EmpiricalConstantRange empirical_constant_range(const std::vector<std::pair<int, BigInt>>& counts, double eta) {
    EmpiricalConstantRange out{std::numeric_limits<double>::infinity(), 0};
    for (const auto& [n, count] : counts) {
        if (n < 1 || sgn(count) <= 0) continue;
        const double v = std::exp(log_rational(Rational(count) / Rational(factorial(static_cast<std::size_t>(n)))) +
                                  2.5 * std::log(n) + n * std::log(eta));
        out.inf = std::min(out.inf, v);
        out.sup = std::max(out.sup, v);
    }
    if (out.sup == 0) throw std::invalid_argument("empirical_constant_range: no positive counts");
    return out;
}

}  // namespace subcrit
