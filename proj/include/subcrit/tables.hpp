#pragma once

// Tables shared by the command-line tool, the acceptance suite and the Python module.

#include <cstddef>
#include <optional>
#include <vector>

#include "subcrit/series.hpp"

namespace subcrit {

/// n!·([x^n]L_k - [x^n]L_k^corr), the oracle's |A_k(n)| when n <= oracle_max, and n!·[x^n]U_k.
struct SandwichRow {
    int n = 0;
    BigInt lower, upper;
    std::optional<BigInt> oracle;
    [[nodiscard]] bool holds() const { return !oracle || (lower <= *oracle && *oracle <= upper); }
    [[nodiscard]] bool upper_holds() const { return !oracle || *oracle <= upper; }
    [[nodiscard]] bool lower_holds() const { return !oracle || lower <= *oracle; }
};
std::vector<SandwichRow> sandwich_rows(unsigned k, int n_max, int oracle_max, unsigned jobs = 1);

/// [x^n]U_k against (c_k/Gamma(-3/2))·n^{-5/2}·eta_k^{-n}; both sides kept as natural logs.
struct AsymptoticRow {
    std::size_t n = 0;
    double log_exact = 0;
    double log_asymp = 0;
    double ratio = 0;
};
/// Rows for the given n values, all at most the series order used (max of ns).
std::vector<AsymptoticRow> asymptotic_rows(unsigned k, const std::vector<std::size_t>& ns);

/// Empirical inf and sup of n!·[x^n]-scaled counts against n^{-5/2}·eta^{-n}·n!,
/// i.e. count·n^{5/2}·eta^n/n! over the given (n, count) pairs with count > 0.
struct EmpiricalConstantRange {
    double inf = 0;
    double sup = 0;
};
EmpiricalConstantRange empirical_constant_range(const std::vector<std::pair<int, BigInt>>& counts, double eta);

}  // namespace subcrit
