#pragma once

// Block-stable classes from their blocks:
//   G = exp(C),   C• = z·exp(B'(C•)),   C• = z·C'.

#include <cstddef>
#include <vector>

#include "subcrit/block_function.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/series.hpp"

namespace subcrit {

struct ClassSeriesBundle {
    std::size_t order = 0;
    TruncatedEGF B, Cdot, C, G;
};

/// Builds C•, C and G from the block series B ([z^0]B = [z^1]B = 0). B must be
/// known to at least the requested order.
ClassSeriesBundle class_from_blocks(const TruncatedEGF& B, std::size_t order);

struct ClassCountRow {
    int n = 0;
    BigInt grammar_connected, oracle_connected;
    BigInt grammar_all, oracle_all;
    [[nodiscard]] bool match() const { return grammar_connected == oracle_connected && grammar_all == oracle_all; }
};

/// Feeds the oracle's block counts (n <= n_oracle) through the grammar and sets
/// the resulting class counts beside the oracle's own census of G_k.
std::vector<ClassCountRow> gk_class_counts(int k, int n_oracle, unsigned jobs = 1);
/// Same, from census rows for n = 0, 1, ..., N in order.
std::vector<ClassCountRow> class_counts_from_census(const std::vector<CensusRow>& rows);

/// C•(z) for 0 <= z <= rho: the smallest solution y of y = z·exp(B'(y)).
/// Newton steps from y = 0 approach it monotonically from below (y - z e^{B'(y)}
/// is concave). Throws std::domain_error when no solution exists, i.e. z > rho.
double evaluate_cdot_numeric(const BlockFunction& blocks, double z, double tol = 1e-15);

}  // namespace subcrit
