#pragma once

// Series bounding the number of 2-connected k-apex forests.
//
//   U_k(x) = sum_{r=1..k} 2^{C(r,2)} x^r/r! · f(2^r x, 1 - 2^{-r})     (upper bound)
//   L_k(x) = x^k/k! · t(2^k x, 1 - 2^{-k})                             (tree + K_k + edges)
//   L_k^corr(x) = x^k/(k-1)! · t(2x, 1/2)                               (non-2-connected part of L_k)
//
// plus a hybrid block series: exact small-n block counts followed by a
// c·n^{-5/2}·eta^{-n} tail.

#include <cstddef>
#include <span>
#include <vector>

#include "subcrit/series.hpp"

namespace subcrit {

/// The r-th summand of U_k.
TruncatedEGF upper_series_term(unsigned r, std::size_t order);
/// U_k. Note [x^1]U_k = 1: the r = 1 summand with an empty forest is a lone vertex.
TruncatedEGF upper_series(unsigned k, std::size_t order);
/// Sum of the summands r = 1 .. r_max of U_k (r_max < k gives the subdominant part).
TruncatedEGF upper_series_partial(unsigned r_max, std::size_t order);

TruncatedEGF lower_series(unsigned k, std::size_t order);
/// For k = 1 this equals lower_series(1, ·), so the k = 1 lower bound is identically 0.
TruncatedEGF lower_correction_series(unsigned k, std::size_t order);

/// Both sides of T(2^r x, 1-2^{-r}) = T(2^r x e^{-x}) - x and of
/// t(2^r x, 1-2^{-r}) = T(2^r x e^{-x}) - T(2^r x e^{-x})^2/2 - x + x^2/2.
/// The left sides come from the leaf-marked bivariate series, the right sides
/// from composing the univariate tree function.
struct SubstitutionSides {
    TruncatedEGF rooted_lhs, rooted_rhs;
    TruncatedEGF unrooted_lhs, unrooted_rhs;
};
SubstitutionSides substitution_sides(unsigned r, std::size_t order);
bool substitution_identity_holds(const SubstitutionSides& sides);
bool substitution_identity_check(unsigned r, std::size_t order);

/// Models [x^n]B = c·n^{-5/2}·eta^{-n} for large n.
struct TailModel {
    double c = 0;
    double eta = 0;
    static constexpr double exponent = -2.5;

    [[nodiscard]] double log_coefficient(std::size_t n) const;
};

/// Block series with exact coefficients up to head.order() and the tail model
/// after that, truncated at `order`. Tail coefficients are real, so they are
/// exposed in log form rather than as rationals.
struct HybridBlockSeries {
    TruncatedEGF head;
    TailModel tail;
    std::size_t order = 0;

    [[nodiscard]] std::size_t exact_order() const { return head.order(); }
    /// log [x^n]B, or -inf where the coefficient is zero.
    [[nodiscard]] double log_coefficient(std::size_t n) const;
};

/// oracle_counts[n] = number of labelled blocks on n vertices, for n = 0..n0.
HybridBlockSeries hybrid_block_series(std::span<const BigInt> oracle_counts, TailModel tail, std::size_t order);
/// Tail constant making the model coefficient at n0 equal the last exact coefficient.
TailModel continuity_tail(std::span<const BigInt> oracle_counts, double eta);

/// log of a positive rational, safe for values far outside double range.
double log_rational(const Rational& r);

}  // namespace subcrit
