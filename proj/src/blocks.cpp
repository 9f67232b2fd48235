#include "subcrit/blocks.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <stdexcept>

#include "subcrit/trees.hpp"

namespace subcrit {
namespace {

Rational pow2(long e) {
    Rational r = 1;
    if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    return r;
}

// x^k/m! · s(2^r x) where s is the leaf-unrooted or leaf-forest series at u = 1 - 2^{-r}.
TruncatedEGF shifted_scaled(const TruncatedEGF& s, unsigned r, unsigned k, const Rational& factor) {
    return scale(shift_up(scale_argument(s, pow2(r)), k), factor);
}

void require_k(unsigned k, std::size_t order, const char* who) {
    if (k < 1) throw std::invalid_argument(std::string(who) + ": k must be >= 1");
    if (order < k + 1) throw std::invalid_argument(std::string(who) + ": order must be >= k + 1");
}

}  // namespace

TruncatedEGF upper_series_term(unsigned r, std::size_t order) {
    require_k(r, order, "upper_series_term");
    const Rational u0 = 1 - pow2(-static_cast<long>(r));
    const Rational factor = pow2(static_cast<long>(r) * (r - 1) / 2) / Rational(factorial(r));
    return shifted_scaled(leaf_forests_at(u0, order), r, r, factor);
}

TruncatedEGF upper_series_partial(unsigned r_max, std::size_t order) {
    TruncatedEGF acc = TruncatedEGF::zero(order);
    for (unsigned r = 1; r <= r_max; ++r) acc = add(acc, upper_series_term(r, order));
    return acc;
}

TruncatedEGF upper_series(unsigned k, std::size_t order) {
    require_k(k, order, "upper_series");
    return upper_series_partial(k, order);
}

TruncatedEGF lower_series(unsigned k, std::size_t order) {
    require_k(k, order, "lower_series");
    const Rational u0 = 1 - pow2(-static_cast<long>(k));
    return shifted_scaled(leaf_unrooted_at(u0, order), k, k, Rational(1) / Rational(factorial(k)));
}

TruncatedEGF lower_correction_series(unsigned k, std::size_t order) {
    require_k(k, order, "lower_correction_series");
    return shifted_scaled(leaf_unrooted_at(Rational(1, 2), order), 1, k, Rational(1) / Rational(factorial(k - 1)));
}

SubstitutionSides substitution_sides(unsigned r, std::size_t order) {
    if (r < 1 || order < 1) throw std::invalid_argument("substitution_sides: need r >= 1 and order >= 1");
    const Rational u0 = 1 - pow2(-static_cast<long>(r));
    const Rational two_r = pow2(r);

    const BivariateEGF rooted = leaf_rooted_fixed_point(order);
    const BivariateEGF unrooted = leaf_unrooted_from_rooted(rooted);

    SubstitutionSides s;
    s.rooted_lhs = substitute_u(scale_argument(rooted, two_r), u0);
    s.unrooted_lhs = substitute_u(scale_argument(unrooted, two_r), u0);

    // w = 2^r x e^{-x}; W = T(w)
    const auto x = TruncatedEGF::z(order);
    const TruncatedEGF w = scale(shift_up(exp_series(scale(x, Rational(-1))), 1), two_r);
    const TruncatedEGF W = compose(rooted_trees_closed_form(order), w);
    s.rooted_rhs = sub(W, x);
    const TruncatedEGF half_x2 = TruncatedEGF::monomial(2, Rational(1, 2), order);
    s.unrooted_rhs = add(sub(sub(W, scale(mul(W, W), Rational(1, 2))), x), half_x2);
    return s;
}

bool substitution_identity_holds(const SubstitutionSides& sides) {
    return sides.rooted_lhs == sides.rooted_rhs && sides.unrooted_lhs == sides.unrooted_rhs;
}

bool substitution_identity_check(unsigned r, std::size_t order) {
    return substitution_identity_holds(substitution_sides(r, order));
}

double TailModel::log_coefficient(std::size_t n) const {
    return std::log(c) + exponent * std::log(static_cast<double>(n)) - static_cast<double>(n) * std::log(eta);
}

double HybridBlockSeries::log_coefficient(std::size_t n) const {
    if (n > order) throw std::out_of_range("HybridBlockSeries: coefficient beyond truncation order");
    if (n <= head.order()) {
        if (sgn(head[n]) == 0) return -std::numeric_limits<double>::infinity();
        return log_rational(head[n]);
    }
    return tail.log_coefficient(n);
}

HybridBlockSeries hybrid_block_series(std::span<const BigInt> oracle_counts, TailModel tail, std::size_t order) {
    if (oracle_counts.empty()) throw std::invalid_argument("hybrid_block_series: empty oracle range");
    if (!(tail.c > 0) || !(tail.eta > 0 && tail.eta < 1))
        throw std::invalid_argument("hybrid_block_series: tail needs c > 0 and 0 < eta < 1");
    const std::size_t n0 = oracle_counts.size() - 1;
    if (n0 < 4) throw std::invalid_argument("hybrid_block_series: oracle counts must reach n0 >= 4");
    if (order < n0) throw std::invalid_argument("hybrid_block_series: order below the oracle range");
    TruncatedEGF head(n0);
    for (std::size_t n = 0; n <= n0; ++n) head.set(n, Rational(oracle_counts[n]) / Rational(factorial(n)));
    return HybridBlockSeries{std::move(head), tail, order};
}

TailModel continuity_tail(std::span<const BigInt> oracle_counts, double eta) {
    if (oracle_counts.size() < 2) throw std::invalid_argument("continuity_tail: need counts up to n0 >= 1");
    const std::size_t n0 = oracle_counts.size() - 1;
    const Rational b = Rational(oracle_counts[n0]) / Rational(factorial(n0));
    if (sgn(b) <= 0) throw std::invalid_argument("continuity_tail: last oracle count must be positive");
    const double n = static_cast<double>(n0);
    const double log_c = log_rational(b) + 2.5 * std::log(n) + n * std::log(eta);
    return TailModel{std::exp(log_c), eta};
}

double log_rational(const Rational& r) {
    if (sgn(r) <= 0) throw std::domain_error("log_rational: argument must be positive");
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
    return std::log(mn / md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

}  // namespace subcrit
