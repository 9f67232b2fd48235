#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "subcrit/analytic.hpp"
#include "subcrit/blocks.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/tables.hpp"

using namespace subcrit;
using namespace subcrit::testing;

TEST_CASE("upper series small coefficients") {
    const auto U1 = upper_series(1, 8);
    CHECK(U1[1] == 1);
    CHECK(U1[2] == 1);
    for (unsigned k = 1; k <= 4; ++k) CHECK(upper_series(k, k + 1)[1] == 1);
    CHECK(upper_series(3, 10) == upper_series_partial(3, 10));
    CHECK((upper_series_partial(2, 10) + upper_series_term(3, 10)) == upper_series(3, 10));
    CHECK(is_labelled_count_series(upper_series(3, 40)));
    CHECK_THROWS(upper_series(0, 5));
    CHECK_THROWS(upper_series(3, 3));
}

TEST_CASE("lower series") {
    for (unsigned k = 1; k <= 5; ++k) {
        const auto L = lower_series(k, k + 3);
        CHECK(L[k + 1] == Rational(BigInt(ipow(2, k) - 1)) / Rational(factorial(k)));
        for (const auto& c : L.coeffs()) CHECK(sgn(c) >= 0);
    }
    CHECK(lower_series(1, 20) == lower_correction_series(1, 20));
    const auto L1 = lower_series(1, 5);
    CHECK(L1[3] == Rational(1, 2));
}

TEST_CASE("the correction grows strictly slower than L_k for k >= 2") {
    const std::size_t N = 120;
    for (unsigned k = 2; k <= 3; ++k) {
        const auto L = lower_series(k, N);
        const auto corr = lower_correction_series(k, N);
        const double r_L = std::exp(log_rational(L[N]) - log_rational(L[N - 1]));
        const double r_corr = std::exp(log_rational(corr[N]) - log_rational(corr[N - 1]));
        CHECK(r_corr < r_L);
        CHECK(r_corr == doctest::Approx(1 / eta(1)).epsilon(0.05));
        CHECK(r_L == doctest::Approx(1 / eta(k)).epsilon(0.05));
        // The share of the correction in L_k vanishes geometrically.
        const double share_mid = std::exp(log_rational(corr[N / 2]) - log_rational(L[N / 2]));
        const double share_end = std::exp(log_rational(corr[N]) - log_rational(L[N]));
        CHECK(share_end < share_mid);
    }
}

TEST_CASE("the r = k summand dominates U_k") {
    const std::size_t N = 200;
    for (unsigned k = 2; k <= 4; ++k) {
        const auto U = upper_series(k, N);
        const auto rest = upper_series_partial(k - 1, N);
        double prev = 2;
        for (std::size_t n = 20; n <= N; n += 20) {
            const double share = std::exp(log_rational(rest[n]) - log_rational(U[n]));
            CHECK(share < prev);
            prev = share;
        }
        CHECK(prev < 1e-20);
    }
}

TEST_CASE("substitution identities") {
    for (unsigned r = 1; r <= 6; ++r) CHECK(substitution_identity_check(r, 30));
    CHECK(substitution_identity_check(4, 50));

    auto sides = substitution_sides(2, 20);
    CHECK(substitution_identity_holds(sides));
    sides.rooted_rhs = sides.rooted_rhs + TruncatedEGF::monomial(2, 1, 20);
    CHECK_FALSE(substitution_identity_holds(sides));
    sides = substitution_sides(2, 20);
    sides.unrooted_rhs = sides.unrooted_rhs + TruncatedEGF::monomial(2, 1, 20);
    CHECK_FALSE(substitution_identity_holds(sides));
}

TEST_CASE("upper bound dominates the oracle count of A_k") {
    for (unsigned k = 1; k <= 2; ++k)
        for (const auto& row : sandwich_rows(k, 6, 6)) CHECK(row.upper_holds());
    // k = 1: the lower bound is identically zero.
    for (const auto& row : sandwich_rows(1, 7, 0)) CHECK(row.lower == 0);
}

TEST_CASE("hybrid block series") {
    std::vector<BigInt> counts;
    for (int n = 0; n <= 6; ++n) counts.push_back(census(n, 4).count_B);
    const TailModel tail{upper_series_singular_constant(4) / gamma_minus_three_halves(), eta(4)};
    const auto h = hybrid_block_series(counts, tail, 200);
    CHECK(h.exact_order() == 6);
    CHECK(h.head[2] == Rational(1, 2));
    for (std::size_t n = 0; n <= 6; ++n) CHECK(h.head[n] * Rational(factorial(n)) == Rational(counts[n]));
    CHECK(std::isinf(h.log_coefficient(0)));
    CHECK(h.log_coefficient(150) == doctest::Approx(tail.log_coefficient(150)));
    CHECK_THROWS_AS(static_cast<void>(h.log_coefficient(201)), std::out_of_range);

    // Tail coefficients sit between the lower and upper series.
    const auto U = upper_series(4, 200);
    const auto L = lower_series(4, 200) - lower_correction_series(4, 200);
    for (std::size_t n = 7; n <= 200; n += 7) {
        CHECK(h.log_coefficient(n) <= log_rational(U[n]));
        CHECK(h.log_coefficient(n) >= log_rational(L[n]));
    }

    CHECK_THROWS_AS(hybrid_block_series(std::vector<BigInt>{}, tail, 10), std::invalid_argument);
    CHECK_THROWS_AS(hybrid_block_series(std::span(counts).first(3), tail, 10), std::invalid_argument);
    CHECK_THROWS_AS(hybrid_block_series(counts, TailModel{-1, 0.1}, 10), std::invalid_argument);

    const TailModel fitted = continuity_tail(counts, eta(4));
    CHECK(fitted.log_coefficient(6) == doctest::Approx(h.log_coefficient(6)));
}

TEST_CASE("empirical constant range") {
    // 3! * n^{5/2} * eta^n / n! with eta = 1/2: n=3 gives 3^{2.5}/8, n=4 gives 0 and is skipped
    const std::vector<std::pair<int, BigInt>> counts = {{3, BigInt(6)}, {4, BigInt(0)}, {5, BigInt(120)}};
    const auto r = empirical_constant_range(counts, 0.5);
    CHECK(r.sup == doctest::Approx(std::pow(3.0, 2.5) / 8));
    CHECK(r.inf == doctest::Approx(std::pow(5.0, 2.5) / 32));
    CHECK_THROWS_AS(static_cast<void>(empirical_constant_range({{4, BigInt(0)}}, 0.5)), std::invalid_argument);
}
