#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "subcrit/composition.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/trees.hpp"

using namespace subcrit;
using namespace subcrit::testing;

TEST_CASE("single-edge blocks give forests") {
    const std::size_t N = 15;
    TruncatedEGF B(N);
    B.set(2, Rational(1, 2));
    const auto cls = class_from_blocks(B, N);
    CHECK(cls.Cdot == rooted_trees_closed_form(N));
    for (std::size_t n = 2; n <= N; ++n) CHECK(egf_count(cls.C, n) == ipow(static_cast<long>(n), n - 2));
    CHECK(egf_count(cls.G, 3) == 7);
    CHECK(egf_count(cls.G, 4) == 38);
    CHECK(cls.G == exp_series(cls.C));
    for (std::size_t n = 1; n <= N; ++n) CHECK(cls.C[n] * Rational(n) == cls.Cdot[n]);
}

TEST_CASE("no blocks give isolated vertices") {
    const auto cls = class_from_blocks(TruncatedEGF::zero(8), 8);
    CHECK(cls.Cdot == TruncatedEGF::z(8));
    CHECK(cls.C == TruncatedEGF::z(8));
    CHECK(cls.G == exp_series(TruncatedEGF::z(8)));
}

TEST_CASE("edge and triangle blocks against the oracle") {
    const std::size_t N = 6;
    TruncatedEGF B(N);
    B.set(2, Rational(1, 2));
    B.set(3, Rational(1, 6));
    const auto cls = class_from_blocks(B, N);
    CHECK(egf_count(cls.G, 3) == 8);
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        BigInt count = 0;
        for_each_labelled_graph(n, [&](const SmallGraph& g) {
            bool ok = true;
            for (const auto& b : block_decompose(g)) ok = ok && b.n() <= 3 && b.edge_count() == b.n() * (b.n() - 1) / 2;
            count += ok;
        });
        CHECK(egf_count(cls.G, static_cast<std::size_t>(n)) == Rational(count));
        CHECK(egf_count(cls.G, static_cast<std::size_t>(n)) >= egf_count(cls.C, static_cast<std::size_t>(n)));
    }
}

TEST_CASE("malformed block series are rejected") {
    CHECK_THROWS_AS(class_from_blocks(TruncatedEGF::z(5), 5), std::invalid_argument);
    CHECK_THROWS_AS(class_from_blocks(TruncatedEGF::constant(1, 5), 5), std::invalid_argument);
    CHECK_THROWS_AS(class_from_blocks(TruncatedEGF::zero(3), 5), std::invalid_argument);
}

TEST_CASE("grammar reproduces the census of G_k") {
    for (int k : {1, 2})
        for (const auto& row : gk_class_counts(k, 6)) {
            CHECK(row.match());
            CHECK(row.grammar_all >= row.grammar_connected);
        }
    const auto rows = gk_class_counts(3, 2);
    CHECK(rows[2].grammar_all == 2);
    CHECK(rows[2].oracle_all == 2);
}

TEST_CASE("numeric C•") {
    TruncatedEGF B(2);
    B.set(2, Rational(1, 2));
    const auto f = BlockFunction::from_series(B);
    CHECK(evaluate_cdot_numeric(f, 0) == 0);
    CHECK(evaluate_cdot_numeric(f, 0.2) == doctest::Approx(tree_function_eval(0.2)).epsilon(1e-14));
    CHECK(evaluate_cdot_numeric(f, 0.2) == doctest::Approx(0.2591711018).epsilon(1e-9));
    CHECK(evaluate_cdot_numeric(f, 1 / std::numbers::e) == doctest::Approx(1).epsilon(1e-7));
    CHECK_THROWS_AS(evaluate_cdot_numeric(f, 0.4), std::domain_error);
    CHECK_THROWS_AS(evaluate_cdot_numeric(f, -0.1), std::domain_error);

    // Below rho the numeric value agrees with the truncated series.
    std::vector<CensusRow> rows;
    for (int n = 0; n <= 6; ++n) rows.push_back(census(n, 1));
    TruncatedEGF Bk(6);
    for (std::size_t n = 0; n <= 6; ++n) Bk.set(n, Rational(rows[n].count_B) / Rational(factorial(n)));
    const auto cls = class_from_blocks(Bk, 6);
    const double z = 0.02;
    double series_value = 0;
    for (std::size_t n = 1; n <= 6; ++n) series_value += cls.Cdot[n].get_d() * std::pow(z, static_cast<double>(n));
    CHECK(evaluate_cdot_numeric(BlockFunction::from_series(Bk), z) == doctest::Approx(series_value).epsilon(1e-8));
}
