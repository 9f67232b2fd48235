#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/trees.hpp"

using namespace subcrit;
using namespace subcrit::testing;

TEST_CASE("tree bundle: closed forms and the leaf convention") {
    const TreeSeriesBundle b = build_tree_bundle(40, 20);
    CHECK(b.T[4] == frac(64, 24));
    for (std::size_t n = 1; n <= 40; ++n) {
        CHECK(egf_count(b.T, n) == ipow(static_cast<long>(n), n - 1));
        if (n >= 2) CHECK(egf_count(b.t, n) == ipow(static_cast<long>(n), n - 2));
    }
    CHECK(egf_count(b.t, 1) == 1);
    CHECK(b.T_biv[1] == UPoly::monomial(1, 1));
    CHECK(b.t_biv[2] == UPoly::monomial(2, Rational(1, 2)));
    CHECK(b.T_biv[0].is_zero());
    CHECK(b.t_biv[0].is_zero());
}

TEST_CASE("tree identities hold exactly") {
    const std::size_t N = 30;
    const TreeSeriesBundle b = build_tree_bundle(N, N);
    CHECK(b.T == shift_up(exp_series(b.T), 1).truncate(N));
    CHECK(b.t == b.T - scale(b.T * b.T, Rational(1, 2)));
    CHECK(b.t == integrate_div_z(b.T));
    CHECK(b.f == exp_series(b.t));

    const BivariateEGF u_minus_1_z = BivariateEGF::monomial(1, UPoly(std::vector<Rational>{-1, 1}), N);
    CHECK(b.t_biv == b.T_biv + u_minus_1_z * b.T_biv - scale(b.T_biv * b.T_biv, Rational(1, 2)));
    CHECK(b.f_biv == exp_series(b.t_biv));
    CHECK(leaf_rooted_fixed_point(N) == leaf_rooted_explicit(N));
    for (const auto& u0 : {Rational(0), Rational(1, 2), Rational(15, 16), Rational(3)}) {
        CHECK(leaf_rooted_at(u0, N) == substitute_u(b.T_biv, u0));
        CHECK(leaf_unrooted_at(u0, N) == substitute_u(b.t_biv, u0));
        CHECK(leaf_forests_at(u0, N) == substitute_u(b.f_biv, u0));
    }
}

TEST_CASE("leaf census matches t(z,u) up to 8 vertices") {
    const TreeSeriesBundle b = build_tree_bundle(8, 8);
    for (int n = 1; n <= 8; ++n) {
        const auto census = tree_leaf_census(n);
        const UPoly& p = b.t_biv[static_cast<std::size_t>(n)];
        const BigInt nf = factorial(static_cast<unsigned long>(n));
        for (std::size_t l = 0; l <= static_cast<std::size_t>(n); ++l) {
            const auto it = census.find(static_cast<int>(l));
            const BigInt expected = it == census.end() ? BigInt(0) : it->second;
            CHECK(p.coeff(l) * nf == Rational(expected));
        }
    }
    CHECK(tree_leaf_census(4) == std::map<int, BigInt>{{2, 12}, {3, 4}});
}

TEST_CASE("mean leaf fraction is (1 - 1/n)^{n-2}") {
    for (int n = 2; n <= 8; ++n) {
        Rational leaves = 0;
        for (const auto& [l, c] : tree_leaf_census(n)) leaves += Rational(l) * Rational(c);
        const Rational trees = Rational(ipow(n, static_cast<unsigned long>(n - 2)));
        const Rational mean = leaves / (Rational(n) * trees);
        Rational expected = 1;
        for (int i = 0; i < n - 2; ++i) expected *= frac(n - 1, n);
        CHECK(mean == expected);
        // Same number as the share of trees in which a fixed vertex has degree 1.
        CHECK(mean == Rational(trees_fixed_vertex_degree(n, 1)) / trees);
    }
}

TEST_CASE("tree_function_eval") {
    CHECK(tree_function_eval(0) == 0);
    CHECK(tree_function_eval(1 / std::numbers::e) == doctest::Approx(1).epsilon(1e-7));
    CHECK(tree_function_eval(1 / (16 * std::numbers::e)) == doctest::Approx(0.02354).epsilon(2e-4));
    for (double x : {1e-6, 0.05, 0.2, 0.3, 0.36, 0.3678})
        CHECK(tree_function_eval(x) == doctest::Approx(-boost::math::lambert_w0(-x)).epsilon(1e-13));
    for (double x : {0.1, 0.25, 0.3678}) {
        const double y = tree_function_eval(x);
        CHECK(std::abs(y * std::exp(-y) - x) <= 1e-14);
    }
    CHECK_THROWS_AS(tree_function_eval(-0.1), std::domain_error);
    CHECK_THROWS_AS(tree_function_eval(0.4), std::domain_error);
}

TEST_CASE("singular expansions near 1/e") {
    const double e = std::numbers::e;
    CHECK(tree_singular_expansion_eval(1 / e) == doctest::Approx(1));
    CHECK(unrooted_singular_expansion_eval(1 / e) == doctest::Approx(0.5));
    const double x = (1 - 1e-4) / e;
    const double T = tree_function_eval(x);
    CHECK(std::abs(tree_singular_expansion_eval(x) - T) <= 1e-7);
    CHECK(std::abs(unrooted_singular_expansion_eval(x) - (T - T * T / 2)) <= 1e-7);
    // The linear coefficient of the unrooted expansion is -1: difference quotient in s.
    const double s1 = 1e-3, s2 = 2e-3;
    const double slope = (unrooted_singular_expansion_eval((1 - s2) / e) - unrooted_singular_expansion_eval((1 - s1) / e)) / (s2 - s1);
    CHECK(slope == doctest::Approx(-1).epsilon(0.1));
    CHECK_THROWS_AS(tree_singular_expansion_eval(0.4), std::domain_error);
    CHECK_THROWS_AS(tree_singular_expansion_eval(0.1), std::domain_error);
}
