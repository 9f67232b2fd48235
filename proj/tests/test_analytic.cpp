#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "subcrit/analytic.hpp"
#include "subcrit/block_function.hpp"
#include "subcrit/trees.hpp"

using namespace subcrit;
using namespace subcrit::testing;

namespace {

double direct_sum(double s, double q, std::size_t from = 1) {
    double sum = 0;
    for (std::size_t n = from; n < 5'000'000; ++n) {
        const double term = std::pow(q, static_cast<double>(n)) / std::pow(static_cast<double>(n), s);
        sum += term;
        if (term < 1e-19 * sum) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("eta_k") {
    CHECK(std::abs(eta(4) - 0.02354) <= 5e-6);
    for (unsigned k = 1; k <= 10; ++k) {
        const double e = eta(k);
        CHECK(std::abs(std::ldexp(e, static_cast<int>(k)) - std::exp(e - 1)) <= 1e-12);
        CHECK(std::abs(e - eta_via_tree_function(k)) <= 1e-12);
        if (k > 1) CHECK(e < eta(k - 1));
    }
    CHECK_THROWS(eta(0));
}

TEST_CASE("singular constants") {
    CHECK(gamma_minus_three_halves() == doctest::Approx(2.363271801207355).epsilon(1e-14));
    CHECK(gamma_minus_three_halves() == doctest::Approx(boost::math::tgamma(-1.5)).epsilon(1e-14));
    for (unsigned k = 1; k <= 10; ++k) CHECK(upper_series_singular_constant(k) > 0);
    CHECK(asymp_upper_count(100, 4) == doctest::Approx(std::exp(log_asymp_upper_count(100, 4))));
    const auto s = singularity_data(3);
    CHECK(s.eta == eta(3));
    CHECK(s.c_upper == upper_series_singular_constant(3));
}

TEST_CASE("apex-forest constants") {
    CHECK(km_constants(1).c == doctest::Approx(1 / (2 * std::numbers::e)));
    CHECK(km_constants(1).c == doctest::Approx(0.18394).epsilon(1e-4));
    for (unsigned k = 1; k <= 10; ++k) {
        const auto km = km_constants(k);
        CHECK(std::abs(km.zeta * eta(k) - std::exp(eta(k))) <= 1e-10);
        CHECK(std::abs(1 / (std::numbers::e * std::ldexp(1.0, static_cast<int>(k)) * eta(k)) - two_connected_prob_rate(k)) <= 1e-10);
    }
    CHECK(two_connected_prob_rate(4) == doctest::Approx(0.97673).epsilon(1e-5));
    CHECK(apex_forest_estimate(7, 1) == doctest::Approx(std::exp(log_apex_forest_estimate(7, 1))));
}

TEST_CASE("planar comparison") {
    for (unsigned k = 1; k <= 3; ++k) CHECK_FALSE(planar_negligibility_check(k));
    for (unsigned k = 4; k <= 10; ++k) CHECK(planar_negligibility_check(k));
    CHECK(PlanarConstants::beta == 0.03819);
    CHECK(PlanarConstants::alpha == 0.37042e-5);
}

TEST_CASE("polylogarithm") {
    for (double s : {0.5, 1.5, -0.5})
        for (double q : {0.1, 0.5, 0.9, 0.99}) CHECK(polylog(s, q) == doctest::Approx(direct_sum(s, q)).epsilon(1e-12));
    CHECK(polylog(1.5, 0) == 0);
    // Near q = 1 the expansion in log q takes over; compare with the direct tail.
    for (double gap : {1e-3, 1e-5}) {
        const double q = 1 - gap;
        CHECK(polylog_tail_exp(1.5, std::log1p(-gap), 100) == doctest::Approx(direct_sum(1.5, q, 101)).epsilon(1e-9));
    }
    CHECK(polylog_tail_exp(0.5, std::log(0.3), 40) == doctest::Approx(direct_sum(0.5, 0.3, 41)).epsilon(1e-12));
    CHECK_THROWS_AS(polylog(0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(polylog_exp(2.0, -0.1), std::domain_error);
}

TEST_CASE("block function evaluation") {
    const auto B = series_of({0, 0, Rational(1, 2), Rational(1, 6), Rational(1, 24)});
    const auto f = BlockFunction::from_series(B);
    for (double t : {0.0, 0.3, 2.0}) {
        CHECK(f.d1(t) == doctest::Approx(t + t * t / 2 + t * t * t / 6));
        CHECK(f.d2(t) == doctest::Approx(1 + t + t * t / 2));
    }
    CHECK_FALSE(f.has_tail());

    // Hybrid: compare with a direct termwise sum well inside the disc.
    const double e = eta(4);
    const TailModel tail{0.01, e};
    TruncatedEGF head(6);
    head.set(2, Rational(1, 2));
    head.set(3, Rational(1, 6));
    const auto h = BlockFunction::from_hybrid(HybridBlockSeries{head, tail, 50});
    const double t = 0.7 * e;
    double d1 = t + t * t / 2, d2 = 1 + t;
    for (std::size_t n = 7; n < 4000; ++n) {
        const double lc = tail.log_coefficient(n), nn = static_cast<double>(n);
        d1 += std::exp(lc + std::log(nn) + (nn - 1) * std::log(t));
        d2 += std::exp(lc + std::log(nn * (nn - 1)) + (nn - 2) * std::log(t));
    }
    CHECK(h.d1(t) == doctest::Approx(d1).epsilon(1e-12));
    CHECK(h.d2(t) == doctest::Approx(d2).epsilon(1e-12));
    CHECK(h.d2_at_gap(0.3) == doctest::Approx(d2).epsilon(1e-12));
    CHECK(h.radius() == e);
    CHECK_THROWS_AS(static_cast<void>(h.d2(e)), std::domain_error);
    CHECK(h.d2_at_gap(1e-12) > h.d2_at_gap(1e-6));
}

TEST_CASE("subcriticality of forests") {
    const auto B = series_of({0, 0, Rational(1, 2)});
    const auto c = subcriticality_solve([&](std::size_t) { return BlockFunction::from_series(B); },
                                        std::numeric_limits<double>::infinity(), {10, 20, 40});
    CHECK(c.valid);
    CHECK(c.tau == doctest::Approx(1).epsilon(1e-10));
    CHECK(c.rho == doctest::Approx(1 / std::numbers::e).epsilon(1e-10));
    CHECK(c.cdot_at_rho == doctest::Approx(1).epsilon(1e-6));
    CHECK(c.tau_drift == 0);
}

TEST_CASE("no root bracketed gives an invalid certificate") {
    const auto B = series_of({0, 0, Rational(1, 2)});
    const auto c = subcriticality_solve([&](std::size_t) { return BlockFunction::from_series(B, 0.5); }, 0.5, {10, 20, 40});
    CHECK_FALSE(c.valid);
    CHECK(c.diagnostic.find("no root bracketed") != std::string::npos);
    CHECK_THROWS_AS(subcriticality_solve([&](std::size_t) { return BlockFunction::from_series(B, 0.5); }, 0.5, {}),
                    std::invalid_argument);
}

TEST_CASE("certificate for G_4") {
    for (auto tail : {TailChoice::upper_bound, TailChoice::continuity}) {
        const auto c = certify_gk(4, 200, 6, tail);
        CHECK(c.valid);
        CHECK(c.tau > 0);
        CHECK(c.tau < c.eta);
        CHECK(c.margin > 0);
        CHECK(c.tau_drift < 0.01);
        CHECK(c.residual <= 1e-10);
        CHECK(c.orders == std::vector<std::size_t>{200, 400, 800});
        CHECK(c.rho < c.tau);
    }
    CHECK_THROWS_AS(certify_gk(4, 200, 3), std::invalid_argument);
    CHECK_THROWS_AS(certify_gk(4, 200, 9), std::invalid_argument);
}

TEST_CASE("certificates are deterministic") {
    const auto a = certify_gk(3, 100, 5);
    const auto b = certify_gk(3, 100, 5, TailChoice::upper_bound, {}, 2);
    CHECK(a.tau == b.tau);
    CHECK(a.rho == b.rho);
}
