#include "subcrit/trees.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subcrit {
namespace {

BigInt ipow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

void require_equal(const TruncatedEGF& a, const TruncatedEGF& b, const char* what) {
    if (!(a == b)) throw std::logic_error(std::string("tree bundle: routes disagree for ") + what);
}

// Admissible range of s = 1 - e·x for the singular expansions.
double singular_distance(double x) {
    double s = 1.0 - std::numbers::e * x;
    if (s < -1e-15) throw std::domain_error("singular expansion: x lies beyond the branch point 1/e");
    if (s > 0.2) throw std::domain_error("singular expansion: x too far from 1/e (need 1 - e x <= 0.2)");
    return std::max(s, 0.0);
}

}  // namespace

TruncatedEGF rooted_trees_closed_form(std::size_t order) {
    TruncatedEGF r(order);
    for (std::size_t n = 1; n <= order; ++n) r.set(n, Rational(ipow(n, n - 1)) / Rational(factorial(n)));
    return r;
}

TruncatedEGF unrooted_trees_closed_form(std::size_t order) {
    TruncatedEGF r(order);
    if (order >= 1) r.set(1, Rational(1));
    for (std::size_t n = 2; n <= order; ++n) r.set(n, Rational(ipow(n, n - 2)) / Rational(factorial(n)));
    return r;
}

BivariateEGF leaf_rooted_fixed_point(std::size_t order) {
    const UPoly u_minus_1(std::vector<Rational>{Rational(-1), Rational(1)});
    const auto z = BivariateEGF::z(order);
    return solve_exp_fixed_point(z, scale_by(z, u_minus_1));
}

BivariateEGF leaf_rooted_explicit(std::size_t order) {
    // [z^n] T(z e^{(u-1)z}) = sum_{m=1..n} m^{m-1}/m! · m^{n-m} (u-1)^{n-m} / (n-m)!
    std::vector<UPoly> powers{UPoly(Rational(1))};
    const UPoly u_minus_1(std::vector<Rational>{Rational(-1), Rational(1)});
    for (std::size_t j = 1; j <= order; ++j) powers.push_back(powers.back() * u_minus_1);

    BivariateEGF r(order);
    for (std::size_t n = 1; n <= order; ++n) {
        UPoly c;
        for (std::size_t m = 1; m <= n; ++m) {
            const Rational w = Rational(ipow(m, m - 1) * ipow(m, n - m)) / Rational(factorial(m) * factorial(n - m));
            c += powers[n - m] * w;
        }
        if (n == 1) c += u_minus_1;
        r.set(n, c);
    }
    return r;
}

BivariateEGF leaf_unrooted_from_rooted(const BivariateEGF& rooted) {
    const UPoly u_minus_1(std::vector<Rational>{Rational(-1), Rational(1)});
    const BivariateEGF correction = scale_by(shift_up(rooted, 1), u_minus_1);
    const BivariateEGF edge_rooted = scale(mul(rooted, rooted), Rational(1, 2));
    return sub(add(rooted, correction), edge_rooted);
}

TruncatedEGF leaf_rooted_at(const Rational& u0, std::size_t order) {
    const auto z = TruncatedEGF::z(order);
    return solve_exp_fixed_point(z, scale(z, u0 - 1));
}

TruncatedEGF leaf_unrooted_at(const Rational& u0, std::size_t order) {
    const TruncatedEGF T = leaf_rooted_at(u0, order);
    const TruncatedEGF correction = scale(shift_up(T, 1), u0 - 1);
    return sub(add(T, correction), scale(mul(T, T), Rational(1, 2)));
}

TruncatedEGF leaf_forests_at(const Rational& u0, std::size_t order) {
    return exp_series(leaf_unrooted_at(u0, order));
}

TreeSeriesBundle build_tree_bundle(std::size_t order, std::optional<std::size_t> bivariate_order) {
    if (order < 1) throw std::invalid_argument("build_tree_bundle: order must be >= 1");
    const std::size_t bo = bivariate_order.value_or(std::min<std::size_t>(order, 60));
    if (bo < 1 || bo > order) throw std::invalid_argument("build_tree_bundle: bivariate order must lie in [1, order]");

    TreeSeriesBundle b;
    b.order = order;
    b.bivariate_order = bo;

    b.T_biv = leaf_rooted_fixed_point(bo);
    if (!(b.T_biv == leaf_rooted_explicit(bo)))
        throw std::logic_error("tree bundle: leaf-marked rooted series disagree between fixed point and explicit form");
    b.t_biv = leaf_unrooted_from_rooted(b.T_biv);
    b.f_biv = b_exp(b.t_biv);

    const auto z = TruncatedEGF::z(order);
    b.T = solve_exp_fixed_point(z, TruncatedEGF::zero(order));
    require_equal(b.T, rooted_trees_closed_form(order), "T");
    require_equal(substitute_u(b.T_biv, 1), b.T.truncate(bo), "T(z,1)");

    b.t = sub(b.T, scale(mul(b.T, b.T), Rational(1, 2)));
    require_equal(b.t, integrate_div_z(b.T), "t (integral form)");
    require_equal(b.t, unrooted_trees_closed_form(order), "t");
    require_equal(substitute_u(b.t_biv, 1), b.t.truncate(bo), "t(z,1)");

    b.f = exp_series(b.t);
    require_equal(substitute_u(b.f_biv, 1), b.f.truncate(bo), "f(z,1)");
    return b;
}

double tree_function_eval(double x, double tol) {
    constexpr double inv_e = 1.0 / std::numbers::e;
    if (!(x >= 0.0) || x > inv_e * (1 + 1e-15)) throw std::domain_error("tree_function_eval: x must lie in [0, 1/e]");
    if (x == 0.0) return 0.0;
    x = std::min(x, inv_e);

    // g(y) = y e^{-y} - x is increasing on [0,1] with g(0) < 0 <= g(1).
    double lo = 0.0, hi = 1.0;
    const double s = 1.0 - std::numbers::e * x;
    double y = s < 0.1 ? 1.0 - std::sqrt(2.0 * s) : x * std::exp(x);
    y = std::clamp(y, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double ey = std::exp(-y);
        const double g = y * ey - x;
        if (g == 0.0) return y;
        if (g < 0) lo = y; else hi = y;
        const double dg = (1.0 - y) * ey;
        double next = dg > 0 ? y - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - y);
        y = next;
        if (step <= tol * std::max(1.0, y) || hi - lo <= tol) break;
    }
    return y;
}

double tree_singular_expansion_eval(double x) {
    const double s = singular_distance(x);
    return 1.0 - std::sqrt(2.0 * s) + 2.0 / 3.0 * s - 11.0 * std::numbers::sqrt2 / 36.0 * std::pow(s, 1.5);
}

double unrooted_singular_expansion_eval(double x) {
    const double s = singular_distance(x);
    return 0.5 - s + 2.0 * std::numbers::sqrt2 / 3.0 * std::pow(s, 1.5);
}

}  // namespace subcrit
