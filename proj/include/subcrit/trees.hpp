#pragma once

// Generating functions of labelled trees and forests, with and without leaf
// marking, plus floating-point evaluation of the tree function T(z) = z e^{T(z)}.
//
// Conventions: T counts rooted trees, t unrooted trees, f forests. In the
// bivariate versions u marks leaves; a lone vertex counts as one leaf.

#include <cstddef>
#include <optional>

#include "subcrit/series.hpp"

namespace subcrit {

struct TreeSeriesBundle {
    std::size_t order = 0;            ///< truncation order of T, t, f
    std::size_t bivariate_order = 0;  ///< truncation order of the leaf-marked series
    TruncatedEGF T, t, f;
    BivariateEGF T_biv, t_biv, f_biv;
};

/// Builds every tree series, each by two independent routes, and throws
/// std::logic_error if the routes disagree. The bivariate series cost O(N^4)
/// and default to min(order, 60).
TreeSeriesBundle build_tree_bundle(std::size_t order, std::optional<std::size_t> bivariate_order = {});

// Direct closed forms: n^{n-1}/n!, n^{n-2}/n!.
TruncatedEGF rooted_trees_closed_form(std::size_t order);
TruncatedEGF unrooted_trees_closed_form(std::size_t order);

/// T(z,u) from T = z·exp(T) + (u-1)z.
BivariateEGF leaf_rooted_fixed_point(std::size_t order);
/// T(z,u) = (u-1)z + T(z e^{(u-1)z}), expanding the powers of the inner series in closed form.
BivariateEGF leaf_rooted_explicit(std::size_t order);
/// t(z,u) = T + (u-1)z·T - T^2/2 from the leaf-marked rooted series.
BivariateEGF leaf_unrooted_from_rooted(const BivariateEGF& rooted);

// Leaf-marked series already specialised to u = u0. Equal to substitute_u of
// the bivariate series, but O(N^2), so usable at high order.
TruncatedEGF leaf_rooted_at(const Rational& u0, std::size_t order);
TruncatedEGF leaf_unrooted_at(const Rational& u0, std::size_t order);
TruncatedEGF leaf_forests_at(const Rational& u0, std::size_t order);

/// T(x) for x in [0, 1/e]: the root y in [0, 1] of y·e^{-y} = x.
double tree_function_eval(double x, double tol = 1e-14);

/// T near 1/e: 1 - sqrt(2s) + (2/3)s - (11 sqrt2/36) s^{3/2} with s = 1 - e x.
double tree_singular_expansion_eval(double x);
/// t = T - T^2/2 near 1/e: 1/2 - s + (2 sqrt2/3) s^{3/2}.
double unrooted_singular_expansion_eval(double x);

}  // namespace subcrit
