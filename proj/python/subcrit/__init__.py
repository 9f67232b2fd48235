"""Exact series, graph oracle and subcriticality certificate for graph classes
whose blocks are planar or k-apex forests."""

from fractions import Fraction

from . import _subcrit
from ._subcrit import (
    PLANAR_ALPHA,
    PLANAR_BETA,
    asymp_upper_count,
    census,
    certify,
    eta,
    eta_via_tree_function,
    gk_class_counts,
    is_2connected,
    is_in_Gk,
    is_k_apex_forest,
    is_planar,
    km_constants,
    planar_negligibility_check,
    sandwich,
    substitution_identity_check,
    tree_function,
    trees_fixed_vertex_degree,
    two_connected_prob_rate,
    upper_series_singular_constant,
)


def series(name, order, k=1):
    """Coefficients [z^0..z^order] as Fractions; bivariate names give lists of u-coefficients."""
    raw = _subcrit.series(name, order, k)
    if name.endswith("_biv"):
        return [[Fraction(c) for c in row] for row in raw]
    return [Fraction(c) for c in raw]
