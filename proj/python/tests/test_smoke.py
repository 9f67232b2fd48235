import math
from fractions import Fraction

import pytest

import subcrit


def test_tree_series_counts():
    T = subcrit.series("T", 12)
    t = subcrit.series("t", 12)
    for n in range(1, 13):
        assert T[n] * math.factorial(n) == n ** (n - 1)
        assert t[n] * math.factorial(n) == (n ** (n - 2) if n >= 2 else 1)


def test_bivariate_leaf_marking():
    t_biv = subcrit.series("t_biv", 4)
    assert t_biv[4] == [0, 0, Fraction(1, 2), Fraction(1, 6)]


def test_upper_series_shape():
    U = subcrit.series("Uk", 50, k=4)
    assert len(U) == 51
    assert U[1] == 1


def test_unknown_series():
    with pytest.raises(ValueError):
        subcrit.series("nosuch", 5)


def test_constants():
    assert abs(subcrit.eta(4) - 0.02354) <= 5e-6
    assert subcrit.planar_negligibility_check(4)
    assert not subcrit.planar_negligibility_check(3)
    km = subcrit.km_constants(1)
    assert km["c"] == pytest.approx(1 / (2 * math.e))
    assert subcrit.tree_function(1 / (16 * math.e)) == pytest.approx(subcrit.eta(4), rel=1e-12)


def test_census_and_grammar():
    row = subcrit.census(4, 1)
    assert row["count_A"] == 9
    assert row["count_Gk"] == 64
    assert all(r["match"] for r in subcrit.gk_class_counts(2, 5))


def test_graph_predicates():
    k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    assert not subcrit.is_planar(5, k5)
    assert subcrit.is_in_Gk(5, k5, 3)
    assert not subcrit.is_in_Gk(5, k5, 2)
    assert subcrit.is_2connected(2, [(0, 1)])
    assert subcrit.is_k_apex_forest(4, [(0, 1), (1, 2), (2, 3), (3, 0)], 1)
    with pytest.raises(ValueError):
        subcrit.is_planar(9, [])


def test_certificate():
    cert = subcrit.certify(4, order=200)
    assert cert["valid"]
    assert 0 < cert["tau"] < cert["eta"]
    assert cert["orders"] == [200, 400, 800]


def test_identities_and_sandwich():
    assert subcrit.substitution_identity_check(3, 25)
    rows = subcrit.sandwich(1, 5, 5)
    assert [r["oracle"] for r in rows] == [0, 1, 1, 9, 152]
    assert all(r["oracle"] <= r["upper"] for r in rows)
    assert subcrit.trees_fixed_vertex_degree(4, 1) == 9
