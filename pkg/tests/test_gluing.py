from fractions import Fraction

import pytest

from dgla.errors import DimensionMismatch, SemisimplicityNotAsserted
from dgla.gluing import boundary_connected_sum, forget_compare, glue_headline_g
from dgla.graded import betti_numbers
from dgla.models import build_block_g, manifold_model


def w11():
    return manifold_model(6, [("a", 2), ("b", 2)], [[0, 1], [-1, 0]])


def twisted9():
    return manifold_model(
        9,
        [("a", 2), ("x", 3), ("b", 4), ("y", 5)],
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
        None,
        {3: [1]},
    )


def test_connected_sum_w21():
    m = w11()
    n = w11()
    mn = boundary_connected_sum(m, n)
    assert [g for g, _ in mn.v.basis.entries] == ["a", "b", "a'", "b'"]
    assert mn.omega == mn.presentation.normal_form("[a,b]+[a',b']")
    # pairing stays unimodular (construction would have raised otherwise)
    assert len(mn.v.basis) == 4


def test_connected_sum_with_trivial_model():
    m = w11()
    point = manifold_model(6, [], [])
    mn = boundary_connected_sum(m, point)
    assert [g for g, _ in mn.v.basis.entries] == ["a", "b"]
    assert mn.omega == mn.presentation.normal_form("[a,b]")


def test_connected_sum_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        boundary_connected_sum(w11(), manifold_model(8, [("u", 3)], [[1]]))


def test_connected_sum_associative_dimensionwise():
    m = w11()
    left = boundary_connected_sum(boundary_connected_sum(m, m), m)
    right = boundary_connected_sum(m, boundary_connected_sum(m, m))
    for d in range(1, 4):
        assert left.v.basis.dim(d) == right.v.basis.dim(d)
    # omega agrees after identifying bases by position
    lv = left.omega.vector()
    rv = right.omega.vector()
    assert lv == rv


def test_connected_sum_carries_pontryagin():
    m = twisted9()
    n = twisted9()
    mn = boundary_connected_sum(m, n)
    assert mn.pontryagin[3] == [Fraction(1), Fraction(1)]


def test_glue_headline_g_dimensions_add_on_hom_part():
    m, n = w11(), w11()
    mn = boundary_connected_sum(m, n)
    gm = build_block_g(m, (0, 2))
    gn = build_block_g(n, (0, 2))
    gmn = build_block_g(mn, (0, 2))
    assert gmn.dim(0) == 4 == gm.dim(0) + gn.dim(0)
    gmap = glue_headline_g(
        gm, gn, gmn, mn.left_names, mn.right_names, assert_semisimple=True
    )
    assert gmap.report.passed
    # section property: the map is injective degreewise, so restriction back
    # to either factor recovers its elements
    from dgla import linalg

    for d in range(0, 3):
        cols = gm.dim(d) + gn.dim(d)
        if cols:
            assert linalg.rank(gmap.blocks[d], cols) == cols


def test_glue_requires_assertion():
    m, n = w11(), w11()
    mn = boundary_connected_sum(m, n)
    gm = build_block_g(m, (0, 1))
    gn = build_block_g(n, (0, 1))
    gmn = build_block_g(mn, (0, 1))
    with pytest.raises(SemisimplicityNotAsserted):
        glue_headline_g(gm, gn, gmn, mn.left_names, mn.right_names)


def test_glue_twisted_factors():
    m, n = twisted9(), twisted9()
    mn = boundary_connected_sum(m, n)
    gm = build_block_g(m, (0, 2))
    gn = build_block_g(n, (0, 2))
    gmn = build_block_g(mn, (0, 2))
    gmap = glue_headline_g(
        gm, gn, gmn, mn.left_names, mn.right_names, assert_semisimple=True
    )
    assert gmap.report.passed


def test_glue_with_trivial_factor_is_injection():
    m = w11()
    point = manifold_model(6, [], [])
    mn = boundary_connected_sum(m, point)
    gm = build_block_g(m, (0, 2))
    gp = build_block_g(point, (0, 2))
    gmn = build_block_g(mn, (0, 2))
    assert all(gp.dim(d) == 0 for d in range(3))
    gmap = glue_headline_g(
        gm, gp, gmn, mn.left_names, mn.right_names, assert_semisimple=True
    )
    for d in range(0, 3):
        nl = gm.dim(d)
        for j in range(nl):
            unit = [Fraction(1 if k == j else 0) for k in range(nl)]
            out = gmap.apply(d, unit, [])
            assert any(out)


def test_forget_compare_w11_ranks_agree():
    rows = forget_compare(w11(), (0, 4))
    assert [r["degree"] for r in rows] == [0, 1, 2, 3]
    for r in rows:
        assert r["left_agrees"] and r["right_agrees"]


def test_forget_compare_reports_all_three():
    rows = forget_compare(twisted9(), (0, 3))
    for r in rows:
        assert set(r) == {
            "degree",
            "left",
            "pullback",
            "right",
            "left_agrees",
            "right_agrees",
        }


def test_w21_block_dimensions_pinned():
    # frozen from the construction and confirmed by the d^2/Jacobi checks:
    # Hom part 4 in degree 0, Der_u part 0; positive degrees grow
    m = boundary_connected_sum(w11(), w11())
    g = build_block_g(m, (0, 3))
    g.check_d_squared()
    assert g.dim(0) == 4
    b = betti_numbers(g.to_chain(pad_below=True), (0, 2))
    assert b[0] == 4
