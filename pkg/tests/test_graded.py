from fractions import Fraction

import pytest

from dgla.errors import NotAComplex, WindowTooNarrow
from dgla.graded import (
    ChainComplexSlice,
    GradedBasis,
    GradedLinearMap,
    betti_numbers,
    homology,
    rank_profile,
)
from dgla.presentation import DgLaPresentation, lie_chain_slice
from oracles import witt_dimensions


def _two_term_identity():
    spaces = {
        -1: GradedBasis([]),
        0: GradedBasis([("e0", 0)]),
        1: GradedBasis([("e1", 1)]),
        2: GradedBasis([]),
    }
    return ChainComplexSlice((-1, 2), spaces, {1: [[Fraction(1)]]})


def test_acyclic_identity():
    c = _two_term_identity()
    assert betti_numbers(c, (0, 1)) == {0: 0, 1: 0}


def test_free_lie_one_odd_generator():
    p = DgLaPresentation([("a", 1)])
    c = lie_chain_slice(p, 0, 4)
    assert betti_numbers(c, (1, 3)) == {1: 1, 2: 1, 3: 0}


def test_free_lie_two_even_generators_witt_oracle():
    p = DgLaPresentation([("a", 2), ("b", 2)])
    w = witt_dimensions([2, 2], 3, 6)
    expected = {2: w[(1, 2)], 4: w[(2, 4)], 6: w[(3, 6)]}
    c = lie_chain_slice(p, 1, 7)
    b = betti_numbers(c, (2, 6))
    assert {k: b[k] for k in (2, 4, 6)} == expected == {2: 2, 4: 1, 6: 2}


def test_representatives_are_cycles_spanning():
    p = DgLaPresentation([("a", 2), ("b", 2)])
    c = lie_chain_slice(p, 1, 7)
    from dgla import linalg

    res = homology(c, (2, 6))
    for k, (betti, reps) in res.items():
        assert len(reps) == betti
        for r in reps:
            assert all(v == 0 for v in linalg.matvec(c.d_matrix(k), r))


def test_window_too_narrow():
    c = _two_term_identity()
    with pytest.raises(WindowTooNarrow):
        c.homology_degree(2)
    with pytest.raises(WindowTooNarrow):
        c.homology_degree(-1)


def test_not_a_complex_detected():
    spaces = {
        0: GradedBasis([("x", 0)]),
        1: GradedBasis([("y", 1)]),
        2: GradedBasis([("z", 2)]),
    }
    diff = {1: [[Fraction(1)]], 2: [[Fraction(1)]]}
    with pytest.raises(NotAComplex):
        ChainComplexSlice((0, 2), spaces, diff)


def test_homology_basis_order_independent():
    p1 = DgLaPresentation([("a", 2), ("b", 2)])
    p2 = DgLaPresentation([("b", 2), ("a", 2)])
    b1 = betti_numbers(lie_chain_slice(p1, 1, 7), (2, 6))
    b2 = betti_numbers(lie_chain_slice(p2, 1, 7), (2, 6))
    assert b1 == b2


def test_rank_profile_examples():
    src = GradedBasis([("x", 1), ("y", 1)])
    tgt = GradedBasis([("u", 1), ("v", 1)])
    zero = GradedLinearMap(src, tgt, 0)
    rank, kernel, image = rank_profile(zero, 1)
    assert rank == 0 and len(kernel) == 2 and image == []
    ident = GradedLinearMap(src, src, 0, {1: [[1, 0], [0, 1]]})
    rank, kernel, image = rank_profile(ident, 1)
    assert rank == 2 and kernel == []
    m = GradedLinearMap(src, tgt, 0, {1: [[1, 2], [2, 4]]})
    rank, kernel, image = rank_profile(m, 1)
    assert rank == 1 and len(kernel) == 1
    x, y = kernel[0]
    assert x + 2 * y == 0


def test_rank_nullity_invariant():
    p = DgLaPresentation([("a", 1), ("b", 2)])
    c = lie_chain_slice(p, 0, 5)
    from dgla import linalg

    for k in range(1, 5):
        rk = linalg.rank(c.d_matrix(k), c.dim(k)) if c.dim(k) else 0
        kernel, _ = linalg.kernel_basis(c.d_matrix(k), c.dim(k))
        assert rk + len(kernel) == c.dim(k)


def test_cp2_model_matches_rational_homotopy():
    # the minimal model of CP^2: H_k = pi_{k+1}(CP^2) (x) Q, i.e. classes in
    # degrees 1 (from pi_2) and 4 (from pi_5 of the total space S^5)
    p = DgLaPresentation([("v", 1), ("w", 3)], {"w": "1/2*[v,v]"})
    c = lie_chain_slice(p, 0, 6)
    assert betti_numbers(c, (1, 5)) == {1: 1, 2: 0, 3: 0, 4: 1, 5: 0}
