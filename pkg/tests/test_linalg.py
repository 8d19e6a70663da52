import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dgla import linalg
from oracles import gauss_rank


def test_rank_examples():
    assert linalg.rank([[0, 0], [0, 0]], 2) == 0
    assert linalg.rank(linalg.identity_matrix(3), 3) == 3
    # hand elimination: rank 1, kernel spanned by (2, -1) up to scale
    m = [[1, 2], [2, 4]]
    assert linalg.rank(m, 2) == 1
    kernel, free = linalg.kernel_basis(m, 2)
    assert len(kernel) == 1
    x, y = kernel[0]
    assert x * 1 + y * 2 == 0 and (x, y) != (0, 0)
    assert Fraction(2) * y == -x * Fraction(1) or x / y == Fraction(-2)


def test_solve_and_kernel():
    m = [[1, 2, 3], [0, 1, 1]]
    sol = linalg.solve(m, 3, [6, 2])
    assert sol is not None
    assert linalg.matvec(m, sol) == [Fraction(6), Fraction(2)]
    assert linalg.solve([[1, 0], [0, 1], [1, 1]], 2, [1, 1, 3]) is None


def test_pivot_columns_give_image_basis():
    m = [[1, 2, 0], [2, 4, 1]]
    pts = linalg.pivot_columns(m, 3)
    cols = linalg.transpose(m, 3)
    chosen = [cols[p] for p in pts]
    assert gauss_rank(chosen) == linalg.rank(m, 3) == 2


def test_subspace_coords_roundtrip():
    vs = [[1, 2, 0], [0, 1, 1]]
    s = linalg.Subspace.from_vectors(vs, 3)
    v = [Fraction(3), Fraction(7), Fraction(1)]
    c = s.coords(v)
    assert c is not None
    assert s.vector(c) == v
    assert s.coords([1, 0, 0]) is None


def test_subspace_intersection():
    a = linalg.Subspace.from_vectors([[1, 0, 0], [0, 1, 0]], 3)
    b = linalg.Subspace.from_vectors([[0, 1, 0], [0, 0, 1]], 3)
    i = a.intersection(b)
    assert i.dim == 1
    assert i.contains([0, 5, 0])


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-6, 6), min_size=4, max_size=4),
        min_size=1,
        max_size=5,
    )
)
def test_rank_matches_plain_gauss(rows):
    assert linalg.rank(rows, 4) == gauss_rank(rows)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
        min_size=1,
        max_size=5,
    )
)
def test_rank_nullity(rows):
    kernel, _ = linalg.kernel_basis(rows, 3)
    assert linalg.rank(rows, 3) + len(kernel) == 3
    for v in kernel:
        assert all(x == 0 for x in linalg.matvec(rows, v))


def test_bit_length_pivoting_stays_exact():
    rng = random.Random(7)
    rows = [
        [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(6)]
        for _ in range(6)
    ]
    r = linalg.rank(rows, 6)
    assert r == gauss_rank(rows)
