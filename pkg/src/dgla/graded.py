"""Graded vector spaces with named bases, graded maps, and chain complexes.

Conventions: homological grading, differentials of degree -1, all scalars
exact rationals.  A ChainComplexSlice only knows a finite degree window;
degrees outside the window are unknown, not zero, and every computation
checks that the window suffices.
"""

from fractions import Fraction

from . import linalg
from .errors import NotAComplex, WindowTooNarrow


class GradedBasis:
    """An ordered list of (name, degree) pairs with unique names.

    The order is stable and defines matrix column order everywhere.
    """

    def __init__(self, entries):
        self.entries = [(str(n), int(d)) for n, d in entries]
        self.index = {}
        for i, (n, _) in enumerate(self.entries):
            if n in self.index:
                raise ValueError("duplicate basis name %r" % n)
            self.index[n] = i
        self._by_degree = {}
        for n, d in self.entries:
            self._by_degree.setdefault(d, []).append(n)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, GradedBasis) and self.entries == other.entries

    def names(self):
        return [n for n, _ in self.entries]

    def degree(self, name):
        return self.entries[self.index[name]][1]

    def in_degree(self, d):
        """Names in a single degree, in basis order."""
        return list(self._by_degree.get(d, []))

    def dim(self, d):
        return len(self._by_degree.get(d, []))

    def degrees(self):
        return sorted(self._by_degree)


class GradedLinearMap:
    """A degree-homogeneous linear map given by per-degree blocks.

    ``blocks[d]`` is a dense rational matrix from the source's degree-d
    piece to the target's degree d + self.degree piece, with rows indexed by
    the target basis and columns by the source basis.  Absent blocks are
    zero.
    """

    def __init__(self, source, target, degree, blocks=None):
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.blocks = {}
        if blocks:
            for d, m in blocks.items():
                self.set_block(d, m)

    def set_block(self, d, matrix):
        rows = self.target.dim(d + self.degree)
        cols = self.source.dim(d)
        matrix = [[Fraction(x) for x in r] for r in matrix]
        if len(matrix) != rows or any(len(r) != cols for r in matrix):
            raise ValueError(
                "block at degree %d must be %dx%d" % (d, rows, cols)
            )
        self.blocks[d] = matrix

    def block(self, d):
        if d in self.blocks:
            return self.blocks[d]
        return linalg.zero_matrix(self.target.dim(d + self.degree), self.source.dim(d))

    def apply(self, d, vector):
        """Apply the degree-d block to a coordinate vector."""
        return linalg.matvec(self.block(d), vector)

    def is_zero(self):
        return all(linalg.is_zero_matrix(m) for m in self.blocks.values())


def rank_profile(m, degree):
    """(rank, kernel_basis, image_basis) of a GradedLinearMap block.

    Kernel vectors are in source coordinates at ``degree``; image vectors in
    target coordinates at ``degree + m.degree`` (original matrix columns at
    the pivot positions, so the image basis consists of actual images).
    """
    mat = m.block(degree)
    ncols = m.source.dim(degree)
    kernel, _ = linalg.kernel_basis(mat, ncols)
    pivots = linalg.pivot_columns(mat, ncols)
    cols = linalg.transpose(mat, ncols)
    image = [list(cols[p]) for p in pivots]
    return len(pivots), kernel, image


class ChainComplexSlice:
    """A finite degree window of a chain complex.

    ``spaces`` maps each degree in the window to a GradedBasis concentrated
    in that degree (only its length matters for computations; names label
    report rows).  ``differential`` maps degree d to the matrix of
    d_d : C_d -> C_{d-1}.  Degrees outside [lo, hi] are unknown.
    """

    def __init__(self, window, spaces, differential, check=True):
        self.lo, self.hi = int(window[0]), int(window[1])
        if self.lo > self.hi:
            raise ValueError("empty window")
        self.spaces = dict(spaces)
        self.differential = dict(differential)
        for d in range(self.lo, self.hi + 1):
            if d not in self.spaces:
                raise ValueError("missing space at degree %d" % d)
        for d in range(self.lo + 1, self.hi + 1):
            m = self.d_matrix(d)
            if len(m) != self.dim(d - 1) or (m and any(len(r) != self.dim(d) for r in m)):
                raise ValueError("differential block at %d has wrong shape" % d)
        if check:
            self.check_complex()

    def dim(self, d):
        if self.lo <= d <= self.hi:
            return len(self.spaces[d])
        raise WindowTooNarrow(
            "degree %d outside window [%d, %d]" % (d, self.lo, self.hi),
            required=(min(d, self.lo), max(d, self.hi)),
        )

    def labels(self, d):
        return self.spaces[d].names()

    def d_matrix(self, d):
        """Matrix of the differential out of degree d (into degree d-1)."""
        if not (self.lo < d <= self.hi):
            raise WindowTooNarrow(
                "no differential out of degree %d in window [%d, %d]"
                % (d, self.lo, self.hi),
                required=(min(d - 1, self.lo), max(d, self.hi)),
            )
        m = self.differential.get(d)
        if m is None:
            return linalg.zero_matrix(self.dim(d - 1), self.dim(d))
        return m

    def check_complex(self):
        """Assert d . d = 0 wherever both blocks lie in the window."""
        for d in range(self.lo + 2, self.hi + 1):
            prod = linalg.matmul(self.d_matrix(d - 1), self.d_matrix(d))
            if not linalg.is_zero_matrix(prod):
                raise NotAComplex("d^2 != 0 from degree %d" % d)

    def homology_degree(self, k):
        """(betti, cycle_representatives) at one degree.

        Needs both the differential out of k and into k, hence
        lo < k < hi strictly (boundary degrees of the window lack one side).
        """
        if not (self.lo < k < self.hi):
            raise WindowTooNarrow(
                "homology at %d needs window [%d, %d]" % (k, k - 1, k + 1),
                required=(k - 1, k + 1),
            )
        d_out = self.d_matrix(k)
        d_in = self.d_matrix(k + 1)
        n = self.dim(k)
        cycles, _ = linalg.kernel_basis(d_out, n)
        rk_in = linalg.rank(d_in, self.dim(k + 1)) if self.dim(k + 1) else 0
        betti = len(cycles) - rk_in
        boundaries = []
        cols = linalg.transpose(d_in, self.dim(k + 1)) if self.dim(k + 1) else []
        for p in linalg.pivot_columns(d_in, self.dim(k + 1)) if self.dim(k + 1) else []:
            boundaries.append(list(cols[p]))
        keep = linalg.extend_independent(boundaries, cycles, n)
        reps = [cycles[i] for i in keep]
        if len(reps) != betti:
            raise NotAComplex("boundaries not contained in cycles at degree %d" % k)
        return betti, reps


def homology(c, degree_range):
    """Per-degree (betti, cycle_representatives) over a degree interval.

    ``degree_range`` is inclusive (min_degree, max_degree) and must lie in
    the interior of the slice's window.
    """
    k0, k1 = int(degree_range[0]), int(degree_range[1])
    out = {}
    for k in range(k0, k1 + 1):
        out[k] = c.homology_degree(k)
    return out


def betti_numbers(c, degree_range):
    return {k: v[0] for k, v in homology(c, degree_range).items()}
