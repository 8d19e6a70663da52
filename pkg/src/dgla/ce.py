"""Chevalley-Eilenberg (co)homology of finite dg Lie slices.

Chains are graded-symmetric words in the shifted basis s g (letters of
shifted degree |x|+1; odd letters never repeat), with the standard two-part
coderivation differential

    d1(s x) = -s(d x)          d2(s x ^ s y) = (-1)^{|x|} s [x, y]

extended by the Koszul rule.  The sign conventions are certified by the
d^2 = 0 checks in the test suite rather than trusted.  Coefficients are
plain vector spaces with trivial action, so Hom(C, Q^r) = Hom(C, Q)^r and
cochain Betti numbers scale linearly in the coefficient dimension.
"""

from fractions import Fraction

from . import linalg
from .errors import WindowTooNarrow


def _letters(g, max_sdeg):
    """Letters (d, i) of s g with shifted degree d+1 <= max_sdeg."""
    out = []
    for d in range(max(g.lo, 0), min(g.hi, max_sdeg - 1) + 1):
        for i in range(g.dim(d)):
            out.append((d, i))
    return out


def _sdeg(letter):
    return letter[0] + 1


def _sort_word(letters):
    """Canonical form of a word with its Koszul sign; None if it vanishes.

    Letters are sorted by (degree, index); swapping adjacent letters of
    shifted degrees a, b contributes (-1)^{ab}; a repeated odd-shifted
    letter kills the word.
    """
    lst = list(letters)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            if (_sdeg(lst[j - 1]) * _sdeg(lst[j])) % 2:
                sign = -sign
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            j -= 1
    for i in range(1, len(lst)):
        if lst[i] == lst[i - 1] and _sdeg(lst[i]) % 2:
            return None
    return tuple(lst), sign


def ce_words(g, degree):
    """Canonical words of total shifted degree ``degree``, sorted."""
    if degree == 0:
        return [()]
    letters = _letters(g, degree)
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(letters)):
            sd = _sdeg(letters[k])
            if sd > remaining:
                continue
            if acc and letters[k] == acc[-1] and sd % 2:
                continue
            acc.append(letters[k])
            rec(k, remaining - sd, acc)
            acc.pop()

    rec(0, degree, [])
    out.sort()
    return out


class CESlice:
    """A window of the CE chain complex of a dg Lie slice."""

    def __init__(self, g, top_degree):
        if g.lo < 0:
            raise WindowTooNarrow(
                "CE chains need a non-negatively graded input", required=(0, g.hi)
            )
        if g.hi < top_degree - 1:
            raise WindowTooNarrow(
                "CE words up to degree %d need g up to degree %d"
                % (top_degree, top_degree - 1),
                required=(g.lo, top_degree - 1),
            )
        self.g = g
        self.top = top_degree
        self.words = {}
        self.index = {}
        for k in range(0, top_degree + 1):
            ws = ce_words(g, k)
            self.words[k] = ws
            self.index[k] = {w: i for i, w in enumerate(ws)}

    def dim(self, k):
        if 0 <= k <= self.top:
            return len(self.words[k])
        if k < 0:
            return 0
        raise WindowTooNarrow("CE degree %d above the built window" % k, required=(0, k))

    def _d1_letter(self, letter):
        """delta_1(s x) = -s(d x) as a list of (letter, coeff)."""
        d, i = letter
        if d - 1 < self.g.lo:
            return []
        col = [row[i] for row in self.g.d_matrix(d)]
        return [((d - 1, k), -c) for k, c in enumerate(col) if c]

    def _d2_pair(self, la, lb):
        """delta_2(s x ^ s y) = (-1)^{|x|} s [x, y] as (letter, coeff) list."""
        (da, ia), (db, ib) = la, lb
        v = self.g.bracket(da, ia, db, ib)
        sign = Fraction(-1 if da % 2 else 1)
        return [((da + db, k), sign * c) for k, c in enumerate(v) if c]

    def d_matrix(self, k):
        """Matrix of the CE differential C_k -> C_{k-1}."""
        rows = self.dim(k - 1)
        cols = self.dim(k)
        m = linalg.zero_matrix(rows, cols)
        for j, w in enumerate(self.words[k]):
            for letter_pos in range(len(w)):
                eps = sum(_sdeg(l) for l in w[:letter_pos]) % 2
                outer_sign = Fraction(-1 if eps else 1)
                for letter2, c in self._d1_letter(w[letter_pos]):
                    rest = w[:letter_pos] + (letter2,) + w[letter_pos + 1 :]
                    sorted_ = _sort_word(rest)
                    if sorted_ is None:
                        continue
                    ww, s = sorted_
                    i = self.index[k - 1].get(ww)
                    if i is not None:
                        m[i][j] += outer_sign * s * c
            for a in range(len(w)):
                for b in range(a + 1, len(w)):
                    pre_a = sum(_sdeg(l) for l in w[:a])
                    pre_b = sum(_sdeg(l) for l in w[:b]) - _sdeg(w[a])
                    eps = (_sdeg(w[a]) * pre_a + _sdeg(w[b]) * pre_b) % 2
                    outer_sign = Fraction(-1 if eps else 1)
                    rest = tuple(l for t, l in enumerate(w) if t != a and t != b)
                    for letter2, c in self._d2_pair(w[a], w[b]):
                        sorted_ = _sort_word((letter2,) + rest)
                        if sorted_ is None:
                            continue
                        ww, s = sorted_
                        i = self.index[k - 1].get(ww)
                        if i is not None:
                            m[i][j] += outer_sign * s * c
        return m

    def check_d_squared(self):
        for k in range(2, self.top + 1):
            if not linalg.is_zero_matrix(
                linalg.matmul(self.d_matrix(k - 1), self.d_matrix(k))
            ):
                raise AssertionError("CE differential does not square to zero at %d" % k)


def ce_cohomology(g, coefficient_dim, degree_range, certify=True):
    """Betti numbers of H^k(Hom(CE chains, M)) for a trivial module M.

    ``coefficient_dim`` is dim M.  The required g-window is computed from
    the range and reported via WindowTooNarrow when the slice is too small.
    Returns a dict degree -> betti.
    """
    k0, k1 = int(degree_range[0]), int(degree_range[1])
    ce = CESlice(g, k1 + 1)
    if certify:
        ce.check_d_squared()
    out = {}
    ranks = {}
    for k in range(max(k0, 0), k1 + 2):
        ranks[k] = linalg.rank(ce.d_matrix(k), ce.dim(k)) if ce.dim(k) else 0
    for k in range(k0, k1 + 1):
        if k < 0:
            out[k] = 0
            continue
        betti_q = ce.dim(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        out[k] = coefficient_dim * betti_q
    return out


def ce_product_check(g, h, dim_m, dim_n, degree_range):
    """Verify the product comparison dimensionwise and on Betti numbers.

    Checks that CE cochains of g x h with coefficients M (x) N have, in each
    degree of the range, the dimension of the tensor product of the factors'
    cochain complexes, and that the Betti numbers satisfy the Kunneth
    equality.  Returns a report; never raises on mathematical failure.
    """
    k0, k1 = int(degree_range[0]), int(degree_range[1])
    prod = g.product(h)
    cg = CESlice(g, k1 + 1)
    ch = CESlice(h, k1 + 1)
    cp = CESlice(prod, k1 + 1)
    checks = []
    ok = True
    witness = None
    for k in range(max(0, k0), k1 + 1):
        lhs = dim_m * dim_n * cp.dim(k)
        rhs = sum(
            (dim_m * cg.dim(i)) * (dim_n * ch.dim(k - i)) for i in range(0, k + 1)
        )
        if lhs != rhs:
            ok = False
            witness = ("dimension", k, lhs, rhs)
            break
    checks.append(("cochain_dimensions_multiply", ok, witness))
    bg = ce_cohomology(g, dim_m, (max(0, k0), k1), certify=False)
    bh = ce_cohomology(h, dim_n, (max(0, k0), k1), certify=False)
    bp = ce_cohomology(prod, dim_m * dim_n, (max(0, k0), k1), certify=False)
    ok = True
    witness = None
    for k in range(max(0, k0), k1 + 1):
        rhs = sum(bg.get(i, 0) * bh.get(k - i, 0) for i in range(0, k + 1))
        if bp[k] != rhs:
            ok = False
            witness = ("kunneth", k, bp[k], rhs)
            break
    checks.append(("kunneth_betti", ok, witness))
    from .presentation import ValidationReport

    return ValidationReport(checks)
