"""Chevalley-Eilenberg cohomology, BCH groups, and the gauge action.

Run:  python3 demos/04_ce_and_exponentials.py
"""

from fractions import Fraction

from dgla import (
    DgLaPresentation,
    Derivation,
    DgLieSlice,
    NilpotentElementGroup,
    SliceElement,
    ce_cohomology,
    exp_automorphism,
    mc_check,
)


def v(*c):
    return [Fraction(x) for x in c]


# CE cohomology of sl_2 in degree 0 gives the Whitehead answer (1,0,0,1).
tab = {(0, 0): [
    [v(0, 0, 0), v(0, 0, 1), v(-2, 0, 0)],
    [v(0, 0, -1), v(0, 0, 0), v(0, 2, 0)],
    [v(2, 0, 0), v(0, -2, 0), v(0, 0, 0)],
]}
sl2 = DgLieSlice((0, 0), {0: ["e", "f", "h"]}, bracket_tables=tab).pad_to(0, 4)
print("H^*(sl2):", ce_cohomology(sl2, 1, (0, 3)))

# The Heisenberg algebra under Baker-Campbell-Hausdorff multiplication.
htab = {(0, 0): [
    [v(0, 0, 0), v(0, 0, 1), v(0, 0, 0)],
    [v(0, 0, -1), v(0, 0, 0), v(0, 0, 0)],
    [v(0, 0, 0), v(0, 0, 0), v(0, 0, 0)],
]}
heis = DgLieSlice((0, 0), {0: ["x", "y", "z"]}, bracket_tables=htab)
G = NilpotentElementGroup(heis, 2)
x = SliceElement(heis, 0, v(1, 0, 0))
y = SliceElement(heis, 0, v(0, 1, 0))
print("BCH(x, y) =", G.multiply(x, y).vector)

# Exponentials of nilpotent derivations are automorphisms.
p = DgLaPresentation([("a", 2), ("b", 2)])
theta = Derivation(p, 0, {"b": p.gen("a")})
e = exp_automorphism(theta)
print("e(theta): a ->", e.images["a"], ", b ->", e.images["b"])

# Maurer-Cartan elements of a tiny slice: d(a) = b and [a,a] = b, so
# tau = -2a satisfies d tau + (1/2)[tau, tau] = 0.
slc = DgLieSlice(
    (-2, 0),
    {-2: ["b"], -1: ["a"], 0: []},
    {-1: [[Fraction(1)]]},
    bracket_tables={(-1, -1): [[[Fraction(1)]]]},
)
tau = SliceElement(slc, -1, v(-2))
print("mc_check(-2a):", mc_check(tau)[0])
