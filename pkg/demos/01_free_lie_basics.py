"""Free graded Lie algebras: bases, normal forms, homology.

Run:  python3 demos/01_free_lie_basics.py
"""

from dgla import DgLaPresentation, betti_numbers, lie_chain_slice
from dgla.expr import tree_to_str

# The free graded Lie algebra on one generator of odd degree has exactly
# two basis elements: x and the square [x,x].
p = DgLaPresentation([("x", 1)])
for d in range(1, 5):
    trees = [tree_to_str(p.tree_names(b.tree)) for b in p.lie_basis(d)]
    print("degree %d basis:" % d, trees)

# Normal forms canonicalize against the super-Lyndon basis: here the
# bracket [[a,b],b] equals minus [b,[a,b]].
q = DgLaPresentation([("a", 2), ("b", 2)])
e = q.normal_form("[b,[a,b]]")
print("[b,[a,b]] ->", e)

# A quasi-free dg Lie algebra with differential: d(w) = (1/2)[v,v] is the
# minimal model of a CP^2-like space; its homology over a window:
cp2 = DgLaPresentation([("v", 1), ("w", 3)], {"w": "1/2*[v,v]"})
print("validates:", cp2.validate().passed)
print("betti 1..5:", betti_numbers(lie_chain_slice(cp2, 0, 6), (1, 5)))
