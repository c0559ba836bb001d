#!/usr/bin/env python3
"""Build the coherent AR quiver of a pair of composable maps over A_3 and
print the window values, the suspension identification report, and DOT."""

from meshrep import GF, Complex, LineQuiver, Rep, build_ar
from meshrep.armesh import check_flip_sigma
from meshrep.linalg import Matrix

F = GF(32003)
q = LineQuiver.linear(3)
x = Rep(q.poset(), F, {1: 1, 2: 2, 3: 1},
        {(1, 2): Matrix.from_rows(F, [[1], [0]]),
         (2, 3): Matrix.from_rows(F, [[0, 1]])})
d = build_ar(q, Complex.from_rep(x))

print("window values (graded homology dims):")
for v in sorted(d.window.vertices()):
    c = d.canonical(v)
    if c:
        print(f"  {v}: {c}")
print("verification:", d.verify())
flips = check_flip_sigma(d)
print(f"Sigma = f^* at {sum(flips.values())}/{len(flips)} checkable vertices")
print()
print(d.to_dot())
