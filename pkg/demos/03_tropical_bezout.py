"""Counting intersections of plane tropical curves.

A tropical curve is a balanced weighted 1-dimensional fan.  Two of them
meet stably in finitely many points after a generic displacement; the
weighted count is the number of solutions of a generic polynomial system
with the given Newton polygons.
"""

from fractions import Fraction

from tropring.polytope import Polytope, mixed_volume, simplex
from tropring.tropical_cycle import stable_intersection_number, tropical_hypersurface

line = tropical_hypersurface(simplex(2))
conic = tropical_hypersurface(simplex(2, 2))
print("line:", ", ".join(f"{c.rays[0]} x{w}" for c, w in line.weighted_cones()))

res = stable_intersection_number(line, conic)
print("line . conic =", res.value)
print("displacement vector:", [str(x) for x in res.vector])
for p in res.pairs:
    print("  pair", p.i, p.j, "index", p.index, "contributes", p.contribution)

# Seeds change the displacement, not the answer
print("seeds 1..5:", [str(stable_intersection_number(conic, conic, s).value) for s in range(1, 6)])

# A skinny quadrilateral: the count matches 2 * mixed volume
Q = Polytope([(0, 0), (3, 0), (0, 1), (1, 1)])
n = stable_intersection_number(tropical_hypersurface(Q), conic).value
print("Q-curve . conic =", n, "  2*MV =", 2 * mixed_volume(Q, simplex(2, 2)))
print("rational weights are fine too:",
      stable_intersection_number(Fraction(1, 3) * line, line).value)
