"""Volume polynomials of complete fans and their graded rings."""

from tropring.fan import Cone, Fan
from tropring.kp_ring import class_of_polytope, ring_of_fan, volume_polynomial
from tropring.polytope import Polytope, cube, normal_fan

# The fan of the projective plane: rays e1, e2, -e1-e2
P2 = Fan([Cone([(1, 0), (0, 1)], (), 2), Cone([(0, 1), (-1, -1)], (), 2),
          Cone([(-1, -1), (1, 0)], (), 2)], 2)
print("rays:", P2.rays())
V = volume_polynomial(P2, {(1, 0): 0, (0, 1): 0, (-1, -1): 1})
print("V =", V.polynomial)

R = ring_of_fan(P2, V.chamber_reference)
print("dims", R.dims, "pairing", R.report()["pairing"])

sq = cube(2)
F = normal_fan(sq)
R2 = ring_of_fan(F, class_of_polytope(F, sq))
print("P1 x P1 dims", R2.dims, "duality:", R2.has_poincare_duality())

# a singular fan still gives a ring with duality over Q
W = Fan([Cone([(1, 0), (0, 1)], (), 2), Cone([(0, 1), (-1, -2)], (), 2),
         Cone([(-1, -2), (1, 0)], (), 2)], 2)
R3 = ring_of_fan(W, {(1, 0): 0, (0, 1): 0, (-1, -2): 2})
print("P(1,1,2): dims", R3.dims, "smooth:", R3.smooth_fan, "pairing", R3.report()["pairing"])
