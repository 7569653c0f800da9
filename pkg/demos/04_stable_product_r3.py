"""Products of tropical surfaces in R^3."""

from tropring.polytope import cube, simplex
from tropring.tropical_cycle import (
    degree,
    equivalent,
    stable_product,
    stellar_refinement,
    tropical_hypersurface,
)

plane = tropical_hypersurface(simplex(3))
box = tropical_hypersurface(cube(3))

curve = stable_product(plane, plane)
print("plane . plane is a", curve.cycle_dim, "-cycle with rays")
for c, w in curve.support_cones():
    print("  ", c.rays, "weight", w)

print("plane . box . plane =", stable_product(stable_product(plane, box), plane).degree())
print("associative:", degree(stable_product(plane, box), plane) == degree(plane, stable_product(box, plane)))

# Subdividing a factor does not change anything
sigma = box.weighted_cones()[0][0]
finer = stellar_refinement(box, sigma)
print(len(box.weighted_cones()), "->", len(finer.weighted_cones()), "cones; equivalent:",
      equivalent(finer, box))
