"""One number, three computations: tropical degree, mixed volume, volume polynomial."""

from math import factorial

from tropring.kp_ring import chamber_fan, class_of_polytope, top_pairing, volume_polynomial
from tropring.polytope import Polytope, cube, mixed_volume, simplex
from tropring.tropical_cycle import intersection_number_of_hypersurfaces

systems = {
    "two lines": [simplex(2), simplex(2)],
    "conic and cubic": [simplex(2, 2), simplex(2, 3)],
    "bilinear and linear": [cube(2), simplex(2)],
    "pentagon and triangle": [Polytope([(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)]), simplex(2)],
    "linear, multiaffine, linear": [simplex(3), cube(3), simplex(3)],
}

for name, polys in systems.items():
    n = len(polys)
    trop = intersection_number_of_hypersurfaces(*polys)
    bkk = factorial(n) * mixed_volume(*polys)
    F, h0 = chamber_fan(polys)
    kp = top_pairing(F, volume_polynomial(F, h0), *[class_of_polytope(F, P) for P in polys])
    print(f"{name:30s} tropical={trop}  n!MV={bkk}  volume polynomial={kp}  rays={len(F.rays())}")
