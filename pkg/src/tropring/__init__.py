"""Exact tropical intersection theory on (C*)^n.

Balanced weighted fans with their stable intersection product, tropical
hypersurfaces of Newton polytopes, mixed volumes, and the graded ring of
a volume polynomial.
"""

from .fan import (
    Cone,
    Fan,
    FanError,
    common_refinement,
    cone_contains,
    cone_intersection,
    fan_covers_support,
    is_complete,
    relative_interior_point,
    simplicial_refinement,
    star_quotient,
    stellar_subdivision,
)
from .kp_ring import (
    GradedRing,
    Polynomial,
    RingError,
    VolumePolynomial,
    build_ring,
    chamber_fan,
    class_of_polytope,
    ring_of_fan,
    top_pairing,
    volume_polynomial,
)
from .lattice_linalg import (
    LinearAlgebraError,
    QuotientMap,
    hermite_normal_form,
    lattice_index,
    primitive_generator,
    quotient_coordinates,
    saturate,
    smith_normal_form,
)
from .polytope import (
    Face,
    Polytope,
    PolytopeError,
    convex_hull,
    cube,
    integral_length,
    minkowski_sum,
    mixed_volume,
    normal_fan,
    simplex,
    support_value,
    volume,
)
from .tropical_cycle import (
    BalanceReport,
    CycleError,
    IntersectionResult,
    TropicalCycle,
    add,
    bkk_number,
    equivalent,
    intersection_number_of_hypersurfaces,
    is_balanced,
    negate,
    scalar_multiply,
    stable_intersection_number,
    stable_product,
    tropical_hypersurface,
)

__version__ = "0.1.0"
