"""Exact hulls, volumes and mixed volumes."""

from tropring.polytope import Polytope, cube, minkowski_sum, mixed_volume, normal_fan, simplex, volume

# interior and duplicate points disappear from the hull
P = Polytope([(0, 0), (1, 0), (0, 1), ("1/4", "1/4"), (1, 0)])
print(P)

tri, sq = simplex(2), cube(2)
S = minkowski_sum(tri, sq)
print("vol(tri + square) =", volume(S))

# MV(P, Q) = (vol(P+Q) - vol P - vol Q) / 2 in the plane
print("MV(square, tri) =", mixed_volume(sq, tri))
print("MV(D3, cube, D3) =", mixed_volume(simplex(3), cube(3), simplex(3)))

F = normal_fan(tri)
for c in F.maximal_cones():
    print("cone", c.rays, "is dual to vertex",
          [tuple(map(str, tri.vertices[i])) for i in F.dual_faces[c].vertex_indices])
