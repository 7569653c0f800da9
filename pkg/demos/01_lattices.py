"""Integer lattices: Smith form, saturation, and the index of a direct sum."""

from tropring.lattice_linalg import (
    lattice_index,
    matmul,
    quotient_coordinates,
    saturate,
    smith_normal_form,
)

M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
U, D, V = smith_normal_form(M)
print("elementary divisors:", [D[i][i] for i in range(3)])
print("U D V == M:", matmul(matmul(U, D), V) == M)

# (2,2) and (2,-2) span an index-4 sublattice; its saturation is all of Z^2
print("saturation:", saturate([[2, 2], [2, -2]]))

# Lines of slope 1 and -1 through the origin meet with multiplicity 2
print("index:", lattice_index([[1, 1]], [[1, -1]]))

# Coordinates on Z^3 / Z(1,2,3)
q = quotient_coordinates([[1, 2, 3]], 3)
print("quotient map rows:", q.matrix, " q(1,2,3) =", q((1, 2, 3)))
