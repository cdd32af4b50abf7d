"""
Spectrum, Krein parameters and Q-polynomial orderings
======================================================

Build a few distance-regular graphs, certify them, and look at the
eigenvalues, the Krein tensor and the orderings that make it tridiagonal.
"""

import numpy as np

from awgraph import compute_distance_data, generate_family
from awgraph.spectral import find_qpoly_orderings, krein_parameters, spectral_decomposition

np.set_printoptions(precision=4, suppress=True)

# the crown graph: K_{5,5} with a perfect matching removed
g = generate_family("crown", 5)
drg = compute_distance_data(g)
print(g.name, "n =", g.n, "diameter =", drg.diameter)
print("intersection array b, c:", *drg.intersection_array)

# intersection numbers are exact integers: A_1 A_1 = sum_h p^h_11 A_h
A = drg.distance_matrices
lhs = A[1] @ A[1]
rhs = sum(drg.intersection_numbers[h, 1, 1] * A[h] for h in range(drg.diameter + 1))
print("A1^2 expansion exact:", np.array_equal(lhs, rhs))

# primitive idempotents, one per distinct eigenvalue
spec = spectral_decomposition(drg)
print("eigenvalues:", spec.eigenvalues, "multiplicities:", spec.multiplicities)

# Krein parameters q^1_ij: the Q-polynomial pattern is a tridiagonal matrix
kr = krein_parameters(spec)
print("q^1_ij =\n", kr.values[1].round(10) + 0.0)

# C_8 has two admissible orderings of its idempotents
for family, size in [("crown", 5), ("cycle", 8), ("hypercube", 4)]:
    spec = spectral_decomposition(compute_distance_data(generate_family(family, size)))
    orders = find_qpoly_orderings(krein_parameters(spec))
    print(f"{family}({size}) orderings:", [o.full for o in orders])
