"""
Decomposing the standard module
===============================

Fix a base vertex x. The subconstituent algebra T is generated by the
adjacency matrix A and the dual adjacency matrix A*. C^X splits into
irreducible T-modules; we find them as eigenspaces of a random Hermitian
element of the commutant of T.
"""

from awgraph import generate_family
from awgraph.pipeline import module_inventory, prepare

for family, size in [("cycle", 8), ("crown", 5), ("hadamard", 8)]:
    ga = prepare(generate_family(family, size))
    inv = module_inventory(ga, vertex=0, ordering=ga.orderings[0])
    print(f"{family}({size}): dim T = {inv.T.dim}, dim commutant = {inv.commutant_dim}")
    for t in inv.types:
        print(f"    type {t.type_id}: endpoint {t.rho}, dual endpoint {t.tau}, diameter {t.d}, multiplicity {t.multiplicity}")
    # Wedderburn: T is a sum of full matrix algebras, one per type
    print("    sum (d+1)^2 =", sum((t.d + 1) ** 2 for t in inv.types),
          " sum mult^2 =", sum(t.multiplicity**2 for t in inv.types))

# individual modules depend on the seed, but their grouping into types does not
ga = prepare(generate_family("crown", 6))
for seed in range(3):
    inv = module_inventory(ga, 0, ga.orderings[0], seed=seed)
    print("crown(6) seed", seed, "module dims:", [m.dim for m in inv.modules])
