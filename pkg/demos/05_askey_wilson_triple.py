"""
The Askey-Wilson triple
=======================

The central elements a, b, c and Lambda are assembled from per-type
scalars. The third generator C is then defined by the third Askey-Wilson
relation, and the other two relations, centrality and membership in T are
certified numerically.
"""

import numpy as np

from awgraph import Config, generate_family, run_analyze
from awgraph.awalgebra import central_expressions

keep = []
reports, code = run_analyze(generate_family("hadamard", 8), Config(), keep)
print("exit code:", code, " reports:", len(reports))

full = keep[0]
print("q =", np.round(full.fit.q, 6))
for key, r in full.residuals.items():
    print(f"  {key:<10} raw {r.raw:.2e}  relative {r.rel:.2e}")

# on a bipartite 2-homogeneous graph every right-hand side is zero
tr = full.triple
for k, X in enumerate(central_expressions(tr.A, tr.B, tr.C, tr.q), start=1):
    print(f"central expression {k}: max entry {np.abs(X).max():.1e}")

# the report keeps only basis-independent data
r = reports[0]
print({k: r[k] for k in ("graph", "ordering", "dims", "thin", "status")})
for t in r["types"]:
    print("  ", t["psi"], t["rho"], t["d"], t["multiplicity"], "c =", t["c"])
