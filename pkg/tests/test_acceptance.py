"""Acceptance suite: ten criteria, one test each, one PASS/FAIL line each.

Run on its own with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``. The summary lines are printed at the
end of the session (see ``conftest.py``) and by each test when run with -s.
"""

import json
import sys

import numpy as np
import pytest

from awgraph import Config, generate_family, run_analyze
from awgraph.awalgebra import build_central_elements, central_expressions
from awgraph.leonard import closed_form_split, leonard_system, module_A_epsilon
from awgraph.pipeline import prepare
from awgraph.qracah import normalize_generators

from conftest import FAMILY_GRAPHS, analyzed
from oracles import jacobi_eigenvalues

TOL = 1e-8
I = 1j
RESULTS = {}


def record(k, title, failures, detail=""):
    ok = not failures
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail and ok else "")
    if failures:
        line += f"  {len(failures)} failure(s), first: " + failures[0]
    RESULTS[k] = line
    print(line)
    assert ok, line


def every_analysis():
    """(label, FullAnalysis) for every successful attempt on every family graph."""
    for family, size in FAMILY_GRAPHS:
        _, code, keep = analyzed(family, size)
        for full in keep:
            yield f"{family}({size}) ordering {full.inventory.ordering.full}", full


def near_pm_i(z):
    return min(abs(z - I), abs(z + I)) <= TOL


def test_criterion_01_family_end_to_end():
    failures, worst = [], 0.0
    for family, size in FAMILY_GRAPHS:
        reports, code, keep = analyzed(family, size)
        if code != 0 or not keep:
            failures.append(f"{family}({size}) exit {code}")
    for label, full in every_analysis():
        for key in ("awdrg1", "awdrg2", "awdrg3", "central1", "central2", "central3", "membership"):
            r = full.residuals[key].rel
            worst = max(worst, r)
            if r > TOL:
                failures.append(f"{label}: {key} = {r:.2e}")
    record(1, "family graphs exit 0 with AW, centrality and membership residuals <= 1e-8", failures, f"worst {worst:.1e}")


def test_criterion_02_zero_right_hand_sides():
    failures, worst = [], 0.0
    for label, full in every_analysis():
        tr = full.triple
        for k, X in enumerate(central_expressions(tr.A, tr.B, tr.C, tr.q), start=1):
            m = np.abs(X).max()
            worst = max(worst, m)
            if m > TOL:
                failures.append(f"{label}: central expression {k} max entry {m:.2e}")
        ce = build_central_elements(full.inventory.types, full.leonard, full.fit.q)
        for name, (x, xinv) in {"a": (ce.a, ce.a_inv), "b": (ce.b, ce.b_inv), "c": (ce.c, ce.c_inv)}.items():
            m = np.linalg.norm(x + xinv)
            worst = max(worst, m)
            if m > TOL:
                failures.append(f"{label}: |{name} + {name}^-1| = {m:.2e}")
    record(2, "central expressions vanish and a + a^-1 = b + b^-1 = c + c^-1 = 0", failures, f"worst {worst:.1e}")


def test_criterion_03_self_dual_fit():
    failures = []
    for label, full in every_analysis():
        th, ths = full.inventory.spec.eigenvalues, full.inventory.dual.dual_eigenvalues
        if np.abs(th - ths).max() > TOL:
            failures.append(f"{label}: theta* differs from theta")
        f = full.fit
        checks = {
            "w": abs(f.w),
            "w*": abs(f.wstar),
            "v - v*": abs(f.v - f.vstar),
            "v + u": abs(f.v + f.u),
            "v + u*": abs(f.v + f.ustar),
        }
        failures += [f"{label}: {k} = {v:.2e}" for k, v in checks.items() if v > TOL]
    record(3, "theta* = theta, w = w* = 0, v = v* = -u = -u*", failures)


def test_criterion_04_module_inventory():
    failures = []
    for label, full in every_analysis():
        inv = full.inventory
        D, n = full.fit.D, inv.A.shape[0]
        endpoints = [t.rho for t in inv.types]
        if endpoints != list(range(D // 2 + 1)):
            failures.append(f"{label}: endpoints {endpoints}")
        for m in inv.modules:
            if not m.thin or m.tau != m.rho or m.d != D - 2 * m.rho:
                failures.append(f"{label}: module profile {m.profile} thin={m.thin}")
        if sum(m.dim for m in inv.modules) != n:
            failures.append(f"{label}: module dimensions do not sum to {n}")
    record(4, "endpoints 0..D/2, one type each, thin with tau = rho and d = D - 2 rho", failures)


def test_criterion_05_constants():
    failures = []
    for label, full in every_analysis():
        if not (near_pm_i(full.fit.a) and near_pm_i(full.fit.b)):
            failures.append(f"{label}: a = {full.fit.a}, b = {full.fit.b}")
        for tid, ls in full.leonard.items():
            if not near_pm_i(ls.c) or abs(ls.kappa) > TOL:
                failures.append(f"{label}: type {tid} c = {ls.c}, kappa = {ls.kappa}")
    record(5, "a, b, c in {i, -i} and kappa = 0", failures)


def test_criterion_06_hypercube_rejected():
    failures = []
    for D in (3, 4, 5):
        reports, code = run_analyze(generate_family("hypercube", D), Config())
        if code != 4:
            failures.append(f"hypercube({D}) exit {code}")
    record(6, "hypercube(3, 4, 5) exit 4", failures)


def test_criterion_07_wedderburn():
    failures = []
    for label, full in every_analysis():
        inv = full.inventory
        dimT = sum((t.d + 1) ** 2 for t in inv.types)
        dimC = sum(t.multiplicity**2 for t in inv.types)
        if inv.T.dim != dimT or inv.commutant_dim != dimC:
            failures.append(f"{label}: dim T {inv.T.dim} vs {dimT}, commutant {inv.commutant_dim} vs {dimC}")
    record(7, "dim T = sum (d+1)^2 and dim commutant = sum mult^2", failures)


def test_criterion_08_leonard_cross_checks():
    failures, worst = [], 0.0
    for label, full in every_analysis():
        inv, fit = full.inventory, full.fit
        gens = normalize_generators(inv.A, inv.dual.A_star, fit, inv.spec.idempotents, inv.dual.dual_idempotents)
        for k, m in enumerate(inv.modules):
            ls = leonard_system(m, gens, inv.spec, inv.dual)
            if ls.d:
                varphi, phi = closed_form_split(ls.aW, ls.bW, ls.c, fit.q, ls.d)
                err = max(np.abs(ls.varphi - varphi).max(), np.abs(ls.phi - phi).max())
                worst = max(worst, err)
                if err > TOL:
                    failures.append(f"{label}: module {k} split sequences off by {err:.2e}")
        for t in inv.types:
            U = inv.modules[t.representative].basis
            Aeps, _ = module_A_epsilon(full.leonard[t.type_id], fit.q)
            err = np.abs(U.conj().T @ full.triple.C @ U - Aeps).max()
            worst = max(worst, err)
            if err > TOL:
                failures.append(f"{label}: type {t.type_id} restriction of C off by {err:.2e}")
    record(8, "split sequences match closed forms and C restricts to A^eps", failures, f"worst {worst:.1e}")


def test_criterion_09_determinism():
    failures = []
    for family, size in FAMILY_GRAPHS:
        ref_reports, ref_code, ref_keep = analyzed(family, size, 0)
        ref_json = [json.dumps(r, separators=(",", ":")) for r in ref_reports]
        for seed in range(1, 5):
            reports, code, keep = analyzed(family, size, seed)
            if [json.dumps(r, separators=(",", ":")) for r in reports] != ref_json:
                failures.append(f"{family}({size}) seed {seed}: JSON differs")
            inv = [[(t.rho, t.tau, t.d, t.multiplicity) for t in f.inventory.types] for f in keep]
            ref = [[(t.rho, t.tau, t.d, t.multiplicity) for t in f.inventory.types] for f in ref_keep]
            if inv != ref:
                failures.append(f"{family}({size}) seed {seed}: inventory differs")
    record(9, "seeds 0-4 give identical inventories and JSON reports", failures)


def test_criterion_10_oracle_spot_checks():
    failures, worst = [], 0.0
    for family, size in (("cycle", 6), ("crown", 5), ("hadamard", 8)):
        g = generate_family(family, size)
        spec = prepare(g).spec
        ours = np.sort(np.repeat(spec.eigenvalues, spec.multiplicities))
        err = np.abs(ours - jacobi_eigenvalues(g.adjacency)).max()
        worst = max(worst, err)
        if err > 1e-9:
            failures.append(f"{family}({size}) differs from the Jacobi oracle by {err:.2e}")
    record(10, "eigenvalues of C_6, crown(5), hadamard(8) match a Jacobi solver to 1e-9", failures, f"worst {worst:.1e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
