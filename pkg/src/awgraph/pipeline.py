"""Orchestration of the stages into reports.

Each ``run_*`` function takes a graph and a :class:`Config`, and returns a
list of plain-dict reports together with an exit code. Reports only carry
quantities that do not depend on the choice of basis inside a homogeneous
component, so identical inputs give identical reports for every seed.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .awalgebra import AWTriple, build_C, build_central_elements, verify_centrality, verify_T_membership
from .errors import AWGraphError, CentralityDefect, NoQPolynomialOrdering, NonThinModule, RelationResidual
from .graph import DistanceRegularData, Graph, compute_distance_data
from .leonard import LeonardSystemData, leonard_system, parameter_array
from .qracah import QRacahFit, fit_qracah, normalize_generators
from .spectral import (
    KreinTensor,
    QPolyOrdering,
    SpectralData,
    find_qpoly_orderings,
    krein_parameters,
    spectral_decomposition,
)
from .tmodule import (
    AlgebraBasis,
    DualData,
    IrreducibleModule,
    TypeData,
    algebra_closure,
    build_dual_data,
    classify_types,
    commutant,
    decompose_modules,
)

__all__ = [
    "Config",
    "GraphAnalysis",
    "ModuleInventory",
    "FullAnalysis",
    "prepare",
    "module_inventory",
    "analyze_fit",
    "run_spectrum",
    "run_qracah",
    "run_modules",
    "run_analyze",
    "exit_code_for",
    "jsonable",
]

DEFAULT_TOL = 1e-8
DIGITS = 12
ENV_TOL = "AWGRAPH_TOL"

log = logging.getLogger("awgraph")


@dataclass(frozen=True)
class Config:
    tol: float = DEFAULT_TOL
    seed: int = 0
    vertex: Union[int, str] = 0
    format: str = "json"
    q_branch: str = "canonical"

    def __post_init__(self):
        if not (isinstance(self.tol, (int, float)) and self.tol > 0 and math.isfinite(self.tol)):
            raise ValueError(f"tol must be a positive number, got {self.tol!r}")
        if self.vertex != "all" and not (isinstance(self.vertex, (int, np.integer)) and self.vertex >= 0):
            raise ValueError(f"vertex must be a nonnegative integer or 'all', got {self.vertex!r}")
        if self.format not in ("json", "text"):
            raise ValueError(f"format must be json or text, got {self.format!r}")
        if self.q_branch not in ("canonical", "all"):
            raise ValueError(f"q_branch must be canonical or all, got {self.q_branch!r}")

    @classmethod
    def from_env(cls, **kwargs) -> "Config":
        """Build a config whose default tolerance comes from ``AWGRAPH_TOL`` when set."""
        if kwargs.get("tol") is None:
            kwargs.pop("tol", None)
            raw = os.environ.get(ENV_TOL)
            if raw:
                kwargs["tol"] = float(raw)
        return cls(**{k: v for k, v in kwargs.items() if v is not None})

    def vertices(self, n: int) -> list[int]:
        if self.vertex == "all":
            return list(range(n))
        if self.vertex >= n:
            raise ValueError(f"vertex {self.vertex} out of range 0..{n - 1}")
        return [int(self.vertex)]


@dataclass(frozen=True)
class GraphAnalysis:
    """Vertex-independent data: distances, spectrum, Krein parameters, orderings."""

    graph: Graph
    drg: DistanceRegularData
    spec: SpectralData
    krein: KreinTensor
    orderings: tuple


@dataclass(frozen=True)
class ModuleInventory:
    vertex: int
    ordering: QPolyOrdering
    A: np.ndarray
    spec: SpectralData
    dual: DualData
    modules: tuple
    types: tuple
    T: AlgebraBasis
    commutant_dim: int


@dataclass(frozen=True)
class FullAnalysis:
    inventory: ModuleInventory
    fit: QRacahFit
    leonard: dict
    triple: AWTriple
    centrality: dict
    membership: object
    residuals: dict = field(default_factory=dict)


def prepare(graph: Graph, tol: float = DEFAULT_TOL) -> GraphAnalysis:
    drg = compute_distance_data(graph)
    spec = spectral_decomposition(drg, tol)
    krein = krein_parameters(spec, tol)
    orderings = tuple(find_qpoly_orderings(krein, tol))
    return GraphAnalysis(graph, drg, spec, krein, orderings)


def module_inventory(ga: GraphAnalysis, vertex: int, ordering: QPolyOrdering, seed: int = 0, tol: float = DEFAULT_TOL):
    """Decompose the standard module at ``vertex`` and group the modules into types."""
    spec = ga.spec.reordered(ordering)
    dual = build_dual_data(spec, None, ga.drg, vertex, tol)
    A = ga.drg.distance_matrices[1].astype(complex)
    gens = [A, dual.A_star]
    comm = commutant(gens)
    modules = decompose_modules(A, dual.A_star, dual, seed=seed, spec=spec, tol=tol, comm=comm)
    T = algebra_closure(gens, tol=tol)
    bad = [m for m in modules if not m.thin]
    if bad:
        err = NonThinModule(f"{len(bad)} module(s) are not thin, first profile {bad[0].profile}")
        err.partial = ModuleInventory(vertex, ordering, A, spec, dual, tuple(modules), (), T, len(comm))
        raise err
    arrays = [parameter_array(m, A, dual.A_star, spec, dual) for m in modules]
    types, modules = classify_types(modules, arrays, A, dual.A_star, tol)
    return ModuleInventory(vertex, ordering, A, spec, dual, tuple(modules), tuple(types), T, len(comm))


def analyze_fit(inv: ModuleInventory, fit: QRacahFit, tol: float = DEFAULT_TOL) -> FullAnalysis:
    """Leonard data per type, the central elements, C, and every certificate."""
    gens = normalize_generators(inv.A, inv.dual.A_star, fit, inv.spec.idempotents, inv.dual.dual_idempotents, tol)
    leonard = {t.type_id: leonard_system(inv.modules[t.representative], gens, inv.spec, inv.dual, tol) for t in inv.types}
    ce = build_central_elements(inv.types, leonard, fit.q, [gens.A, gens.B], tol)
    triple = build_C(gens, ce, fit.q, inv.types, tol)
    centrality = verify_centrality(triple)
    membership = verify_T_membership(triple.C, inv.T)
    worst = max(centrality, key=lambda k: centrality[k].rel)
    if centrality[worst].rel > tol:
        raise CentralityDefect(f"{worst} relative residual {centrality[worst].rel:.3e} exceeds {tol:g}")
    if membership.rel > tol:
        raise RelationResidual(f"C leaves the algebra T (relative residual {membership.rel:.3e})")
    residuals = dict(triple.residuals)
    residuals.update(centrality)
    residuals["membership"] = membership
    return FullAnalysis(inv, fit, leonard, triple, centrality, membership, residuals)


# ---------------------------------------------------------------------------
# serialization helpers


def _num(x: float) -> float:
    r = round(float(x), DIGITS)
    return 0.0 if r == 0 else r


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": _num(z.real), "im": _num(z.imag)}


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and complex numbers for ``json.dumps``."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _cplx(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _base(ga_or_graph, vertex=None) -> dict:
    if isinstance(ga_or_graph, GraphAnalysis):
        g, D = ga_or_graph.graph, ga_or_graph.drg.diameter
    else:
        g, D = ga_or_graph, None
    return {"graph": g.name, "n": g.n, "D": D, "vertex": vertex}


def exit_code_for(codes: list[int]) -> int:
    """0 when any attempt succeeded, otherwise the largest failure code."""
    if not codes or 0 in codes:
        return 0
    return max(codes)


def _failure(report: dict, err: AWGraphError) -> tuple[dict, int]:
    report = dict(report)
    report["status"] = err.status
    where = ", ".join(f"{k}={report[k]}" for k in ("graph", "vertex", "ordering") if report.get(k) is not None)
    log.warning("%s [%s]: %s", type(err).__name__, where, err)
    return report, err.exit_code


def _prepare_or_fail(graph: Graph, cfg: Config, extra: Optional[dict] = None):
    try:
        return prepare(graph, cfg.tol), None
    except AWGraphError as err:
        return None, _failure(dict(_base(graph), **(extra or {})), err)


def _ordering_list(o: QPolyOrdering) -> list[int]:
    return list(o.full)


# ---------------------------------------------------------------------------
# stages


def run_spectrum(graph: Graph, cfg: Config) -> tuple[list[dict], int]:
    ga, fail = _prepare_or_fail(graph, cfg)
    if fail:
        return [fail[0]], fail[1]
    b, c = ga.drg.intersection_array
    report = _base(ga)
    report.pop("vertex")
    report.update(
        {
            "intersection_array": {"b": b, "c": c},
            "eigenvalues": ga.spec.eigenvalues,
            "multiplicities": list(ga.spec.multiplicities),
            "krein_negative": [list(t) for t in ga.krein.negative],
            "orderings": [_ordering_list(o) for o in ga.orderings],
            "warning": ga.drg.warning,
            "status": "ok",
        }
    )
    return [jsonable(report)], 0


def _fit_report(ga: GraphAnalysis, vertex: int, o: QPolyOrdering, fit: QRacahFit) -> dict:
    r = _base(ga, vertex)
    r.update(
        {
            "ordering": _ordering_list(o),
            "q": fit.q,
            "w": fit.w,
            "u": fit.u,
            "v": fit.v,
            "wstar": fit.wstar,
            "ustar": fit.ustar,
            "vstar": fit.vstar,
            "a": fit.a,
            "b": fit.b,
        }
    )
    return r


def _orderings_or_fail(ga: GraphAnalysis, base: dict):
    if not ga.orderings:
        return _failure(base, NoQPolynomialOrdering("no ordering makes the Krein pattern tridiagonal"))
    return None


def run_qracah(graph: Graph, cfg: Config) -> tuple[list[dict], int]:
    ga, fail = _prepare_or_fail(graph, cfg)
    if fail:
        return [fail[0]], fail[1]
    reports, codes = [], []
    for x in cfg.vertices(ga.graph.n):
        base = _base(ga, x)
        nofit = _orderings_or_fail(ga, base)
        if nofit:
            reports.append(nofit[0])
            codes.append(nofit[1])
            continue
        for o in ga.orderings:
            try:
                spec = ga.spec.reordered(o)
                dual = build_dual_data(spec, None, ga.drg, x, cfg.tol)
                fits = fit_qracah(spec.eigenvalues, dual.dual_eigenvalues, cfg.tol, cfg.q_branch)
            except AWGraphError as err:
                r, code = _failure(dict(base, ordering=_ordering_list(o)), err)
                reports.append(r)
                codes.append(code)
                continue
            for fit in fits:
                r = _fit_report(ga, x, o, fit)
                r["beta"] = fit.q**2 + 1 + fit.q**-2
                r["fit_residual"] = fit.residual
                r["status"] = "ok"
                reports.append(r)
                codes.append(0)
    return [jsonable(r) for r in reports], exit_code_for(codes)


def _inventory_fields(inv: ModuleInventory) -> dict:
    return {
        "modules": [{"rho": m.rho, "tau": m.tau, "d": m.d, "dim": m.dim, "thin": m.thin} for m in inv.modules],
        "types": [
            {"psi": t.type_id, "rho": t.rho, "tau": t.tau, "d": t.d, "multiplicity": t.multiplicity} for t in inv.types
        ],
        "dims": {"T": inv.T.dim, "commutant": inv.commutant_dim},
        "thin": all(m.thin for m in inv.modules),
    }


def run_modules(graph: Graph, cfg: Config) -> tuple[list[dict], int]:
    ga, fail = _prepare_or_fail(graph, cfg)
    if fail:
        return [fail[0]], fail[1]
    reports, codes = [], []
    for x in cfg.vertices(ga.graph.n):
        base = _base(ga, x)
        nofit = _orderings_or_fail(ga, base)
        if nofit:
            reports.append(nofit[0])
            codes.append(nofit[1])
            continue
        for o in ga.orderings:
            r = dict(base, ordering=_ordering_list(o))
            try:
                inv = module_inventory(ga, x, o, cfg.seed, cfg.tol)
            except AWGraphError as err:
                partial = getattr(err, "partial", None)
                if partial is not None:
                    r.update(_inventory_fields(partial))
                r, code = _failure(r, err)
                reports.append(r)
                codes.append(code)
                continue
            r.update(_inventory_fields(inv))
            r["status"] = "ok"
            reports.append(r)
            codes.append(0)
    return [jsonable(r) for r in reports], exit_code_for(codes)


def _full_report(ga: GraphAnalysis, fa: FullAnalysis) -> dict:
    inv = fa.inventory
    r = _fit_report(ga, inv.vertex, inv.ordering, fa.fit)
    r["types"] = [
        {
            "psi": t.type_id,
            "rho": t.rho,
            "tau": t.tau,
            "d": t.d,
            "multiplicity": t.multiplicity,
            "aW": fa.leonard[t.type_id].aW,
            "bW": fa.leonard[t.type_id].bW,
            "c": fa.leonard[t.type_id].c,
            "kappa": fa.leonard[t.type_id].kappa,
        }
        for t in inv.types
    ]
    r["dims"] = {"T": inv.T.dim, "commutant": inv.commutant_dim}
    r["residuals"] = {k: v.rel for k, v in fa.residuals.items()}
    r["thin"] = True
    r["status"] = "ok"
    return r


def _pending_fields() -> dict:
    keys = ("q", "w", "u", "v", "wstar", "ustar", "vstar", "a", "b")
    return dict({k: None for k in keys}, types=None, dims=None, residuals=None, thin=None)


def run_analyze(graph: Graph, cfg: Config, keep: Optional[list] = None) -> tuple[list[dict], int]:
    """Full pipeline; one report per (vertex, ordering, q branch) attempted.

    When ``keep`` is a list, every successful :class:`FullAnalysis` is
    appended to it so callers can inspect the matrices behind the reports.
    """
    ga, fail = _prepare_or_fail(graph, cfg, dict(ordering=None, **_pending_fields()))
    if fail:
        return [jsonable(fail[0])], fail[1]
    reports, codes = [], []
    for x in cfg.vertices(ga.graph.n):
        base = dict(_base(ga, x), ordering=None, **_pending_fields())
        nofit = _orderings_or_fail(ga, base)
        if nofit:
            reports.append(nofit[0])
            codes.append(nofit[1])
            continue
        for o in ga.orderings:
            r = dict(base, ordering=_ordering_list(o))
            try:
                spec = ga.spec.reordered(o)
                dual = build_dual_data(spec, None, ga.drg, x, cfg.tol)
                fits = fit_qracah(spec.eigenvalues, dual.dual_eigenvalues, cfg.tol, cfg.q_branch)
                inv = module_inventory(ga, x, o, cfg.seed, cfg.tol)
            except AWGraphError as err:
                partial = getattr(err, "partial", None)
                if partial is not None:
                    r["dims"] = {"T": partial.T.dim, "commutant": partial.commutant_dim}
                    r["thin"] = False
                rep, code = _failure(r, err)
                reports.append(rep)
                codes.append(code)
                continue
            for fit in fits:
                try:
                    fa = analyze_fit(inv, fit, cfg.tol)
                except AWGraphError as err:
                    rep, code = _failure(dict(r, **{k: v for k, v in _fit_report(ga, x, o, fit).items()}), err)
                    reports.append(rep)
                    codes.append(code)
                    continue
                if keep is not None:
                    keep.append(fa)
                reports.append(_full_report(ga, fa))
                codes.append(0)
    return [jsonable(r) for r in reports], exit_code_for(codes)


STAGES = {
    "spectrum": run_spectrum,
    "qracah": run_qracah,
    "modules": run_modules,
    "analyze": run_analyze,
}
