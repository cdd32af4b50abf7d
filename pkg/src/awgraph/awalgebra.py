"""Central elements a, b, c, Lambda of T, the third generator C, and the
certificates that (A, B, C) satisfy the universal Askey-Wilson relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import CentralityDefect, RelationResidual
from .leonard import LeonardSystemData
from .qracah import NormalizedGenerators
from .tmodule import AlgebraBasis, TypeData, project_onto_span

__all__ = [
    "Residual",
    "CentralElements",
    "AWTriple",
    "build_central_elements",
    "build_C",
    "central_expressions",
    "verify_centrality",
    "verify_T_membership",
    "delta_action_report",
]


class Residual(NamedTuple):
    raw: float
    rel: float


def _residual(defect: np.ndarray, *operands) -> Residual:
    raw = float(np.linalg.norm(defect))
    return Residual(raw, raw / (1 + sum(float(np.linalg.norm(x)) for x in operands)))


@dataclass(frozen=True)
class CentralElements:
    a: np.ndarray
    a_inv: np.ndarray
    b: np.ndarray
    b_inv: np.ndarray
    c: np.ndarray
    c_inv: np.ndarray
    Lam: np.ndarray
    Lam_inv: np.ndarray

    def rhs(self, q: complex) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        sa, sb, sc = self.a + self.a_inv, self.b + self.b_inv, self.c + self.c_inv
        sl = self.Lam + self.Lam_inv
        den = q + 1 / q
        return (sa @ sl + sb @ sc) / den, (sb @ sl + sc @ sa) / den, (sc @ sl + sa @ sb) / den


@dataclass(frozen=True)
class AWTriple:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    q: complex
    residuals: Mapping[str, Residual] = field(default_factory=dict)


def build_central_elements(
    types: Sequence[TypeData],
    leonard: Mapping[int, LeonardSystemData],
    q: complex,
    generators: Sequence[np.ndarray] = (),
    tol: float = 1e-8,
) -> CentralElements:
    """Assemble sum_psi s(psi) e_psi for s in {a, b, c, q^(d+1)} and their inverses.

    ``leonard`` maps each type id to the Leonard data of a representative
    module. When ``generators`` are given, every element is checked to
    commute with them.
    """
    n = types[0].projector.shape[0]

    def combo(values):
        return sum(v * t.projector for v, t in zip(values, types))

    a = [leonard[t.type_id].aW for t in types]
    b = [leonard[t.type_id].bW for t in types]
    c = [leonard[t.type_id].c for t in types]
    lam = [q ** (t.d + 1) for t in types]
    ce = CentralElements(
        combo(a), combo([1 / x for x in a]),
        combo(b), combo([1 / x for x in b]),
        combo(c), combo([1 / x for x in c]),
        combo(lam), combo([1 / x for x in lam]),
    )
    eye = np.eye(n)
    for name in ("a", "b", "c", "Lam"):
        m, minv = getattr(ce, name), getattr(ce, name + "_inv")
        if np.linalg.norm(m @ minv - eye) > tol * n * (1 + np.linalg.norm(m) * np.linalg.norm(minv)):
            raise CentralityDefect(f"{name} times its inverse is not I")
        for g in generators:
            defect = np.linalg.norm(m @ g - g @ m)
            if defect > tol * (1 + np.linalg.norm(m) + np.linalg.norm(g)):
                raise CentralityDefect(f"{name} does not commute with a generator (defect {defect:.3e})")
    return ce


def _qcomm(X, Y, q):
    return (q * X @ Y - Y @ X / q) / (q**2 - q**-2)


def central_expressions(A, B, C, q):
    """The three Z3-cyclic expressions that are central in the universal AW algebra."""
    return A + _qcomm(B, C, q), B + _qcomm(C, A, q), C + _qcomm(A, B, q)


def build_C(
    gens: NormalizedGenerators,
    ce: CentralElements,
    q: complex,
    types: Sequence[TypeData] = (),
    tol: float = 1e-8,
) -> AWTriple:
    """C := RHS_3 - (qAB - q^-1 BA)/(q^2 - q^-2); the other two relations are then checked."""
    A, B = gens.A, gens.B
    rhs1, rhs2, rhs3 = ce.rhs(q)
    C = rhs3 - _qcomm(A, B, q)
    x1, x2, x3 = central_expressions(A, B, C, q)
    residuals = {
        "awdrg1": _residual(x1 - rhs1, A, B, C, rhs1),
        "awdrg2": _residual(x2 - rhs2, A, B, C, rhs2),
        "awdrg3": _residual(x3 - rhs3, A, B, C, rhs3),
    }
    for name, r in residuals.items():
        if r.rel > tol:
            defect = {"awdrg1": x1 - rhs1, "awdrg2": x2 - rhs2, "awdrg3": x3 - rhs3}[name]
            worst = max(types, key=lambda t: np.linalg.norm(t.projector @ defect @ t.projector), default=None)
            where = f" (worst type {worst.type_id}, rho={worst.rho})" if worst is not None else ""
            raise RelationResidual(f"{name} relative residual {r.rel:.3e} exceeds {tol:g}{where}")
    return AWTriple(A, B, C, q, residuals)


def verify_centrality(triple: AWTriple, gens: NormalizedGenerators | None = None) -> dict[str, Residual]:
    """Commutators of each central expression with the generators of T.

    Since T is generated by A and B, commuting with both certifies
    centrality in T.
    """
    A, B = (triple.A, triple.B) if gens is None else (gens.A, gens.B)
    out = {}
    for k, X in enumerate(central_expressions(triple.A, triple.B, triple.C, triple.q), start=1):
        ra = _residual(X @ A - A @ X, X, A)
        rb = _residual(X @ B - B @ X, X, B)
        out[f"central{k}"] = max(ra, rb, key=lambda r: r.rel)
    return out


def verify_T_membership(C: np.ndarray, basis: AlgebraBasis) -> Residual:
    return _residual(C - project_onto_span(C, basis), C)


def delta_action_report(
    triple: AWTriple,
    types: Sequence[TypeData],
    leonard: Mapping[int, LeonardSystemData],
) -> dict:
    """Generator action table and per-type scalars of the resulting module structure.

    Matrices are returned as arrays; serialization is left to the caller.
    """
    return {
        "action": {"A": triple.A, "B": triple.B, "C": triple.C},
        "q": triple.q,
        "q4_minus_1": abs(triple.q**4 - 1),
        "types": [
            {
                "psi": t.type_id,
                "rho": t.rho,
                "tau": t.tau,
                "d": t.d,
                "multiplicity": t.multiplicity,
                "aW": leonard[t.type_id].aW,
                "bW": leonard[t.type_id].bW,
                "c": leonard[t.type_id].c,
                "kappa": leonard[t.type_id].kappa,
            }
            for t in types
        ],
        "residuals": dict(triple.residuals),
    }
