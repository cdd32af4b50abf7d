"""Primitive idempotents, Krein parameters and Q-polynomial orderings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectralError
from .graph import DistanceRegularData

__all__ = [
    "SpectralData",
    "KreinTensor",
    "QPolyOrdering",
    "spectral_decomposition",
    "krein_parameters",
    "find_qpoly_orderings",
    "cluster_sorted",
    "MAX_ORDERING_DIAMETER",
]

MAX_ORDERING_DIAMETER = 12


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues and primitive idempotents of the adjacency matrix.

    Index 0 is always the trivial idempotent J/n with eigenvalue k. In the
    output of :func:`spectral_decomposition` the remaining eigenvalues are in
    decreasing order; :meth:`reordered` relabels them along a Q-polynomial
    ordering.
    """

    eigenvalues: np.ndarray
    idempotents: tuple
    multiplicities: tuple

    @property
    def diameter(self) -> int:
        return len(self.eigenvalues) - 1

    @property
    def n(self) -> int:
        return self.idempotents[0].shape[0]

    def reordered(self, ordering: "QPolyOrdering") -> "SpectralData":
        perm = ordering.full
        return SpectralData(
            self.eigenvalues[list(perm)],
            tuple(self.idempotents[i] for i in perm),
            tuple(self.multiplicities[i] for i in perm),
        )


@dataclass(frozen=True)
class KreinTensor:
    """``values[h, i, j]`` is q^h_ij, the coefficient of E_h in n * (E_i o E_j)."""

    values: np.ndarray
    n: int
    residual: float
    negative: tuple = ()

    @property
    def zero_tol(self) -> float:
        return 1e-9 * self.n


@dataclass(frozen=True)
class QPolyOrdering:
    """Ordering of the nontrivial idempotents, as indices into SpectralData."""

    ordering: tuple

    @property
    def full(self) -> tuple:
        return (0,) + tuple(self.ordering)


def cluster_sorted(values: np.ndarray, eps: float) -> list[np.ndarray]:
    """Split a sorted 1-d array into runs whose neighbours differ by at most ``eps``."""
    breaks = np.flatnonzero(np.abs(np.diff(values)) > eps) + 1
    return np.split(np.arange(len(values)), breaks)


def spectral_decomposition(drg: DistanceRegularData, tol: float = 1e-8) -> SpectralData:
    adj = drg.distance_matrices[1].astype(float)
    n = adj.shape[0]
    evals, evecs = np.linalg.eigh(adj)
    order = np.argsort(-evals, kind="stable")
    evals, evecs = evals[order], evecs[:, order]

    eps_cluster = 1e-7 * (1 + np.abs(evals).max())
    groups = cluster_sorted(evals, eps_cluster)
    if len(groups) != drg.diameter + 1:
        raise SpectralError(
            f"found {len(groups)} distinct eigenvalues, expected D+1 = {drg.diameter + 1}"
        )
    thetas = np.array([evals[g].mean() for g in groups])
    if abs(thetas[0] - drg.valency) > eps_cluster or len(groups[0]) != 1:
        raise SpectralError(f"largest eigenvalue {thetas[0]} is not the simple eigenvalue k={drg.valency}")
    thetas[0] = drg.valency

    idem = []
    for g in groups:
        v = evecs[:, g]
        e = (v @ v.T).astype(complex)
        e.setflags(write=False)
        idem.append(e)
    mults = tuple(len(g) for g in groups)

    eye = np.eye(n)
    checks = {
        "sum E_i = I": np.linalg.norm(sum(idem) - eye),
        "E_0 = J/n": np.linalg.norm(idem[0] - np.full((n, n), 1.0 / n)),
        "A = sum theta_i E_i": np.linalg.norm(adj - sum(t * e for t, e in zip(thetas, idem))),
    }
    for i, ei in enumerate(idem):
        for j, ej in enumerate(idem[i:], start=i):
            target = ei if i == j else 0
            checks[f"E_{i}E_{j}"] = np.linalg.norm(ei @ ej - target)
    bad = {k: v for k, v in checks.items() if v > tol * n}
    if bad:
        worst = max(bad, key=bad.get)
        raise SpectralError(f"{len(bad)} idempotent identities fail, worst {worst} with defect {bad[worst]:.3e}")
    return SpectralData(thetas, tuple(idem), mults)


def krein_parameters(spec: SpectralData, tol: float = 1e-8) -> KreinTensor:
    """Expand every entrywise product E_i o E_j in the idempotent basis."""
    E = np.stack(spec.idempotents)
    n = spec.n
    mult = np.array(spec.multiplicities, dtype=float)
    prods = E[:, None] * E[None, :]
    # <E_i o E_j, E_h>_F = (q^h_ij / n) * trace(E_h) = q^h_ij m_h / n
    q = n * np.einsum("ijxy,hxy->hij", prods, E.conj()).real / mult[:, None, None]
    recon = np.einsum("hij,hxy->ijxy", q, E) / n
    residual = float(np.linalg.norm(prods - recon, axis=(2, 3)).max())
    if residual > tol * n:
        raise SpectralError(f"entrywise products leave the Bose-Mesner algebra (residual {residual:.3e})")
    q = 0.5 * (q + q.transpose(0, 2, 1))
    eps_zero = 1e-9 * n
    negative = tuple(tuple(map(int, idx)) for idx in np.argwhere(q < -eps_zero))
    return KreinTensor(q, n, residual, negative)


def find_qpoly_orderings(krein: KreinTensor, tol: float = 1e-8) -> list[QPolyOrdering]:
    """All orderings of the nontrivial idempotents whose q^1 pattern is tridiagonal.

    The search is exhaustive: each partial ordering is extended only while
    every pair placed so far keeps the zero/nonzero pattern, which discards
    exactly the permutations that would fail the full check.
    """
    q = krein.values
    D = q.shape[0] - 1
    if D > MAX_ORDERING_DIAMETER:
        raise ValueError(f"exhaustive ordering search is limited to D <= {MAX_ORDERING_DIAMETER}")
    eps = krein.zero_tol
    found = []

    def extend(prefix):
        if len(prefix) == D + 1:
            found.append(QPolyOrdering(tuple(prefix[1:])))
            return
        for cand in range(1, D + 1):
            if cand in prefix:
                continue
            s = prefix + [cand]
            e1 = s[1]
            k = len(s) - 1
            ok = True
            # only the pairs (i, k) are new; E_1 = s[1] is fixed from k = 1 on
            for i in range(k):
                val = abs(q[e1, s[i], s[k]])
                if k - i > 1 and val > eps:
                    ok = False
                    break
                if k - i == 1 and val <= eps:
                    ok = False
                    break
            if ok:
                extend(s)

    extend([0])
    return found
