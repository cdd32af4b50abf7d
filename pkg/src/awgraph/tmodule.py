"""The subconstituent algebra T at a base vertex and the decomposition of C^X into
irreducible T-modules.

Modules are found as eigenspaces of a random Hermitian element of the
commutant of T. Isomorphism classes ("types") are identified through the
parameter arrays of the Leonard systems carried by thin modules.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    AmbiguousGrouping,
    CentralityDefect,
    ClosureOverflow,
    DiameterMismatch,
    DualEigenvalueCollision,
    IrreducibilityFailure,
    NonContiguousSupport,
    NonThinModule,
)
from .graph import DistanceRegularData
from .spectral import QPolyOrdering, SpectralData, cluster_sorted

__all__ = [
    "DualData",
    "AlgebraBasis",
    "IrreducibleModule",
    "TypeData",
    "build_dual_data",
    "algebra_closure",
    "commutant",
    "decompose_modules",
    "profile_module",
    "classify_types",
    "project_onto_span",
    "rank_tol",
]

MAX_RETRIES = 5


def rank_tol(n: int) -> float:
    return 1e-7 * np.sqrt(n)


@dataclass(frozen=True)
class DualData:
    x: int
    dual_idempotents: tuple
    dual_distance_matrices: tuple
    dual_eigenvalues: np.ndarray

    @property
    def A_star(self) -> np.ndarray:
        return self.dual_distance_matrices[1]

    @property
    def diameter(self) -> int:
        return len(self.dual_eigenvalues) - 1


@dataclass(frozen=True)
class AlgebraBasis:
    """Frobenius-orthonormal basis of a matrix algebra, stored as a (dim, n, n) array."""

    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


@dataclass(frozen=True)
class IrreducibleModule:
    basis: np.ndarray
    rho: int
    tau: int
    d: int
    dstar: int
    thin: bool
    type_id: Optional[int] = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    @property
    def profile(self) -> tuple:
        return (self.rho, self.tau, self.d)


@dataclass(frozen=True)
class TypeData:
    type_id: int
    rho: int
    tau: int
    d: int
    multiplicity: int
    members: tuple
    projector: np.ndarray
    parameter_array: Optional[object] = None

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def dim(self) -> int:
        return self.multiplicity * (self.d + 1)


# ---------------------------------------------------------------------------
# dual data


def build_dual_data(
    spec: SpectralData,
    ordering: Optional[QPolyOrdering],
    dist: DistanceRegularData,
    x: int,
    tol: float = 1e-8,
) -> DualData:
    """Dual idempotents, dual distance matrices and dual eigenvalues at vertex ``x``.

    ``ordering`` relabels ``spec`` first; pass ``None`` when ``spec`` is
    already in Q-polynomial order.
    """
    if ordering is not None:
        spec = spec.reordered(ordering)
    n, D = dist.n, dist.diameter
    if not 0 <= x < n:
        raise ValueError(f"vertex {x} out of range 0..{n - 1}")
    row = dist.distance[x]
    estar = []
    for i in range(D + 1):
        m = np.diag((row == i).astype(complex))
        m.setflags(write=False)
        estar.append(m)
    astar = []
    for e in spec.idempotents:
        m = np.diag(n * e[x])
        m.setflags(write=False)
        astar.append(m)
    col = n * spec.idempotents[1][x].real
    thetas = np.empty(D + 1)
    for i in range(D + 1):
        vals = col[row == i]
        if np.ptp(vals) > tol * n:
            raise DualEigenvalueCollision(f"A* is not constant on the distance-{i} cell of vertex {x}")
        thetas[i] = vals.mean()
    gaps = np.abs(thetas[:, None] - thetas[None, :]) + np.eye(D + 1)
    if gaps.min() <= 1e-7 * (1 + np.abs(thetas).max()):
        raise DualEigenvalueCollision(f"dual eigenvalues are not distinct at vertex {x}: {thetas}")
    return DualData(x, tuple(estar), tuple(astar), thetas)


# ---------------------------------------------------------------------------
# algebra closure and commutant


def _orthogonalize(vec: np.ndarray, Q: list) -> np.ndarray:
    # two passes of classical Gram-Schmidt
    if not Q:
        return vec
    M = np.array(Q)
    for _ in range(2):
        vec = vec - M.T @ (M.conj() @ vec)
    return vec


def algebra_closure(generators: Sequence[np.ndarray], cap: Optional[int] = None, tol: float = 1e-8) -> AlgebraBasis:
    """Span of all words in ``generators`` (the empty word is I)."""
    gens = [np.asarray(g, dtype=complex) for g in generators]
    n = gens[0].shape[0]
    cap = n * n if cap is None else cap
    if cap < n * n:
        raise ValueError("cap must be at least n^2")
    gens = [g / np.linalg.norm(g) for g in gens if np.linalg.norm(g) > 0]
    start = np.eye(n, dtype=complex).ravel() / np.sqrt(n)
    Q = [start]
    queue = [start]
    while queue:
        X = queue.pop(0).reshape(n, n)
        for g in gens:
            y = (g @ X).ravel()
            norm = np.linalg.norm(y)
            if norm <= tol:
                continue
            r = _orthogonalize(y, Q)
            if np.linalg.norm(r) > tol * norm:
                r = r / np.linalg.norm(r)
                Q.append(r)
                queue.append(r)
                if len(Q) > cap:
                    raise ClosureOverflow(f"algebra dimension exceeded cap {cap}")
    return AlgebraBasis(np.array(Q).reshape(-1, n, n))


def project_onto_span(X: np.ndarray, basis: AlgebraBasis) -> np.ndarray:
    B = basis.basis.reshape(basis.dim, -1)
    x = np.asarray(X, dtype=complex).ravel()
    return (B.T @ (B.conj() @ x)).reshape(X.shape)


def commutant(generators: Sequence[np.ndarray], rcond: float = 1e-9) -> np.ndarray:
    """Frobenius-orthonormal basis, shape (k, n, n), of all M commuting with every generator.

    Diagonal generators are handled exactly: M must vanish wherever the two
    diagonal entries differ, so only the remaining entries are unknowns.
    """
    gens = [np.asarray(g) for g in generators]
    n = gens[0].shape[0]
    real = all(np.isrealobj(g) or np.allclose(g.imag, 0) for g in gens)
    dtype = float if real else complex
    gens = [g.real if real else g.astype(complex) for g in gens]
    mask = np.ones((n, n), dtype=bool)
    dense = []
    for g in gens:
        if np.count_nonzero(g - np.diag(np.diag(g))) == 0:
            diag = np.diag(g)
            mask &= np.abs(diag[:, None] - diag[None, :]) <= 1e-12 * (1 + np.abs(diag).max())
        else:
            dense.append(g)
    cols = np.flatnonzero(mask.ravel())
    if not dense:
        null = np.eye(len(cols), dtype=dtype)
    else:
        eye = np.eye(n, dtype=dtype)
        # row-major vec: vec(GM - MG) = (G kron I - I kron G^T) vec(M)
        K = np.vstack([(np.kron(g, eye) - np.kron(eye, g.T))[:, cols] for g in dense])
        null = scipy.linalg.null_space(K, rcond=rcond)
    out = np.zeros((null.shape[1], n * n), dtype=complex)
    out[:, cols] = null.T
    return out.reshape(-1, n, n)


# ---------------------------------------------------------------------------
# modules


def _cyclic_dim(vec: np.ndarray, generators, tol: float) -> int:
    """Dimension of the span of all words in ``generators`` applied to ``vec``."""
    start = vec / np.linalg.norm(vec)
    floors = [tol * np.linalg.norm(g) for g in generators]
    Q, queue = [start], [start]
    while queue:
        v = queue.pop(0)
        for g, floor in zip(generators, floors):
            y = g @ v
            norm = np.linalg.norm(y)
            # g v is rounding noise when v lies in the kernel of g
            if norm <= floor:
                continue
            r = _orthogonalize(y, Q)
            if np.linalg.norm(r) > tol * norm:
                r = r / np.linalg.norm(r)
                Q.append(r)
                queue.append(r)
    return len(Q)


def profile_module(W: np.ndarray, spec: SpectralData, dual: DualData) -> tuple:
    """(rho, tau, d, dstar, thin) for a module with orthonormal basis ``W`` (columns).

    ``spec`` must already be in Q-polynomial order.
    """
    n = W.shape[0]
    eps = rank_tol(n)

    def ranks(projectors):
        out = []
        for P in projectors:
            s = np.linalg.svd(P @ W, compute_uv=False)
            out.append(int(np.sum(s > eps)))
        return np.array(out)

    rstar = ranks(dual.dual_idempotents)
    r = ranks(spec.idempotents)
    supports = []
    for name, rk in (("dual idempotent", rstar), ("idempotent", r)):
        idx = np.flatnonzero(rk)
        if len(idx) == 0 or idx[-1] - idx[0] + 1 != len(idx):
            raise NonContiguousSupport(f"{name} support {idx.tolist()} is not an interval")
        supports.append(idx)
    rho, tau = int(supports[0][0]), int(supports[1][0])
    d, dstar = len(supports[0]) - 1, len(supports[1]) - 1
    if d != dstar:
        raise DiameterMismatch(f"diameter {d} differs from dual diameter {dstar}")
    thin = bool(rstar.max() <= 1 and r.max() <= 1)
    return rho, tau, d, dstar, thin


def _candidate_modules(H: np.ndarray) -> list[np.ndarray]:
    evals, evecs = np.linalg.eigh(H)
    eps = 1e-8 * (1 + np.abs(evals).max())
    return [evecs[:, g] for g in cluster_sorted(evals, eps)]


def _is_irreducible(U, gens, comm, rng, tol) -> bool:
    k = U.shape[1]
    # orbit of a random vector must fill the space
    w = U @ (rng.standard_normal(k) + 1j * rng.standard_normal(k))
    if _cyclic_dim(w, gens, tol) != k:
        return False
    # Schur: the commutant restricted to an irreducible module is the scalars
    if k == 1:
        return True
    restricted = np.array([(U.conj().T @ C @ U).ravel() for C in comm])
    s = np.linalg.svd(restricted, compute_uv=False)
    return int(np.sum(s > 1e-7 * s[0])) == 1


def decompose_modules(
    A: np.ndarray,
    A_star: np.ndarray,
    dual: DualData,
    seed: int = 0,
    spec: Optional[SpectralData] = None,
    tol: float = 1e-8,
    comm: Optional[np.ndarray] = None,
) -> list[IrreducibleModule]:
    """Orthogonal decomposition of C^X into irreducible T-modules.

    Modules come back sorted by (rho, tau, d); ``spec`` (in Q-polynomial
    order) is needed to profile them.
    """
    A = np.asarray(A, dtype=complex)
    A_star = np.asarray(A_star, dtype=complex)
    n = A.shape[0]
    gens = [A, A_star]
    if comm is None:
        comm = commutant(gens)
    rng = np.random.default_rng(seed)
    scale = 1 + max(np.linalg.norm(A), np.linalg.norm(A_star))
    for attempt in range(MAX_RETRIES):
        z = rng.standard_normal(len(comm)) + 1j * rng.standard_normal(len(comm))
        M = np.tensordot(z, comm, axes=1)
        H = 0.5 * (M + M.conj().T)
        blocks = _candidate_modules(H)
        ok = True
        for U in blocks:
            P = U @ U.conj().T
            leak = max(np.linalg.norm(G @ U - P @ (G @ U)) for G in gens)
            if leak > tol * scale or not _is_irreducible(U, gens, comm, rng, tol):
                ok = False
                break
        if ok:
            break
    else:
        raise IrreducibilityFailure(f"no irreducible decomposition after {MAX_RETRIES} attempts")

    modules = []
    for U in blocks:
        if spec is not None:
            rho, tau, d, dstar, thin = profile_module(U, spec, dual)
        else:
            rho = tau = d = dstar = -1
            thin = False
        modules.append(IrreducibleModule(U, rho, tau, d, dstar, thin))
    modules.sort(key=lambda m: (m.rho, m.tau, m.d))
    return modules


def _array_vector(arr) -> np.ndarray:
    return np.concatenate([np.atleast_1d(np.asarray(part, dtype=complex)) for part in arr])


def classify_types(
    modules: Sequence[IrreducibleModule],
    leonard_arrays: Sequence,
    A: Optional[np.ndarray] = None,
    A_star: Optional[np.ndarray] = None,
    tol: float = 1e-8,
) -> tuple[list[TypeData], list[IrreducibleModule]]:
    """Group thin modules into isomorphism types.

    Two modules share a type when they have the same (rho, tau, d) and the
    same parameter array. Returns the types and the modules with
    ``type_id`` filled in.
    """
    for k, m in enumerate(modules):
        if not m.thin:
            raise NonThinModule(f"module {k} with profile (rho, tau, d) = {m.profile} is not thin")
    vecs = [_array_vector(arr) for arr in leonard_arrays]
    groups: list[list[int]] = []
    for k, m in enumerate(modules):
        for g in groups:
            ref = g[0]
            close = vecs[k].shape == vecs[ref].shape and (
                np.linalg.norm(vecs[k] - vecs[ref]) <= 1e-6 * (1 + np.linalg.norm(vecs[ref]))
            )
            if close and modules[ref].profile == m.profile:
                g.append(k)
                break
            if close:
                raise AmbiguousGrouping(
                    f"modules {ref} and {k} share a parameter array but have profiles "
                    f"{modules[ref].profile} and {m.profile}"
                )
        else:
            groups.append([k])
    groups.sort(key=lambda g: (modules[g[0]].profile, g[0]))

    n = modules[0].basis.shape[0]
    types, labelled = [], list(modules)
    for tid, g in enumerate(groups):
        e = sum(modules[k].projector for k in g)
        m0 = modules[g[0]]
        for gen in (A, A_star):
            if gen is None:
                continue
            defect = np.linalg.norm(e @ gen - gen @ e)
            if defect > tol * (1 + np.linalg.norm(gen)):
                raise CentralityDefect(f"type {tid} projector fails to commute (defect {defect:.3e})")
        e.setflags(write=False)
        types.append(TypeData(tid, m0.rho, m0.tau, m0.d, len(g), tuple(g), e, leonard_arrays[g[0]]))
        for k in g:
            labelled[k] = replace(modules[k], type_id=tid)
    total = sum(t.projector for t in types)
    if np.linalg.norm(total - np.eye(n)) > tol * n:
        raise CentralityDefect("type projectors do not sum to the identity")
    return types, labelled
