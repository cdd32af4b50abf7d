"""Fitting eigenvalue sequences to the q-Racah form w + u q^(2i-D) + v q^(D-2i)."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AllCandidatesDegenerate,
    DiameterTooSmall,
    EigenvalueMismatch,
    NonConstantBeta,
    SingularSystem,
    ZeroCoefficient,
)

__all__ = [
    "QRacahFit",
    "NormalizedGenerators",
    "fit_base_q",
    "solve_affine",
    "fit_qracah",
    "normalize_generators",
    "principal_sqrt",
    "EPS_Q",
]

EPS_Q = 1e-6


@dataclass(frozen=True)
class QRacahFit:
    q: complex
    D: int
    w: complex
    u: complex
    v: complex
    wstar: complex
    ustar: complex
    vstar: complex
    a: complex
    b: complex
    residual: float

    def theta(self, i: int) -> complex:
        q, D = self.q, self.D
        return self.w + self.u * q ** (2 * i - D) + self.v * q ** (D - 2 * i)

    def theta_star(self, i: int) -> complex:
        q, D = self.q, self.D
        return self.wstar + self.ustar * q ** (2 * i - D) + self.vstar * q ** (D - 2 * i)

    def normalized_eigenvalue(self, i: int) -> complex:
        q, D, a = self.q, self.D, self.a
        return a * q ** (2 * i - D) + q ** (D - 2 * i) / a

    def normalized_dual_eigenvalue(self, i: int) -> complex:
        q, D, b = self.q, self.D, self.b
        return b * q ** (2 * i - D) + q ** (D - 2 * i) / b


@dataclass(frozen=True)
class NormalizedGenerators:
    """The rescaled pair (A - wI)/(av), (A* - w*I)/(bv*) and the fit behind it."""

    A: np.ndarray
    B: np.ndarray
    fit: QRacahFit
    residual: float = 0.0


def principal_sqrt(z: complex, eps: float = 1e-12) -> complex:
    """Square root with nonnegative real part; ties on the imaginary axis go to Im >= 0."""
    r = cmath.sqrt(complex(z))
    if abs(r.real) <= eps * max(1.0, abs(r)):
        return r if r.imag >= 0 else -r
    return r if r.real > 0 else -r


def _branch_key(q: complex):
    # |q| >= 1 first, then arg in [0, pi/2], then smallest arg
    tiny = 1e-12
    arg = cmath.phase(q)
    return (
        abs(q) < 1 - tiny,
        not (-tiny <= arg <= np.pi / 2 + tiny),
        round(arg, 12),
    )


def fit_base_q(thetas: Sequence[float], tol: float = 1e-8) -> list[complex]:
    """Candidate bases q for which ``thetas`` can have the q-Racah shape.

    The ratio (theta_{i-1} - theta_{i+2}) / (theta_i - theta_{i+1}) equals
    q^2 + 1 + q^-2 for every i. Candidates come back sorted by the canonical
    branch preference, so element 0 is the canonical q.
    """
    th = np.asarray(thetas, dtype=complex)
    D = len(th) - 1
    if D < 3:
        raise DiameterTooSmall(f"need D >= 3 to determine q, got D = {D}")
    betas = np.array([(th[i - 1] - th[i + 2]) / (th[i] - th[i + 1]) for i in range(1, D - 1)])
    beta = betas.mean()
    spread = np.abs(betas - beta).max()
    if spread > tol * (1 + abs(beta)):
        raise NonConstantBeta(f"beta ratios are not constant: {np.round(betas, 10).tolist()}")
    # s + 1/s = beta - 1 with s = q^2
    disc = cmath.sqrt((beta - 1) ** 2 - 4)
    squares = [((beta - 1) + disc) / 2, ((beta - 1) - disc) / 2]
    cands = []
    for s in squares:
        r = cmath.sqrt(s)
        cands.extend([r, -r])
    good = [q for q in cands if abs(q) > 0 and abs(q**4 - 1) > EPS_Q]
    if not good:
        raise AllCandidatesDegenerate(f"beta = {beta:.12g} forces q^4 = 1")
    unique = []
    for q in sorted(good, key=_branch_key):
        if all(abs(q - p) > 1e-9 for p in unique):
            unique.append(q)
    return unique


def solve_affine(thetas: Sequence[complex], q: complex, D: Optional[int] = None, tol: float = 1e-8):
    """Least-squares (w, u, v) with theta_i = w + u q^(2i-D) + v q^(D-2i).

    Returns ``(w, u, v, residual)`` where ``residual`` is the largest
    absolute defect over i.
    """
    th = np.asarray(thetas, dtype=complex)
    if D is None:
        D = len(th) - 1
    i = np.arange(D + 1)
    M = np.column_stack([np.ones(D + 1), q ** (2 * i - D), q ** (D - 2 * i)]).astype(complex)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularSystem(f"design matrix is singular for q = {q}")
    coef, *_ = np.linalg.lstsq(M, th, rcond=None)
    w, u, v = (complex(c) for c in coef)
    residual = float(np.abs(M @ coef - th).max())
    scale = 1 + np.abs(th).max()
    if abs(u) <= tol * scale or abs(v) <= tol * scale:
        raise ZeroCoefficient(f"u = {u:.3g}, v = {v:.3g}: sequence is not of q-Racah type")
    return w, u, v, residual


def fit_qracah(
    thetas: Sequence[float],
    theta_stars: Sequence[float],
    tol: float = 1e-8,
    branch: str = "canonical",
) -> list[QRacahFit]:
    """Fit both sequences with a shared q; one :class:`QRacahFit` per q branch."""
    th = np.asarray(thetas, dtype=complex)
    ths = np.asarray(theta_stars, dtype=complex)
    D = len(th) - 1
    qs = fit_base_q(th.real if np.all(th.imag == 0) else th, tol)
    if branch == "canonical":
        qs = qs[:1]
    elif branch != "all":
        raise ValueError(f"unknown q branch policy {branch!r}")
    fits = []
    for q in qs:
        w, u, v, res = solve_affine(th, q, D, tol)
        ws, us, vs, res_s = solve_affine(ths, q, D, tol)
        if res > tol * (1 + np.abs(th).max()):
            raise NonConstantBeta(f"eigenvalue fit residual {res:.3e} too large for q = {q}")
        if res_s > tol * (1 + np.abs(ths).max()):
            raise NonConstantBeta(f"dual eigenvalue sequence does not fit q = {q} (residual {res_s:.3e})")
        a = principal_sqrt(u / v)
        b = principal_sqrt(us / vs)
        fits.append(QRacahFit(q, D, w, u, v, ws, us, vs, a, b, max(res, res_s)))
    return fits


def normalize_generators(A, A_star, fit: QRacahFit, idempotents=None, dual_idempotents=None, tol: float = 1e-8):
    """Rescale A and A* and check the eigenvalue of each on every (dual) idempotent."""
    n = A.shape[0]
    eye = np.eye(n)
    bold_A = (np.asarray(A, dtype=complex) - fit.w * eye) / (fit.a * fit.v)
    bold_B = (np.asarray(A_star, dtype=complex) - fit.wstar * eye) / (fit.b * fit.vstar)
    worst = 0.0
    for seq, mat, eig in (
        (idempotents, bold_A, fit.normalized_eigenvalue),
        (dual_idempotents, bold_B, fit.normalized_dual_eigenvalue),
    ):
        if seq is None:
            continue
        for i, e in enumerate(seq):
            lam = eig(i)
            defect = np.linalg.norm(mat @ e - lam * e) / (1 + abs(lam))
            worst = max(worst, float(defect))
    if worst > tol * n:
        raise EigenvalueMismatch(f"normalized generator eigenvalue defect {worst:.3e}")
    return NormalizedGenerators(bold_A, bold_B, fit, worst)
