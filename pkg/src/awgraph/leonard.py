"""Leonard systems carried by thin irreducible T-modules.

A module W with orthonormal basis U is handled through (d+1) x (d+1)
restrictions U^H X U. All sequences use the module's local indices
0..d; local index i corresponds to idempotent E_{tau+i} and dual
idempotent E*_{rho+i}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    BandViolation,
    EigenvalueMismatch,
    ReducibleTridiagonal,
    RelationResidual,
    TridiagonalViolation,
    ZeroSplitValue,
)
from .qracah import NormalizedGenerators
from .spectral import SpectralData
from .tmodule import DualData, IrreducibleModule

__all__ = [
    "LeonardSystemData",
    "ParameterArray",
    "LeonardPairCertificate",
    "restrict",
    "restrict_leonard",
    "trace_sequence",
    "split_sequences",
    "closed_form_split",
    "compute_kappa_c",
    "choose_c",
    "verify_leonard_pair",
    "module_A_epsilon",
    "aw_rhs",
    "parameter_array",
    "leonard_system",
]


class ParameterArray(NamedTuple):
    theta: np.ndarray
    theta_star: np.ndarray
    varphi: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class LeonardSystemData:
    d: int
    rho: int
    tau: int
    theta: np.ndarray
    theta_star: np.ndarray
    aW: complex
    bW: complex
    A_W: np.ndarray
    B_W: np.ndarray
    E_W: tuple
    Estar_W: tuple
    a_h: Optional[np.ndarray] = None
    varphi: Optional[np.ndarray] = None
    phi: Optional[np.ndarray] = None
    kappa: Optional[complex] = None
    c: Optional[complex] = None

    @property
    def parameter_array(self) -> ParameterArray:
        return ParameterArray(self.theta, self.theta_star, self.varphi, self.phi)


@dataclass(frozen=True)
class LeonardPairCertificate:
    A_in_B_basis: np.ndarray
    B_in_A_basis: np.ndarray
    off_band: float
    min_offdiagonal: float


def restrict(U: np.ndarray, X: np.ndarray) -> np.ndarray:
    return U.conj().T @ X @ U


def _restricted_system(U, X, Y, spec: SpectralData, dual: DualData, rho: int, tau: int, d: int):
    X_W, Y_W = restrict(U, X), restrict(U, Y)
    E_W = tuple(restrict(U, spec.idempotents[tau + i]) for i in range(d + 1))
    Es_W = tuple(restrict(U, dual.dual_idempotents[rho + i]) for i in range(d + 1))
    theta = np.array([np.trace(X_W @ e) / np.trace(e) for e in E_W])
    theta_star = np.array([np.trace(Y_W @ e) / np.trace(e) for e in Es_W])
    return X_W, Y_W, E_W, Es_W, theta, theta_star


def _check_tridiagonal(E_W, Y_W, Es_W, X_W, tol):
    scale = 1 + np.linalg.norm(X_W) + np.linalg.norm(Y_W)
    d = len(E_W) - 1
    for idem, mat, label in ((E_W, Y_W, "E_i B E_j"), (Es_W, X_W, "E*_i A E*_j")):
        for i in range(d + 1):
            for j in range(d + 1):
                val = np.linalg.norm(idem[i] @ mat @ idem[j])
                if abs(i - j) > 1 and val > tol * scale:
                    raise TridiagonalViolation(f"{label} nonzero at ({i}, {j}): {val:.3e}")
                if abs(i - j) == 1 and val <= tol * scale:
                    raise TridiagonalViolation(f"{label} vanishes at ({i}, {j})")


def trace_sequence(A_W: np.ndarray, Estar_W) -> np.ndarray:
    """a_h = trace(E*_h A) for the restricted system."""
    return np.array([np.trace(e @ A_W) for e in Estar_W])


def split_sequences(ls: LeonardSystemData, A_W=None, Estar_W=None):
    """First and second split sequences from the trace sequence.

    varphi_i = (th*_{i-1} - th*_i) * sum_{h<i} (a_h - th_h)
    phi_i    = (th*_{i-1} - th*_i) * sum_{h<i} (a_h - th_{d-h})
    """
    A_W = ls.A_W if A_W is None else A_W
    Estar_W = ls.Estar_W if Estar_W is None else Estar_W
    th, ths, d = ls.theta, ls.theta_star, ls.d
    a_h = trace_sequence(A_W, Estar_W)
    varphi = np.array([(ths[i - 1] - ths[i]) * np.sum(a_h[:i] - th[:i]) for i in range(1, d + 1)], dtype=complex)
    phi = np.array(
        [(ths[i - 1] - ths[i]) * np.sum(a_h[:i] - th[d - np.arange(i)]) for i in range(1, d + 1)], dtype=complex
    )
    scale = (1 + np.abs(th).max()) * (1 + np.abs(ths).max())
    for name, seq in (("varphi", varphi), ("phi", phi)):
        small = np.flatnonzero(np.abs(seq) <= 1e-10 * scale)
        if len(small):
            raise ZeroSplitValue(f"{name}_{int(small[0]) + 1} vanishes")
    return varphi, phi


def closed_form_split(aW: complex, bW: complex, c: complex, q: complex, d: int):
    """Split sequences of a q-Racah Leonard system in terms of a, b, c, q."""
    a, b = aW, bW
    varphi, phi = [], []
    for i in range(1, d + 1):
        common = q ** (d + 1) * (q**i - q**-i) * (q ** (i - d - 1) - q ** (d - i + 1))
        t = q ** (i - d - 1)
        varphi.append(common / (a * b) * (q**-i - a * b * c * t) * (q**-i - a * b / c * t))
        phi.append(common * a / b * (q**-i - b / a * c * t) * (q**-i - b / (a * c) * t))
    return np.array(varphi, dtype=complex), np.array(phi, dtype=complex)


def choose_c(kappa: complex, eps: float = 1e-9) -> complex:
    """Root of xi^2 - kappa xi + 1 = 0 with |c| >= 1, preferring Im(c) >= 0 on the unit circle."""
    disc = np.sqrt(complex(kappa) ** 2 - 4)
    roots = [(kappa + disc) / 2, (kappa - disc) / 2]
    mods = [abs(r) for r in roots]
    if abs(mods[0] - mods[1]) > eps * max(mods):
        return complex(roots[int(np.argmax(mods))])
    return complex(max(roots, key=lambda r: (r.imag, r.real)))


def compute_kappa_c(ls: LeonardSystemData, q: complex) -> tuple[complex, complex]:
    d = ls.d
    if d == 0:
        kappa = 0j
    else:
        a, b = ls.aW, ls.bW
        kappa = a / b * q ** (d - 1) + b / a * q ** (1 - d) + ls.phi[0] / ((q - 1 / q) * (q**d - q**-d))
    return complex(kappa), choose_c(kappa)


def aw_rhs(aW, bW, c, q, d) -> tuple[complex, complex, complex]:
    """Scalars on the right of the three Z3-symmetric Askey-Wilson relations."""
    sa, sb, sc = aW + 1 / aW, bW + 1 / bW, c + 1 / c
    lam = q ** (d + 1) + q ** (-d - 1)
    den = q + 1 / q
    return (sa * lam + sb * sc) / den, (sb * lam + sc * sa) / den, (sc * lam + sa * sb) / den


def _tridiagonal_form(M: np.ndarray, tol: float):
    k = M.shape[0]
    idx = np.arange(k)
    band = np.abs(idx[:, None] - idx[None, :])
    scale = 1 + np.linalg.norm(M)
    off_band = float(np.abs(M[band > 1]).max()) if k > 2 else 0.0
    offdiag = np.abs(M[band == 1])
    min_off = float(offdiag.min()) if k > 1 else np.inf
    if off_band > tol * scale:
        raise BandViolation(f"entry outside the tridiagonal band: {off_band:.3e}")
    if min_off <= tol * scale:
        raise ReducibleTridiagonal(f"sub/superdiagonal entry vanishes: {min_off:.3e}")
    return off_band, min_off


def _eigenbasis(projectors) -> np.ndarray:
    cols = []
    for P in projectors:
        j = int(np.argmax(np.linalg.norm(P, axis=0)))
        v = P[:, j]
        cols.append(v / np.linalg.norm(v))
    return np.column_stack(cols)


def verify_leonard_pair(ls: LeonardSystemData, tol: float = 1e-8) -> LeonardPairCertificate:
    """Check both Leonard pair conditions on W.

    A is irreducible tridiagonal in an eigenbasis of B and vice versa.
    """
    S_b = _eigenbasis(ls.Estar_W)
    S_a = _eigenbasis(ls.E_W)
    A_in_B = np.linalg.solve(S_b, ls.A_W @ S_b)
    B_in_A = np.linalg.solve(S_a, ls.B_W @ S_a)
    ob1, mo1 = _tridiagonal_form(A_in_B, tol)
    ob2, mo2 = _tridiagonal_form(B_in_A, tol)
    return LeonardPairCertificate(A_in_B, B_in_A, max(ob1, ob2), min(mo1, mo2))


def module_A_epsilon(ls: LeonardSystemData, q: complex, tol: float = 1e-8):
    """The third generator on W together with the residuals of the first two relations.

    Returns ``(A_eps, residuals)`` with ``residuals = {"awsim1": .., "awsim2": ..}``
    measured relative to 1 + the sum of the operand norms.
    """
    A, B = ls.A_W, ls.B_W
    k = A.shape[0]
    eye = np.eye(k)
    den = q**2 - q**-2

    def attempt(c):
        r1, r2, r3 = aw_rhs(ls.aW, ls.bW, c, q, ls.d)
        Aeps = r3 * eye - (q * A @ B - B @ A / q) / den
        d1 = A + (q * B @ Aeps - Aeps @ B / q) / den - r1 * eye
        d2 = B + (q * Aeps @ A - A @ Aeps / q) / den - r2 * eye
        norm = 1 + np.linalg.norm(A) + np.linalg.norm(B) + np.linalg.norm(Aeps)
        res = {
            "awsim1": float(np.linalg.norm(d1) / (norm + abs(r1) * np.sqrt(k))),
            "awsim2": float(np.linalg.norm(d2) / (norm + abs(r2) * np.sqrt(k))),
        }
        return Aeps, res

    Aeps, res = attempt(ls.c)
    if max(res.values()) > tol:
        Aeps, res = attempt(1 / ls.c)
        if max(res.values()) > tol:
            raise RelationResidual(f"Askey-Wilson relations fail on module (rho={ls.rho}, d={ls.d}): {res}")
    return Aeps, res


def parameter_array(
    module: IrreducibleModule, A: np.ndarray, A_star: np.ndarray, spec: SpectralData, dual: DualData
) -> ParameterArray:
    """Parameter array of the Leonard system (A, E_i, A*, E*_i) on a thin module."""
    X_W, Y_W, E_W, Es_W, th, ths = _restricted_system(
        module.basis, A, A_star, spec, dual, module.rho, module.tau, module.d
    )
    ls = LeonardSystemData(module.d, module.rho, module.tau, th, ths, 0j, 0j, X_W, Y_W, E_W, Es_W)
    varphi, phi = split_sequences(ls)
    return ParameterArray(th, ths, varphi, phi)


def restrict_leonard(
    module: IrreducibleModule,
    gens: NormalizedGenerators,
    spec: SpectralData,
    dual: DualData,
    tol: float = 1e-8,
) -> LeonardSystemData:
    """Restrict the normalized pair to a thin module and read its eigenvalue sequences.

    Checks the tridiagonal conditions of a Leonard system and compares the
    sequences with a(W) q^(2i-d) + a(W)^-1 q^(d-2i), a(W) = a q^(2 tau + d - D),
    and the analogue for b(W) = b q^(2 rho + d - D).
    """
    fit = gens.fit
    q, D = fit.q, fit.D
    rho, tau, d = module.rho, module.tau, module.d
    A_W, B_W, E_W, Es_W, th, ths = _restricted_system(module.basis, gens.A, gens.B, spec, dual, rho, tau, d)
    _check_tridiagonal(E_W, B_W, Es_W, A_W, tol)
    aW = fit.a * q ** (2 * tau + d - D)
    bW = fit.b * q ** (2 * rho + d - D)
    i = np.arange(d + 1)
    expect = aW * q ** (2 * i - d) + q ** (d - 2 * i) / aW
    expect_s = bW * q ** (2 * i - d) + q ** (d - 2 * i) / bW
    for got, want, name in ((th, expect, "eigenvalue"), (ths, expect_s, "dual eigenvalue")):
        err = np.abs(got - want).max()
        if err > tol * (1 + np.abs(want).max()):
            raise EigenvalueMismatch(f"{name} sequence off by {err:.3e} on module (rho={rho}, tau={tau}, d={d})")
    return LeonardSystemData(d, rho, tau, th, ths, complex(aW), complex(bW), A_W, B_W, E_W, Es_W)


def leonard_system(
    module: IrreducibleModule,
    gens: NormalizedGenerators,
    spec: SpectralData,
    dual: DualData,
    tol: float = 1e-8,
) -> LeonardSystemData:
    """Full per-module data: sequences, split sequences, kappa and c."""
    ls = restrict_leonard(module, gens, spec, dual, tol)
    varphi, phi = split_sequences(ls)
    ls = replace(ls, a_h=trace_sequence(ls.A_W, ls.Estar_W), varphi=varphi, phi=phi)
    kappa, c = compute_kappa_c(ls, gens.fit.q)
    return replace(ls, kappa=kappa, c=c)
