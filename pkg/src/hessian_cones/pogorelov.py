"""The explicit family ``u(z', z'') = (1 + |z'|^2) |z''|^{2β}`` on ``C^m x C^{n-m}``.

Off the singular set ``N = {z'' = 0}`` the complex Hessian, its spectrum and
its determinant are known in closed form.  The family shows how far the
Sobolev exponent can be lowered: with ``m = k`` and ``β = 1 - 1/C(n,k)``,
``MA_k`` of the Hessian is smooth and positive while ``u`` lies in
``W^{2,p}_loc`` only for ``p < (n - k) C(n,k)``.

Points are complex vectors of length ``n``; the first ``m`` coordinates form
``z'`` and the rest ``z''``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import eigvalsh
from .polynomials import ma_k

__all__ = [
    "SingularSetError",
    "PogorelovParams",
    "split",
    "u_value",
    "analytic_hessian",
    "phi",
    "closed_form_spectrum",
    "trace_closed_form",
    "det_closed_form",
    "mak_closed_form_exponent",
    "critical_beta",
    "mak_along_ray",
    "fit_mak_exponent",
    "mak_smoothness_probe",
    "w2p_admissible",
    "radial_exponent",
    "holder_admissible",
    "p_star",
]

SINGULAR_GUARD = 1e-14


class SingularSetError(ValueError):
    """The point lies on (or numerically at) ``{z'' = 0}``."""


@dataclass(frozen=True)
class PogorelovParams:
    m: int
    n: int
    beta: float

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.n, (int, np.integer))):
            raise TypeError("m and n must be integers")
        if not 1 <= self.m < self.n:
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


def split(params: PogorelovParams, z):
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != params.n:
        raise ValueError(f"expected points in C^{params.n}, got shape {z.shape}")
    return z[..., : params.m], z[..., params.m :]


def _norms(params, z, guard=True):
    zp, zs = split(params, z)
    a = 1.0 + np.sum(np.abs(zp) ** 2, axis=-1)
    r = np.sqrt(np.sum(np.abs(zs) ** 2, axis=-1))
    if guard and np.any(r < SINGULAR_GUARD):
        raise SingularSetError("z'' = 0: closed forms are only valid off the singular set")
    return zp, zs, a, r


def u_value(params: PogorelovParams, z):
    _, _, a, r = _norms(params, z, guard=False)
    return a * r ** (2.0 * params.beta)


def analytic_hessian(params: PogorelovParams, z) -> np.ndarray:
    """Complex Hessian ``(u_{i j̄})`` at a single point off ``N``.

    Blocks: ``δ_ij r^{2β}`` on ``z'``, ``β z̄_i z_j r^{2β-2}`` across, and
    ``β a ((β-1) z̄_i z_j r^{2β-4} + δ_ij r^{2β-2})`` on ``z''``, with
    ``a = 1 + |z'|^2`` and ``r = |z''|``.
    """
    z = np.asarray(z, dtype=complex)
    _, _, a, r = _norms(params, z)
    b, m, n = params.beta, params.m, params.n
    outer = np.outer(z.conj(), z)  # entry (i, j) = conj(z_i) z_j
    h = np.empty((n, n), dtype=complex)
    h[:m, :m] = np.eye(m) * r ** (2 * b)
    h[:m, m:] = b * outer[:m, m:] * r ** (2 * b - 2)
    h[m:, :m] = b * outer[m:, :m] * r ** (2 * b - 2)
    h[m:, m:] = b * a * ((b - 1) * outer[m:, m:] * r ** (2 * b - 4) + np.eye(n - m) * r ** (2 * b - 2))
    return h


def phi(params: PogorelovParams, z):
    _, _, a, r = _norms(params, z)
    b2 = params.beta**2
    s = r**2 + b2 * a
    return 0.5 * (s + np.sqrt(s**2 - 4.0 * b2 * r**2))


def closed_form_spectrum(params: PogorelovParams, z) -> np.ndarray:
    """Ascending eigenvalues of the Hessian from the closed form.

    ``r^{2β}`` with multiplicity ``m-1``, ``β a r^{2β-2}`` with multiplicity
    ``n-m-1`` and the pair ``φ r^{2β-2}``, ``(β^2/φ) r^{2β}`` whose sum and
    product are ``r^{2β} + β^2 a r^{2β-2}`` and ``β^2 r^{4β-2}``.
    """
    _, _, a, r = _norms(params, z)
    b, m, n = params.beta, params.m, params.n
    f = phi(params, z)
    vals = [r ** (2 * b)] * (m - 1) + [b * a * r ** (2 * b - 2)] * (n - m - 1)
    vals += [f * r ** (2 * b - 2), b**2 / f * r ** (2 * b)]
    return np.sort(np.array(vals, dtype=float))


def trace_closed_form(params: PogorelovParams, z) -> float:
    _, _, a, r = _norms(params, z)
    b, m, n = params.beta, params.m, params.n
    return float(m * r ** (2 * b) + b * a * (n - m + b - 1) * r ** (2 * b - 2))


def det_closed_form(params: PogorelovParams, z) -> float:
    """``β^{n-m+1} (1+|z'|^2)^{n-m-1} |z''|^{2βn - 2(n-m)}``."""
    _, _, a, r = _norms(params, z)
    b, m, n = params.beta, params.m, params.n
    return float(b ** (n - m + 1) * a ** (n - m - 1) * r ** (2 * b * n - 2 * (n - m)))


def _comb0(m: int, k: int) -> int:
    return comb(m, k) if k <= m else 0


def mak_closed_form_exponent(m: int, n: int, k: int, beta: float) -> float:
    """Power of ``|z''|`` in ``MA_k`` of the Hessian: ``C(m,k) 2β + (C(n,k) - C(m,k))(2β - 2)``."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    cm, cn = _comb0(m, k), comb(n, k)
    return cm * 2.0 * beta + (cn - cm) * (2.0 * beta - 2.0)


def critical_beta(m: int, n: int, k: int) -> float:
    """``1 - C(m,k)/C(n,k)``, the ``β`` that makes the ``MA_k`` exponent vanish."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return 1.0 - _comb0(m, k) / comb(n, k)


def mak_along_ray(params: PogorelovParams, k: int, radii, zprime=None, direction=None, method: str = "numeric"):
    """``MA_k`` of the Hessian at ``(z', r d)`` for each ``r`` in ``radii``.

    ``method="numeric"`` diagonalizes the analytic Hessian with the Jacobi
    solver; ``"closed_form"`` uses the explicit spectrum.
    """
    m, n = params.m, params.n
    zprime = np.zeros(m, dtype=complex) if zprime is None else np.asarray(zprime, dtype=complex)
    d = np.ones(n - m, dtype=complex) if direction is None else np.asarray(direction, dtype=complex)
    d = d / np.linalg.norm(d)
    out = []
    for r in np.asarray(radii, dtype=float):
        z = np.concatenate([zprime, r * d])
        if method == "numeric":
            lam = eigvalsh(analytic_hessian(params, z))
        elif method == "closed_form":
            lam = closed_form_spectrum(params, z)
        else:
            raise ValueError(f"unknown method {method!r}")
        out.append(float(ma_k(lam, k)))
    return np.array(out)


def fit_mak_exponent(params: PogorelovParams, k: int, radii=None, **kwargs) -> float:
    """Least-squares slope of ``log MA_k`` against ``log |z''|`` near ``N``."""
    radii = np.logspace(-4, -2, 9) if radii is None else np.asarray(radii, dtype=float)
    vals = mak_along_ray(params, k, radii, **kwargs)
    if np.any(vals <= 0):
        raise ValueError("MA_k must be positive along the ray to fit an exponent")
    return float(np.polyfit(np.log(radii), np.log(vals), 1)[0])


def mak_smoothness_probe(params: PogorelovParams, k: int, radii=None, zprime=None, direction=None) -> dict:
    """Behaviour of ``MA_k`` of the Hessian as ``z'' → 0`` along a ray.

    At the critical ``β`` the values should stay in a fixed positive bracket
    and settle to a finite limit.  This is a consistency check only; it cannot
    certify smoothness.
    """
    radii = np.logspace(-1, -5, 13) if radii is None else np.asarray(radii, dtype=float)
    vals = mak_along_ray(params, k, radii, zprime, direction)
    steps = np.abs(np.diff(vals))
    exponent = mak_closed_form_exponent(params.m, params.n, k, params.beta)
    return {
        "radii": radii.tolist(),
        "values": vals.tolist(),
        "min": float(vals.min()),
        "max": float(vals.max()),
        "limit_estimate": float(vals[-1]),
        # change over the last step relative to the value; small when settling
        "last_relative_change": float(steps[-1] / abs(vals[-1])),
        "expected_exponent": exponent,
        "positive": bool(np.all(vals > 0)),
        "bounded": bool(vals.max() / vals.min() < 1e3),
    }


def radial_exponent(p: float, m: int, n: int, beta: float) -> float:
    """Power of ``r`` in the radial integral of the worst Hessian entry to the ``p``."""
    return 2.0 * (n - m) - 1.0 + 2.0 * p + (2.0 * beta - 4.0) * p


def w2p_admissible(p: float, m: int, n: int, beta: float) -> bool:
    """``u`` is in ``W^{2,p}_loc`` iff ``β >= 1`` or ``p < (n - m)/(1 - β)``."""
    if p < 1:
        raise ValueError("p must be at least 1")
    return bool(beta >= 1.0 or p < (n - m) / (1.0 - beta))


def holder_admissible(alpha: float, beta: float) -> bool:
    """``u`` is ``C^{1,α}_loc`` iff ``α <= 2β - 1``."""
    return bool(alpha <= 2.0 * beta - 1.0)


def p_star(n: int, k: int) -> int:
    """``(n - k) C(n,k)``: below this exponent the family defeats regularity."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    return (n - k) * comb(n, k)
