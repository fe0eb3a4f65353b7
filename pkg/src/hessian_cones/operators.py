"""Hessian operators ``F(A) = F̂(λ(A))`` and the checks they are expected to pass.

A ``HessianOperator`` bundles a symmetric function ``F̂`` on eigenvalue
vectors, its homogeneity degree ``d`` and its open cone ``Γ̂``.  The
normalization ``G = F^{1/d}`` is concave and 1-homogeneous on the cone for
all built-ins, and most probes here measure how far a sample is from
violating one of those structural properties: a returned *margin* or *gap*
is nonnegative when the property holds.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Callable

import numpy as np

from . import polynomials as poly
from .linalg import eigh, eigvalsh, eigvalsh_batch, hermitian
from .sampling import sample_cone

__all__ = [
    "ConeViolationError",
    "HessianOperator",
    "determinant_operator",
    "sigma_k_operator",
    "ma_k_operator",
    "interpolated2d_operator",
    "catalog",
    "spectrum",
    "eval_F",
    "eval_G",
    "grad_G",
    "garding_comparison_margin",
    "concavity_probe",
    "majorizes",
    "schur_concavity_probe",
    "hyperbolic_roots",
    "hyperbolicity_check",
    "in_C_R",
    "EllipticityEstimate",
    "uniform_ellipticity_estimate",
    "jensen_gap",
    "p_threshold",
]


class ConeViolationError(ValueError):
    """An input eigenvalue vector lies outside the operator's cone."""


@dataclass(frozen=True)
class HessianOperator:
    name: str
    n: int
    degree: float
    evaluate: Callable[[np.ndarray], np.ndarray]
    cone: Callable[[np.ndarray, float], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray] | None = None
    log_evaluate: Callable[[np.ndarray], np.ndarray] | None = None
    # constant C with F(P)^{1/d} >= C det(P)^{1/n} on positive-definite P
    garding_constant: float | None = None
    # c with |lam_i| <= c * sum(lam) on the cone; None when the cone is unbounded in that sense
    spread: float | None = None
    family: str = "custom"
    k: int | None = None

    def in_cone(self, lam, slack: float = 0.0):
        return self.cone(np.asarray(lam, dtype=float), slack)

    def G(self, lam):
        """``F̂^{1/d}``, through logarithms when the operator provides them."""
        lam = np.asarray(lam, dtype=float)
        if self.log_evaluate is not None:
            return np.exp(self.log_evaluate(lam) / self.degree)
        f = self.evaluate(lam)
        return np.sign(f) * np.abs(f) ** (1.0 / self.degree)

    def grad_G_hat(self, lam):
        """``∇Ĝ = F̂^{1/d - 1} ∇F̂ / d`` on the cone."""
        if self.gradient is None:
            raise NotImplementedError(f"{self.name} has no gradient")
        lam = np.asarray(lam, dtype=float)
        f = self.evaluate(lam)
        g = self.G(lam)
        return (g / (self.degree * f))[..., None] * self.gradient(lam)


def _leave_one_out_prod(lam):
    n = lam.shape[-1]
    return np.stack([np.delete(lam, i, axis=-1).prod(axis=-1) for i in range(n)], axis=-1)


def determinant_operator(n: int) -> HessianOperator:
    return HessianOperator(
        name=f"det(n={n})",
        n=n,
        degree=n,
        evaluate=lambda lam: lam.prod(axis=-1),
        cone=lambda lam, slack=0.0: lam.min(axis=-1) > slack,
        gradient=_leave_one_out_prod,
        log_evaluate=lambda lam: np.where(
            lam.min(axis=-1) > 0, np.log(np.abs(lam)).sum(axis=-1), -np.inf
        ),
        garding_constant=1.0,
        spread=1.0,
        family="det",
    )


def sigma_k_operator(n: int, k: int) -> HessianOperator:
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    return HessianOperator(
        name=f"sigma_{k}(n={n})",
        n=n,
        degree=k,
        evaluate=lambda lam: poly.sigma(lam, k),
        cone=lambda lam, slack=0.0: poly.in_gamma_k(lam, k, slack),
        gradient=lambda lam: poly.sigma_gradient(lam, k),
        # Maclaurin telescoped from sigma_k down to sigma_n
        garding_constant=comb(n, k) ** (1.0 / k),
        spread=float(max(1, n - 2)) if k >= 2 else None,
        family="sigma",
        k=k,
    )


def ma_k_operator(n: int, k: int) -> HessianOperator:
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    return HessianOperator(
        name=f"MA_{k}(n={n})",
        n=n,
        degree=comb(n, k),
        evaluate=lambda lam: poly.ma_k(lam, k),
        cone=lambda lam, slack=0.0: poly.in_gamma_k_prime(lam, k, slack),
        gradient=lambda lam: poly.ma_k_gradient(lam, k),
        log_evaluate=lambda lam: poly.log_ma_k(lam, k),
        # (1/k) MA_k^{1/C(n,k)} >= (1/(k-1)) MA_{k-1}^{...} >= ... >= det^{1/n}
        garding_constant=float(k),
        spread=float(max(1, n - 2)) if k < n else None,
        family="mak",
        k=k,
    )


def interpolated2d_operator(s: float) -> HessianOperator:
    """``(λ_1 + sλ_2)(sλ_1 + λ_2)`` on ``{λ_1 + sλ_2 > 0, sλ_1 + λ_2 > 0}``, ``0 <= s < 1``.

    ``s = 0`` is the 2x2 determinant; as ``s → 1`` the cone opens up to the
    half-plane ``λ_1 + λ_2 > 0``.  The comparison constant ``1 + s`` is sharp
    (equality on the diagonal).
    """
    if not 0.0 <= s < 1.0:
        raise ValueError(f"s must lie in [0, 1), got {s}")

    def factors(lam):
        return lam[..., 0] + s * lam[..., 1], s * lam[..., 0] + lam[..., 1]

    def evaluate(lam):
        a, b = factors(lam)
        return a * b

    def cone(lam, slack=0.0):
        a, b = factors(lam)
        return (a > slack) & (b > slack)

    def gradient(lam):
        a, b = factors(lam)
        return np.stack([b + s * a, s * b + a], axis=-1)

    return HessianOperator(
        name=f"interp2d(s={s:g})",
        n=2,
        degree=2,
        evaluate=evaluate,
        cone=cone,
        gradient=gradient,
        garding_constant=1.0 + s,
        spread=1.0 / (1.0 - s),
        family="interp2d",
    )


def catalog(max_n: int = 6, interp_s=(0.0, 0.25, 0.5, 0.9)) -> list[HessianOperator]:
    """Every built-in operator up to dimension ``max_n``."""
    ops = [determinant_operator(n) for n in range(2, max_n + 1)]
    for n in range(2, max_n + 1):
        ops += [sigma_k_operator(n, k) for k in range(1, n + 1)]
        ops += [ma_k_operator(n, k) for k in range(1, n + 1)]
    ops += [interpolated2d_operator(s) for s in interp_s]
    return ops


def _check_dim(op: HessianOperator, a) -> None:
    if a.shape[-1] != op.n:
        raise ValueError(f"{op.name} acts on {op.n}x{op.n} matrices, got {a.shape}")


def spectrum(a) -> np.ndarray:
    return eigvalsh(hermitian(a))


def _require_cone(op, lam, strict=True, what="matrix"):
    if not np.all(op.in_cone(lam)):
        msg = f"{what} spectrum {np.round(lam, 12)} outside the cone of {op.name}"
        if strict:
            raise ConeViolationError(msg)
        warnings.warn(msg, stacklevel=3)


def eval_F(op: HessianOperator, a, strict: bool = True) -> float:
    """``F(A) = F̂(λ(A))``; outside the cone raises, or only warns when ``strict=False``."""
    a = hermitian(a)
    _check_dim(op, a)
    lam = eigvalsh(a)
    _require_cone(op, lam, strict)
    return float(op.evaluate(lam))


def eval_G(op: HessianOperator, a, strict: bool = True) -> float:
    a = hermitian(a)
    _check_dim(op, a)
    lam = eigvalsh(a)
    _require_cone(op, lam, strict)
    return float(op.G(lam))


def grad_G(op: HessianOperator, a) -> np.ndarray:
    """Frobenius gradient of ``G`` at ``A``: ``U diag(∇Ĝ(λ)) U*``.

    This is the Hermitian matrix ``M`` with ``dG(A)[B] = Trace(M B)``.  The
    formula holds at repeated eigenvalues too, since ``∇Ĝ`` of a symmetric
    differentiable function agrees on equal coordinates.
    """
    a = hermitian(a)
    _check_dim(op, a)
    lam, u = eigh(a)
    _require_cone(op, lam)
    g = op.grad_G_hat(lam)
    return (u * g) @ u.conj().T


def garding_comparison_margin(op: HessianOperator, p, constant: float | None = None) -> float:
    """``F(P)^{1/d} - C det(P)^{1/n}`` for positive-definite ``P``."""
    p = hermitian(p)
    _check_dim(op, p)
    lam = eigvalsh(p)
    if lam[0] <= 0.0:
        raise ConeViolationError("comparison matrix must be positive definite")
    c = op.garding_constant if constant is None else constant
    if c is None:
        raise ValueError(f"{op.name} has no comparison constant; pass one explicitly")
    det_root = np.exp(np.log(lam).mean())
    return float(op.G(lam) - c * det_root)


def concavity_probe(op: HessianOperator, a, b, t: float) -> float:
    """``G(tA + (1-t)B) - tG(A) - (1-t)G(B)``; ``-inf`` if the mixture left the cone."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    a = hermitian(a)
    b = hermitian(b)
    la, lb = eigvalsh(a), eigvalsh(b)
    _require_cone(op, la, what="first")
    _require_cone(op, lb, what="second")
    lm = eigvalsh(t * a + (1.0 - t) * b)
    if not op.in_cone(lm):
        return -np.inf
    return float(op.G(lm) - t * op.G(la) - (1.0 - t) * op.G(lb))


def majorizes(mu, lam, tol: float = 1e-12) -> bool:
    """``mu`` majorizes ``lam``: ascending partial sums of ``lam`` dominate those of ``mu``,
    with equal totals."""
    a = np.cumsum(np.sort(np.asarray(lam, dtype=float)))
    b = np.cumsum(np.sort(np.asarray(mu, dtype=float)))
    scale = tol * (1.0 + np.abs(b).max())
    return bool(abs(a[-1] - b[-1]) <= scale and np.all(a[:-1] >= b[:-1] - scale))


def schur_concavity_probe(op: HessianOperator, lam, mu) -> float:
    """``Ĝ(λ) - Ĝ(μ)`` for ``μ`` in the cone majorizing ``λ``."""
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if not majorizes(mu, lam):
        raise ValueError("mu does not majorize lam")
    _require_cone(op, mu, what="majorizing")
    if not op.in_cone(lam):
        return -np.inf
    return float(op.G(lam) - op.G(mu))


def _line_values(fhat, lam, e, ts):
    return np.array([fhat(lam - t * e) for t in ts], dtype=float)


def _uncertainty(series, roots, err):
    """Radius within which each root can move under value errors of size ``err``.

    ``min_m (m! err / |f^(m)(r)|)^(1/m)``: the first term covers simple roots,
    higher ones clusters of ``m`` roots.
    """
    rho = np.full(len(roots), np.inf)
    deriv, fact = series, 1.0
    for m in range(1, series.degree() + 1):
        deriv = deriv.deriv()
        fact *= m
        with np.errstate(divide="ignore"):
            rho = np.minimum(rho, (fact * err / np.abs(deriv(roots))) ** (1.0 / m))
    return rho


def _roots_on(fhat, lam, e, lo, hi, degree, far, depth):
    """Roots of ``F̂(λ - t e) / prod(t - far)`` fitted on ``[lo, hi]``.

    Dividing out the roots already located elsewhere leaves a low-degree
    polynomial on the window, so the fit carries full relative accuracy.
    Groups of roots whose uncertainty intervals overlap, that came out
    non-real, or whose position is uncertain beyond ``1e-12`` relative, are
    solved again on their own window.
    """
    count = 4 * (degree + 1)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    nodes = mid + half * np.cos(np.pi * (np.arange(count) + 0.5) / count)
    vals = _line_values(fhat, lam, e, nodes)
    if len(far):
        vals = vals / np.prod(nodes[:, None] - far[None, :], axis=1).real
    series = np.polynomial.Chebyshev.fit(nodes, vals, degree, domain=[lo, hi])
    roots = series.roots().astype(complex)
    roots = roots[np.argsort(roots.real)]
    if depth == 0 or len(roots) == 0:
        return roots
    err = 16.0 * np.finfo(float).eps * np.abs(vals).max()
    reach = 2.0 * _uncertainty(series, roots, err) + np.abs(roots.imag)
    groups, current = [], [0]
    for i in range(1, len(roots)):
        j = current[-1]
        if roots[i].real - roots[j].real <= reach[i] + reach[j]:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    groups.append(current)
    out = roots.copy()
    target = 1e-12 * (1.0 + np.abs(roots.real).max())
    for g in groups:
        grp = roots[g]
        if len(g) == 1 and grp[0].imag == 0 and reach[g[0]] <= target:
            continue
        width = reach[g].max()
        if not np.isfinite(width) or width >= half:
            continue
        wlo, whi = grp.real.min() - width, grp.real.max() + width
        others = np.concatenate([np.delete(roots, g), far])
        sub = _roots_on(fhat, lam, e, wlo, whi, len(g) + 3, others, depth - 1)
        sub = sub[(sub.real >= wlo) & (sub.real <= whi) & (np.abs(sub.imag) <= whi - wlo)]
        if len(sub) == len(g):
            out[g] = np.sort_complex(sub)
    return out


def hyperbolic_roots(fhat, degree: int, direction, lam, refine: bool = True) -> np.ndarray:
    """Roots of ``t ↦ F̂(λ - t e)`` from samples of ``F̂`` on the line.

    The polynomial is interpolated at Chebyshev points spanning the range of
    ``λ_i / e_i`` and its roots come from the colleague matrix.  Close real
    roots sit where ``|F̂|`` is many orders below its maximum, and there the
    interpolant cannot tell them from a conjugate pair.  With ``refine``
    such groups are re-solved on their own small window after dividing out
    the other roots (see ``_roots_on``).  Roots of even multiplicity keep
    imaginary parts of order ``sqrt(eps)`` times the final window.
    """
    lam = np.asarray(lam, dtype=float)
    e = np.asarray(direction, dtype=float)
    if fhat(e) == 0:
        raise ValueError("F̂(e) must be nonzero")
    d = int(degree)
    if d > 30:
        warnings.warn(f"interpolating a degree {d} polynomial; roots may be ill-conditioned")
    # for the built-ins the roots sit inside the range of lam_i / e_i
    ratios = lam / np.where(e == 0, 1.0, e)
    center = 0.5 * float(ratios.max() + ratios.min())
    radius = 0.5 * float(ratios.max() - ratios.min()) + 1e-3 * (1.0 + abs(center))
    return _roots_on(fhat, lam, e, center - radius, center + radius, d, np.empty(0), 8 if refine else 0)


def hyperbolicity_check(fhat, degree: int, direction, lam, tol: float = 1e-8) -> bool:
    """True when every root of ``t ↦ F̂(λ - t e)`` is real to within ``tol (1 + |Re t|)``."""
    roots = hyperbolic_roots(fhat, degree, direction, lam)
    return bool(np.all(np.abs(roots.imag) <= tol * (1.0 + np.abs(roots.real))))


def in_C_R(op: HessianOperator, a, radius: float) -> bool:
    """Membership in ``{A in cone : Trace A < R, F(A) > 1/R}``."""
    if radius <= 0:
        raise ValueError("R must be positive")
    a = hermitian(a)
    lam = eigvalsh(a)
    if not op.in_cone(lam):
        return False
    return bool(lam.sum() < radius and op.evaluate(lam) > 1.0 / radius)


@dataclass
class EllipticityEstimate:
    m: float
    M: float
    accepted: int
    proposed: int
    bounded: bool
    # smallest (F̂(μ) - F̂(λ)) / Σ(μ - λ) over componentwise ordered pairs
    increment_ratio_min: float
    witness_min: np.ndarray
    witness_max: np.ndarray


def _gamma_r_mask(op, lam, radius):
    ok = op.in_cone(lam)
    with np.errstate(invalid="ignore"):
        ok &= lam.sum(axis=-1) < radius
        ok &= op.evaluate(lam) > 1.0 / radius
    return ok


def uniform_ellipticity_estimate(op: HessianOperator, radius: float, samples: int, rng) -> EllipticityEstimate:
    """Empirical bounds ``m <= ∂F̂/∂λ_i <= M`` over the truncated set ``Γ̂_R``.

    Points are rejection-sampled from a box that contains ``Γ̂_R`` whenever the
    operator declares a ``spread``; otherwise (trace-like operators) the box
    ``[-nR, R]^n`` is a truncation and ``bounded`` is reported False.  Pairs
    ``λ <= μ`` (componentwise, both in ``Γ̂_R``) are then used to check the
    integrated lower bound ``F̂(μ) - F̂(λ) >= m'' Σ(μ_i - λ_i)``.
    """
    if op.gradient is None:
        raise ValueError(f"{op.name} has no gradient")
    if radius <= 0:
        raise ValueError("R must be positive")
    bounded = op.spread is not None
    if bounded:
        lo, hi = -op.spread * radius, op.spread * radius
    else:
        lo, hi = -op.n * radius, radius
    lam = sample_cone(lambda x: _gamma_r_mask(op, x, radius), op.n, samples, rng, box=(lo, hi), max_rounds=400)
    grads = op.gradient(lam)
    imin = np.unravel_index(np.argmin(grads), grads.shape)[0]
    imax = np.unravel_index(np.argmax(grads), grads.shape)[0]
    # ordered pairs: lower each sample by a random nonnegative step
    step = rng.uniform(0.0, 0.25, size=lam.shape) * np.abs(lam).max(axis=-1, keepdims=True)
    shrink = lam - step
    inside = _gamma_r_mask(op, shrink, radius)
    dsum = (lam - shrink).sum(axis=-1)
    usable = inside & (dsum > 1e-9)
    if np.any(usable):
        ratios = (op.evaluate(lam[usable]) - op.evaluate(shrink[usable])) / dsum[usable]
        ratio_min = float(ratios.min())
    else:
        ratio_min = float("nan")
    return EllipticityEstimate(
        m=float(grads.min()),
        M=float(grads.max()),
        accepted=len(lam),
        proposed=samples,
        bounded=bounded,
        increment_ratio_min=ratio_min,
        witness_min=lam[imin],
        witness_max=lam[imax],
    )


def jensen_gap(op: HessianOperator, matrices) -> float:
    """``G(mean H_i) - mean G(H_i)`` for in-cone ``H_i``."""
    mats = np.stack([hermitian(h) for h in matrices])
    lams = eigvalsh_batch(mats)
    for lam in lams:
        _require_cone(op, lam)
    mean_lam = eigvalsh(mats.mean(axis=0))
    if not op.in_cone(mean_lam):
        return -np.inf
    return float(op.G(mean_lam) - op.G(lams).mean())


def p_threshold(degree: float, n: int) -> float:
    """Integrability exponent ``n max(d - 1, 1)`` above which the Laplacian bound applies."""
    if degree <= 0 or n < 1:
        raise ValueError("need degree > 0 and n >= 1")
    return n * max(degree - 1, 1)
