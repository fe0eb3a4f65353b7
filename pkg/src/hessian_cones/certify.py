"""Seeded, batched certification of operator properties.

Each ``certify_*`` function draws ``samples`` random instances, evaluates a
margin that is nonnegative when the property holds, and returns a
``Certificate`` holding the worst margin and the instance that produced it.
Matrix-level checks go through the Jacobi eigensolver; nothing reuses the
sampled spectra, so the eigenvalue route is exercised end to end.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
import numpy as np

from . import polynomials as poly
from .linalg import eigvalsh_batch
from .operators import HessianOperator, grad_G, hyperbolic_roots
from .sampling import (
    CONE_SLACK,
    conjugate_diag,
    random_unitary,
    sample_cone,
    sample_cone_matrices,
)

__all__ = ["Certificate", "PROPERTIES", "certify", "spot_check_operator"]

INEQUALITY_TOL = 1e-10


@dataclass
class Certificate:
    property: str
    operator: str
    samples: int
    worst_margin: float
    tolerance: float
    witness: dict = field(default_factory=dict)
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return self.skipped is not None or self.worst_margin >= -self.tolerance

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _jsonable(x):
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return {"re": x.real.tolist(), "im": x.imag.tolist()}
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _finish(prop, op, margins, tol, witnesses: dict) -> Certificate:
    margins = np.asarray(margins, dtype=float)
    margins = np.where(np.isnan(margins), -np.inf, margins)
    worst = int(np.argmin(margins))
    witness = {key: _jsonable(val[worst]) for key, val in witnesses.items()}
    return Certificate(prop, op.name, len(margins), float(margins[worst]), tol, witness)


def _skip(prop, op, reason) -> Certificate:
    return Certificate(prop, op.name, 0, 0.0, INEQUALITY_TOL, {}, skipped=reason)


def certify_maclaurin(op, samples, rng):
    if op.family != "sigma" or op.k < 2:
        return _skip("maclaurin", op, "only sigma_k with k >= 2")
    lam = sample_cone(lambda x: poly.in_gamma_k(x, op.k - 1, CONE_SLACK), op.n, samples, rng)
    return _finish("maclaurin", op, poly.maclaurin_gap(lam, op.k), INEQUALITY_TOL, {"lambda": lam})


def certify_mak_comparison(op, samples, rng):
    if op.family != "mak" or op.k < 2:
        return _skip("comparison", op, "only MA_k with k >= 2")
    lam = sample_cone(lambda x: poly.in_gamma_k_prime(x, op.k - 1, CONE_SLACK), op.n, samples, rng)
    return _finish("comparison", op, poly.mak_comparison_gap(lam, op.k), INEQUALITY_TOL, {"lambda": lam})


def _positive_definite(n, count, rng):
    lam = rng.uniform(1e-3, 3.0, size=(count, n))
    return conjugate_diag(lam, random_unitary(n, rng, size=count))


def certify_garding(op, samples, rng):
    p = _positive_definite(op.n, samples, rng)
    lam = eigvalsh_batch(p)
    margins = op.G(lam) - op.garding_constant * np.exp(np.log(lam).mean(axis=-1))
    return _finish("garding", op, margins, INEQUALITY_TOL, {"P": p})


def certify_sharpened_garding(op, samples, rng):
    a, _ = sample_cone_matrices(op, samples, rng)
    p = _positive_definite(op.n, samples, rng)
    la = eigvalsh_batch(a)
    lap = eigvalsh_batch(a + p)
    lp = eigvalsh_batch(p)
    margins = np.where(
        op.in_cone(lap),
        op.G(lap) - op.G(la) - op.garding_constant * np.exp(np.log(lp).mean(axis=-1)),
        -np.inf,
    )
    return _finish("sharpened_garding", op, margins, INEQUALITY_TOL, {"A": a, "P": p})


def certify_concavity(op, samples, rng):
    a, _ = sample_cone_matrices(op, samples, rng)
    b, _ = sample_cone_matrices(op, samples, rng)
    t = rng.uniform(0.0, 1.0, size=samples)
    mix = t[:, None, None] * a + (1.0 - t)[:, None, None] * b
    la, lb, lm = eigvalsh_batch(a), eigvalsh_batch(b), eigvalsh_batch(mix)
    margins = np.where(op.in_cone(lm), op.G(lm) - t * op.G(la) - (1.0 - t) * op.G(lb), -np.inf)
    return _finish("concavity", op, margins, INEQUALITY_TOL, {"A": a, "B": b, "t": t})


def certify_jensen(op, samples, rng, batch: int = 3):
    mats, _ = sample_cone_matrices(op, samples * batch, rng)
    mats = mats.reshape(samples, batch, op.n, op.n)
    lams = eigvalsh_batch(mats.reshape(-1, op.n, op.n)).reshape(samples, batch, op.n)
    lmean = eigvalsh_batch(mats.mean(axis=1))
    margins = np.where(op.in_cone(lmean), op.G(lmean) - op.G(lams).mean(axis=1), -np.inf)
    return _finish("jensen", op, margins, INEQUALITY_TOL, {"H": mats})


def t_transforms(mu, rng, steps: int = 3):
    """Apply ``steps`` random transforms ``t Id + (1 - t) P_ij`` to each row of ``mu``."""
    lam = np.array(mu, dtype=float, copy=True)
    m, n = lam.shape
    rows = np.arange(m)
    for _ in range(steps):
        i = rng.integers(0, n, size=m)
        j = (i + rng.integers(1, n, size=m)) % n
        t = rng.uniform(0.0, 1.0, size=m)
        li, lj = lam[rows, i].copy(), lam[rows, j].copy()
        lam[rows, i] = t * li + (1 - t) * lj
        lam[rows, j] = t * lj + (1 - t) * li
    return lam


def certify_schur(op, samples, rng):
    mu = sample_cone(lambda x: op.in_cone(x, CONE_SLACK), op.n, samples, rng)
    lam = t_transforms(mu, rng)
    margins = np.where(op.in_cone(lam), op.G(lam) - op.G(mu), -np.inf)
    return _finish("schur", op, margins, INEQUALITY_TOL, {"lambda": lam, "mu": mu})


def certify_monotonicity(op, samples, rng):
    a, _ = sample_cone_matrices(op, samples, rng)
    q = rng.uniform(0.0, 2.0, size=(samples, op.n))
    q[rng.uniform(size=q.shape) < 0.3] = 0.0
    qm = conjugate_diag(q, random_unitary(op.n, rng, size=samples))
    la, laq = eigvalsh_batch(a), eigvalsh_batch(a + qm)
    scale = 1.0 + np.abs(op.G(la))
    margins = np.where(op.in_cone(laq), (op.G(laq) - op.G(la)) / scale, -np.inf)
    return _finish("monotonicity", op, margins, INEQUALITY_TOL, {"A": a, "Q": qm})


def certify_cr_convexity(op, samples, rng, radius: float = 10.0):
    def in_cr(lam):
        with np.errstate(invalid="ignore"):
            return op.in_cone(lam) & (lam.sum(axis=-1) < radius) & (op.evaluate(lam) > 1.0 / radius)

    a, _ = sample_cone_matrices(op, 4 * samples, rng)
    b, _ = sample_cone_matrices(op, 4 * samples, rng)
    keep = in_cr(eigvalsh_batch(a)) & in_cr(eigvalsh_batch(b))
    a, b = a[keep][:samples], b[keep][:samples]
    if len(a) == 0:
        return _skip("cr_convexity", op, "no sampled pairs inside C_R")
    lm = eigvalsh_batch(0.5 * (a + b))
    # signed distance to failing the three defining inequalities
    with np.errstate(invalid="ignore"):
        margins = np.minimum(radius - lm.sum(axis=-1), op.evaluate(lm) - 1.0 / radius)
    margins = np.where(op.in_cone(lm), margins, -np.inf)
    return _finish("cr_convexity", op, margins, INEQUALITY_TOL, {"A": a, "B": b})


def certify_hyperbolicity(op, samples, rng, tol: float = 1e-8):
    """Worst ``-|Im t| / (1 + |Re t|)`` over roots of ``t ↦ F̂(λ - t(1,...,1))``."""
    lam = rng.uniform(-1.0, 3.0, size=(samples, op.n))
    e = np.ones(op.n)
    margins = np.empty(samples)
    for r in range(samples):
        roots = hyperbolic_roots(op.evaluate, int(op.degree), e, lam[r])
        margins[r] = -np.max(np.abs(roots.imag) / (1.0 + np.abs(roots.real)))
    return _finish("hyperbolic", op, margins, tol, {"lambda": lam})


def _hermitian_basis(n):
    # orthonormal basis of H^n for the Frobenius product
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
            f = np.zeros((n, n), dtype=complex)
            f[i, j] = 1j / np.sqrt(2.0)
            f[j, i] = -1j / np.sqrt(2.0)
            basis.append(f)
    return np.array(basis)


def gradient_fd_error(op, a) -> float:
    """Relative error between ``grad_G`` and a five-point difference of ``G``.

    The step is ``1e-3 G/||grad G||_F``; concavity of ``G`` and ``G = 0`` on the
    cone boundary put the boundary at least ``G/||grad G||`` away, so every
    stencil point stays inside the cone.
    """
    m = grad_G(op, a)
    lam = eigvalsh_batch(a)[0]
    g0 = float(op.G(lam))
    h = 1e-3 * g0 / np.linalg.norm(m)
    basis = _hermitian_basis(op.n)
    offsets = np.array([2.0, 1.0, -1.0, -2.0]) * h
    stack = a[None, None] + offsets[None, :, None, None] * basis[:, None]
    vals = op.G(eigvalsh_batch(stack.reshape(-1, op.n, op.n))).reshape(len(basis), 4)
    fd = (-vals[:, 0] + 8 * vals[:, 1] - 8 * vals[:, 2] + vals[:, 3]) / (12 * h)
    exact = np.real(np.einsum("ij,bji->b", m, basis))
    return float(np.linalg.norm(fd - exact) / np.linalg.norm(exact))


def certify_gradient(op, samples, rng, tol: float = 1e-5):
    if op.gradient is None:
        return _skip("gradient", op, "operator has no gradient")
    a, _ = sample_cone_matrices(op, samples, rng)
    errs = np.array([gradient_fd_error(op, a[r]) for r in range(samples)])
    return _finish("gradient", op, -errs, tol, {"A": a})


def certify_gradient_homogeneity(op, samples, rng, tol: float = 1e-9):
    if op.gradient is None:
        return _skip("gradient_homogeneity", op, "operator has no gradient")
    a, _ = sample_cone_matrices(op, samples, rng)
    t = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=samples))
    errs = np.empty(samples)
    for r in range(samples):
        g1 = grad_G(op, a[r])
        g2 = grad_G(op, t[r] * a[r])
        errs[r] = np.linalg.norm(g2 - g1) / np.linalg.norm(g1)
    return _finish("gradient_homogeneity", op, -errs, tol, {"A": a, "t": t})


PROPERTIES = {
    "maclaurin": certify_maclaurin,
    "comparison": certify_mak_comparison,
    "garding": certify_garding,
    "sharpened_garding": certify_sharpened_garding,
    "concavity": certify_concavity,
    "jensen": certify_jensen,
    "schur": certify_schur,
    "monotonicity": certify_monotonicity,
    "cr_convexity": certify_cr_convexity,
    "hyperbolic": certify_hyperbolicity,
    "gradient": certify_gradient,
    "gradient_homogeneity": certify_gradient_homogeneity,
}


def certify(op: HessianOperator, prop: str, samples: int, rng) -> Certificate:
    try:
        fn = PROPERTIES[prop]
    except KeyError:
        raise ValueError(f"unknown property {prop!r}; choose from {sorted(PROPERTIES)}") from None
    return fn(op, samples, rng)


def spot_check_operator(op: HessianOperator, rng, samples: int = 200) -> dict:
    """Symmetry, homogeneity and positivity of ``F̂`` on random cone points.

    Returns the worst relative deviation for the first two and the smallest
    value of ``F̂`` seen on the cone.
    """
    lam = sample_cone(lambda x: op.in_cone(x, CONE_SLACK), op.n, samples, rng)
    f = op.evaluate(lam)
    perm = np.argsort(rng.uniform(size=lam.shape), axis=-1)
    f_perm = op.evaluate(np.take_along_axis(lam, perm, axis=-1))
    t = rng.uniform(0.1, 10.0, size=samples)
    f_scaled = op.evaluate(lam * t[:, None])
    scale = np.abs(f) + 1e-300
    return {
        "symmetry": float(np.max(np.abs(f_perm - f) / scale)),
        "homogeneity": float(np.max(np.abs(f_scaled - t**op.degree * f) / (t**op.degree * scale))),
        "min_value": float(f.min()),
    }

