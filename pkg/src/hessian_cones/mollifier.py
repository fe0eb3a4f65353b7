"""Monte Carlo ball averages and the averaged difference operator

    T_ε u(z) = (n + 1)/ε^2 (u_ε(z) - u(z)),

where ``u_ε`` is the mean of ``u`` over the real ``2n``-ball ``B_ε(z)``.
For ``u = |z|^2`` the operator returns ``n`` exactly, it is nonnegative on
subharmonic ``u``, and it tends to the complex Laplacian as ``ε → 0``.

Each draw ``y`` (uniform in the unit ball, then scaled by ``ε``) is used with
its rotations ``iy, -y, -iy``.  Reported standard errors include a floor for
floating-point error, so exact cancellations are not judged against zero.
With a fixed seed every ``ε`` and every field sees the same points, so sweeps in ``ε`` have common random numbers and
linear combinations of fields are exact.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .calculus import fd_hessian
from .sampling import make_rng

__all__ = [
    "MCEstimate",
    "unit_ball_samples",
    "ball_samples",
    "ball_average",
    "t_eps",
    "positivity_probe",
    "convergence_probe",
]

DEFAULT_SAMPLES = 100_000
_EPS = np.finfo(float).eps


class MCEstimate(NamedTuple):
    value: float
    stderr: float


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed)


def unit_ball_samples(n: int, count: int, rng) -> np.ndarray:
    """``count`` uniform points of the unit ball of ``R^{2n}`` as vectors in ``C^n``."""
    g = rng.standard_normal((count, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    rad = rng.uniform(size=count) ** (1.0 / (2 * n))
    x = g * rad[:, None]
    return x[:, :n] + 1j * x[:, n:]


def ball_samples(n: int, eps: float, count: int, seed=None) -> np.ndarray:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return eps * unit_ball_samples(n, count, _rng(seed))


def _group_means(field, z, eps, sample_count, seed):
    """Per-draw means of ``u`` over ``z + ω y`` for ``ω`` in ``{1, i, -1, -i}``.

    Multiplication by a unit complex number maps the ball to itself, so every
    point is still uniform; the group average removes the odd terms and the
    holomorphic quadratic part of ``u`` exactly.  Returns the group means and
    a floor for floating-point error in their average.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    rng = _rng(seed)
    groups = sample_count // 4
    if groups == 0:
        y = eps * unit_ball_samples(n, sample_count, rng)
        vals = np.asarray(field(z + y), dtype=float)
        return vals, _EPS * float(np.abs(vals).mean())
    y = eps * unit_ball_samples(n, groups, rng)
    vals = np.stack([np.asarray(field(z + w * y), dtype=float) for w in (1, 1j, -1, -1j)])
    return vals.mean(axis=0), 4 * _EPS * float(np.abs(vals).mean())


def _estimate(vals, floor=0.0) -> MCEstimate:
    if len(vals) < 2:
        return MCEstimate(float(vals.mean()), float("nan"))
    stderr = vals.std(ddof=1) / np.sqrt(len(vals))
    return MCEstimate(float(vals.mean()), float(np.hypot(stderr, floor)))


def ball_average(field, z, eps: float, sample_count: int = DEFAULT_SAMPLES, seed=None) -> MCEstimate:
    """Mean of ``field`` over the real ball ``B_eps(z)`` and its standard error."""
    means, floor = _group_means(field, z, eps, sample_count, seed)
    return _estimate(means, floor)


def t_eps(field, z, eps: float, sample_count: int = DEFAULT_SAMPLES, seed=None) -> MCEstimate:
    """``(n+1)/eps^2 (u_eps(z) - u(z))`` with its standard error."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    center = float(np.asarray(field(z[None]), dtype=float)[0])
    means, floor = _group_means(field, z, eps, sample_count, seed)
    est = _estimate(means - center, floor + _EPS * abs(center))
    scale = (n + 1) / eps**2
    return MCEstimate(scale * est.value, scale * est.stderr)


def positivity_probe(field, grid, eps: float, sample_count: int = DEFAULT_SAMPLES, seed=None) -> dict:
    """Smallest ``T_eps u`` over ``grid`` for a field the caller declares subharmonic.

    ``passed`` requires every grid value to be at least ``-3`` of its own
    standard errors.
    """
    grid = np.atleast_2d(np.asarray(grid, dtype=complex))
    rng = _rng(seed)
    ests = [t_eps(field, z, eps, sample_count, rng) for z in grid]
    vals = np.array([e.value for e in ests])
    errs = np.array([e.stderr for e in ests])
    scores = vals / np.where(errs > 0, errs, np.inf)
    i = int(np.argmin(vals))
    return {
        "worst_value": float(vals[i]),
        "worst_stderr": float(errs[i]),
        "witness": grid[i].tolist(),
        "min_sigma_score": float(np.min(np.where(vals >= 0, np.inf, scores))),
        "passed": bool(np.all((vals >= 0) | (vals >= -3.0 * errs))),
    }


def convergence_probe(field, z, eps_seq, sample_count: int = DEFAULT_SAMPLES, seed=None, limit=None) -> dict:
    """Fit ``|T_eps u(z) - L| ~ c eps^order`` over ``eps_seq``.

    ``L`` defaults to the trace of the finite-difference complex Hessian.
    The same sample points are reused for every ``eps``.  The order is also
    estimated from successive differences of ``T_eps``, which needs no limit
    and cancels the ``eps``-independent part of the Monte Carlo error.
    """
    z = np.asarray(z, dtype=complex)
    eps_seq = np.sort(np.asarray(eps_seq, dtype=float))
    if len(eps_seq) < 3:
        raise ValueError("need at least three eps values")
    if limit is None:
        limit = float(np.trace(fd_hessian(field, z, 1e-4, richardson=True)).real)
    if isinstance(seed, np.random.Generator):
        # one integer seed so that every eps sees the same points
        seed = int(seed.integers(2**63))
    ests = [t_eps(field, z, e, sample_count, seed) for e in eps_seq]
    vals = np.array([e.value for e in ests])
    errs = np.array([e.stderr for e in ests])
    bias = np.abs(vals - limit)
    out = {
        "eps": eps_seq.tolist(),
        "values": vals.tolist(),
        "stderr": errs.tolist(),
        "limit": limit,
        "bias": bias.tolist(),
    }
    if np.all(bias > 3.0 * errs):
        out["order"] = float(np.polyfit(np.log(eps_seq), np.log(bias), 1)[0])
    else:
        # bias indistinguishable from noise somewhere: exact (e.g. quadratic) or too small to resolve
        out["order"] = None
    steps = np.abs(np.diff(vals))
    mids = np.sqrt(eps_seq[1:] * eps_seq[:-1])
    out["order_from_differences"] = float(np.polyfit(np.log(mids), np.log(steps), 1)[0]) if np.all(steps > 0) else None
    out["max_sigma_bias"] = float(np.max(bias / np.where(errs > 0, errs, np.inf)))
    return out
