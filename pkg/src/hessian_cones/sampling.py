"""Seeded random sources for property checks.

All samplers take a ``numpy.random.Generator``; ``make_rng`` resolves the seed
from an explicit argument, then the ``HCL_SEED`` environment variable, then
``DEFAULT_SEED``.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED = 20240607
BOX = (-1.0, 3.0)
CONE_SLACK = 1e-12


def resolve_seed(seed: int | None = None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get("HCL_SEED")
    return int(env) if env else DEFAULT_SEED


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(resolve_seed(seed))


def random_hermitian(n: int, rng: np.random.Generator, size: int | None = None, scale: float = 1.0):
    """Hermitian matrices ``(X + X*)/2`` with standard complex Gaussian ``X``."""
    shape = (n, n) if size is None else (size, n, n)
    x = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return scale * 0.5 * (x + np.swapaxes(x.conj(), -1, -2))


def random_unitary(n: int, rng: np.random.Generator, size: int | None = None):
    """Haar-distributed unitaries via QR with phase correction."""
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def sample_cone(in_cone, n: int, count: int, rng: np.random.Generator, box=BOX, max_rounds: int = 200):
    """Rejection sample ``count`` vectors of the box ``[lo, hi]^n`` satisfying ``in_cone``.

    ``in_cone`` takes a batch ``(m, n)`` and returns a boolean mask.
    """
    lo, hi = box
    kept = []
    have = 0
    batch = max(64, 2 * count)
    for _ in range(max_rounds):
        cand = rng.uniform(lo, hi, size=(batch, n))
        good = cand[np.asarray(in_cone(cand), dtype=bool)]
        kept.append(good)
        have += len(good)
        if have >= count:
            return np.concatenate(kept)[:count]
    raise RuntimeError(f"cone sampler accepted only {have} of {count} requested points")


def conjugate_diag(lam, unitaries):
    """Matrices ``U diag(lam) U*`` for stacked ``lam`` (m, n) and ``U`` (m, n, n)."""
    return np.einsum("mij,mj,mkj->mik", unitaries, lam, unitaries.conj())


def sample_cone_matrices(op, count: int, rng: np.random.Generator, box=BOX):
    """Hermitian matrices whose spectra are rejection-sampled from the operator's cone."""
    lam = sample_cone(lambda x: op.in_cone(x, CONE_SLACK), op.n, count, rng, box)
    u = random_unitary(op.n, rng, size=count)
    return conjugate_diag(lam, u), lam
