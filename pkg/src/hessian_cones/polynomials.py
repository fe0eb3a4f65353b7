"""Symmetric functions of eigenvalue vectors.

Everything here acts on the last axis of a real array, so a batch of vectors
with shape ``(m, n)`` is evaluated in one call.  Index sets follow the usual
mathematical convention: 1-based, strictly increasing tuples, enumerated in
lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

__all__ = [
    "ConePreconditionError",
    "index_sets",
    "sigma",
    "sigma_enumerated",
    "sigma_recurrence",
    "sigma_gradient",
    "in_gamma_k",
    "ksum_multiset",
    "ma_k",
    "log_ma_k",
    "ma_k_gradient",
    "in_gamma_k_prime",
    "maclaurin_gap",
    "distribution_identity_residual",
    "product_identity_residual",
    "mak_comparison_gap",
]

# above this size the prefix recurrence replaces explicit enumeration
ENUMERATION_MAX_N = 12


class ConePreconditionError(ValueError):
    """Raised when an inequality is probed outside the cone where it holds."""


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")


@lru_cache(maxsize=None)
def _combos(n: int, k: int) -> np.ndarray:
    # 0-based index array of shape (C(n,k), k)
    return np.array(list(combinations(range(n), k)), dtype=np.intp).reshape(comb(n, k), k)


@lru_cache(maxsize=None)
def _incidence(n: int, k: int) -> np.ndarray:
    # incidence[i, I] = 1 when i belongs to the I-th k-subset
    out = np.zeros((n, comb(n, k)))
    for col, idx in enumerate(_combos(n, k)):
        out[idx, col] = 1.0
    return out


def index_sets(n: int, k: int) -> list[tuple[int, ...]]:
    """All ``(i_1 < ... < i_k)`` drawn from ``{1, ..., n}``, lexicographically."""
    _check_k(n, k)
    return [tuple(i + 1 for i in c) for c in combinations(range(n), k)]


def sigma_enumerated(lam, k: int) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    _check_k(n, k)
    return lam[..., _combos(n, k)].prod(axis=-1).sum(axis=-1)


def sigma_recurrence(lam, k: int) -> np.ndarray:
    """``sigma_k`` through the coefficients of ``prod_i (1 + lam_i x)``."""
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    _check_k(n, k)
    e = np.zeros(lam.shape[:-1] + (k + 1,))
    e[..., 0] = 1.0
    for i in range(n):
        x = lam[..., i : i + 1]
        e[..., 1:] = e[..., 1:] + x * e[..., :-1]
    return e[..., k]


def sigma(lam, k: int):
    """Elementary symmetric polynomial of degree ``k``.

    ``sigma_0`` is 1 by convention, which keeps ``sigma_gradient`` uniform.
    """
    lam = np.asarray(lam, dtype=float)
    if k == 0:
        return np.ones(lam.shape[:-1])
    if lam.shape[-1] > ENUMERATION_MAX_N:
        return sigma_recurrence(lam, k)
    return sigma_enumerated(lam, k)


def sigma_gradient(lam, k: int) -> np.ndarray:
    """Partials ``d sigma_k / d lam_i = sigma_{k-1}(lam without lam_i)``."""
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    _check_k(n, k)
    out = np.empty_like(lam)
    for i in range(n):
        rest = np.delete(lam, i, axis=-1)
        if k == 1:
            out[..., i] = 1.0
        else:
            out[..., i] = sigma(rest, k - 1)
    return out


def in_gamma_k(lam, k: int, slack: float = 0.0):
    """True where ``sigma_1, ..., sigma_k`` all exceed ``slack``."""
    lam = np.asarray(lam, dtype=float)
    _check_k(lam.shape[-1], k)
    ok = np.ones(lam.shape[:-1], dtype=bool)
    for ell in range(1, k + 1):
        ok &= sigma(lam, ell) > slack
    return ok


def ksum_multiset(lam, k: int) -> np.ndarray:
    """All sums ``lam_{i_1} + ... + lam_{i_k}`` in the order of ``index_sets``."""
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    _check_k(n, k)
    return lam[..., _combos(n, k)].sum(axis=-1)


def ma_k(lam, k: int):
    """Product of all ``k``-fold eigenvalue sums (determinant at ``k=1``, trace at ``k=n``).

    When every sum is positive and the direct product would overflow or
    underflow, the value is rebuilt from the sum of logarithms.
    """
    s = ksum_multiset(lam, k)
    direct = s.prod(axis=-1)
    positive = np.all(s > 0, axis=-1)
    with np.errstate(divide="ignore"):
        logs = np.where(positive[..., None], np.log(np.where(s > 0, s, 1.0)), 0.0).sum(axis=-1)
    bad = positive & ((direct == 0) | ~np.isfinite(direct))
    if np.any(bad):
        direct = np.where(bad, np.exp(logs), direct)
    return direct


def log_ma_k(lam, k: int):
    """``log MA_k``; ``-inf`` wherever some ``k``-sum is not positive."""
    s = ksum_multiset(lam, k)
    positive = np.all(s > 0, axis=-1)
    logs = np.log(np.where(s > 0, s, 1.0)).sum(axis=-1)
    return np.where(positive, logs, -np.inf)


def ma_k_gradient(lam, k: int) -> np.ndarray:
    """Partials of ``MA_k``: the product rule over the sums containing index ``i``.

    Computed as sums of products with one factor removed, so zero factors
    are handled without division.
    """
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    s = ksum_multiset(lam, k)
    # leave-one-out products via prefix/suffix cumulative products
    ones = np.ones(s.shape[:-1] + (1,))
    prefix = np.concatenate([ones, np.cumprod(s, axis=-1)[..., :-1]], axis=-1)
    suffix = np.concatenate([np.cumprod(s[..., ::-1], axis=-1)[..., :-1][..., ::-1], ones], axis=-1)
    loo = prefix * suffix
    return loo @ _incidence(n, k).T


def in_gamma_k_prime(lam, k: int, slack: float = 0.0):
    """True where every ``k``-fold sum exceeds ``slack``."""
    return ksum_multiset(lam, k).min(axis=-1) > slack


def maclaurin_gap(lam, k: int):
    """``(sigma_{k-1}/C(n,k-1))^{1/(k-1)} - (sigma_k/C(n,k))^{1/k}``.

    Requires ``lam`` in the cone ``Gamma_{k-1}``; a non-positive ``sigma_k``
    contributes zero to the second term.
    """
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    if not 2 <= k <= n:
        raise ValueError(f"Maclaurin gap needs 2 <= k <= n, got k={k}, n={n}")
    if not np.all(in_gamma_k(lam, k - 1)):
        raise ConePreconditionError(f"input not in Gamma_{k - 1}")
    lower = (sigma(lam, k - 1) / comb(n, k - 1)) ** (1.0 / (k - 1))
    upper = (np.maximum(sigma(lam, k), 0.0) / comb(n, k)) ** (1.0 / k)
    return lower - upper


def distribution_identity_residual(lam, index_set):
    """Residual of the counting identity behind ``Gamma'_{k-1} ⊂ Gamma'_k``.

    Summing the ``(k-1)``-sums over all ``(k-1)``-subsets of ``I`` counts each
    ``lam_i`` (``i`` in ``I``) exactly ``k-1`` times.  Plain Python arithmetic
    is used so integer or ``Fraction`` inputs give an exact residual.
    """
    idx = tuple(index_set)
    k = len(idx)
    if k < 2:
        raise ValueError("index set must have at least two elements")
    if list(idx) != sorted(set(idx)) or idx[0] < 1 or idx[-1] > len(lam):
        raise ValueError(f"invalid index set {idx} for n={len(lam)}")
    vals = [lam[i - 1] for i in idx]
    lhs = sum(sum(sub) for sub in combinations(vals, k - 1))
    rhs = (k - 1) * sum(vals)
    return abs(lhs - rhs)


def product_identity_residual(lam, k: int):
    """Residual of ``prod_I prod_{J ⊂ I} s_J = (prod_J s_J)^(n-k+1)``.

    ``I`` runs over ``k``-subsets, ``J`` over ``(k-1)``-subsets.  Exact for
    integer and ``Fraction`` entries.
    """
    n = len(lam)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    lhs = 1
    for idx in combinations(range(n), k):
        for sub in combinations(idx, k - 1):
            lhs *= sum(lam[j] for j in sub)
    rhs = 1
    for sub in combinations(range(n), k - 1):
        rhs *= sum(lam[j] for j in sub)
    return abs(lhs - rhs ** (n - k + 1))


def mak_comparison_gap(lam, k: int):
    """``(1/k) MA_k^{1/C(n,k)} - (1/(k-1)) MA_{k-1}^{1/C(n,k-1)}`` on ``Gamma'_{k-1}``.

    Both normalized products are geometric means of positive sums and are
    evaluated in log space.
    """
    lam = np.asarray(lam, dtype=float)
    n = lam.shape[-1]
    if not 2 <= k <= n:
        raise ValueError(f"comparison needs 2 <= k <= n, got k={k}, n={n}")
    if not np.all(in_gamma_k_prime(lam, k - 1)):
        raise ConePreconditionError(f"input not in Gamma'_{k - 1}")
    upper = np.exp(log_ma_k(lam, k) / comb(n, k)) / k
    lower = np.exp(log_ma_k(lam, k - 1) / comb(n, k - 1)) / (k - 1)
    return upper - lower
