"""The derivation action of a matrix on k-vectors (additive compound).

For ``A`` acting on ``C^n`` the induced derivation ``D_A`` on ``Λ^k C^n`` sends
``v_1 ∧ ... ∧ v_k`` to ``Σ_j v_1 ∧ ... ∧ A v_j ∧ ... ∧ v_k``.  In the basis
``e_I = e_{i_1} ∧ ... ∧ e_{i_k}`` (``I`` increasing, lexicographic order):

* ``(I, I)`` entry: ``Σ_{i ∈ I} a_ii``;
* ``(I, J)`` with ``I \\ J = {i}`` and ``J \\ I = {j}``: ``(-1)^{pos_I(i) + pos_J(j)} a_ij``,
  positions counted from 0 within the sorted tuples;
* zero when ``I`` and ``J`` share fewer than ``k - 1`` indices.

The sign is the one produced by re-sorting ``e_J`` after replacing ``e_j`` with
``e_i``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .linalg import det, eigvalsh, hermitian
from .polynomials import index_sets, ksum_multiset, ma_k

__all__ = [
    "build_compound",
    "compound_basis",
    "compound_spectrum_residual",
    "mak_via_determinant",
    "mak_via_spectrum",
    "in_C_k_prime",
]


def compound_basis(n: int, k: int) -> list[tuple[int, ...]]:
    return index_sets(n, k)


@lru_cache(maxsize=None)
def _structure(n: int, k: int):
    basis = list(combinations(range(n), k))
    diag_members = np.zeros((len(basis), n))
    rows, cols, src_i, src_j, signs = [], [], [], [], []
    for r, big_i in enumerate(basis):
        diag_members[r, list(big_i)] = 1.0
        for c, big_j in enumerate(basis):
            out_i = set(big_i) - set(big_j)
            out_j = set(big_j) - set(big_i)
            if len(out_i) != 1:
                continue
            (i,) = out_i
            (j,) = out_j
            rows.append(r)
            cols.append(c)
            src_i.append(i)
            src_j.append(j)
            signs.append((-1) ** (big_i.index(i) + big_j.index(j)))
    return (
        diag_members,
        np.array(rows, dtype=np.intp),
        np.array(cols, dtype=np.intp),
        np.array(src_i, dtype=np.intp),
        np.array(src_j, dtype=np.intp),
        np.array(signs, dtype=float),
    )


def build_compound(a, k: int) -> np.ndarray:
    """Matrix of ``D_A`` on ``Λ^k C^n`` in the lexicographic wedge basis.

    Works for any square ``a`` (real or complex); the result is Hermitian when
    ``a`` is.  ``k = 1`` reproduces ``a`` and ``k = n`` gives ``[[trace(a)]]``.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    diag_members, rows, cols, src_i, src_j, signs = _structure(n, k)
    dtype = np.result_type(a.dtype, np.float64)
    out = np.zeros((comb(n, k), comb(n, k)), dtype=dtype)
    out[np.diag_indices_from(out)] = diag_members @ np.diagonal(a)
    out[rows, cols] = signs * a[src_i, src_j]
    return out


def compound_spectrum_residual(a, k: int) -> float:
    """Largest gap between sorted eigenvalues of ``D_A`` and sorted ``k``-sums of ``λ(A)``.

    For equal-size sorted lists this matched distance bounds the Hausdorff
    distance from above.
    """
    a = hermitian(a)
    lam = eigvalsh(a)
    expected = np.sort(ksum_multiset(lam, k))
    got = eigvalsh(build_compound(a, k))
    return float(np.max(np.abs(got - expected)))


def mak_via_determinant(a, k: int) -> float:
    """``det(D_A)`` by LU; equals ``MA_k(λ(A))`` for Hermitian ``A``."""
    return det(build_compound(hermitian(a), k)).real


def mak_via_spectrum(a, k: int) -> float:
    return float(ma_k(eigvalsh(hermitian(a)), k))


def in_C_k_prime(a, k: int) -> bool:
    """Positive definiteness of ``D_A``, i.e. membership in ``C'_k``."""
    return bool(eigvalsh(build_compound(hermitian(a), k))[0] > 0.0)
