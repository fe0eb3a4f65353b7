"""Hermitian linear algebra on small dense matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  ``hermitian``
validates and exactly symmetrizes an input; every other routine assumes its
argument already passed through it.

The eigensolver is a cyclic complex Jacobi method compiled with numba.  It is
slower than LAPACK for large matrices but the matrices here are tiny (at most
a few dozen rows after compounding) and Jacobi gives small relative residuals
and an orthonormal basis even for clustered spectra.
"""

from __future__ import annotations

import json
from pathlib import Path

import numba
import numpy as np
import scipy.linalg

__all__ = [
    "NotHermitianError",
    "EigenConvergenceError",
    "hermitian",
    "eigh",
    "eigvalsh",
    "eigvalsh_batch",
    "det",
    "frobenius_inner",
    "in_matrix_cone",
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix",
    "save_matrix",
]

SYMMETRY_TOL = 1e-9
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64


class NotHermitianError(ValueError):
    """Raised when an input matrix is not Hermitian within tolerance."""


class EigenConvergenceError(RuntimeError):
    """Raised when the Jacobi sweeps fail to reduce the off-diagonal part."""


def hermitian(a, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Return ``(a + a*)/2`` as complex128 after checking ``a`` is Hermitian.

    The asymmetry ``||a - a*||_F`` must not exceed ``tol * (1 + ||a||_F)``.
    Non-finite entries and non-square shapes are rejected.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotHermitianError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("matrix has non-finite entries")
    ah = a.conj().T
    resid = np.linalg.norm(a - ah)
    if resid > tol * (1.0 + np.linalg.norm(a)):
        raise NotHermitianError(f"asymmetry residual {resid:.3e} exceeds tolerance")
    out = 0.5 * (a + ah)
    # diagonal of a Hermitian matrix is real; drop the rounding residue
    out[np.diag_indices_from(out)] = out.diagonal().real
    return out


@numba.njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    # a is overwritten; returns (eigenvalues, eigenvectors, sweeps used or -1)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = tol * np.sqrt(total)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real ** 2 + a[p, q].imag ** 2)
        if np.sqrt(off) <= thresh:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            return w, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                e = apq / g
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # rotation R = [[c, s e], [-s conj(e), c]] on (p, q); A <- R* A R
                se = s * e
                sec = s * np.conj(e)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sec * akq
                    a[k, q] = se * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - se * aqk
                    a[q, k] = sec * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sec * vkq
                    v[k, q] = se * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, -1


@numba.njit(cache=True)
def _jacobi_values_batch(stack, tol, max_sweeps):
    m = stack.shape[0]
    n = stack.shape[1]
    out = np.empty((m, n))
    status = 0
    for i in range(m):
        w, _, sweeps = _jacobi(stack[i].copy(), tol, max_sweeps)
        if sweeps < 0:
            status = -1 - i
            break
        out[i] = np.sort(w)
    return out, status


def eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, u)`` with ``w`` ascending and ``a = u @ diag(w) @ u.conj().T``.
    Iteration stops once the off-diagonal Frobenius norm is at most
    ``tol * ||a||_F``; if ``max_sweeps`` sweeps do not get there,
    ``EigenConvergenceError`` is raised.
    """
    work = np.array(a, dtype=np.complex128, copy=True)
    w, u, sweeps = _jacobi(work, tol, max_sweeps)
    if sweeps < 0:
        raise EigenConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return w[order], u[:, order]


def eigvalsh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    return eigh(a, tol, max_sweeps)[0]


def eigvalsh_batch(stack, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Ascending eigenvalues for a stack of Hermitian matrices, shape (m, n, n)."""
    stack = np.ascontiguousarray(stack, dtype=np.complex128)
    if stack.ndim == 2:
        stack = stack[None]
    values, status = _jacobi_values_batch(stack, tol, max_sweeps)
    if status < 0:
        raise EigenConvergenceError(f"Jacobi did not converge for matrix {-status - 1}")
    return values


def det(a) -> complex:
    """Determinant by LU with partial pivoting (independent of ``eigh``)."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape == (1, 1):
        return complex(a[0, 0])
    lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    d = np.prod(np.diag(lu))
    return complex(-d if swaps % 2 else d)


def frobenius_inner(a, b) -> float:
    """``Trace(a b)`` for Hermitian ``a`` and ``b``; always real."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Trace(AB) = sum_ij a_ij b_ji
    return float(np.real(np.sum(a * b.T)))


def in_matrix_cone(a, which: str = "C_n") -> bool:
    """Membership in the positive-definite cone ``C_n`` or the trace cone ``C_1``."""
    if which == "C_1":
        return bool(np.trace(a).real > 0.0)
    if which == "C_n":
        return bool(eigvalsh(a)[0] > 0.0)
    raise ValueError(f"unknown cone {which!r}; expected 'C_n' or 'C_1'")


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {"n": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"n": int, "re": [[...]], "im": [[...]]}``; ``im`` may be omitted."""
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"matrix arrays must have shape ({n}, {n})")
    return hermitian(re + 1j * im)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def save_matrix(path, a) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(a)))
