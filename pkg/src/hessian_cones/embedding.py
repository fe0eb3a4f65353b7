"""Realification of Hermitian matrices and the complex/real Hessian identity.

``ι(A + iB) = [[A, -B], [B, A]]`` maps ``H^n`` into symmetric ``2n x 2n``
matrices commuting with ``J = [[0, -I], [I, 0]]``, and
``π(S) = (S + JᵀSJ)/2`` projects onto that image.

Convention note: with ``u_{i j̄} = ∂_{z_i} ∂_{z̄_j} u`` in row ``i``, column
``j`` and real coordinates ordered ``(x, y)``, one has

    π(D²_R u) = ι(2 conj(D²_C u)),

i.e. ``ι`` must be applied to the transpose of the complex Hessian (equal to
its conjugate, since it is Hermitian).  Applying ``ι`` to ``D²_C u`` itself
flips the sign of the off-diagonal blocks.  ``hessian_identity_residual``
uses the conjugate by default; ``convention="literal"`` gives the other form.
"""

from __future__ import annotations

import numpy as np

from .calculus import fd_real_hessian, levi_hessian

__all__ = ["J", "iota", "iota_inverse", "pi_projection", "hessian_identity_residual"]


def J(n: int) -> np.ndarray:
    """The complex structure ``[[0, -I], [I, 0]]`` on ``R^{2n}``."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def iota(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    re, im = a.real, a.imag
    return np.block([[re, -im], [im, re]])


def iota_inverse(s) -> np.ndarray:
    """Inverse of ``ι`` on its image (the upper-left and lower-left blocks are read)."""
    s = np.asarray(s, dtype=float)
    n = s.shape[0] // 2
    return s[:n, :n] + 1j * s[n:, :n]


def pi_projection(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        raise ValueError(f"pi_projection needs an even square matrix, got shape {s.shape}")
    j = J(s.shape[0] // 2)
    return 0.5 * (s + j.T @ s @ j)


def hessian_identity_residual(field, z, h: float = 1e-4, complex_hessian=None, convention: str = "conjugate") -> float:
    """``‖ι(2 H_C) - π(D²_R u)‖_F`` at ``z``.

    ``H_C`` is ``complex_hessian`` if given (an exact Hessian), otherwise the
    complex-line finite-difference Hessian, which shares no stencil with the
    real Hessian.  ``convention`` is ``"conjugate"`` (``ι(2 conj H_C)``, the
    form that holds with the index layout used here) or ``"literal"``.
    """
    z = np.asarray(z, dtype=complex)
    hc = levi_hessian(field, z, h) if complex_hessian is None else np.asarray(complex_hessian, dtype=complex)
    if convention == "conjugate":
        hc = hc.conj()
    elif convention != "literal":
        raise ValueError(f"unknown convention {convention!r}")
    real = fd_real_hessian(field, z, h)
    return float(np.linalg.norm(iota(2.0 * hc) - pi_projection(real)))
