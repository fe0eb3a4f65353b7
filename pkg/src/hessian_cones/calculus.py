"""Finite-difference real and complex Hessians of scalar fields on ``C^n``.

A field is any callable taking a complex array of shape ``(..., n)`` and
returning a real array of shape ``(...)``.  Real coordinates are ordered
``(x_1, ..., x_n, y_1, ..., y_n)`` with ``z_j = x_j + i y_j``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "to_real",
    "to_complex",
    "fd_real_hessian",
    "fd_hessian",
    "complex_from_real_hessian",
    "levi_form",
    "levi_hessian",
]


def to_real(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag], axis=-1)


def to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = x.shape[-1] // 2
    return x[..., :n] + 1j * x[..., n:]


def _real_hessian_once(field, x0, h):
    dim = len(x0)
    eye = np.eye(dim) * h
    # stencil: center, +-h e_a, and (+-h e_a +-h e_b) for a < b
    iu, ju = np.triu_indices(dim, 1)
    pts = [x0[None]]
    pts.append(x0 + eye)
    pts.append(x0 - eye)
    for sa, sb in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        pts.append(x0 + sa * eye[iu] + sb * eye[ju])
    vals = np.asarray(field(to_complex(np.concatenate(pts))), dtype=float)
    f0 = vals[0]
    fp = vals[1 : 1 + dim]
    fm = vals[1 + dim : 1 + 2 * dim]
    npair = len(iu)
    off = vals[1 + 2 * dim :].reshape(4, npair)
    hess = np.zeros((dim, dim))
    hess[np.diag_indices(dim)] = (fp - 2.0 * f0 + fm) / h**2
    mixed = (off[0] - off[1] - off[2] + off[3]) / (4.0 * h**2)
    hess[iu, ju] = mixed
    hess[ju, iu] = mixed
    return hess


def fd_real_hessian(field, z, h: float = 1e-4, richardson: bool = False) -> np.ndarray:
    """Central-difference Hessian in the real coordinates, shape ``(2n, 2n)``.

    With ``richardson=True`` the steps ``h`` and ``h/2`` are combined to cancel
    the leading ``O(h^2)`` error.
    """
    x0 = to_real(z)
    hess = _real_hessian_once(field, x0, h)
    if richardson:
        hess = (4.0 * _real_hessian_once(field, x0, h / 2) - hess) / 3.0
    return hess


def complex_from_real_hessian(hess) -> np.ndarray:
    """``u_{i j̄} = ((u_{x_i x_j} + u_{y_i y_j}) + i (u_{x_i y_j} - u_{y_i x_j})) / 4``."""
    hess = np.asarray(hess, dtype=float)
    n = hess.shape[0] // 2
    xx, xy = hess[:n, :n], hess[:n, n:]
    yx, yy = hess[n:, :n], hess[n:, n:]
    c = 0.25 * ((xx + yy) + 1j * (xy - yx))
    return 0.5 * (c + c.conj().T)


def fd_hessian(field, z, h: float = 1e-4, richardson: bool = False) -> np.ndarray:
    """Complex Hessian ``(u_{i j̄})`` by central differences."""
    return complex_from_real_hessian(fd_real_hessian(field, z, h, richardson))


def levi_form(field, z, v, h: float = 1e-4) -> float:
    """``sum_ij u_{i j̄} v_i conj(v_j)``: a quarter of the Laplacian of ``u`` on the complex line ``z + ζ v``."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    pts = np.stack([z, z + h * v, z - h * v, z + 1j * h * v, z - 1j * h * v])
    vals = np.asarray(field(pts), dtype=float)
    return float((vals[1:].sum() - 4.0 * vals[0]) / (4.0 * h**2))


def levi_hessian(field, z, h: float = 1e-4) -> np.ndarray:
    """Complex Hessian by polarization of complex-line Laplacians.

    Uses only stencils along complex lines, so it shares no difference
    quotients with ``fd_hessian``; the two make independent routes.
    """
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    eye = np.eye(n, dtype=complex)
    hess = np.zeros((n, n), dtype=complex)
    diag = np.array([levi_form(field, z, eye[i], h) for i in range(n)])
    hess[np.diag_indices(n)] = diag
    for i in range(n):
        for j in range(i + 1, n):
            re = 0.5 * (levi_form(field, z, eye[i] + eye[j], h) - diag[i] - diag[j])
            im = 0.5 * (levi_form(field, z, eye[i] + 1j * eye[j], h) - diag[i] - diag[j])
            hess[i, j] = re + 1j * im
            hess[j, i] = re - 1j * im
    return hess
