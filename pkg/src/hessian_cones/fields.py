"""A small catalog of scalar fields on ``C^n`` with known complex Hessians.

Each field evaluates on complex arrays of shape ``(..., n)``.  ``hessian`` is
the exact ``(u_{i j̄})`` where the field is ``C^2`` (``None`` for the
non-smooth entries), and ``laplacian`` its trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .pogorelov import PogorelovParams, analytic_hessian, u_value

__all__ = ["SampledField", "field_catalog", "get_field", "FIELD_NAMES"]


@dataclass(frozen=True)
class SampledField:
    name: str
    n: int
    evaluator: Callable
    smoothness: str  # "poly", "smooth", "C0"
    hessian: Callable | None = None
    subharmonic: bool = False
    pluriharmonic: bool = False

    def __call__(self, z):
        return self.evaluator(np.asarray(z, dtype=complex))

    def laplacian(self, z) -> float:
        if self.hessian is None:
            raise ValueError(f"field {self.name!r} has no closed-form Hessian")
        return float(np.trace(self.hessian(z)).real)

    @property
    def smooth(self) -> bool:
        return self.smoothness != "C0"


def _sq(z):
    return np.sum(np.abs(z) ** 2, axis=-1)


def quad(n):
    return SampledField("quad", n, _sq, "poly", lambda z: np.eye(n, dtype=complex), subharmonic=True)


def quartic(n):
    def hess(z):
        z = np.asarray(z, dtype=complex)
        # u = S^2, S = |z|^2:  u_{i j̄} = 2 S δ_ij + 2 conj(z_i) z_j
        return 2.0 * _sq(z) * np.eye(n) + 2.0 * np.outer(z.conj(), z)

    return SampledField("quartic", n, lambda z: _sq(z) ** 2, "poly", hess, subharmonic=True)


def pluriharmonic(n):
    return SampledField(
        "pluriharmonic",
        n,
        lambda z: (z[..., 0] ** 2).real,
        "poly",
        lambda z: np.zeros((n, n), dtype=complex),
        subharmonic=True,
        pluriharmonic=True,
    )


def cubic_plus_quad(n):
    return SampledField(
        "cubic_plus_quad",
        n,
        lambda z: (z[..., 0] ** 3).real + _sq(z),
        "poly",
        lambda z: np.eye(n, dtype=complex),
        subharmonic=True,
    )


def pogorelov(n, beta: float = 1.5):
    params = PogorelovParams(1, n, beta)
    return SampledField(
        "pogorelov",
        n,
        lambda z: u_value(params, z),
        "smooth",  # off z'' = 0
        lambda z: analytic_hessian(params, z),
        subharmonic=True,
    )


def log_distance(pole=0.5 + 0.5j):
    """``log|z - a|`` in one variable; harmonic off the pole."""
    return SampledField(
        "log_distance",
        1,
        lambda z: np.log(np.abs(z[..., 0] - pole)),
        "smooth",  # off the pole
        lambda z: np.zeros((1, 1), dtype=complex),
        subharmonic=True,
    )


def max_pluriharmonic(n):
    """``max(Re z_1, -Re z_1, Im z_n, Re(z_1^2))``: plurisubharmonic, not ``C^2``."""

    def f(z):
        parts = np.stack([z[..., 0].real, -z[..., 0].real, z[..., -1].imag, (z[..., 0] ** 2).real])
        return parts.max(axis=0)

    return SampledField("max_pluriharmonic", n, f, "C0", None, subharmonic=True)


_BUILDERS = {
    "quad": quad,
    "quartic": quartic,
    "pluriharmonic": pluriharmonic,
    "cubic_plus_quad": cubic_plus_quad,
    "pogorelov": pogorelov,
    "log_distance": lambda n: log_distance(),
    "max_pluriharmonic": max_pluriharmonic,
}
FIELD_NAMES = tuple(_BUILDERS)


def get_field(name: str, n: int) -> SampledField:
    if name not in _BUILDERS:
        raise KeyError(f"unknown field {name!r}; choose from {', '.join(FIELD_NAMES)}")
    if name == "pogorelov" and n < 2:
        raise ValueError("the pogorelov field needs n >= 2")
    if name == "log_distance" and n != 1:
        raise ValueError("log_distance is defined for n = 1 only")
    return _BUILDERS[name](n)


def field_catalog(n: int) -> dict[str, SampledField]:
    """All catalog fields that make sense in dimension ``n``."""
    out = {}
    for name in FIELD_NAMES:
        try:
            out[name] = get_field(name, n)
        except ValueError:
            continue
    return out
