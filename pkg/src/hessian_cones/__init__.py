"""Operator-level toolkit for degenerate complex Hessian equations."""

from .compound import build_compound, compound_basis, compound_spectrum_residual, mak_via_determinant
from .linalg import det, eigh, eigvalsh, hermitian
from .operators import (
    HessianOperator,
    catalog,
    determinant_operator,
    eval_F,
    eval_G,
    grad_G,
    interpolated2d_operator,
    ma_k_operator,
    sigma_k_operator,
)
from .polynomials import in_gamma_k, in_gamma_k_prime, ma_k, sigma

__version__ = "0.1.0"
