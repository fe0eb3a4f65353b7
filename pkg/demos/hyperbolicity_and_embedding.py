"""Real-rootedness along the direction (1,...,1) and the real picture of
complex Hessians.

Run:  python demos/hyperbolicity_and_embedding.py
"""

from itertools import combinations

import numpy as np

from hessian_cones.embedding import hessian_identity_residual, iota, pi_projection
from hessian_cones.fields import get_field
from hessian_cones.operators import hyperbolic_roots, hyperbolicity_check, ma_k_operator

op = ma_k_operator(4, 2)
lam = np.array([2.0, -0.5, 1.0, 0.3])
roots = hyperbolic_roots(op.evaluate, int(op.degree), np.ones(4), lam)
print("roots of t -> MA_2(lam - t e):", np.round(np.sort(roots.real), 6))
print("pair means of lam:           ", np.round(sorted(np.mean(c) for c in combinations(lam, 2)), 6))

# a polynomial that is not hyperbolic in e = (1, 0)
print("lam1^2 + lam2^2 hyperbolic?", hyperbolicity_check(lambda v: v[0] ** 2 + v[1] ** 2, 2, np.array([1.0, 0.0]), np.array([0.5, 0.5])))

# complex Hessians sit inside the real ones as the J-invariant part
field = get_field("quartic", 2)
z = np.array([0.3 + 0.8j, -0.5 + 0.2j])
print("\nHessian identity residual (conjugate layout): %.2e" % hessian_identity_residual(field, z))
print("Hessian identity residual (literal layout):   %.2e" % hessian_identity_residual(field, z, convention="literal"))
h = field.hessian(z)
print("pi fixes iota(H):", np.allclose(pi_projection(iota(h)), iota(h)))
print("spectrum of H     ", np.round(np.linalg.eigvalsh(h), 5))
print("spectrum of iota(H)", np.round(np.linalg.eigvalsh(iota(h)), 5))
