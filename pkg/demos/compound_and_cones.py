"""Walk through the additive compound and the two cone families.

Run:  python demos/compound_and_cones.py
"""

import numpy as np

from hessian_cones import build_compound, compound_spectrum_residual, mak_via_determinant
from hessian_cones.polynomials import in_gamma_k, in_gamma_k_prime, ksum_multiset, ma_k, sigma
from hessian_cones.sampling import make_rng, random_hermitian

rng = make_rng(1)

# a random 4x4 Hermitian matrix and its compound on 2-vectors
a = random_hermitian(4, rng)
lam = np.linalg.eigvalsh(a)
d = build_compound(a, 2)
print("eigenvalues of A         ", np.round(lam, 4))
print("eigenvalues of D_A (k=2) ", np.round(np.linalg.eigvalsh(d), 4))
print("pairwise sums of lambda  ", np.round(np.sort(ksum_multiset(lam, 2)), 4))
print("matched residual          %.2e" % compound_spectrum_residual(a, 2))

# det D_A is MA_2 of the spectrum, computed without any eigenvalues
print("det D_A by LU             %.10f" % mak_via_determinant(a, 2))
print("MA_2(lambda)              %.10f" % ma_k(lam, 2))

# Gamma_k and Gamma'_k are different cones; neither family contains the other for k = 2
for v in ([3.0, 2.0, -1.0], [3.0, 1.0, -1.0], [1.0, 1.0, -0.9]):
    v = np.array(v)
    rows = [f"k={k}: G{int(in_gamma_k(v, k))} G'{int(in_gamma_k_prime(v, k))}" for k in (1, 2, 3)]
    print(v, " sigma:", [round(float(sigma(v, k)), 3) for k in (1, 2, 3)], " ", "  ".join(rows))
