"""The degenerate family u = (1 + |z'|^2) |z''|^(2 beta).

Compares the closed-form spectrum with a numerical one, fits the power of
|z''| in MA_k near the singular set, and prints the regularity table.

Run:  python demos/pogorelov_family.py
"""

import numpy as np

from hessian_cones import pogorelov as pg
from hessian_cones.linalg import eigvalsh

params = pg.PogorelovParams(m=2, n=4, beta=0.8)
z = np.array([0.3 + 0.1j, -0.2j, 0.05, 0.02 - 0.01j])

print("closed-form spectrum", pg.closed_form_spectrum(params, z))
print("Jacobi spectrum     ", eigvalsh(pg.analytic_hessian(params, z)))
print("det closed vs LU     %.6e  %.6e" % (pg.det_closed_form(params, z), np.linalg.det(pg.analytic_hessian(params, z)).real))

print("\nexponent of |z''| in MA_k, fitted vs closed form")
for k in range(1, 5):
    fit = pg.fit_mak_exponent(params, k)
    print(f"  k={k}: {fit:8.4f}  {pg.mak_closed_form_exponent(2, 4, k, 0.8):8.4f}")

# at the critical beta MA_k stays bounded and positive up to z'' = 0
for m, n, k in [(2, 3, 2), (3, 4, 2), (4, 5, 3)]:
    beta = pg.critical_beta(m, n, k)
    probe = pg.mak_smoothness_probe(pg.PogorelovParams(m, n, beta), k)
    print(f"\nm={m} n={n} k={k}: beta*={beta:.4f}  MA_k in [{probe['min']:.4f}, {probe['max']:.4f}]  p*={pg.p_star(n, k)}")
    edge = (n - m) / (1 - beta)
    for p in (edge - 0.5, edge + 0.5):
        print(f"   W^(2,{p:.2f}) : {pg.w2p_admissible(p, m, n, beta)}")
    print(f"   C^(1,alpha) iff alpha <= {2 * beta - 1:.4f}")
