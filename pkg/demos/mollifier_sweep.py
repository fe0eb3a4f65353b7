"""Ball averages and the averaged difference operator T_eps.

T_eps is exact on |z|^2, vanishes on pluriharmonic functions, stays
nonnegative on subharmonic ones and tends to the Laplacian with an eps^2 bias.

Run:  python demos/mollifier_sweep.py
"""

import numpy as np

from hessian_cones.fields import get_field
from hessian_cones.mollifier import convergence_probe, positivity_probe, t_eps

n = 2
z = np.array([0.4 - 0.2j, 0.1 + 0.3j])
for name in ("quad", "pluriharmonic", "quartic"):
    est = t_eps(get_field(name, n), z, 0.3, 100_000, seed=0)
    print(f"{name:14s} T_0.3 = {est.value: .6f} +- {est.stderr:.1e}")

# points near the origin, where the pieces of the max cross
grid = 0.1 * np.random.default_rng(2).normal(size=(5, n)) * (1 + 0j)
probe = positivity_probe(get_field("max_pluriharmonic", n), grid, 0.25, 20_000, seed=3)
print("\nnon-smooth psh field: smallest T_eps %.4f +- %.1e, passed=%s" % (probe["worst_value"], probe["worst_stderr"], probe["passed"]))

out = convergence_probe(get_field("quartic", n), np.ones(n), np.geomspace(0.5, 2.0, 7), 1_000_000, seed=4)
print("\nquartic at (1,1), limit %.4f" % out["limit"])
for e, v, s in zip(out["eps"], out["values"], out["stderr"]):
    print(f"  eps={e:.3f}  T={v:.5f} +- {s:.1e}")
print("fitted bias order %.3f" % out["order"])
