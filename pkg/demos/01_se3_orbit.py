"""
The coadjoint orbit of a spinning particle in SE(3)
===================================================

A point of se(3)* is a pair (f, p): angular momentum and linear momentum.
With f = s e3 and p = k v3 the orbit is four-dimensional and fibres over
the sphere of radius k.
"""

import numpy as np

from semiorbit import catalog
from semiorbit.orbit import analyze_point, splitting_check, tangent_L_N
from semiorbit.semidirect import coadjoint, random_element

fx = catalog.build("se3", s=1, k=1)
sd, n = fx.sd, fx.points["spin"]
print(sd.k.basis_names, sd.rho.basis_names)

# dimensions, decided in exact rational arithmetic
r = analyze_point(sd, n)
print("orbit", r.orbit_dim, "base", r.base_orbit_dim, "little orbit", r.little_orbit_dim)
print("k_p =", r.kp, " k_p in k_f:", r.kp_in_kf)

# L moves n by K, N by translations; N is Lagrangian here, L is not
t = tangent_L_N(sd, n)
print("T_nN", t.TN.dim, "(T_nN)^perp", t.TN_perp.dim, "Lagrangian:", r.N_lagrangian)
print("T_nL", t.TL.dim, "(T_nL)^perp", t.TL_perp.dim, "Lagrangian:", r.L_lagrangian)

# the KKS form at g.n against its closed form in (k, v) coordinates
rng = np.random.default_rng(0)
nf = n.vector().astype(float)
worst = 0.0
for _ in range(100):
    g = random_element(sd, rng)
    xi, eta = rng.standard_normal(6), rng.standard_normal(6)
    worst = max(worst, splitting_check(sd, nf, g, xi, eta).residual)
print(f"splitting residual over 100 samples: {worst:.1e}")

# |p| is an invariant of the orbit, p.f the helicity another
for _ in range(3):
    m = coadjoint(sd, random_element(sd, rng), nf)
    f, p = m[:3], m[3:]
    print(f"|p| = {np.linalg.norm(p):.12f}   p.f = {p @ f:.12f}")
