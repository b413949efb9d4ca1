"""
Polarizations of Galilei orbits
===============================

SE(3) acts on spacetime R^4 = (x, y, z, t) with boosts shearing space by
time.  Two points: a massless spinning particle, and a point "at infinity"
whose orbit is eight-dimensional with a two-dimensional isotropy algebra.
"""

import numpy as np

from semiorbit import catalog
from semiorbit.orbit import analyze_point
from semiorbit.polarization import pukanszky_check, reduction_theorem_check

fx = catalog.build("galilei")
sd = fx.sd

for name, n in fx.points.items():
    r = analyze_point(sd, n)
    print(f"{name:14s} orbit {r.orbit_dim}  g_n {r.dim_gn}  k_p {r.dim_kp}  (k_p)_phi {r.dim_kp_phi}")

# each polarization is h = a + V^C; the verdict is the same on g and on k_p
rng = np.random.default_rng(1)
for name, pol in fx.polarizations.items():
    n = fx.points[pol.point]
    red = reduction_theorem_check(sd, n, pol.h, rng, 30)
    puk = pukanszky_check(sd, n, pol.h, rng, 30)
    print(f"{name:8s} at {pol.point}: polarization {red.big.is_polarization}/{red.little.is_polarization}"
          f"  Pukanszky {puk.holds.value}  e° dim {puk.dim_e_annihilator}")

# on k_p the D-orbit of phi is the line phi + e°
red = reduction_theorem_check(sd, fx.points["at_infinity"], fx.polarizations["boosts"].h, rng, 30)
lp = red.little_pukanszky
print("reduced: e° dim", lp.dim_e_annihilator, " sampled span of D.phi - phi", lp.sampled_span,
      f" residual {lp.sampled_residual:.1e}")
