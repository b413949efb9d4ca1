"""
A complex polarization on the Bargmann group
============================================

The central extension of the Galilei group acts on R^5.  With p = m s*
(mass) the stabilizer of p is SO(3), the little orbit is a sphere, and the
only polarizations are complex: a = <J1 +- i J2, J3>.
"""

from semiorbit import catalog
from semiorbit.orbit import PreconditionError, analyze_point
from semiorbit.polarization import (
    check_polarization,
    pukanszky_bundle_check,
    reduction_theorem_check,
    trivial_polarization,
)

fx = catalog.build("bargmann", s=1, m=1)
sd, n = fx.sd, fx.points["massive_spin"]
r = analyze_point(sd, n)
print("orbit", r.orbit_dim, " k_p", r.kp, " little orbit", r.little_orbit_dim)

# k_p + V is not available: f does not vanish on [k_p, k_p]
try:
    trivial_polarization(sd, n)
except PreconditionError as exc:
    print("trivial polarization:", exc)

for name, pol in fx.polarizations.items():
    v = check_polarization(sd, n, pol.h)
    red = reduction_theorem_check(sd, n, pol.h)
    b = pukanszky_bundle_check(sd, n, pol.h)
    print(f"{name}: polarization {v.is_polarization}  dim d {v.d.dim}  dim e {v.e.dim}"
          f"  reduced e° {red.little_pukanszky.dim_e_annihilator}"
          f"  T*(G/E) {b.base_cotangent_dim} + E/D {b.fibre_E_over_D}")

print("conjugate pair:", fx.polarizations["plus"].h.conjugate() == fx.polarizations["minus"].h)
