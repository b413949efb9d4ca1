"""
Symplectic induction and the canonical connection
=================================================

Every orbit is induced from the little orbit of phi = f restricted to k_p.
The zero level of J(mu, g, z) = mu - i_h^* z is sampled, and the induced
form is compared with the KKS form.  A symmetric-space complement of p in k
gives a connection on G -> G/D; a skewed complement does not.
"""

import numpy as np

from semiorbit import catalog
from semiorbit.exactla import Subspace
from semiorbit.induction import (
    ConnectionSpec,
    connection_transfer,
    induced_orbit_theorem_check,
    induction_setup,
    symmetric_space_check,
    zero_level_set_check,
)

for name in catalog.FIXTURE_NAMES:
    fx = catalog.build(name)
    for point, n in fx.points.items():
        st = induction_setup(fx.sd, n)
        z = zero_level_set_check(st, np.random.default_rng(2), 50)
        io = induced_orbit_theorem_check(st, np.random.default_rng(3), 50)
        print(f"{name}.{point}: dim O = {io.orbit_dim} = {st.dim_M} + 2*{st.dim_G_over_H}"
              f"  |J| on {z.positive_residual:.0e} off >= {z.negative_min:.0e}  form {io.form_residual:.0e}")

fx = catalog.build("se3")
p_alg = fx.polarizations["trivial"].a.real_points()
sv = symmetric_space_check(fx.sd, fx.points["spin"], p_alg)
print("symmetric complement:", sv.n_sub)
for label, comp in [("symmetric", sv.n_sub), ("skewed", Subspace.span([[1, 0, 1], [0, 1, 0]], 3))]:
    cv = connection_transfer(ConnectionSpec(fx.sd, p_alg, comp), np.random.default_rng(4), 50)
    print(f"{label:9s} reproduction {cv.reproduction_residual:.1e}  equivariance {cv.equivariance_residual:.1e}")
