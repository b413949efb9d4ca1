"""
Describing a semidirect product in a .lie file
==============================================

Algebras, representations, points and polarization candidates can be
written in a small text format.  Errors come back with line and column.
"""

from semiorbit import catalog, specdsl
from semiorbit.orbit import analyze_point
from semiorbit.polarization import check_polarization

text = """
algebra so3 {
  basis e1 e2 e3
  bracket [e1, e2] = e3
  bracket [e1, e3] = -e2
  bracket [e2, e3] = e1
}
rep vec on so3 dim 3 {
  basis v1 v2 v3
  e1 -> [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
  e2 -> [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
  e3 -> [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
}
product se3 = so3 x vec
point tilted in se3* { f = e1 + 1/2 e3; p = 2 v3 }
polarization guess at tilted { a = span{ e3 } }
"""

el = specdsl.load(text)
sd = el.product_of("tilted")
n = el.points["tilted"].point
print("same product as the catalog:", sd == catalog.build("se3").sd)
print("orbit dim", analyze_point(sd, n).orbit_dim)
v = check_polarization(sd, n, el.polarizations["guess"].h)
print("guess is a polarization:", v.is_polarization, v.reasons)

# the packaged files print back in canonical form
print(specdsl.format_document(specdsl.parse(catalog.data_file("galilei").read_text())))

# a broken algebra
try:
    specdsl.load(catalog.data_file("bad_jacobi").read_text(), "bad_jacobi.lie")
except specdsl.SpecError as exc:
    print(exc)
