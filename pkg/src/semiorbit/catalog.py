"""Worked examples: the Euclidean group SE(3), the Galilei group and the
Bargmann group, each as a semidirect product with named covectors,
polarizations and a table of expected results.

Coordinates are the standard ones: ``so(3)`` has ``[e_i, e_j] = eps_ijk e_k`` and
acts on ``R^3`` by the cross product; duals use the dual bases.  The
direction ``u`` is ``e3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exactla import I, ComplexSubspace, identity, inverse, to_exact, zeros
from .lie_core import LieAlgebra, Representation, validate
from .polarization import from_semidirect_form
from .semidirect import CovectorPoint, GroupElement, SemidirectProduct, make_element

FIXTURE_NAMES = ("se3", "galilei", "bargmann")

# infinitesimal rotations: L_i v = e_i x v
ROTATIONS = (
    ((0, 0, 0), (0, 0, -1), (0, 1, 0)),
    ((0, 0, 1), (0, 0, 0), (-1, 0, 0)),
    ((0, -1, 0), (1, 0, 0), (0, 0, 0)),
)
EPS = {(0, 1): 2, (1, 2): 0, (2, 0): 1}


def hat(w) -> np.ndarray:
    """The skew matrix of ``v -> w x v``."""
    w = to_exact(w)
    return to_exact([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]])


def cayley(w) -> np.ndarray:
    """Rational rotation ``(I - S)^-1 (I + S)`` with ``S = hat(w)``."""
    s = hat(w)
    return inverse(identity(3) - s) @ (identity(3) + s)


def so3() -> LieAlgebra:
    brackets = {}
    for (i, j), k in EPS.items():
        a, b = min(i, j), max(i, j)
        brackets[(a, b)] = {k: 1 if (a, b) == (i, j) else -1}
    return LieAlgebra.from_brackets(("e1", "e2", "e3"), brackets)


def se3_algebra() -> LieAlgebra:
    """``se(3)`` on ``j1 j2 j3 b1 b2 b3``: ``[J_i, J_j] = eps J_k``, ``[J_i, B_j] = eps B_k``, ``[B, B] = 0``."""
    brackets: dict = {}
    for (i, j), k in EPS.items():
        a, b = min(i, j), max(i, j)
        sign = 1 if (a, b) == (i, j) else -1
        brackets[(a, b)] = {k: sign}
    for i in range(3):
        for j in range(3):
            if i != j:
                k = 3 - i - j
                sign = 1 if (i, j) in EPS else -1
                brackets[(i, 3 + j)] = {3 + k: sign}
    return LieAlgebra.from_brackets(("j1", "j2", "j3", "b1", "b2", "b3"), brackets)


def _galilei_matrices() -> np.ndarray:
    mats = zeros((6, 4, 4))
    for i in range(3):
        mats[i, :3, :3] = to_exact(ROTATIONS[i])
        mats[3 + i, i, 3] = Fraction(1)
    return mats


def _bargmann_matrices() -> np.ndarray:
    mats = zeros((6, 5, 5))
    for i in range(3):
        mats[i, :3, :3] = to_exact(ROTATIONS[i])
        mats[3 + i, i, 3] = Fraction(1)
        mats[3 + i, 4, i] = Fraction(-1)
    return mats


def galilei_matrix(r, b) -> np.ndarray:
    """``rho(R, b) = [[R, b], [0, 1]]`` on ``(x, t)``."""
    out = identity(4)
    out[:3, :3] = to_exact(r)
    out[:3, 3] = to_exact(b)
    return out


def bargmann_matrix(r, b) -> np.ndarray:
    """``rho(R, b) = [[R, b, 0], [0, 1, 0], [-b^T R, -|b|^2/2, 1]]`` on ``(x, t, s)``."""
    r = to_exact(r)
    b = to_exact(b)
    out = identity(5)
    out[:3, :3] = r
    out[:3, 3] = b
    out[4, :3] = -(b @ r)
    out[4, 3] = -(b @ b) / 2
    return out


def galilei_contragredient(r, b, p) -> np.ndarray:
    """``(R, b).(p, E) = (R p, E - <R p, b>)``."""
    r, b, p = to_exact(r), to_exact(b), to_exact(p)
    rp = r @ p[:3]
    return np.concatenate([rp, [p[3] - rp @ b]])


def bargmann_contragredient(r, b, p) -> np.ndarray:
    """``(R, b).(p, E, m) = (R p + m b, E - <R p, b> - m |b|^2/2, m)``."""
    r, b, p = to_exact(r), to_exact(b), to_exact(p)
    rp = r @ p[:3]
    m = p[4]
    return np.concatenate([rp + m * b, [p[3] - rp @ b - m * (b @ b) / 2, m]])


@dataclass(frozen=True)
class Polarization:
    name: str
    point: str
    h: ComplexSubspace
    a: ComplexSubspace


@dataclass(frozen=True)
class ExpectedRow:
    """An expected value: ``origin`` is ``reported`` (published worked example),
    ``derived`` (independent oracle computation) or ``trivial``."""

    fixture: str
    subject: str
    quantity: str
    value: object
    origin: str
    citation: str


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    sd: SemidirectProduct
    points: dict[str, CovectorPoint]
    polarizations: dict[str, Polarization]
    expected: tuple[ExpectedRow, ...] = field(default_factory=tuple)
    params: dict = field(default_factory=dict)

    def element(self, r, b, v=None) -> GroupElement:
        """Exact group element with ``K``-part ``R`` (or ``(R, b)``) and translation ``v``."""
        if self.name == "se3":
            return make_element(self.sd, to_exact(r), v)
        mat = galilei_matrix(r, b) if self.name == "galilei" else bargmann_matrix(r, b)
        return make_element(self.sd, mat, v)


def _point(f, p) -> CovectorPoint:
    return CovectorPoint(to_exact(f), to_exact(p))


def _pol(sd: SemidirectProduct, name: str, point: str, a_vectors) -> Polarization:
    a = ComplexSubspace.span(a_vectors, sd.nk)
    return Polarization(name, point, from_semidirect_form(sd, a), a)


def _se3(s, k) -> Fixture:
    alg = so3()
    rep = Representation(alg, to_exact(ROTATIONS), ("v1", "v2", "v3"))
    sd = SemidirectProduct(alg, rep, "se3")
    points = {"spin": _point([0, 0, s], [0, 0, k])}
    pols = {"trivial": _pol(sd, "trivial", "spin", [[0, 0, 1]])}
    R = "reported"
    D = "derived"
    rows = (
        ExpectedRow("se3", "spin", "orbit_dim", 4, R, "orbit is the cotangent bundle of the 2-sphere"),
        ExpectedRow("se3", "spin", "base_orbit_dim", 2, R, "base orbit is the 2-sphere"),
        ExpectedRow("se3", "spin", "little_orbit_dim", 0, R, "stabilizers of p and f agree (SO(2))"),
        ExpectedRow("se3", "spin", "dim_kp", 1, R, "stabilizer of p is SO(2)"),
        ExpectedRow("se3", "spin", "kp_in_kf", True, R, "stabilizers of p and f agree (SO(2))"),
        ExpectedRow("se3", "spin", "N_lagrangian", True, D, "tangent space of N equals its orthogonal"),
        ExpectedRow("se3", "spin", "characteristic_dim", 0, D, "intersection of explicit bases"),
        ExpectedRow("se3", "spin", "leaf_dim", 2, D, "rank of p (.) V"),
        ExpectedRow("se3", "spin", "induced_dimension", (0, 2, 4), R, "0 + 2*2 = 4"),
        ExpectedRow("se3", "trivial", "is_polarization", True, R, "so(2)^C + (R^3)^C is a real polarization"),
        ExpectedRow("se3", "trivial", "pukanszky", "holds", R, "trivial polarization satisfies Pukanszky's condition"),
        ExpectedRow("se3", "trivial", "bundle_dim", 4, D, "(6 - 4) + 2"),
        ExpectedRow("se3", "trivial", "reduced_e_annihilator_dim", 0, R, "reduced annihilator vanishes"),
        ExpectedRow("se3", "trivial", "symmetric_space", True, R, "base and fibre are symmetric spaces"),
    )
    return Fixture("se3", sd, points, pols, rows, {"s": s, "k": k})


def _galilei(s, k, energy) -> Fixture:
    alg = se3_algebra()
    rep = Representation(alg, _galilei_matrices(), ("x", "y", "z", "t"))
    sd = SemidirectProduct(alg, rep, "galilei")
    points = {
        "massless_spin": _point([0, 0, s, 0, 0, 0], [0, 0, k, energy]),
        "at_infinity": _point([0, 0, 0, 1, 0, 0], [0, 0, 1, 0]),
    }
    little_i = [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]
    pols = {
        "trivial": _pol(sd, "trivial", "massless_spin", little_i),
        "boosts": _pol(sd, "boosts", "at_infinity", [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]),
    }
    R = "reported"
    D = "derived"
    rows = (
        ExpectedRow("galilei", "massless_spin", "orbit_dim", 6, R, "massless spinning particle, 6-dimensional orbit"),
        ExpectedRow("galilei", "massless_spin", "base_orbit_dim", 3, R, "base orbit S^2 x R"),
        ExpectedRow("galilei", "massless_spin", "little_orbit_dim", 0, R, "little orbit is a point"),
        ExpectedRow("galilei", "massless_spin", "dim_kp", 3, R, "stabilizer of p is SO(2) x R^2"),
        ExpectedRow("galilei", "trivial", "is_polarization", True, R, "(so(2) x R^2)^C + (R^4)^C is a real polarization"),
        ExpectedRow("galilei", "trivial", "pukanszky", "holds", R, "trivial polarization satisfies Pukanszky's condition"),
        ExpectedRow("galilei", "at_infinity", "orbit_dim", 8, R, "8-dimensional orbit"),
        ExpectedRow("galilei", "at_infinity", "dim_gn", 2, R, "isotropy algebra is 2-dimensional"),
        ExpectedRow("galilei", "at_infinity", "little_orbit_dim", 2, R, "little orbit is T*S^1"),
        ExpectedRow("galilei", "at_infinity", "dim_kp", 3, R, "stabilizer of p is SO(2) x R^2"),
        ExpectedRow("galilei", "at_infinity", "dim_kp_phi", 1, R, "stabilizer of phi is the line through g"),
        ExpectedRow("galilei", "at_infinity", "dim_ker_tau_star", 1, R, "kernel of tau_p^* is the line through p"),
        ExpectedRow("galilei", "at_infinity", "TN_dims", (3, 5), D, "rank computation: T_nN strictly inside its orthogonal"),
        ExpectedRow("galilei", "at_infinity", "leaf_dim", 3, D, "rank of p (.) V; isotropic, not Lagrangian"),
        ExpectedRow("galilei", "at_infinity", "induced_dimension", (2, 3, 8), R, "2 + 2*3 = 8"),
        ExpectedRow("galilei", "boosts", "is_polarization", True, R, "a = (0 + R^2)^C is a polarization"),
        ExpectedRow("galilei", "boosts", "dim_a", 2, R, "dim a = (dim k_p + dim (k_p)_phi)/2"),
        ExpectedRow("galilei", "boosts", "pukanszky", "holds", R, "D.phi = phi + e° (one-dimensional)"),
        ExpectedRow("galilei", "boosts", "reduced_e_annihilator_dim", 1, R, "D.phi is a line"),
        ExpectedRow("galilei", "boosts", "bundle_dim", 8, D, "dim(G/D) + dim e° = 4 + 4"),
        ExpectedRow("galilei", "boosts", "symmetric_space", False, D, "bracket table: [p, m] is not inside m"),
    )
    return Fixture("galilei", sd, points, pols, rows, {"s": s, "k": k, "E": energy})


def _bargmann(s, m) -> Fixture:
    alg = se3_algebra()
    rep = Representation(alg, _bargmann_matrices(), ("x", "y", "z", "t", "s"))
    sd = SemidirectProduct(alg, rep, "bargmann")
    points = {"massive_spin": _point([0, 0, s, 0, 0, 0], [0, 0, 0, 0, m])}
    j3 = [0, 0, 1, 0, 0, 0]
    pols = {
        "plus": _pol(sd, "plus", "massive_spin", [[1, I, 0, 0, 0, 0], j3]),
        "minus": _pol(sd, "minus", "massive_spin", [[1, -I, 0, 0, 0, 0], j3]),
    }
    R = "reported"
    D = "derived"
    rows = (
        ExpectedRow("bargmann", "massive_spin", "orbit_dim", 8, R, "orbit is T*R^3 x S^2"),
        ExpectedRow("bargmann", "massive_spin", "base_orbit_dim", 3, R, "base orbit R^3"),
        ExpectedRow("bargmann", "massive_spin", "little_orbit_dim", 2, R, "little orbit is S^2"),
        ExpectedRow("bargmann", "massive_spin", "dim_kp", 3, R, "stabilizer of p is SO(3)"),
        ExpectedRow("bargmann", "massive_spin", "kp_is_rotations", True, R, "stabilizer of p is SO(3)"),
        ExpectedRow("bargmann", "massive_spin", "dim_im_tau_star", 3, R, "image of tau_p^* is 3-dimensional"),
        ExpectedRow("bargmann", "massive_spin", "dim_ker_tau_star", 2, D, "rank-nullity on the representation matrices"),
        ExpectedRow("bargmann", "massive_spin", "characteristic_dim", 3, D, "Gram-matrix radical oracle"),
        ExpectedRow("bargmann", "massive_spin", "induced_dimension", (2, 3, 8), R, "2 + 2*3 = 8"),
        ExpectedRow("bargmann", "massive_spin", "trivial_polarization_refused", True, D, "f([J1, J2]) = s != 0"),
        ExpectedRow("bargmann", "plus", "is_polarization", True, R, "complex polarization"),
        ExpectedRow("bargmann", "minus", "is_polarization", True, R, "complex polarization"),
        ExpectedRow("bargmann", "plus", "pukanszky", "holds", R, "reduced e° = 0"),
        ExpectedRow("bargmann", "minus", "pukanszky", "holds", R, "reduced e° = 0"),
        ExpectedRow("bargmann", "plus", "reduced_e_annihilator_dim", 0, R, "reduced e° = 0"),
        ExpectedRow("bargmann", "plus", "bundle_split", (6, 2), R, "base T*(G/E), fibre E/D = S^2"),
    )
    return Fixture("bargmann", sd, points, pols, rows, {"s": s, "m": m})


def build(name: str, s=1, k=1, m=1, energy=2) -> Fixture:
    s, k, m, energy = (Fraction(x) for x in (s, k, m, energy))
    if name == "se3":
        fx = _se3(s, k)
    elif name == "galilei":
        fx = _galilei(s, k, energy)
    elif name == "bargmann":
        fx = _bargmann(s, m)
    else:
        raise KeyError(f"unknown fixture {name!r}; choose one of {', '.join(FIXTURE_NAMES)}")
    report = validate(fx.sd.k, fx.sd.rho)
    if not report.ok:
        raise AssertionError(f"fixture {name} failed validation: {report.violations}")
    return fx


def data_file(name: str) -> Path:
    """Path of the packaged ``.lie`` file for a fixture (or ``bad_jacobi``)."""
    path = Path(__file__).with_name("data") / f"{name}.lie"
    if not path.exists():
        raise KeyError(f"no data file named {name!r}")
    return path


def expected_table(name: str) -> tuple[ExpectedRow, ...]:
    return build(name).expected
