"""Coadjoint orbits of semidirect products: isotropy data, dimensions, the
Kirillov-Kostant-Souriau form, the submanifolds ``L`` (the ``K``-orbit) and
``N`` (the ``V``-orbit) through a point, and the associated foliation.

All exact statements are computed at Lie-algebra level.  Identifications of
isotropy algebras with connected isotropy groups are flagged as caveats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exactla import Subspace, intersect, kernel, rank, solve, zeros
from .lie_core import LieAlgebra
from .semidirect import (
    CovectorPoint,
    GroupElement,
    SemidirectProduct,
    act_kstar,
    coadjoint,
    exp_k,
    fundamental_matrix,
    identity_element,
    image_tau_star,
    odot,
    point_vector,
    random_element,
    sample_directions,
    stabilizer_p,
    tau_star,
)

CONNECTEDNESS_CAVEAT = "isotropy groups are identified with their identity components"


class PreconditionError(ValueError):
    """A hypothesis of the requested construction does not hold."""


class NotOnOrbitError(ValueError):
    """The supplied point is not on the orbit through the base point."""


@dataclass(frozen=True)
class LittleData:
    """The stabilizer ``k_p`` with its own structure and the restricted covector ``phi``."""

    kp: Subspace
    algebra: LieAlgebra
    phi: np.ndarray
    kp_phi: Subspace
    kp_phi_local: Subspace

    def to_local(self, x) -> np.ndarray:
        return self.kp.coordinates(x)

    def to_global(self, c) -> np.ndarray:
        c = np.asarray(c)
        if self.kp.dim == 0:
            return zeros(self.kp.ambient_dim)
        return c @ self.kp.matrix()

    def local_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span([self.to_local(v) for v in s.vectors()], self.kp.dim)

    def global_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span([self.to_global(c) for c in s.vectors()], self.kp.ambient_dim)


def little_data(sd: SemidirectProduct, n) -> LittleData:
    f, p = sd.split(point_vector(n))
    kp = stabilizer_p(sd, p)
    alg = sd.k.subalgebra(kp)
    phi = kp.matrix() @ f if kp.dim else zeros(0)
    local = alg.isotropy(phi)
    kp_phi = Subspace.span([c @ kp.matrix() for c in local.vectors()], sd.nk)
    return LittleData(kp, alg, phi, kp_phi, local)


def restrict_covector(little: LittleData, f) -> np.ndarray:
    """``i_p^* f`` in the canonical basis of ``k_p``."""
    return little.kp.matrix() @ np.asarray(f) if little.kp.dim else zeros(0)


# ---------------------------------------------------------------------------
# tangent spaces and symplectic complements


def tangent_space(sd: SemidirectProduct, m, s: Subspace) -> Subspace:
    """``{xi.m : xi in s}`` inside ``g*``; ``xi.m = -m([xi, .])`` is a row of the form of ``m``."""
    if s.dim == 0:
        return Subspace.zero(sd.dim)
    return Subspace.span(list(-(s.matrix() @ sd.g.form(point_vector(m)))), sd.dim)


def symplectic_orthogonal(alg: LieAlgebra, m, s: Subspace) -> Subspace:
    """``{xi : m([xi, eta]) = 0 for eta in s}``."""
    if s.dim == 0:
        return Subspace.full(alg.dim)
    b = alg.form(point_vector(m))
    return kernel(s.matrix() @ b.T)


def omega_complement(sd: SemidirectProduct, m, s: Subspace) -> Subspace:
    """The KKS-orthogonal of ``s.m`` in ``T_m O``; it equals ``(s^perp).m``."""
    return tangent_space(sd, m, symplectic_orthogonal(sd.g, m, s))


def kks_form(sd: SemidirectProduct, m, xi, eta, formula: str = "bracket"):
    """``omega_m(xi.m, eta.m)``.

    ``formula="bracket"`` evaluates ``-m([xi, eta])``; ``formula="split"`` evaluates
    ``(A.h + q (.) a)(B) + (A.q)(b)`` from the components.
    """
    mv = point_vector(m)
    if formula == "bracket":
        return -(mv @ sd.g.bracket(xi, eta))
    if formula == "split":
        a_k, a_v = sd.split(xi)
        b_k, b_v = sd.split(eta)
        h, q = sd.split(mv)
        first = sd.k.coad(a_k) @ h + odot(sd, q, a_v)
        return first @ b_k + (sd.rho.dual_act(a_k) @ q) @ b_v
    raise ValueError(f"unknown formula {formula!r}")


# ---------------------------------------------------------------------------
# point analysis


@dataclass
class OrbitReport:
    dim_g: int
    dim_k: int
    dim_v: int
    dim_kp: int
    dim_kp_phi: int
    dim_kf: int
    dim_gn: int
    dim_ker_tau_star: int
    dim_im_tau_star: int
    orbit_dim: int
    base_orbit_dim: int
    little_orbit_dim: int
    fibre_dim: int
    L_dim: int
    N_dim: int
    N_isotropic: bool
    N_lagrangian: bool
    L_lagrangian: bool
    kp_in_kf: bool
    f_vanishes_on_brackets_k: bool
    f_vanishes_on_brackets_kp: bool
    kp: Subspace = field(repr=False)
    kp_phi: Subspace = field(repr=False)
    kf: Subspace = field(repr=False)
    gn: Subspace = field(repr=False)
    caveats: list[str] = field(default_factory=lambda: [CONNECTEDNESS_CAVEAT])

    @property
    def exact_sequence_holds(self) -> bool:
        return self.dim_gn == self.dim_ker_tau_star + self.dim_kp_phi

    @property
    def dimension_formula_holds(self) -> bool:
        return self.orbit_dim == 2 * self.base_orbit_dim + self.little_orbit_dim

    def as_dict(self) -> dict[str, Any]:
        keys = [
            "dim_g", "dim_k", "dim_v", "dim_kp", "dim_kp_phi", "dim_kf", "dim_gn",
            "dim_ker_tau_star", "dim_im_tau_star", "orbit_dim", "base_orbit_dim",
            "little_orbit_dim", "fibre_dim", "L_dim", "N_dim", "N_isotropic",
            "N_lagrangian", "L_lagrangian", "kp_in_kf", "f_vanishes_on_brackets_k",
            "f_vanishes_on_brackets_kp",
        ]
        out = {k: getattr(self, k) for k in keys}
        out["exact_sequence_holds"] = self.exact_sequence_holds
        out["dimension_formula_holds"] = self.dimension_formula_holds
        return out


def _vanishes_on_brackets(alg: LieAlgebra, f, s: Subspace) -> bool:
    return all(f @ alg.bracket(x, y) == 0 for x in s.vectors() for y in s.vectors())


def analyze_point(sd: SemidirectProduct, n) -> OrbitReport:
    mv = point_vector(n)
    f, p = sd.split(mv)
    little = little_data(sd, mv)
    kf = sd.k.isotropy(f)
    gn = sd.g.isotropy(mv)
    ker_ts = kernel(tau_star(sd, p))
    im_ts = image_tau_star(sd, p)
    k_full = Subspace.full(sd.nk)
    tl = tangent_space(sd, mv, sd.embed_k(k_full))
    tn = tangent_space(sd, mv, sd.v_subspace)
    tl_perp = omega_complement(sd, mv, sd.embed_k(k_full))
    tn_perp = omega_complement(sd, mv, sd.v_subspace)
    kp, kp_phi = little.kp, little.kp_phi
    return OrbitReport(
        dim_g=sd.dim,
        dim_k=sd.nk,
        dim_v=sd.nv,
        dim_kp=kp.dim,
        dim_kp_phi=kp_phi.dim,
        dim_kf=kf.dim,
        dim_gn=gn.dim,
        dim_ker_tau_star=ker_ts.dim,
        dim_im_tau_star=im_ts.dim,
        orbit_dim=sd.dim - gn.dim,
        base_orbit_dim=sd.nk - kp.dim,
        little_orbit_dim=kp.dim - kp_phi.dim,
        fibre_dim=im_ts.dim,
        L_dim=tl.dim,
        N_dim=tn.dim,
        N_isotropic=tn.issubset(tn_perp),
        N_lagrangian=tn == tn_perp,
        L_lagrangian=tl == tl_perp,
        kp_in_kf=kp.issubset(kf),
        f_vanishes_on_brackets_k=_vanishes_on_brackets(sd.k, f, k_full),
        f_vanishes_on_brackets_kp=_vanishes_on_brackets(sd.k, f, kp),
        kp=kp,
        kp_phi=kp_phi,
        kf=kf,
        gn=gn,
    )


def isotropy_from_sequence(sd: SemidirectProduct, n) -> Subspace:
    """``g_n`` assembled from the pieces of the exact sequence
    ``0 -> ker tau_p^* -> g_n -> (k_p)_phi -> 0``: each ``A`` in ``(k_p)_phi`` is lifted
    by solving ``A.f + p (.) a = 0`` for ``a``."""
    mv = point_vector(n)
    f, p = sd.split(mv)
    little = little_data(sd, mv)
    vecs = [sd.join(zeros(sd.nk), v) for v in kernel(tau_star(sd, p)).vectors()]
    ts = tau_star(sd, p)
    for a_k in little.kp_phi.vectors():
        a_v = solve(ts, -(sd.k.coad(a_k) @ f))
        vecs.append(sd.join(a_k, a_v))
    return Subspace.span(vecs, sd.dim)


# ---------------------------------------------------------------------------
# the submanifolds L and N


def point_on_L(sd: SemidirectProduct, n, g: GroupElement) -> np.ndarray:
    """``(k, 0).n`` for the ``K``-part of ``g``."""
    k_only = GroupElement(g.rho, g.ad, g.v * 0, g.rho_inv, g.ad_inv)
    return coadjoint(sd, k_only, n)


def point_on_N(sd: SemidirectProduct, n, v) -> np.ndarray:
    """``(e, v).n``."""
    v = np.asarray(v)
    e = identity_element(sd, exact=v.dtype == object)
    return coadjoint(sd, GroupElement(e.rho, e.ad, v, e.rho_inv, e.ad_inv), n)


@dataclass(frozen=True)
class TangentData:
    TL: Subspace
    TL_perp: Subspace
    TN: Subspace
    TN_perp: Subspace


def _orbit_signature(sd: SemidirectProduct, m) -> tuple[int, int]:
    mv = point_vector(m)
    _, q = sd.split(mv)
    tol = None if mv.dtype == object else 1e-9
    return (sd.dim - sd.g.isotropy(mv, tol).dim, stabilizer_p(sd, q, tol).dim)


def tangent_L_N(sd: SemidirectProduct, n, o=None) -> TangentData:
    """Tangent spaces of ``L`` and ``N`` through ``o`` (default ``n``) and their KKS-orthogonals.

    A supplied ``o`` must pass a tangent-level membership test: the orbit and
    stabilizer dimensions at ``o`` must match those at ``n``.
    """
    m = point_vector(n) if o is None else point_vector(o)
    if o is not None and _orbit_signature(sd, m) != _orbit_signature(sd, n):
        raise NotOnOrbitError("point is not on the orbit through the base point")
    kk = sd.embed_k(Subspace.full(sd.nk))
    vv = sd.v_subspace
    return TangentData(
        tangent_space(sd, m, kk),
        omega_complement(sd, m, kk),
        tangent_space(sd, m, vv),
        omega_complement(sd, m, vv),
    )


def characteristic_distribution(sd: SemidirectProduct, n, o=None, require_precondition: bool = True) -> Subspace:
    """``T_o L`` intersected with its KKS-orthogonal.

    The construction needs ``k_p`` inside ``k_f``; set ``require_precondition=False``
    to compute the intersection anyway.
    """
    mv = point_vector(n)
    if require_precondition:
        f, p = sd.split(mv)
        if not stabilizer_p(sd, p).issubset(sd.k.isotropy(f)):
            raise PreconditionError("k_p is not contained in k_f")
    t = tangent_L_N(sd, mv, o)
    return intersect(t.TL, t.TL_perp)


@dataclass(frozen=True)
class Leaf:
    base: np.ndarray
    directions: Subspace
    dim: int
    isotropic: bool
    lagrangian: bool
    orbit_dim: int


def foliation_leaf(sd: SemidirectProduct, o) -> Leaf:
    """The affine leaf ``o + (q (.) V, 0)`` through ``o = (h, q)``."""
    ov = point_vector(o)
    _, q = sd.split(ov)
    vv = sd.v_subspace
    directions = tangent_space(sd, ov, vv)
    vb = vv.vectors()
    isotropic = all(kks_form(sd, ov, x, y) == 0 for x in vb for y in vb)
    orbit_dim = sd.dim - sd.g.isotropy(ov).dim
    return Leaf(ov, directions, directions.dim, isotropic, isotropic and 2 * directions.dim == orbit_dim, orbit_dim)


# ---------------------------------------------------------------------------
# sampled checks


@dataclass(frozen=True)
class SplittingResult:
    pullback: float
    closed_form: float
    q_part: float
    z_part: float
    residual: float


def splitting_check(sd: SemidirectProduct, n, g: GroupElement, xi, eta) -> SplittingResult:
    """Compare ``omega`` at ``g.n`` with the closed form
    ``q(B.(A.v + a)) - q(A.(B.v + b)) - h([A, B])`` where ``(h, q) = (k.f, k.p)``."""
    m = coadjoint(sd, g, n)
    pull = kks_form(sd, m, xi, eta)
    f, p = sd.split(point_vector(n))
    h = act_kstar(g, f)
    q = g.rho_inv.T @ p
    a_k, a_v = sd.split(xi)
    b_k, b_v = sd.split(eta)
    ra = sd.rho.act(a_k) if g.exact else np.tensordot(a_k, sd.rep_float, axes=(0, 0))
    rb = sd.rho.act(b_k) if g.exact else np.tensordot(b_k, sd.rep_float, axes=(0, 0))
    z_part = q @ (rb @ (ra @ g.v + a_v)) - q @ (ra @ (rb @ g.v + b_v))
    q_part = -(h @ sd.k.bracket(a_k, b_k))
    closed = q_part + z_part
    return SplittingResult(pull, closed, q_part, z_part, abs(float(pull - closed)))


@dataclass(frozen=True)
class SampledResult:
    residual: float
    samples: int
    holds: bool
    precondition: bool = True


def varisotropy_check(
    sd: SemidirectProduct, n, rng: np.random.Generator, samples: int = 100, tol: float = 1e-9
) -> SampledResult:
    """At sampled orbit points ``(h, q)``, ``k.h - h`` lies in ``q (.) V`` for ``k`` in ``K_q``."""
    mv = point_vector(n)
    f, p = sd.split(mv)
    kp = stabilizer_p(sd, p)
    pre = kp.issubset(sd.k.isotropy(f))
    if samples <= 0 or kp.dim == 0:
        return SampledResult(0.0, 0, True, pre)
    dirs = sample_directions(kp.vectors(), rng, samples)
    worst = 0.0
    for a in dirs:
        g = random_element(sd, rng)
        m = coadjoint(sd, g.to_float(), mv.astype(float))
        h, q = sd.split(m)
        aq = g.ad @ a
        kq = exp_k(sd, aq)
        diff = act_kstar(kq, h) - h
        ts = tau_star(sd, q)
        sol, *_ = np.linalg.lstsq(ts, diff, rcond=None)
        worst = max(worst, float(np.linalg.norm(ts @ sol - diff)))
    return SampledResult(worst, len(dirs), worst < tol, pre)


def diagram_check(sd: SemidirectProduct, n, g: GroupElement) -> float:
    """Residual of ``i_q^*(g.n) = phi`` read in the transported basis ``Ad(k) k_p``."""
    mv = point_vector(n)
    little = little_data(sd, mv)
    y = coadjoint(sd, g, mv)
    yf, _ = sd.split(y)
    if little.kp.dim == 0:
        return 0.0
    basis = little.kp.matrix()
    vals = np.array([yf @ (g.ad @ b) for b in basis])
    return float(np.max(np.abs((vals - little.phi).astype(float))))


def section_pullback_check(sd: SemidirectProduct, n, g: GroupElement, a, b) -> float:
    """Residual between ``omega((A,0).o, (B,0).o)`` at ``o = (k,0).n`` and the KKS
    form of the ``K``-orbit of ``k.f`` on ``A.h, B.h``."""
    o = point_on_L(sd, n, g)
    h, _ = sd.split(o)
    pad = np.zeros(sd.nv) if not g.exact else zeros(sd.nv)
    lhs = kks_form(sd, o, sd.join(a, pad), sd.join(b, pad), formula="split")
    rhs = -(h @ sd.k.bracket(a, b))
    return abs(float(lhs - rhs))


def orbit_dim_numeric(sd: SemidirectProduct, m, tol: float = 1e-8) -> int:
    return rank(fundamental_matrix(sd, np.asarray(point_vector(m), dtype=float)), tol)
