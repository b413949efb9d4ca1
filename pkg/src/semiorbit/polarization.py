"""Polarizations of a covector, Pukanszky's condition, and the reduction of
polarizations of the form ``h = a + V^C`` to the stabilizer ``k_p``.

The axioms are decided exactly at Lie-algebra level.  Group-level statements
(invariance under the isotropy group, the ``D``-orbit of ``n``) are in addition
sampled with floating point exponentials; a sampled verdict is ``not-evaluated``
when no samples are requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactla import ComplexSubspace, Subspace, annihilator, to_float, zeros
from .lie_core import LieAlgebra
from .orbit import (
    CONNECTEDNESS_CAVEAT,
    LittleData,
    PreconditionError,
    little_data,
    symplectic_orthogonal,
)
from .report import Verdict
from .semidirect import SemidirectProduct, exp_in, expm, image_tau_star, point_vector, sample_directions


class NotSemidirectForm(ValueError):
    """``V^C`` is not contained in the candidate subalgebra."""


# ---------------------------------------------------------------------------
# generic axioms


def _complex_bracket_closed(alg: LieAlgebra, a: ComplexSubspace, b: ComplexSubspace, target: ComplexSubspace) -> bool:
    return all(target.contains(alg.bracket(x, y)) for x in a.vectors() for y in b.vectors())


@dataclass
class PolarizationVerdict:
    is_subalgebra: bool
    contains_isotropy: bool
    dimension_ok: bool
    isotropic: bool
    invariant_algebra: bool
    invariant_sampled: Verdict
    invariant_residual: float
    sum_subalgebra: bool
    d: Subspace
    e: Subspace
    d_perp_equals_e: bool
    dim_h: int
    dim_isotropy: int
    reasons: list[str] = field(default_factory=list)
    caveats: list[str] = field(default_factory=lambda: [CONNECTEDNESS_CAVEAT])

    @property
    def is_polarization(self) -> bool:
        return (
            self.is_subalgebra
            and self.contains_isotropy
            and self.dimension_ok
            and self.isotropic
            and self.invariant_algebra
            and self.sum_subalgebra
            and self.invariant_sampled != Verdict.FAILS
        )

    def as_dict(self) -> dict:
        return {
            "is_subalgebra": self.is_subalgebra,
            "contains_isotropy": self.contains_isotropy,
            "dimension_ok": self.dimension_ok,
            "isotropic": self.isotropic,
            "invariant_algebra": self.invariant_algebra,
            "invariant_sampled": self.invariant_sampled,
            "sum_subalgebra": self.sum_subalgebra,
            "d_perp_equals_e": self.d_perp_equals_e,
            "dim_h": self.dim_h,
            "dim_isotropy": self.dim_isotropy,
            "dim_d": self.d.dim,
            "dim_e": self.e.dim,
            "is_polarization": self.is_polarization,
        }


def _not_polarization(alg: LieAlgebra, reason: str) -> PolarizationVerdict:
    z = Subspace.zero(alg.dim)
    return PolarizationVerdict(False, False, False, False, False, Verdict.NOT_APPLICABLE, 0.0, False, z, z, False, 0, 0, [reason])


def _membership_residual(h: ComplexSubspace, vectors: np.ndarray) -> float:
    ann = h.annihilator()
    if ann.dim == 0 or len(vectors) == 0:
        return 0.0
    return float(np.max(np.abs(ann.to_numpy() @ vectors.T)))


def polarization_axioms(
    alg: LieAlgebra,
    n,
    h: ComplexSubspace,
    rng: np.random.Generator | None = None,
    samples: int = 0,
    tol: float = 1e-9,
) -> PolarizationVerdict:
    """Decide the polarization axioms for ``h`` in ``alg^C`` at the covector ``n``."""
    if h.ambient_dim != alg.dim:
        raise ValueError(f"candidate lives in dimension {h.ambient_dim}, algebra has dimension {alg.dim}")
    n = np.asarray(n)
    gn = alg.isotropy(n)
    gn_c = ComplexSubspace.complexify(gn)
    reasons = []
    is_sub = _complex_bracket_closed(alg, h, h, h)
    contains = gn_c.issubset(h)
    dim_ok = 2 * h.dim == alg.dim + gn.dim
    isotropic = all(n @ alg.bracket(x, y) == 0 for x in h.vectors() for y in h.vectors())
    inv_alg = _complex_bracket_closed(alg, gn_c, h, h)
    s = h + h.conjugate()
    sum_sub = _complex_bracket_closed(alg, s, s, s)
    for ok, msg in [
        (is_sub, "not closed under the bracket"),
        (contains, "does not contain the complexified isotropy algebra"),
        (dim_ok, f"complex dimension {h.dim} differs from (dim g + dim g_n)/2 = {(alg.dim + gn.dim) / 2}"),
        (isotropic, "n does not vanish on brackets of the candidate"),
        (inv_alg, "not invariant under the isotropy algebra"),
        (sum_sub, "h + conj(h) is not a subalgebra"),
    ]:
        if not ok:
            reasons.append(msg)
    d = h.real_points()
    e = h.real_span()
    d_perp = symplectic_orthogonal(alg, n, d)
    if samples > 0 and rng is not None:
        dirs = sample_directions(gn.vectors(), rng, samples)
        hb = h.to_numpy()
        worst = 0.0
        for x in dirs:
            ad = exp_in(alg, x)
            worst = max(worst, _membership_residual(h, (ad @ hb.T).T))
        inv_sampled = Verdict.of(worst < tol) if dirs else Verdict.HOLDS
        residual = worst
    else:
        inv_sampled = Verdict.NOT_EVALUATED
        residual = float("nan")
    return PolarizationVerdict(
        is_sub, contains, dim_ok, isotropic, inv_alg, inv_sampled, residual, sum_sub,
        d, e, d_perp == e, h.dim, gn.dim, reasons,
    )


def check_polarization(
    sd: SemidirectProduct, n, h: ComplexSubspace, rng=None, samples: int = 0, tol: float = 1e-9
) -> PolarizationVerdict:
    return polarization_axioms(sd.g, point_vector(n), h, rng, samples, tol)


# ---------------------------------------------------------------------------
# Pukanszky's condition


@dataclass
class PukanszkyVerdict:
    infinitesimal: bool
    sampled: Verdict
    sampled_residual: float
    sampled_span: int | None
    dim_d: int
    dim_e: int
    dim_e_annihilator: int
    closedness: Verdict = Verdict.NOT_EVALUATED
    caveats: list[str] = field(default_factory=lambda: [CONNECTEDNESS_CAVEAT])

    @property
    def holds(self) -> Verdict:
        if not self.infinitesimal or self.sampled == Verdict.FAILS:
            return Verdict.FAILS
        return Verdict.HOLDS

    def as_dict(self) -> dict:
        return {
            "infinitesimal": self.infinitesimal,
            "sampled": self.sampled,
            "sampled_span": self.sampled_span,
            "dim_d": self.dim_d,
            "dim_e": self.dim_e,
            "dim_e_annihilator": self.dim_e_annihilator,
            "closedness": self.closedness,
            "holds": self.holds,
        }


def coadjoint_orbit_tangent(alg: LieAlgebra, n, s: Subspace) -> Subspace:
    """``{x.n : x in s}`` with ``(x.n)(y) = -n([x, y])``."""
    n = np.asarray(n)
    return Subspace.span([alg.coad(x) @ n for x in s.vectors()], alg.dim)


def _group_product_ad_inverse(alg: LieAlgebra, basis: list[np.ndarray], ts: np.ndarray) -> np.ndarray:
    """``Ad(d^-1)`` for ``d = exp(t_1 X_1) ... exp(t_r X_r)``."""
    out = np.eye(alg.dim)
    ads = alg.ad_basis.astype(float)
    for x, t in zip(basis, ts):
        ad_x = np.tensordot(np.asarray(x, dtype=float), ads, axes=(0, 0))
        out = expm(-t * ad_x) @ out
    return out


def pukanszky_generic(
    alg: LieAlgebra,
    n,
    h: ComplexSubspace,
    rng: np.random.Generator | None = None,
    samples: int = 0,
    tol: float = 1e-9,
    verdict: PolarizationVerdict | None = None,
) -> PukanszkyVerdict:
    """Infinitesimal certificate ``d.n = e°`` and sampled ``D.n - n`` inside ``e°``."""
    n = np.asarray(n)
    verdict = verdict or polarization_axioms(alg, n, h)
    if not verdict.is_polarization:
        raise PreconditionError("candidate is not a polarization: " + "; ".join(verdict.reasons))
    d, e = verdict.d, verdict.e
    e_ann = annihilator(e)
    infinitesimal = coadjoint_orbit_tangent(alg, n, d) == e_ann
    if samples > 0 and rng is not None:
        basis = d.vectors()
        nf = to_float(n).astype(float)
        em = to_float(e.matrix()).astype(float).reshape(e.dim, alg.dim)
        diffs = []
        worst = 0.0
        for _ in range(samples):
            ts = rng.standard_normal(len(basis))
            dn = _group_product_ad_inverse(alg, basis, ts).T @ nf
            diff = dn - nf
            diffs.append(diff)
            if e.dim:
                worst = max(worst, float(np.max(np.abs(em @ diff))))
        span = int(np.linalg.matrix_rank(np.array(diffs), tol=1e-7)) if diffs else 0
        sampled = Verdict.of(worst < tol and span == e_ann.dim)
    else:
        worst, span, sampled = float("nan"), None, Verdict.NOT_EVALUATED
    return PukanszkyVerdict(infinitesimal, sampled, worst, span, d.dim, e.dim, e_ann.dim)


def pukanszky_check(
    sd: SemidirectProduct, n, h: ComplexSubspace, rng=None, samples: int = 0, tol: float = 1e-9
) -> PukanszkyVerdict:
    return pukanszky_generic(sd.g, point_vector(n), h, rng, samples, tol)


# ---------------------------------------------------------------------------
# semidirect form and reduction to k_p


def semidirect_form(sd: SemidirectProduct, h: ComplexSubspace) -> ComplexSubspace:
    """The subspace ``a`` of ``k^C`` with ``h = a + V^C``."""
    v_c = ComplexSubspace.complexify(sd.v_subspace)
    if h.ambient_dim != sd.dim:
        raise ValueError("candidate has the wrong ambient dimension")
    if not v_c.issubset(h):
        raise NotSemidirectForm("V^C is not contained in the candidate")
    return ComplexSubspace.span([x[: sd.nk] for x in h.vectors()], sd.nk)


def from_semidirect_form(sd: SemidirectProduct, a: ComplexSubspace) -> ComplexSubspace:
    pad = zeros(sd.nv)
    vecs = [np.concatenate([x, pad]) for x in a.vectors()]
    vecs += ComplexSubspace.complexify(sd.v_subspace).vectors()
    return ComplexSubspace.span(vecs, sd.dim)


def localize(little: LittleData, a: ComplexSubspace) -> ComplexSubspace | None:
    """``a`` in the canonical basis of ``k_p``, or ``None`` if ``a`` is not inside ``k_p^C``."""
    kp = little.kp
    coords = []
    for x in a.vectors():
        c = np.array([x[p] for p in kp.pivots], dtype=object)
        if kp.dim:
            residual = x - c @ kp.matrix()
        else:
            residual = x
        if any(r != 0 for r in residual):
            return None
        coords.append(c)
    return ComplexSubspace.span(coords, kp.dim)


def globalize(little: LittleData, a_local: ComplexSubspace) -> ComplexSubspace:
    m = little.kp.matrix()
    return ComplexSubspace.span([c @ m for c in a_local.vectors()], little.kp.ambient_dim)


@dataclass
class ReductionVerdict:
    big: PolarizationVerdict
    little: PolarizationVerdict
    polarization_agree: bool
    big_pukanszky: PukanszkyVerdict | None
    little_pukanszky: PukanszkyVerdict | None
    pukanszky_agree: bool
    odot_in_kp_annihilator: bool
    kp_annihilator_in_q_annihilator: bool | None
    sampled_equivalence: Verdict
    sampled_equivalence_residual: float
    dimension_equation: bool

    @property
    def consistent(self) -> bool:
        return (
            self.polarization_agree
            and self.pukanszky_agree
            and self.odot_in_kp_annihilator
            and self.kp_annihilator_in_q_annihilator is not False
            and self.sampled_equivalence != Verdict.FAILS
        )

    def as_dict(self) -> dict:
        return {
            "big_is_polarization": self.big.is_polarization,
            "little_is_polarization": self.little.is_polarization,
            "polarization_agree": self.polarization_agree,
            "big_pukanszky": None if self.big_pukanszky is None else self.big_pukanszky.holds,
            "little_pukanszky": None if self.little_pukanszky is None else self.little_pukanszky.holds,
            "pukanszky_agree": self.pukanszky_agree,
            "odot_in_kp_annihilator": self.odot_in_kp_annihilator,
            "kp_annihilator_in_q_annihilator": self.kp_annihilator_in_q_annihilator,
            "sampled_equivalence": self.sampled_equivalence,
            "dimension_equation": self.dimension_equation,
            "consistent": self.consistent,
        }


def little_polarization_check(
    sd: SemidirectProduct, n, a: ComplexSubspace, rng=None, samples: int = 0, tol: float = 1e-9
) -> tuple[PolarizationVerdict, LittleData, ComplexSubspace | None]:
    """Polarization axioms for ``a`` on ``k_p^C`` at ``phi``."""
    little = little_data(sd, n)
    a_local = localize(little, a)
    if a_local is None:
        return _not_polarization(little.algebra, "not contained in the complexified stabilizer of p"), little, None
    return polarization_axioms(little.algebra, little.phi, a_local, rng, samples, tol), little, a_local


def reduction_theorem_check(
    sd: SemidirectProduct,
    n,
    h: ComplexSubspace,
    rng: np.random.Generator | None = None,
    samples: int = 0,
    tol: float = 1e-9,
) -> ReductionVerdict:
    """Compare polarization and Pukanszky verdicts for ``h`` on ``g`` and for ``a`` on ``k_p``."""
    nv = point_vector(n)
    f, p = sd.split(nv)
    a = semidirect_form(sd, h)
    big = check_polarization(sd, nv, h, rng, samples, tol)
    small, little, a_local = little_polarization_check(sd, nv, a, rng, samples, tol)
    dim_eq = 2 * a.dim == little.kp.dim + little.kp_phi.dim
    big_p = small_p = None
    if big.is_polarization:
        big_p = pukanszky_generic(sd.g, nv, h, rng, samples, tol, big)
    if small.is_polarization and a_local is not None:
        small_p = pukanszky_generic(little.algebra, little.phi, a_local, rng, samples, tol, small)
    if big_p is None or small_p is None:
        puk_agree = big_p is None and small_p is None
    else:
        puk_agree = big_p.holds == small_p.holds and big_p.infinitesimal == small_p.infinitesimal
    # intermediate facts behind the equivalence
    kp_ann = annihilator(little.kp)
    odot_ok = image_tau_star(sd, p).issubset(kp_ann)
    q_in = None
    sampled = Verdict.NOT_EVALUATED
    resid = float("nan")
    if a_local is not None:
        q_alg = (a + a.conjugate()).real_points()
        q_in = kp_ann.issubset(annihilator(q_alg))
        if samples > 0 and rng is not None and little.kp.dim:
            sampled, resid = _sampled_restriction_equivalence(sd, little, f, q_alg, rng, samples, tol)
    return ReductionVerdict(
        big, small, big.is_polarization == small.is_polarization, big_p, small_p, puk_agree,
        odot_ok, q_in, sampled, resid, dim_eq,
    )


def _sampled_restriction_equivalence(
    sd: SemidirectProduct, little: LittleData, f, q_alg: Subspace, rng, samples: int, tol: float
) -> tuple[Verdict, float]:
    """For sampled ``l`` in ``K_p``: ``l.f - f`` in ``q°`` iff ``l.phi - phi`` in ``i_p^* q°``."""
    ff = to_float(f).astype(float)
    phi = to_float(little.phi).astype(float)
    qm = to_float(q_alg.matrix()).astype(float).reshape(q_alg.dim, sd.nk)
    q_local = Subspace.span([little.to_local(x) for x in q_alg.vectors()], little.kp.dim)
    qlm = to_float(q_local.matrix()).astype(float).reshape(q_local.dim, little.kp.dim)
    kpm = to_float(little.kp.matrix()).astype(float).reshape(little.kp.dim, sd.nk)
    agree = True
    worst = 0.0
    for x in sample_directions(little.kp_phi_local.vectors() + Subspace.full(little.kp.dim).vectors(), rng, samples):
        big_ad = exp_in(sd.k, x @ kpm)
        small_ad = exp_in(little.algebra, x)
        # (l.f)(B) = f(Ad(l^-1) B)
        lf = np.linalg.inv(big_ad).T @ ff
        lphi = np.linalg.inv(small_ad).T @ phi
        big_vals = qm @ (lf - ff) if q_alg.dim else np.zeros(0)
        small_vals = qlm @ (lphi - phi) if q_local.dim else np.zeros(0)
        in_big = bool(np.all(np.abs(big_vals) < tol))
        in_small = bool(np.all(np.abs(small_vals) < tol))
        agree &= in_big == in_small
        if q_alg.dim:
            # both evaluate l.f - f on the same vectors of q, through two different routes
            lifted = to_float(q_local.matrix()).astype(float).reshape(q_local.dim, little.kp.dim) @ kpm
            worst = max(worst, float(np.max(np.abs(lifted @ (lf - ff) - small_vals))))
    return Verdict.of(agree and worst < max(tol, 1e-8)), worst


def trivial_polarization(sd: SemidirectProduct, n) -> ComplexSubspace:
    """``h = k_p^C + V^C``, available when ``f`` vanishes on ``[k_p, k_p]``."""
    nv = point_vector(n)
    f, _ = sd.split(nv)
    little = little_data(sd, nv)
    basis = little.kp.vectors()
    bad = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if i < j:
                val = f @ sd.k.bracket(x, y)
                if val != 0:
                    bad.append((i, j, val))
    if bad:
        pairs = ", ".join(f"f([b{i + 1}, b{j + 1}]) = {v}" for i, j, v in bad)
        raise PreconditionError(f"f does not vanish on [k_p, k_p]: {pairs} (b_i: canonical basis of k_p)")
    return from_semidirect_form(sd, ComplexSubspace.complexify(little.kp))


# ---------------------------------------------------------------------------
# dimension bookkeeping for the Pukanszky subbundle


@dataclass
class BundleReport:
    dim_G_over_D: int
    dim_e_annihilator: int
    dim_F: int
    orbit_dim: int
    dim_Kp_over_P: int
    dim_q_annihilator_reduced: int
    dim_Fp: int
    little_orbit_dim: int
    base_cotangent_dim: int
    fibre_E_over_D: int
    fibre_projection_exact: bool
    fibre_projection_sampled: Verdict
    fibre_projection_residual: float

    @property
    def consistent(self) -> bool:
        return (
            self.dim_F == self.orbit_dim
            and self.dim_Fp == self.little_orbit_dim
            and self.base_cotangent_dim + self.fibre_E_over_D == self.orbit_dim
            and self.fibre_projection_exact
            and self.fibre_projection_sampled != Verdict.FAILS
        )

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "fibre_projection_residual"}
        out["consistent"] = self.consistent
        return out


def pukanszky_bundle_check(
    sd: SemidirectProduct, n, h: ComplexSubspace, rng=None, samples: int = 0, tol: float = 1e-9
) -> BundleReport:
    nv = point_vector(n)
    puk = pukanszky_check(sd, nv, h)
    if puk.holds != Verdict.HOLDS:
        raise PreconditionError("Pukanszky's condition does not hold for this polarization")
    verdict = check_polarization(sd, nv, h)
    little = little_data(sd, nv)
    a = semidirect_form(sd, h)
    p_alg = a.real_points()
    q_alg = (a + a.conjugate()).real_points()
    gn = sd.g.isotropy(nv)
    orbit_dim = sd.dim - gn.dim
    kp = little.kp
    # restriction i_p^*: k* -> k_p* is the matrix of the canonical basis of k_p
    restrict = kp.matrix()
    q_ann = annihilator(q_alg)
    image_q_ann = Subspace.span([restrict @ x for x in q_ann.vectors()], kp.dim)
    q_local = Subspace.span([little.to_local(x) for x in q_alg.vectors()], kp.dim)
    exact_ok = image_q_ann == annihilator(q_local)
    if samples > 0 and rng is not None and kp.dim and q_ann.dim:
        rf = to_float(restrict).astype(float).reshape(kp.dim, sd.nk)
        qa = to_float(q_ann.matrix()).astype(float).reshape(q_ann.dim, sd.nk)
        worst = 0.0
        for x in sample_directions(Subspace.full(kp.dim).vectors(), rng, samples):
            big_ad_inv = np.linalg.inv(exp_in(sd.k, x @ rf))
            small_ad_inv = np.linalg.inv(exp_in(little.algebra, x))
            for psi in qa:
                worst = max(worst, float(np.max(np.abs(rf @ (big_ad_inv.T @ psi) - small_ad_inv.T @ (rf @ psi)))))
        sampled, resid = Verdict.of(worst < tol), worst
    elif samples > 0 and rng is not None:
        sampled, resid = Verdict.HOLDS, 0.0
    else:
        sampled, resid = Verdict.NOT_EVALUATED, float("nan")
    d, e = verdict.d, verdict.e
    return BundleReport(
        dim_G_over_D=sd.dim - d.dim,
        dim_e_annihilator=sd.dim - e.dim,
        dim_F=(sd.dim - d.dim) + (sd.dim - e.dim),
        orbit_dim=orbit_dim,
        dim_Kp_over_P=kp.dim - p_alg.dim,
        dim_q_annihilator_reduced=kp.dim - q_alg.dim,
        dim_Fp=(kp.dim - p_alg.dim) + (kp.dim - q_alg.dim),
        little_orbit_dim=kp.dim - little.kp_phi.dim,
        base_cotangent_dim=2 * (sd.dim - e.dim),
        fibre_E_over_D=e.dim - d.dim,
        fibre_projection_exact=exact_ok,
        fibre_projection_sampled=sampled,
        fibre_projection_residual=resid,
    )
