"""Report checks for the command line.

A ``Session`` holds one input (a catalog fixture or an elaborated ``.lie``
document) together with the seed, tolerance and sample count.  Each method
returns ``Check`` records.  Exact verdicts and sampled verdicts are kept in
separate records; a sampled record carries the ``sampled-only`` flag and
reads ``not-evaluated`` when the sample count is zero.
"""

from __future__ import annotations

import hashlib
import zlib
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import catalog, specdsl
from .exactla import ComplexSubspace, annihilator
from .induction import (
    ConnectionSpec,
    connection_transfer,
    induced_orbit_theorem_check,
    induction_setup,
    symmetric_space_check,
    zero_level_set_check,
)
from .orbit import (
    PreconditionError,
    analyze_point,
    characteristic_distribution,
    foliation_leaf,
    little_data,
    splitting_check,
    tangent_L_N,
    varisotropy_check,
)
from .polarization import (
    pukanszky_bundle_check,
    reduction_theorem_check,
    semidirect_form,
    trivial_polarization,
)
from .report import Check, Verdict, combine
from .semidirect import SemidirectProduct, image_tau_star, random_element, stabilizer_p

CONNECTEDNESS = "connectedness"
SAMPLED = "sampled-only"
NON_EXHAUSTIVE = "non-exhaustive"


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    tol: float = 1e-9
    samples: int = 100

    def rng(self, name: str) -> np.random.Generator:
        """A generator that depends only on the seed and the check name."""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])


@dataclass(eq=False)
class Problem:
    """Named points and polarizations over semidirect products."""

    name: str
    digest: str
    points: dict[str, tuple[SemidirectProduct, np.ndarray]]
    polarizations: dict[str, tuple[str, ComplexSubspace]]
    expected: tuple[catalog.ExpectedRow, ...] = ()

    @classmethod
    def from_fixture(cls, name: str) -> "Problem":
        fx = catalog.build(name)
        points = {k: (fx.sd, v.vector()) for k, v in fx.points.items()}
        pols = {k: (v.point, v.h) for k, v in fx.polarizations.items()}
        digest = hashlib.sha256(f"fixture:{name}".encode()).hexdigest()
        return cls(name, digest, points, pols, fx.expected)

    @classmethod
    def from_text(cls, text: str, source: str) -> "Problem":
        el = specdsl.load(text, source)
        points = {k: (el.products[v.product], v.point.vector()) for k, v in el.points.items()}
        pols = {k: (v.point, v.h) for k, v in el.polarizations.items()}
        return cls(source, hashlib.sha256(text.encode()).hexdigest(), points, pols)


def load_problem(spec: str) -> Problem:
    """A fixture name or the path of a ``.lie`` file."""
    if spec in catalog.FIXTURE_NAMES and not Path(spec).exists():
        return Problem.from_fixture(spec)
    path = Path(spec)
    text = path.read_bytes().decode("utf-8")
    return Problem.from_text(text, path.name)


def _sampled(name: str, verdict: Verdict, residual: float, samples: int, values=None, citations=()) -> Check:
    return Check(name, verdict, dict(values or {}, samples=samples), {"max": residual}, list(citations), [SAMPLED])


@dataclass(eq=False)
class Session:
    problem: Problem
    settings: Settings = field(default_factory=Settings)

    def __post_init__(self):
        self._cache: dict = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # lookups

    def point(self, name: str) -> tuple[SemidirectProduct, np.ndarray]:
        if name not in self.problem.points:
            raise KeyError(f"unknown point {name!r}; available: {', '.join(sorted(self.problem.points)) or 'none'}")
        return self.problem.points[name]

    def polarization(self, name: str) -> tuple[SemidirectProduct, np.ndarray, ComplexSubspace]:
        if name not in self.problem.polarizations:
            raise KeyError(
                f"unknown polarization {name!r}; available: {', '.join(sorted(self.problem.polarizations)) or 'none'}"
            )
        point, h = self.problem.polarizations[name]
        sd, n = self.point(point)
        return sd, n, h

    def report(self, point: str):
        return self._memo(("report", point), lambda: analyze_point(*self.point(point)))

    def setup(self, point: str):
        return self._memo(("setup", point), lambda: induction_setup(*self.point(point)))

    def reduction(self, pol: str):
        def run():
            sd, n, h = self.polarization(pol)
            s = self.settings
            return reduction_theorem_check(sd, n, h, s.rng(f"reduction.{pol}"), s.samples, s.tol)

        return self._memo(("reduction", pol), run)

    def bundle(self, pol: str):
        def run():
            sd, n, h = self.polarization(pol)
            s = self.settings
            try:
                return pukanszky_bundle_check(sd, n, h, s.rng(f"bundle.{pol}"), s.samples, s.tol)
            except PreconditionError:
                return None

        return self._memo(("bundle", pol), run)

    def symmetric(self, pol: str):
        def run():
            sd, n, h = self.polarization(pol)
            p_alg = semidirect_form(sd, h).real_points()
            return symmetric_space_check(sd, n, p_alg), p_alg

        return self._memo(("symmetric", pol), run)

    # point checks

    def analyze(self, point: str) -> list[Check]:
        sd, n = self.point(point)
        r = self.report(point)
        f, p = sd.split(n)
        values = r.as_dict()
        values["characteristic_dim"] = characteristic_distribution(sd, n, require_precondition=False).dim
        values["leaf_dim"] = foliation_leaf(sd, n).dim
        orbit = Check(
            f"orbit.{point}",
            Verdict.of(r.exact_sequence_holds and r.dimension_formula_holds),
            values,
            citations=["dim g_n = dim ker tau_p^* + dim (k_p)_phi", "dim O = 2 dim K/K_p + dim O_little"],
            caveats=[CONNECTEDNESS],
        )
        rng_ok = annihilator(stabilizer_p(sd, p)) == image_tau_star(sd, p)
        range_tau = Check(
            f"range_of_tau.{point}",
            Verdict.of(rng_ok),
            {"dim_kp": r.dim_kp, "dim_im_tau_star": r.dim_im_tau_star},
            citations=["annihilator(ker tau_p) = im tau_p^*"],
        )
        t = tangent_L_N(sd, n)
        lag_ok = (
            r.N_isotropic
            and (r.N_lagrangian or not r.kp_in_kf)
            and r.N_lagrangian == r.f_vanishes_on_brackets_kp
            and r.L_lagrangian == r.f_vanishes_on_brackets_k
        )
        lagrangian = Check(
            f"lagrangian.{point}",
            Verdict.of(lag_ok),
            {
                "TN_dims": [t.TN.dim, t.TN_perp.dim],
                "TL_dims": [t.TL.dim, t.TL_perp.dim],
                "N_isotropic": r.N_isotropic,
                "N_lagrangian": r.N_lagrangian,
                "kp_in_kf": r.kp_in_kf,
                "L_lagrangian": r.L_lagrangian,
                "f_vanishes_on_brackets_k": r.f_vanishes_on_brackets_k,
                "f_vanishes_on_brackets_kp": r.f_vanishes_on_brackets_kp,
            },
            citations=[
                "T_nN is isotropic; Lagrangian when k_p lies in k_f, and exactly when f vanishes on [k_p, k_p]",
                "L is Lagrangian exactly when f vanishes on [k, k]",
            ],
        )
        return [orbit, range_tau, lagrangian, self._splitting(point), self._varisotropy(point)]

    def _splitting(self, point: str) -> Check:
        sd, n = self.point(point)
        s = self.settings
        name = f"splitting.{point}"
        if s.samples <= 0:
            return _sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0)
        rng = s.rng(name)
        nf = np.asarray(n, dtype=float)
        worst = 0.0
        for _ in range(s.samples):
            g = random_element(sd, rng)
            xi, eta = rng.standard_normal(sd.dim), rng.standard_normal(sd.dim)
            worst = max(worst, splitting_check(sd, nf, g, xi, eta).residual)
        return _sampled(name, Verdict.of(worst < s.tol), worst, s.samples, citations=["KKS form in split coordinates"])

    def _varisotropy(self, point: str) -> Check:
        sd, n = self.point(point)
        s = self.settings
        name = f"varisotropy.{point}"
        res = varisotropy_check(sd, n, s.rng(name), s.samples, s.tol)
        if not res.precondition:
            return Check(name, Verdict.NOT_APPLICABLE, {"precondition": False}, caveats=[SAMPLED])
        if s.samples <= 0:
            return _sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0)
        return _sampled(name, Verdict.of(res.holds), res.residual, res.samples, citations=["k.h - h lies in q (.) V"])

    # polarization checks

    def check_polarization(self, pol: str) -> list[Check]:
        red = self.reduction(pol)
        big = red.big
        exact_ok = (
            big.is_subalgebra
            and big.contains_isotropy
            and big.dimension_ok
            and big.isotropic
            and big.invariant_algebra
            and big.sum_subalgebra
        )
        values = {k: v for k, v in big.as_dict().items() if k not in ("invariant_sampled", "is_polarization")}
        values["reasons"] = list(big.reasons)
        values["dim_a"] = self._a(pol).dim
        out = [
            Check(f"polarization.{pol}", Verdict.of(exact_ok), values, caveats=[CONNECTEDNESS]),
            self._sampled_verdict(
                f"polarization.{pol}.invariance", big.invariant_sampled, big.invariant_residual,
                ["Ad(G_n) preserves h"],
            ),
        ]
        exact_agree = red.polarization_agree and red.odot_in_kp_annihilator and red.kp_annihilator_in_q_annihilator is not False
        if red.big_pukanszky is not None and red.little_pukanszky is not None:
            exact_agree = exact_agree and red.big_pukanszky.infinitesimal == red.little_pukanszky.infinitesimal
        elif (red.big_pukanszky is None) != (red.little_pukanszky is None):
            exact_agree = False
        rv = red.as_dict()
        for k in ("big_pukanszky", "little_pukanszky", "sampled_equivalence", "consistent"):
            rv.pop(k)
        out.append(Check(f"reduction.{pol}", Verdict.of(exact_agree), rv, citations=["verdicts on g and on k_p agree"]))
        sampled = red.sampled_equivalence
        if red.big_pukanszky is not None and red.little_pukanszky is not None and self.settings.samples > 0:
            agree = red.big_pukanszky.sampled == red.little_pukanszky.sampled
            sampled = combine(sampled, Verdict.of(agree)) if sampled != Verdict.NOT_EVALUATED else Verdict.of(agree)
        out.append(
            self._sampled_verdict(f"reduction.{pol}.sampled", sampled, red.sampled_equivalence_residual, ["sampled restriction equivalence"])
        )
        return out

    def _a(self, pol: str) -> ComplexSubspace:
        sd, _, h = self.polarization(pol)
        return semidirect_form(sd, h)

    def _sampled_verdict(self, name: str, verdict: Verdict, residual: float, citations) -> Check:
        s = self.settings
        if s.samples <= 0:
            return _sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0)
        return _sampled(name, verdict, residual, s.samples, citations=citations)

    def check_pukanszky(self, pol: str) -> list[Check]:
        red = self.reduction(pol)
        puk = red.big_pukanszky
        if puk is None:
            na = Verdict.NOT_APPLICABLE
            reasons = {"reasons": list(red.big.reasons)}
            return [
                Check(f"pukanszky.{pol}", na, reasons),
                Check(f"pukanszky.{pol}.sampled", na, {}, caveats=[SAMPLED]),
            ]
        values = {k: v for k, v in puk.as_dict().items() if k not in ("sampled", "sampled_span", "holds")}
        out = [
            Check(f"pukanszky.{pol}", Verdict.of(puk.infinitesimal), values, citations=["d.n = e°"], caveats=[CONNECTEDNESS]),
            self._sampled_verdict(f"pukanszky.{pol}.sampled", puk.sampled, puk.sampled_residual, ["D.n - n spans e°"]),
        ]
        if out[1].verdict != Verdict.NOT_EVALUATED:
            out[1].values["sampled_span"] = puk.sampled_span
        b = self.bundle(pol)
        if b is None:
            out.append(Check(f"bundle.{pol}", Verdict.NOT_APPLICABLE, {}))
            out.append(Check(f"bundle.{pol}.sampled", Verdict.NOT_APPLICABLE, {}, caveats=[SAMPLED]))
            return out
        exact_ok = (
            b.dim_F == b.orbit_dim
            and b.dim_Fp == b.little_orbit_dim
            and b.base_cotangent_dim + b.fibre_E_over_D == b.orbit_dim
            and b.fibre_projection_exact
        )
        bv = {k: v for k, v in b.as_dict().items() if k not in ("fibre_projection_sampled", "consistent")}
        out.append(Check(f"bundle.{pol}", Verdict.of(exact_ok), bv, citations=["dim F = dim O"]))
        out.append(
            self._sampled_verdict(f"bundle.{pol}.sampled", b.fibre_projection_sampled, b.fibre_projection_residual, ["fibre projection"])
        )
        return out

    # induction

    def induce(self, point: str) -> list[Check]:
        s = self.settings
        st = self.setup(point)
        r = self.report(point)
        dims = {"dim_M": st.dim_M, "dim_G_over_H": st.dim_G_over_H, "orbit_dim": r.orbit_dim, "h_is_subalgebra": st.h_is_subalgebra}
        ok = st.h_is_subalgebra and r.orbit_dim == st.dim_M + 2 * st.dim_G_over_H
        out = [Check(f"induction.{point}.dimension", Verdict.of(ok), dims, citations=["dim O = dim M + 2 dim G/H"])]
        name = f"induction.{point}.zero_level"
        z = zero_level_set_check(st, s.rng(name), s.samples, s.tol)
        zv = {k: v for k, v in z.as_dict().items() if k not in ("verdict", "positive_residual", "negative_min")}
        if s.samples <= 0:
            out.append(_sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0))
        else:
            c = _sampled(name, z.verdict, z.positive_residual, s.samples, zv, ["J = mu - i_h^* z vanishes on the zero set"])
            c.residuals["negative_min"] = z.negative_min
            out.append(c)
        name = f"induction.{point}.induced_orbit"
        if s.samples <= 0:
            out.append(_sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0))
        else:
            io = induced_orbit_theorem_check(st, s.rng(name), s.samples, s.tol)
            c = _sampled(
                name, io.verdict, io.form_residual, s.samples,
                {"representative_orbit_dims_ok": io.representative_orbit_dims_ok},
                ["induced form equals the KKS form"],
            )
            c.residuals = {"form": io.form_residual, "representative": io.representative_residual}
            c.caveats.append(CONNECTEDNESS)
            out.append(c)
        for pol in sorted(p for p, (pt, _) in self.problem.polarizations.items() if pt == point):
            out += self.connection(pol)
        return out

    def connection(self, pol: str) -> list[Check]:
        sd, _, _ = self.polarization(pol)
        sv, p_alg = self.symmetric(pol)
        caveats = [NON_EXHAUSTIVE] if sv.caveats else []
        values = sv.as_dict()
        values["dim_p"] = p_alg.dim
        # a failed decomposition leaves the canonical connection undefined rather than wrong
        sym = Check(
            f"symmetric_space.{pol}",
            Verdict.HOLDS if sv.holds else Verdict.NOT_APPLICABLE,
            values,
            citations=["[p, m] in m, [m, m] in p; [k_p, n] in n, [n, n] in k_p"],
            caveats=caveats,
        )
        name = f"connection.{pol}"
        if not sv.holds:
            return [sym, Check(name, Verdict.NOT_APPLICABLE, {}, caveats=[SAMPLED])]
        if self.settings.samples <= 0:
            return [sym, _sampled(name, Verdict.NOT_EVALUATED, float("nan"), 0)]
        spec = ConnectionSpec(sd, p_alg, sv.n_sub)
        cv = connection_transfer(spec, self.settings.rng(name), self.settings.samples, self.settings.tol)
        verdict = combine(cv.reproduction, cv.equivariance, cv.round_trip, cv.horizontal)
        c = _sampled(name, verdict, cv.equivariance_residual, cv.samples, {"invariant_complement": cv.invariant_complement})
        c.residuals = {
            "reproduction": cv.reproduction_residual,
            "equivariance": cv.equivariance_residual,
            "round_trip": cv.round_trip_residual,
            "horizontal": cv.horizontal_residual,
        }
        c.citations = ["connection reproduces fundamental fields and is D-equivariant"]
        return [sym, c]

    # expected values

    @cached_property
    def _quantities(self) -> dict:
        return {
            "orbit_dim": lambda pt: self.report(pt).orbit_dim,
            "base_orbit_dim": lambda pt: self.report(pt).base_orbit_dim,
            "little_orbit_dim": lambda pt: self.report(pt).little_orbit_dim,
            "dim_kp": lambda pt: self.report(pt).dim_kp,
            "dim_kp_phi": lambda pt: self.report(pt).dim_kp_phi,
            "dim_gn": lambda pt: self.report(pt).dim_gn,
            "dim_ker_tau_star": lambda pt: self.report(pt).dim_ker_tau_star,
            "dim_im_tau_star": lambda pt: self.report(pt).dim_im_tau_star,
            "kp_in_kf": lambda pt: self.report(pt).kp_in_kf,
            "N_lagrangian": lambda pt: self.report(pt).N_lagrangian,
            "TN_dims": lambda pt: (lambda t: (t.TN.dim, t.TN_perp.dim))(tangent_L_N(*self.point(pt))),
            "characteristic_dim": lambda pt: characteristic_distribution(*self.point(pt), require_precondition=False).dim,
            "leaf_dim": lambda pt: foliation_leaf(*self.point(pt)).dim,
            "induced_dimension": lambda pt: (self.setup(pt).dim_M, self.setup(pt).dim_G_over_H, self.report(pt).orbit_dim),
            "kp_is_rotations": self._kp_is_rotations,
            "trivial_polarization_refused": self._trivial_refused,
            "is_polarization": lambda pol: self.reduction(pol).big.is_polarization,
            "dim_a": lambda pol: self._a(pol).dim,
            "pukanszky": lambda pol: (
                None if self.reduction(pol).big_pukanszky is None else self.reduction(pol).big_pukanszky.holds.value
            ),
            "bundle_dim": lambda pol: None if self.bundle(pol) is None else self.bundle(pol).dim_F,
            "reduced_e_annihilator_dim": lambda pol: None if self.bundle(pol) is None else self.bundle(pol).dim_q_annihilator_reduced,
            "bundle_split": lambda pol: (
                None if self.bundle(pol) is None else (self.bundle(pol).base_cotangent_dim, self.bundle(pol).fibre_E_over_D)
            ),
            "symmetric_space": lambda pol: self.symmetric(pol)[0].holds,
        }

    def _kp_is_rotations(self, point: str) -> bool:
        """``k_p`` is three-dimensional with negative definite Killing form, so it is ``so(3)``."""
        alg = little_data(*self.point(point)).algebra
        if alg.dim != 3:
            return False
        k = np.asarray(alg.killing_form(), dtype=float)
        return bool(np.all(np.linalg.eigvalsh(k) < 0))

    def _trivial_refused(self, point: str) -> bool:
        try:
            trivial_polarization(*self.point(point))
        except PreconditionError:
            return True
        return False

    def quantity(self, subject: str, quantity: str):
        if quantity not in self._quantities:
            raise KeyError(f"unknown quantity {quantity!r}")
        return self._quantities[quantity](subject)

    def expected(self) -> list[Check]:
        out = []
        for row in self.problem.expected:
            computed = self.quantity(row.subject, row.quantity)
            expected = list(row.value) if isinstance(row.value, tuple) else row.value
            computed = list(computed) if isinstance(computed, tuple) else computed
            out.append(
                Check(
                    f"expected.{row.subject}.{row.quantity}",
                    Verdict.of(computed == expected),
                    {"expected": expected, "computed": computed, "origin": row.origin},
                    citations=[row.citation],
                )
            )
        return out

    # whole-input runs

    def everything(self) -> list[Check]:
        out = self.expected()
        for point in sorted(self.problem.points):
            out += self.analyze(point)
            out += self.induce(point)
        for pol in sorted(self.problem.polarizations):
            out += self.check_polarization(pol)
            out += self.check_pukanszky(pol)
        return out


def sort_checks(checks: list[Check]) -> list[Check]:
    return sorted(checks, key=lambda c: c.name)


def overall(checks: list[Check]) -> Verdict:
    return combine(*(c.verdict for c in checks)) if checks else Verdict.NOT_APPLICABLE

