"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import io
import json
import sys
from functools import lru_cache

import numpy as np
import pytest

from semiorbit import catalog, specdsl
from semiorbit.cli import run
from semiorbit.exactla import ComplexSubspace, I, Subspace, annihilator, to_exact
from semiorbit.induction import (
    ConnectionSpec,
    connection_transfer,
    induced_orbit_theorem_check,
    induction_setup,
    symmetric_space_check,
    zero_level_set_check,
)
from semiorbit.orbit import analyze_point, splitting_check
from semiorbit.polarization import (
    check_polarization,
    from_semidirect_form,
    pukanszky_check,
    reduction_theorem_check,
)
from semiorbit.report import Verdict
from semiorbit.semidirect import CovectorPoint, image_tau_star, random_element, stabilizer_p

TOL = 1e-9
SEEDED = 100
RESULTS: dict[int, tuple[bool, str]] = {}

FIXTURES = {name: catalog.build(name) for name in catalog.FIXTURE_NAMES}


def _seeded_points(name: str, seed: int = 2024):
    """Sparse small-integer points, so degenerate cases (p = 0, f parallel to p, ...) occur."""
    sd = FIXTURES[name].sd
    rng = np.random.default_rng([seed, len(name)])
    out = []
    for _ in range(SEEDED):
        f = rng.integers(-3, 4, sd.nk) * (rng.random(sd.nk) < 0.6)
        p = rng.integers(-3, 4, sd.nv) * (rng.random(sd.nv) < 0.6)
        out.append(CovectorPoint(to_exact(f), to_exact(p)))
    return out


@lru_cache(maxsize=None)
def _reports(name: str):
    sd = FIXTURES[name].sd
    return [(n, analyze_point(sd, n)) for n in _seeded_points(name)]


def _fixture_points():
    for name, fx in FIXTURES.items():
        for point, n in fx.points.items():
            yield name, point, fx.sd, n


# ---------------------------------------------------------------------------


def criterion_1():
    want = {
        ("se3", "spin"): dict(orbit_dim=4, base_orbit_dim=2, little_orbit_dim=0),
        ("galilei", "massless_spin"): dict(orbit_dim=6, base_orbit_dim=3),
        ("galilei", "at_infinity"): dict(orbit_dim=8, dim_gn=2, little_orbit_dim=2),
        ("bargmann", "massive_spin"): dict(orbit_dim=8, little_orbit_dim=2),
    }
    bad = []
    for (name, point), dims in want.items():
        r = analyze_point(FIXTURES[name].sd, FIXTURES[name].points[point])
        bad += [f"{name}.{point}.{k}={getattr(r, k)}" for k, v in dims.items() if getattr(r, k) != v]
    sd = FIXTURES["bargmann"].sd
    r = analyze_point(sd, FIXTURES["bargmann"].points["massive_spin"])
    rotations = Subspace.span(np.eye(sd.nk, dtype=int)[:3].astype(object), sd.nk)
    killing = sd.k.subalgebra(r.kp).killing_form().astype(float)
    is_so3 = r.kp == rotations and bool(np.all(np.linalg.eigvalsh(killing) < 0))
    if not is_so3:
        bad.append("bargmann k_p is not so(3)")
    return not bad, "4 fixture points, exact" if not bad else ", ".join(bad)


def criterion_2():
    count = 0
    for name in FIXTURES:
        sd = FIXTURES[name].sd
        for n in _seeded_points(name):
            if annihilator(stabilizer_p(sd, n.p)) != image_tau_star(sd, n.p):
                return False, f"{name}: fails at p = {list(n.p)}"
            count += 1
    return True, f"{count} seeded p, exact"


def criterion_3():
    count = 0
    for name in FIXTURES:
        for n, r in _reports(name):
            if not r.exact_sequence_holds:
                return False, f"{name}: exact sequence law fails at {list(n.vector())}"
            if r.orbit_dim != r.little_orbit_dim + 2 * r.base_orbit_dim:
                return False, f"{name}: induction law fails at {list(n.vector())}"
            count += 1
    return True, f"{count} seeded points, exact"


def criterion_4():
    # N: isotropic everywhere, Lagrangian whenever k_p lies in k_f
    implied = lagrangian = 0
    for name in FIXTURES:
        for n, r in _reports(name):
            if not r.N_isotropic:
                return False, f"{name}: T_nN not isotropic at {list(n.vector())}"
            if r.kp_in_kf:
                implied += 1
                if not r.N_lagrangian:
                    return False, f"{name}: k_p in k_f but N not Lagrangian at {list(n.vector())}"
            # the exact condition: f vanishes on [k_p, k_p], i.e. the little orbit is a point
            if r.N_lagrangian != r.f_vanishes_on_brackets_kp:
                return False, f"{name}: N Lagrangian != f([k_p, k_p]) = 0 at {list(n.vector())}"
            lagrangian += r.N_lagrangian
    if implied == 0:
        return False, "no seeded point had k_p in k_f"
    # L: constructed f on both sides of f([k, k]) = 0
    satisfying = violating = 0
    for name, fx in FIXTURES.items():
        sd = fx.sd
        rng = np.random.default_rng([7, len(name)])
        good_f = annihilator(sd.k.bracket_space(Subspace.full(sd.nk), Subspace.full(sd.nk)))
        for _ in range(10):
            p = to_exact(rng.integers(-3, 4, sd.nv))
            coeffs = rng.integers(-3, 4, good_f.dim)
            f_good = sum((int(c) * v for c, v in zip(coeffs, good_f.vectors())), to_exact(np.zeros(sd.nk, dtype=int)))
            f_bad = to_exact(rng.integers(-3, 4, sd.nk))
            if not any(sd.k.bracket(x, y) @ f_bad for x in np.eye(sd.nk, dtype=int) for y in np.eye(sd.nk, dtype=int)):
                f_bad[0] += 1
            r_good = analyze_point(sd, CovectorPoint(f_good, p))
            r_bad = analyze_point(sd, CovectorPoint(f_bad, p))
            if not (r_good.f_vanishes_on_brackets_k and r_good.L_lagrangian):
                return False, f"{name}: L not Lagrangian for f = {list(f_good)}"
            if r_bad.f_vanishes_on_brackets_k or r_bad.L_lagrangian:
                return False, f"{name}: L Lagrangian although f([k, k]) != 0, f = {list(f_bad)}"
            satisfying += 1
            violating += 1
    return True, (
        f"N isotropic on {3 * SEEDED} points, Lagrangian on {lagrangian} ({implied} with k_p in k_f); "
        f"L on {satisfying}+{violating} constructed f"
    )


def criterion_5():
    worst = 0.0
    for name, fx in FIXTURES.items():
        rng = np.random.default_rng([5, len(name)])
        for _ in range(SEEDED):
            point = list(fx.points)[int(rng.integers(len(fx.points)))]
            n = fx.points[point].vector().astype(float)
            g = random_element(fx.sd, rng)
            xi, eta = rng.standard_normal(fx.sd.dim), rng.standard_normal(fx.sd.dim)
            worst = max(worst, splitting_check(fx.sd, n, g, xi, eta).residual)
    return worst < TOL, f"max residual {worst:.1e} over {3 * SEEDED} samples"


POLARIZATIONS = [("se3", "trivial"), ("galilei", "trivial"), ("galilei", "boosts"), ("bargmann", "plus"), ("bargmann", "minus")]


def _pol(name, pol):
    fx = FIXTURES[name]
    pl = fx.polarizations[pol]
    return fx.sd, fx.points[pl.point], pl.h


def criterion_6():
    worst = 0.0
    for name, pol in POLARIZATIONS:
        sd, n, h = _pol(name, pol)
        rng = np.random.default_rng([6, len(name), len(pol)])
        v = check_polarization(sd, n, h, rng, 20, TOL)
        if not v.is_polarization:
            return False, f"{name}.{pol}: {'; '.join(v.reasons)}"
        pk = pukanszky_check(sd, n, h, rng, 30, TOL)
        if not pk.infinitesimal or pk.sampled != Verdict.HOLDS:
            return False, f"{name}.{pol}: Pukanszky fails"
        worst = max(worst, v.invariant_residual, pk.sampled_residual)
    sd, n, h = _pol("galilei", "boosts")
    little = reduction_theorem_check(sd, n, h, np.random.default_rng(61), 30, TOL).little_pukanszky
    if not (little.infinitesimal and little.dim_e_annihilator == 1 and little.sampled_span == 1):
        return False, "galilei.boosts: D.phi is not a line"
    worst = max(worst, little.sampled_residual)
    for pol in ("plus", "minus"):
        sd, n, h = _pol("bargmann", pol)
        red = reduction_theorem_check(sd, n, h)
        if red.little_pukanszky.dim_e_annihilator != 0 or h.conjugate() == h:
            return False, f"bargmann.{pol}: not a complex polarization with e° = 0"
    if worst >= TOL:
        return False, f"sampled residual {worst:.1e}"
    return True, f"5 polarizations; max sampled residual {worst:.1e}"


PERTURBED = [
    ("galilei", "boosts", [[0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 0]]),
    ("galilei", "boosts", [[0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]]),
    ("bargmann", "plus", [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]),
    ("bargmann", "plus", [[1, I, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0]]),
]


def criterion_7():
    for name, pol in POLARIZATIONS:
        sd, n, h = _pol(name, pol)
        red = reduction_theorem_check(sd, n, h, np.random.default_rng([7, len(pol)]), 20, TOL)
        if not (red.consistent and red.big.is_polarization and red.big_pukanszky.holds == red.little_pukanszky.holds):
            return False, f"{name}.{pol}: levels disagree"
    for name, pol, vectors in PERTURBED:
        sd, n, _ = _pol(name, pol)
        h = from_semidirect_form(sd, ComplexSubspace.span(vectors, sd.nk))
        red = reduction_theorem_check(sd, n, h)
        if red.big.isotropic or red.little.isotropic or red.big.is_polarization or red.little.is_polarization:
            return False, f"{name}: perturbed candidate {vectors} accepted"
        if not (red.polarization_agree and red.pukanszky_agree):
            return False, f"{name}: perturbed candidate {vectors} judged differently on the two levels"
    return True, f"{len(POLARIZATIONS)} polarizations agree; {len(PERTURBED)} perturbed candidates fail on both levels"


def criterion_8():
    worst_pos = worst_form = 0.0
    neg_min = np.inf
    for name, point, sd, n in _fixture_points():
        st = induction_setup(sd, n)
        z = zero_level_set_check(st, np.random.default_rng([8, len(point)]), 50, TOL)
        if z.verdict != Verdict.HOLDS or (z.positives, z.negatives) != (50, 50):
            return False, f"{name}.{point}: zero-level verdicts wrong"
        io = induced_orbit_theorem_check(st, np.random.default_rng([81, len(point)]), SEEDED, TOL)
        if io.verdict != Verdict.HOLDS:
            return False, f"{name}.{point}: induced orbit check fails"
        worst_pos = max(worst_pos, z.positive_residual)
        neg_min = min(neg_min, z.negative_min)
        worst_form = max(worst_form, io.form_residual, io.representative_residual)
    return worst_form < TOL, f"50+50 tuples per point; |J| <= {worst_pos:.1e} on, >= {neg_min:.1e} off; form residual {worst_form:.1e}"


def criterion_9():
    fx = FIXTURES["se3"]
    n = fx.points["spin"]
    p_alg = fx.polarizations["trivial"].a.real_points()
    sv = symmetric_space_check(fx.sd, n, p_alg)
    if not sv.holds:
        return False, "no symmetric-space complement found"
    good = connection_transfer(ConnectionSpec(fx.sd, p_alg, sv.n_sub), np.random.default_rng(9), 50, TOL)
    skew = Subspace.span([[1, 0, 1], [0, 1, 0]], 3)
    bad = connection_transfer(ConnectionSpec(fx.sd, p_alg, skew), np.random.default_rng(9), 50, TOL)
    ok = (
        good.reproduction_residual < TOL
        and good.equivariance_residual < TOL
        and bad.equivariance == Verdict.FAILS
    )
    return ok, (
        f"symmetric: reproduction {good.reproduction_residual:.1e}, equivariance {good.equivariance_residual:.1e}; "
        f"skewed equivariance {bad.equivariance_residual:.1e}"
    )


def _cli(*argv) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    if code not in (0, 1):
        raise RuntimeError(err.getvalue())
    return out.getvalue()


def criterion_10():
    for name, fx in FIXTURES.items():
        el = specdsl.load_file(catalog.data_file(name))
        sd = el.products[name]
        same = (
            sd.k.structure.dtype == fx.sd.k.structure.dtype
            and np.array_equal(sd.k.structure, fx.sd.k.structure)
            and np.array_equal(sd.rho.matrices, fx.sd.rho.matrices)
            and sd.k.basis_names == fx.sd.k.basis_names
            and sd.rho.basis_names == fx.sd.rho.basis_names
            and all(el.points[p].point == fx.points[p] for p in fx.points)
            and set(el.points) == set(fx.points)
            and all(el.polarizations[p].h == fx.polarizations[p].h for p in fx.polarizations)
            and set(el.polarizations) == set(fx.polarizations)
        )
        if not same:
            return False, f"{name}.lie differs from the catalog"
        argv = ["examples", name, "--all", "--json", "--seed", "11", "--samples", "5"]
        if _cli(*argv) != _cli(*argv):
            return False, f"{name}: JSON differs between identical runs"
        zero = json.loads(_cli("examples", name, "--all", "--json", "--samples", "0"))
        some = {c["name"]: c["verdict"] for c in json.loads(_cli(*argv))["checks"]}
        for c in zero["checks"]:
            if "sampled-only" not in c["caveats"] or c["verdict"] == "not-evaluated":
                continue
            # a precondition that fails before any sampling is reported as such either way
            if not (c["verdict"] == "not-applicable" and some[c["name"]] == "not-applicable"):
                return False, f"{name}: {c['name']} is {c['verdict']} with --samples 0"
    return True, "3 data files bit-identical; JSON byte-identical; --samples 0 not-evaluated"


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def line(number: int) -> str:
    ok, detail = RESULTS[number]
    return f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"


def evaluate(number: int) -> bool:
    try:
        RESULTS[number] = CRITERIA[number]()
    except Exception as exc:  # reported as a failing line, re-raised under pytest
        RESULTS[number] = (False, f"{type(exc).__name__}: {exc}")
        raise
    return RESULTS[number][0]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok = evaluate(number)
    print(line(number))
    assert ok, line(number)


def main() -> int:
    failed = 0
    for number in sorted(CRITERIA):
        try:
            failed += not evaluate(number)
        except Exception:
            failed += 1
        print(line(number), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
