import numpy as np
import pytest
from fractions import Fraction

from semiorbit import catalog
from semiorbit.exactla import ComplexSubspace, I
from semiorbit.orbit import PreconditionError, little_data
from semiorbit.polarization import (
    NotSemidirectForm,
    check_polarization,
    from_semidirect_form,
    localize,
    pukanszky_bundle_check,
    pukanszky_check,
    reduction_theorem_check,
    semidirect_form,
    trivial_polarization,
)
from semiorbit.report import Verdict

POLS = [("se3", "trivial"), ("galilei", "trivial"), ("galilei", "boosts"), ("bargmann", "plus"), ("bargmann", "minus")]


def _pol(fixtures, name, pol):
    fx = fixtures[name]
    pl = fx.polarizations[pol]
    return fx.sd, fx.points[pl.point], pl


@pytest.mark.parametrize("name,pol", POLS)
def test_fixture_polarizations_pass_every_axiom(fixtures, name, pol):
    sd, n, pl = _pol(fixtures, name, pol)
    v = check_polarization(sd, n, pl.h, np.random.default_rng(0), 20)
    assert v.is_polarization, v.reasons
    assert v.invariant_sampled == Verdict.HOLDS and v.invariant_residual < 1e-9
    assert v.d_perp_equals_e


@pytest.mark.parametrize("name,pol", POLS)
def test_fixture_polarizations_satisfy_pukanszky(fixtures, name, pol):
    sd, n, pl = _pol(fixtures, name, pol)
    v = pukanszky_check(sd, n, pl.h, np.random.default_rng(1), 30)
    assert v.infinitesimal
    assert v.sampled == Verdict.HOLDS and v.sampled_residual < 1e-9
    assert v.sampled_span == v.dim_e_annihilator


def test_galilei_boosts_D_orbit_is_a_line(fixtures):
    sd, n, pl = _pol(fixtures, "galilei", "boosts")
    red = reduction_theorem_check(sd, n, pl.h, np.random.default_rng(2), 30)
    little = red.little_pukanszky
    assert little.infinitesimal and little.dim_e_annihilator == 1 and little.sampled_span == 1
    assert little.sampled_residual < 1e-9


@pytest.mark.parametrize("pol", ["plus", "minus"])
def test_bargmann_reduced_e_annihilator_vanishes(fixtures, pol):
    sd, n, pl = _pol(fixtures, "bargmann", pol)
    red = reduction_theorem_check(sd, n, pl.h)
    assert red.little.is_polarization
    assert red.little.e.dim == 3 and red.little_pukanszky.dim_e_annihilator == 0
    # complex: d is the real part j3 only
    assert red.little.d.dim == 1


def test_conjugate_pair_and_real_polarizations(fixtures):
    sd, n, _ = _pol(fixtures, "bargmann", "plus")
    plus, minus = fixtures["bargmann"].polarizations["plus"].h, fixtures["bargmann"].polarizations["minus"].h
    assert plus.conjugate() == minus and plus != minus
    for name, pol in [("se3", "trivial"), ("galilei", "trivial"), ("galilei", "boosts")]:
        h = fixtures[name].polarizations[pol].h
        assert h.conjugate() == h


@pytest.mark.parametrize("name,pol", POLS)
def test_reduction_verdicts_agree(fixtures, name, pol):
    sd, n, pl = _pol(fixtures, name, pol)
    red = reduction_theorem_check(sd, n, pl.h, np.random.default_rng(3), 20)
    assert red.consistent and red.dimension_equation
    assert red.big.is_polarization and red.little.is_polarization
    assert red.big_pukanszky.holds == red.little_pukanszky.holds == Verdict.HOLDS
    assert red.sampled_equivalence in (Verdict.HOLDS, Verdict.NOT_EVALUATED)


PERTURBED = [
    # (fixture, polarization, perturbed a inside k_p^C)
    ("galilei", "boosts", [[0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 0]]),
    ("galilei", "boosts", [[0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]]),
    ("bargmann", "plus", [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]),
    ("bargmann", "plus", [[1, I, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0]]),
]


@pytest.mark.parametrize("name,pol,vectors", PERTURBED)
def test_perturbed_non_isotropic_candidates_fail_on_both_levels(fixtures, name, pol, vectors):
    sd, n, _ = _pol(fixtures, name, pol)
    a = ComplexSubspace.span(vectors, sd.nk)
    red = reduction_theorem_check(sd, n, from_semidirect_form(sd, a), np.random.default_rng(4), 10)
    assert not red.big.isotropic and not red.little.isotropic
    assert not red.big.is_polarization and not red.little.is_polarization
    assert red.polarization_agree and red.pukanszky_agree
    assert red.big_pukanszky is None and red.little_pukanszky is None


def test_candidate_outside_kp_is_refused_on_both_levels(fixtures):
    sd, n, _ = _pol(fixtures, "se3", "trivial")
    a = ComplexSubspace.span([[1, 0, 0]], 3)
    red = reduction_theorem_check(sd, n, from_semidirect_form(sd, a))
    assert not red.big.is_polarization and not red.little.is_polarization
    assert localize(little_data(sd, n), a) is None


def test_semidirect_form_requires_V(fixtures):
    sd = fixtures["se3"].sd
    with pytest.raises(NotSemidirectForm):
        semidirect_form(sd, ComplexSubspace.span([[0, 0, 1, 0, 0, 0]], 6))
    a = fixtures["se3"].polarizations["trivial"].a
    assert semidirect_form(sd, from_semidirect_form(sd, a)) == a


def test_trivial_polarization_refused_for_bargmann(fixtures):
    fx = fixtures["bargmann"]
    with pytest.raises(PreconditionError, match="does not vanish"):
        trivial_polarization(fx.sd, fx.points["massive_spin"])


@pytest.mark.parametrize("name,point,pol", [("se3", "spin", "trivial"), ("galilei", "massless_spin", "trivial")])
def test_trivial_polarization_matches_fixture(fixtures, name, point, pol):
    fx = fixtures[name]
    assert trivial_polarization(fx.sd, fx.points[point]) == fx.polarizations[pol].h


@pytest.mark.parametrize("name,pol,dim_F,split", [
    ("se3", "trivial", 4, (4, 0)),
    ("galilei", "trivial", 6, (6, 0)),
    ("galilei", "boosts", 8, (8, 0)),
    ("bargmann", "plus", 8, (6, 2)),
    ("bargmann", "minus", 8, (6, 2)),
])
def test_bundle_dimensions(fixtures, name, pol, dim_F, split):
    sd, n, pl = _pol(fixtures, name, pol)
    b = pukanszky_bundle_check(sd, n, pl.h, np.random.default_rng(5), 10)
    assert b.consistent
    assert b.dim_F == b.orbit_dim == dim_F
    assert (b.base_cotangent_dim, b.fibre_E_over_D) == split


def test_bundle_check_requires_pukanszky(fixtures):
    sd, n, _ = _pol(fixtures, "bargmann", "plus")
    bad = from_semidirect_form(sd, ComplexSubspace.span([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]], sd.nk))
    with pytest.raises(PreconditionError):
        pukanszky_bundle_check(sd, n, bad)


def test_wrong_dimension_is_reported(fixtures):
    sd, n, _ = _pol(fixtures, "galilei", "boosts")
    h = from_semidirect_form(sd, ComplexSubspace.span([[0, 0, 0, 1, 0, 0]], sd.nk))
    v = check_polarization(sd, n, h)
    assert not v.dimension_ok and not v.is_polarization
    assert any("complex dimension" in r for r in v.reasons)


def test_sampled_invariance_is_not_evaluated_without_samples(fixtures):
    sd, n, pl = _pol(fixtures, "se3", "trivial")
    assert check_polarization(sd, n, pl.h).invariant_sampled == Verdict.NOT_EVALUATED
    assert pukanszky_check(sd, n, pl.h).sampled == Verdict.NOT_EVALUATED


@pytest.mark.parametrize("s", [Fraction(1, 2), 2, -3])
def test_bargmann_polarizations_for_other_spins(s):
    fx = catalog.build("bargmann", s=s, m=Fraction(5, 3))
    n = fx.points["massive_spin"]
    for pl in fx.polarizations.values():
        assert check_polarization(fx.sd, n, pl.h).is_polarization
        assert pukanszky_check(fx.sd, n, pl.h).infinitesimal
