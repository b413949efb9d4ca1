from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from semiorbit import catalog
from semiorbit.exactla import Subspace, annihilator, identity, rank, to_exact
from semiorbit.semidirect import (
    SingularElementError,
    act_kstar,
    act_v,
    act_vstar,
    adjoint,
    coadjoint,
    exp_g,
    exp_k,
    expm,
    fundamental_matrix,
    image_tau_star,
    invert,
    make_element,
    multiply,
    odot,
    random_element,
    stabilizer_p,
    tau,
    tau_star,
)

ints = st.integers(min_value=-4, max_value=4)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def vec(n):
    return st.lists(ints, min_size=n, max_size=n).map(to_exact)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.floats(0.1, 3.0))
def test_expm_matches_scipy(seed, n, scale):
    m = scale * np.random.default_rng(seed).standard_normal((n, n))
    assert np.allclose(expm(m), scipy.linalg.expm(m), rtol=1e-10, atol=1e-10)


def test_expm_of_rotation_generator():
    a = np.array(catalog.ROTATIONS[2], dtype=float)
    t = 0.7
    expected = [[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]]
    assert np.allclose(expm(t * a), expected, atol=1e-14)


@given(vec(3))
def test_cayley_rotations_are_rational_rotations(w):
    r = catalog.cayley(w)
    assert np.all(r.T @ r == identity(3))
    assert rank(r) == 3


@given(vec(3), vec(3), vec(4))
def test_galilei_contragredient_closed_form(w, b, p):
    fx = catalog.build("galilei")
    r = catalog.cayley(w)
    g = fx.element(r, b)
    assert np.all(act_vstar(g, p) == catalog.galilei_contragredient(r, b, p))
    assert np.all(act_v(g, to_exact([1, 2, 3, 1])) == catalog.galilei_matrix(r, b) @ to_exact([1, 2, 3, 1]))


@given(vec(3), st.lists(rationals, min_size=3, max_size=3).map(to_exact), vec(5))
def test_bargmann_contragredient_closed_form(w, b, p):
    fx = catalog.build("bargmann")
    r = catalog.cayley(w)
    g = fx.element(r, b)
    assert np.all(act_vstar(g, p) == catalog.bargmann_contragredient(r, b, p))


@given(vec(3), vec(3))
def test_bargmann_elements_multiply_like_matrices(w1, w2):
    fx = catalog.build("bargmann")
    g1 = fx.element(catalog.cayley(w1), to_exact([1, 0, 2]))
    g2 = fx.element(catalog.cayley(w2), to_exact([0, -1, 1]))
    prod = multiply(fx.sd, g1, g2)
    assert np.all(prod.rho == g1.rho @ g2.rho)
    assert np.all(prod.ad == g1.ad @ g2.ad)


@given(vec(3), vec(3))
def test_se3_odot_is_a_cross_product(p, v):
    # in these coordinates p (.) v = v x p
    sd = catalog.build("se3").sd
    expected = to_exact(np.cross(v.astype(int), p.astype(int)))
    assert np.all(odot(sd, p, v) == expected)


@given(vec(4), vec(4))
def test_galilei_odot_coordinates(p, x):
    # p (.) (r, t) = (r x P, t P) for p = (P, E)
    sd = catalog.build("galilei").sd
    r, t = x[:3].astype(int), x[3]
    mom = p[:3].astype(int)
    expected = np.concatenate([to_exact(np.cross(r, mom)), t * p[:3]])
    assert np.all(odot(sd, p, x) == expected)


def test_odot_pairing_definition(fixture):
    sd = fixture.sd
    rng = np.random.default_rng(3)
    p = to_exact(rng.integers(-3, 4, sd.nv))
    v = to_exact(rng.integers(-3, 4, sd.nv))
    for i in range(sd.nk):
        a = sd.rho.matrices[i]
        assert odot(sd, p, v)[i] == p @ (a @ v)
        # tau_p(A) = -A.p = rho'(A)^T p
        assert np.all(tau(sd, p)[:, i] == a.T @ p)
    assert np.all(tau_star(sd, p) @ v == odot(sd, p, v))


def test_range_of_tau_on_fixture_points(fixture):
    for n in fixture.points.values():
        p = n.p
        assert annihilator(stabilizer_p(fixture.sd, p)) == image_tau_star(fixture.sd, p)


def test_group_laws_float(fixture):
    sd = fixture.sd
    rng = np.random.default_rng(7)
    for _ in range(10):
        g, h = random_element(sd, rng), random_element(sd, rng)
        xi, eta = rng.standard_normal(sd.dim), rng.standard_normal(sd.dim)
        n = rng.standard_normal(sd.dim)
        gh = multiply(sd, g, h)
        assert np.allclose(adjoint(sd, gh, xi), adjoint(sd, g, adjoint(sd, h, xi)))
        assert np.allclose(coadjoint(sd, gh, n), coadjoint(sd, g, coadjoint(sd, h, n)))
        # Ad is an automorphism and the pairing is invariant
        lhs = adjoint(sd, g, sd.g.bracket(xi, eta))
        rhs = sd.g.bracket(adjoint(sd, g, xi), adjoint(sd, g, eta))
        assert np.allclose(lhs, rhs)
        assert np.isclose(coadjoint(sd, g, n) @ adjoint(sd, g, xi), n @ xi)
        gi = invert(sd, g)
        assert np.allclose(adjoint(sd, multiply(sd, g, gi), xi), xi)


def test_group_laws_exact():
    fx = catalog.build("galilei")
    sd = fx.sd
    g = fx.element(catalog.cayley([1, 2, 0]), to_exact([1, 0, -1]), to_exact([1, 2, 3, 4]))
    h = fx.element(catalog.cayley([0, 1, 1]), to_exact([2, 1, 0]), to_exact([0, -1, 1, 2]))
    xi = to_exact([1, -1, 2, 0, 3, 1, 1, 0, -2, 1])
    n = fx.points["massless_spin"].vector()
    gh = multiply(sd, g, h)
    assert np.all(adjoint(sd, gh, xi) == adjoint(sd, g, adjoint(sd, h, xi)))
    assert coadjoint(sd, g, n) @ adjoint(sd, g, xi) == n @ xi
    e = multiply(sd, g, invert(sd, g))
    assert np.all(e.rho == identity(4)) and all(x == 0 for x in e.v)
    assert all(isinstance(x, Fraction) for x in coadjoint(sd, gh, n))


def test_exp_g_matches_exp_k_on_pure_rotations(fixture):
    sd = fixture.sd
    rng = np.random.default_rng(11)
    a = rng.standard_normal(sd.nk)
    g1 = exp_g(sd, np.concatenate([a, np.zeros(sd.nv)]))
    g2 = exp_k(sd, a)
    assert np.allclose(g1.rho, g2.rho) and np.allclose(g1.ad, g2.ad)
    # exp of a pure translation is the translation
    b = rng.standard_normal(sd.nv)
    assert np.allclose(exp_g(sd, np.concatenate([np.zeros(sd.nk), b])).v, b)


def test_exp_g_is_a_one_parameter_group(fixture):
    sd = fixture.sd
    xi = np.random.default_rng(5).standard_normal(sd.dim)
    g = multiply(sd, exp_g(sd, 0.3 * xi), exp_g(sd, 0.5 * xi))
    h = exp_g(sd, 0.8 * xi)
    assert np.allclose(g.rho, h.rho) and np.allclose(g.v, h.v) and np.allclose(g.ad, h.ad)


def test_coadjoint_formula_against_dual_of_adjoint(fixture):
    sd = fixture.sd
    rng = np.random.default_rng(9)
    g = random_element(sd, rng)
    ad_g = np.array([adjoint(sd, g, e) for e in np.eye(sd.dim)]).T
    n = rng.standard_normal(sd.dim)
    # Coad(g) = Ad(g^-1)^T
    assert np.allclose(coadjoint(sd, g, n), np.linalg.inv(ad_g).T @ n)


@given(st.data())
def test_semidirect_action_is_the_coadjoint_action_of_the_product(data):
    # (A.h + q (.) a, A.q) against -m([xi, .]) from the structure constants of g
    sd = catalog.build(data.draw(st.sampled_from(catalog.FIXTURE_NAMES))).sd
    m = data.draw(vec(sd.dim))
    assert np.all(fundamental_matrix(sd, m) == -sd.g.form(m).T)


def test_action_of_k_on_k_star():
    sd = catalog.build("se3").sd
    r = catalog.cayley([1, 0, 0])
    g = make_element(sd, r)
    f = to_exact([0, 0, 1])
    # rotations act on so(3)* like on vectors in these coordinates
    assert np.all(act_kstar(g, f) == r @ f)


def test_make_element_rejects_singular_matrices():
    sd = catalog.build("se3").sd
    with pytest.raises((SingularElementError, ValueError)):
        make_element(sd, to_exact(np.zeros((3, 3), dtype=int)))


def test_stabilizer_of_p_in_bargmann_is_so3():
    fx = catalog.build("bargmann")
    kp = stabilizer_p(fx.sd, fx.points["massive_spin"].p)
    assert kp == Subspace.span(np.eye(6, dtype=int)[:3], 6)
