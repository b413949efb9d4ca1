from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiorbit.catalog import ROTATIONS, se3_algebra, so3
from semiorbit.exactla import Subspace, inverse, rank, to_exact, zeros
from semiorbit.lie_core import LieAlgebra, Representation, matrix_algebra, validate

ints = st.integers(min_value=-3, max_value=3)


def _unit(n, i, j):
    m = np.zeros((n, n), dtype=int)
    m[i, j] = 1
    return m


BORELS = {n: [_unit(n, i, j) for i in range(n) for j in range(i, n)] for n in (2, 3)}
HEISENBERG = [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)]


@st.composite
def matrix_algebras(draw):
    """A matrix Lie algebra conjugated by a random invertible integer matrix."""
    kind = draw(st.sampled_from(["so3", "borel2", "borel3", "heisenberg"]))
    mats = {"so3": [np.array(r) for r in ROTATIONS], "borel2": BORELS[2], "borel3": BORELS[3], "heisenberg": HEISENBERG}[kind]
    n = mats[0].shape[0]
    p = to_exact(draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)))
    if rank(p) < n:
        p = to_exact(np.eye(n, dtype=int))
    pinv = inverse(p)
    return [p @ to_exact(m) @ pinv for m in mats]


@given(matrix_algebras())
def test_matrix_algebras_satisfy_the_axioms(mats):
    g, rep = matrix_algebra(mats)
    assert validate(g, rep).ok


@given(matrix_algebras(), st.data())
def test_ad_is_a_homomorphism_and_coad_is_dual(mats, data):
    g, _ = matrix_algebra(mats)
    x = to_exact(data.draw(st.lists(ints, min_size=g.dim, max_size=g.dim)))
    y = to_exact(data.draw(st.lists(ints, min_size=g.dim, max_size=g.dim)))
    f = to_exact(data.draw(st.lists(ints, min_size=g.dim, max_size=g.dim)))
    assert np.all(g.ad(g.bracket(x, y)) == g.ad(x) @ g.ad(y) - g.ad(y) @ g.ad(x))
    # (x.f)(y) = -f([x, y])
    assert (g.coad(x) @ f) @ y == -(f @ g.bracket(x, y))
    assert np.all(g.bracket(x, y) == -g.bracket(y, x))


@given(matrix_algebras(), st.data())
def test_isotropy_annihilates_brackets(mats, data):
    g, _ = matrix_algebra(mats)
    f = to_exact(data.draw(st.lists(ints, min_size=g.dim, max_size=g.dim)))
    iso = g.isotropy(f)
    for x in iso.vectors():
        assert all(f @ g.bracket(x, e) == 0 for e in np.eye(g.dim, dtype=int))
    # isotropy algebras are subalgebras
    assert g.is_subalgebra(iso)


def test_so3_killing_form():
    # oracle: tr(ad e_i ad e_j) = -2 delta_ij on so(3)
    assert np.all(so3().killing_form() == -2 * to_exact(np.eye(3, dtype=int)))


def test_se3_killing_form():
    # rotations act on both halves, translations are nilpotent: -4 on j, 0 on b
    k = se3_algebra().killing_form()
    expected = zeros((6, 6))
    for i in range(3):
        expected[i, i] = Fraction(-4)
    assert np.all(k == expected)


def test_rotation_matrices_are_a_representation_of_so3():
    assert validate(so3(), Representation(so3(), to_exact(ROTATIONS))).ok


def test_validate_reports_jacobi_triple():
    c = zeros((3, 3, 3))
    for (i, j), row in {(0, 1): [0, 0, 1], (0, 2): [1, 0, 0], (1, 2): [0, 1, 0]}.items():
        c[i, j] = to_exact(row)
        c[j, i] = -to_exact(row)
    report = validate(LieAlgebra(c, ("e1", "e2", "e3")))
    assert not report.ok
    assert [v.indices for v in report.violations if v.kind == "jacobi"] == [(0, 1, 2)]


def test_validate_reports_homomorphism_failure():
    rep = Representation(so3(), to_exact([np.eye(3, dtype=int)] * 3))
    kinds = {v.kind for v in validate(so3(), rep).violations}
    assert kinds == {"homomorphism"}


def test_from_brackets_fills_antisymmetry():
    g = LieAlgebra.from_brackets(("a", "b"), {(0, 1): {1: 1}})
    assert np.all(g.bracket(to_exact([0, 1]), to_exact([1, 0])) == to_exact([0, -1]))


def test_subalgebra_tests():
    g = so3()
    assert not g.is_subalgebra(Subspace.span([[1, 0, 0], [0, 1, 0]], 3))
    assert g.is_subalgebra(Subspace.span([[0, 0, 1]], 3))


def test_matrix_algebra_rejects_non_closed_spans():
    with pytest.raises(ValueError):
        matrix_algebra([ROTATIONS[0], ROTATIONS[1]])
    with pytest.raises(ValueError):
        matrix_algebra([ROTATIONS[0], ROTATIONS[0]])


def test_float_and_exact_brackets_agree():
    g = se3_algebra()
    rng = np.random.default_rng(0)
    x, y = rng.integers(-5, 5, 6), rng.integers(-5, 5, 6)
    exact = g.bracket(to_exact(x), to_exact(y))
    assert np.allclose(exact.astype(float), g.bracket(x.astype(float), y.astype(float)))
