from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from semiorbit.exactla import (
    I,
    ComplexSubspace,
    GaussianRational,
    Subspace,
    annihilator,
    complement_basis,
    identity,
    image,
    intersect,
    inverse,
    kernel,
    quotient_basis,
    rank,
    rref,
    solve,
    span_sum,
    to_exact,
    to_float,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def sparse_vectors(dim, count):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), min_size=0, max_size=count)


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(to_exact(rows)) == sp.Matrix(rows).rank()


@given(matrices())
def test_kernel_is_annihilated_and_has_full_dimension(rows):
    a = to_exact(rows)
    k = kernel(a)
    assert k.dim == a.shape[1] - rank(a)
    for v in k.vectors():
        assert all(x == 0 for x in a @ v)


@given(matrices())
def test_rref_pivots_are_unit_columns(rows):
    r, pivots = rref(to_exact(rows))
    for row, col in enumerate(pivots):
        assert r[row, col] == 1
        assert all(r[i, col] == 0 for i in range(r.shape[0]) if i != row)
    assert all(x == 0 for x in r[len(pivots) :].reshape(-1))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_solve(rows):
    a = to_exact(rows)
    if rank(a) < 3:
        with pytest.raises(ValueError):
            inverse(a)
        return
    assert np.all(inverse(a) @ a == identity(3))
    b = to_exact([1, -2, 3])
    assert np.all(a @ solve(a, b) == b)
    assert sp.Matrix(rows).inv() == sp.Matrix(inverse(a).tolist())


@given(sparse_vectors(4, 3), sparse_vectors(4, 3))
def test_grassmann_dimension_formula(a_rows, b_rows):
    a, b = Subspace.span(a_rows, 4), Subspace.span(b_rows, 4)
    assert span_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim
    assert intersect(a, b).issubset(a) and intersect(a, b).issubset(b)


@given(sparse_vectors(5, 4))
def test_annihilator_is_an_involution(rows):
    s = Subspace.span(rows, 5)
    ann = annihilator(s)
    assert ann.dim == 5 - s.dim
    assert annihilator(ann) == s
    for x in ann.vectors():
        assert all(x @ v == 0 for v in s.vectors())


@given(sparse_vectors(5, 4), sparse_vectors(5, 2))
def test_quotient_and_complement_bases(big_rows, small_rows):
    small_s = Subspace.span(small_rows, 5)
    big = Subspace.span(big_rows, 5) + small_s
    q = quotient_basis(big, small_s)
    assert len(q) == big.dim - small_s.dim
    assert small_s + Subspace.span(q, 5) == big
    c = complement_basis(big)
    assert (big + Subspace.span(c, 5)).dim == 5


def test_subspace_membership_and_coordinates():
    s = Subspace.span([[1, 1, 0], [0, 1, 1]], 3)
    assert s.contains(to_exact([1, 2, 1]))
    assert not s.contains(to_exact([1, 0, 0]))
    coords = s.coordinates(to_exact([2, 5, 3]))
    assert np.all(coords @ s.matrix() == to_exact([2, 5, 3]))


def test_float_path_uses_tolerance():
    a = np.array([[1.0, 2.0], [2.0, 4.0 + 1e-12]])
    assert rank(a) == 1
    assert rank(a, tol=1e-15) == 2
    assert image(a).dim == 1


def test_gaussian_rationals():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.conjugate() == GaussianRational(Fraction(37, 4))
    assert I * I == -1
    assert (z - z) == 0
    assert 1 / I == -I


def test_complex_subspace_conjugation_and_real_parts():
    h = ComplexSubspace.span([to_exact([1, I, 0]), to_exact([0, 0, 1])], 3)
    hb = h.conjugate()
    assert hb.conjugate() == h
    assert not h.issubset(hb)
    assert h.real_points() == Subspace.span([[0, 0, 1]], 3)
    assert (h + hb).real_points() == Subspace.full(3)
    assert h.real_span() == Subspace.full(3)
    assert h.annihilator().dim == 1


def test_to_float_round_trip():
    a = to_exact([[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
    assert np.allclose(to_float(a), [[1 / 3, 2], [0, -5 / 7]])
