"""Exact linear algebra over the rationals and the Gaussian rationals.

Vectors and matrices are numpy arrays.  Exact data uses ``dtype=object`` with
:class:`fractions.Fraction` (or :class:`GaussianRational`) entries; float
arrays are accepted by the same routines when a tolerance is supplied or
implied.  Subspaces are stored in canonical reduced row-echelon form so that
equality of subspaces is equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9


class GaussianRational:
    """A number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return GaussianRational(Fraction(x.real), Fraction(x.imag))
        return GaussianRational(Fraction(x), 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# conversions


def to_exact(a) -> np.ndarray:
    """Convert ints, strings, Fractions or nested sequences to an exact array."""
    arr = np.array(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = x if isinstance(x, GaussianRational) else Fraction(x)
    return out


def to_complex_exact(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = GaussianRational.coerce(x)
    return out


def is_exact(a) -> bool:
    return np.asarray(a).dtype == object


def to_float(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype == object:
        if any(isinstance(x, GaussianRational) for x in arr.flat):
            return np.vectorize(complex, otypes=[complex])(arr) if arr.size else arr.astype(complex)
        return arr.astype(float)
    return arr


def zeros(shape) -> np.ndarray:
    """Exact zero array."""
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit(n: int, i: int) -> np.ndarray:
    out = zeros(n)
    out[i] = Fraction(1)
    return out


def _array(a) -> np.ndarray:
    """``np.asarray`` with integer and boolean input promoted to exact rationals."""
    a = np.asarray(a)
    return to_exact(a) if a.dtype.kind in "iub" else a


def _resolve_tol(a: np.ndarray, tol):
    if tol is not None:
        return tol
    return None if a.dtype == object else DEFAULT_TOL


# ---------------------------------------------------------------------------
# row reduction


def rref(a, tol: float | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns.

    Exact input uses the first nonzero entry of each column (rows in the order
    given).  Float input picks the largest entry above ``tol``.
    """
    a = _array(a)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    tol = _resolve_tol(a, tol)
    nrows, ncols = a.shape
    rows = [list(r) for r in a]
    pivots: list[int] = []

    def nonzero(x) -> bool:
        return x != 0 if tol is None else abs(x) > tol

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        if tol is None:
            piv = next((i for i in range(r, nrows) if nonzero(rows[i][c])), None)
        else:
            cand = [i for i in range(r, nrows) if nonzero(rows[i][c])]
            piv = max(cand, key=lambda i: abs(rows[i][c])) if cand else None
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r:
                factor = rows[i][c]
                if nonzero(factor):
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
                elif tol is not None:
                    rows[i][c] = 0.0
        pivots.append(c)
        r += 1
    dtype = a.dtype if a.dtype != object else object
    out = np.array(rows[:r], dtype=dtype).reshape(r, ncols)
    if tol is not None and out.size:
        out[np.abs(out) <= tol] = 0
    return out, tuple(pivots)


def rank(a, tol: float | None = None) -> int:
    a = _array(a)
    if a.size == 0:
        return 0
    return len(rref(a, tol)[1])


def kernel(a, tol: float | None = None) -> "Subspace":
    """Null space ``{x : a @ x = 0}`` as a canonical subspace."""
    a = _array(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return Subspace.full(n, exact=a.dtype == object)
    r, pivots = rref(a, tol)
    free = [c for c in range(n) if c not in pivots]
    exact = a.dtype == object
    vecs = []
    for fc in free:
        x = zeros(n) if exact else np.zeros(n, dtype=a.dtype)
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = -r[i, fc]
        vecs.append(x)
    return Subspace.span(vecs, n, tol=tol if not exact else None)


def image(a, tol: float | None = None) -> "Subspace":
    """Column space of ``a``."""
    a = _array(a)
    return Subspace.span(list(a.T), a.shape[0], tol=tol)


def solve(a, b, tol: float | None = None) -> np.ndarray:
    """A particular solution of ``a @ x = b`` (free variables set to zero)."""
    a = _array(a)
    b = _array(b)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    aug = np.concatenate([a, bb], axis=1) if a.dtype == bb.dtype else np.concatenate(
        [a.astype(object), bb.astype(object)], axis=1
    )
    tol = _resolve_tol(aug, tol)
    r, pivots = rref(aug, tol)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        raise ValueError("inconsistent linear system")
    exact = aug.dtype == object
    x = zeros((n, bb.shape[1])) if exact else np.zeros((n, bb.shape[1]), dtype=aug.dtype)
    for i, pc in enumerate(pivots):
        x[pc, :] = r[i, n:]
    return x[:, 0] if vec else x


def inverse(a) -> np.ndarray:
    a = _array(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if a.dtype != object:
        return np.linalg.inv(a)
    if rank(a) != n:
        raise ValueError("singular matrix")
    return solve(a, identity(n))


# ---------------------------------------------------------------------------
# subspaces


def _canonical_rows(r: np.ndarray) -> tuple:
    if r.dtype == object:
        return tuple(
            tuple(x if isinstance(x, GaussianRational) else Fraction(x) for x in row)
            for row in r
        )
    return tuple(tuple(float(x) for x in row) for row in r)


@dataclass(frozen=True)
class Subspace:
    """A real subspace of ``R^ambient_dim`` given by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int, tol: float | None = None) -> "Subspace":
        vecs = [_array(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, (), ())
        m = np.array(vecs, dtype=object if any(v.dtype == object for v in vecs) else float)
        if m.shape[1] != ambient_dim:
            raise ValueError(f"vectors of length {m.shape[1]} in ambient dimension {ambient_dim}")
        r, pivots = rref(m, tol)
        return cls(ambient_dim, _canonical_rows(r), pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int, exact: bool = True) -> "Subspace":
        return cls.span([unit(n, i) if exact else np.eye(n)[i] for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exact(self) -> bool:
        return not any(isinstance(x, float) for row in self.basis for x in row)

    def matrix(self) -> np.ndarray:
        """Basis vectors as rows."""
        if not self.basis:
            return zeros((0, self.ambient_dim))
        return np.array(self.basis, dtype=object if self.exact else float)

    def vectors(self) -> list[np.ndarray]:
        return list(self.matrix())

    def coordinates(self, v, tol: float | None = None) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis; raises if ``v`` is outside."""
        v = np.asarray(v)
        c = np.array([v[p] for p in self.pivots], dtype=v.dtype)
        if self.basis:
            residual = v - c @ self.matrix()
        else:
            residual = v
        tol = _resolve_tol(np.asarray(residual), tol)
        bad = any((x != 0) if tol is None else abs(x) > tol for x in residual)
        if bad:
            raise ValueError("vector is not in the subspace")
        return c

    def contains(self, v, tol: float | None = None) -> bool:
        try:
            self.coordinates(v, tol)
        except ValueError:
            return False
        return True

    def issubset(self, other: "Subspace", tol: float | None = None) -> bool:
        return all(other.contains(v, tol) for v in self.vectors())

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return span_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Subspace(dim={self.dim} in {self.ambient_dim}: [{rows}])"


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim)


def annihilator(s: Subspace) -> Subspace:
    """``{f : f(x) = 0 for x in s}`` in dual coordinates."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel(s.matrix())


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return annihilator(span_sum(annihilator(a), annihilator(b)))


def quotient_basis(a: Subspace, b: Subspace) -> list[np.ndarray]:
    """Vectors of ``a`` completing a basis of ``b`` (which must lie in ``a``) to one of ``a``."""
    if not b.issubset(a):
        raise ValueError("quotient_basis needs b inside a")
    reps: list[np.ndarray] = []
    current = b
    for v in a.vectors():
        if not current.contains(v):
            reps.append(v)
            current = Subspace.span(current.vectors() + [v], a.ambient_dim)
    return reps


def complement_basis(s: Subspace) -> list[np.ndarray]:
    """Standard unit vectors at the non-pivot columns; they complement ``s``."""
    return [unit(s.ambient_dim, c) for c in range(s.ambient_dim) if c not in s.pivots]


def _check_same_ambient(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")


# ---------------------------------------------------------------------------
# complex subspaces


@dataclass(frozen=True)
class ComplexSubspace:
    """A complex subspace of ``C^ambient_dim`` with Gaussian-rational RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "ComplexSubspace":
        vecs = [to_complex_exact(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, (), ())
        m = np.array(vecs, dtype=object)
        if m.shape[1] != ambient_dim:
            raise ValueError(f"vectors of length {m.shape[1]} in ambient dimension {ambient_dim}")
        r, pivots = rref(m)
        rows = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in r)
        return cls(ambient_dim, rows, pivots)

    @classmethod
    def complexify(cls, s: Subspace) -> "ComplexSubspace":
        return cls.span(s.vectors(), s.ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        if not self.basis:
            return to_complex_exact(np.zeros((0, self.ambient_dim), dtype=object))
        return np.array(self.basis, dtype=object)

    def vectors(self) -> list[np.ndarray]:
        return list(self.matrix())

    def pairs(self) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
        """Basis as (real part, imaginary part) pairs."""
        return [(tuple(x.re for x in row), tuple(x.im for x in row)) for row in self.basis]

    def conjugate(self) -> "ComplexSubspace":
        return ComplexSubspace.span(
            [[x.conjugate() for x in row] for row in self.basis], self.ambient_dim
        )

    def coordinates(self, v) -> np.ndarray:
        v = to_complex_exact(v)
        c = np.array([v[p] for p in self.pivots], dtype=object)
        # pivot columns match by construction; only the free columns need checking
        used = [(ci, row) for ci, row in zip(c, self.basis) if ci != 0]
        pivots = set(self.pivots)
        for j in range(self.ambient_dim):
            if j in pivots:
                continue
            x = v[j]
            for ci, row in used:
                if row[j] != 0:
                    x = x - ci * row[j]
            if x != 0:
                raise ValueError("vector is not in the subspace")
        return c

    def contains(self, v) -> bool:
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    def issubset(self, other: "ComplexSubspace") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def annihilator(self) -> "ComplexSubspace":
        """Annihilator for the complex-bilinear pairing."""
        if not self.basis:
            return ComplexSubspace.span(
                [unit(self.ambient_dim, i) for i in range(self.ambient_dim)], self.ambient_dim
            )
        k = kernel(self.matrix())
        return ComplexSubspace.span(k.vectors(), self.ambient_dim)

    def __add__(self, other: "ComplexSubspace") -> "ComplexSubspace":
        return ComplexSubspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __and__(self, other: "ComplexSubspace") -> "ComplexSubspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def real_points(self) -> Subspace:
        """The real subspace ``self ∩ R^n``."""
        ann = self.annihilator()
        rows = []
        for row in ann.basis:
            rows.append([x.re for x in row])
            rows.append([x.im for x in row])
        if not rows:
            return Subspace.full(self.ambient_dim)
        return kernel(to_exact(rows))

    def real_span(self) -> Subspace:
        """The real subspace ``(self + conj(self)) ∩ R^n``."""
        return (self + self.conjugate()).real_points()

    def to_numpy(self) -> np.ndarray:
        return to_float(self.matrix()).astype(complex).reshape(self.dim, self.ambient_dim)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(repr(x) for x in row) + ")" for row in self.basis)
        return f"ComplexSubspace(dim={self.dim} in {self.ambient_dim}: [{rows}])"


def as_fraction(x) -> Fraction:
    if isinstance(x, (Rational, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"cannot convert {x!r} to a rational")


def exact_vector(values: Sequence) -> np.ndarray:
    return to_exact([as_fraction(v) if not isinstance(v, GaussianRational) else v for v in values])
