"""Finite-dimensional real Lie algebras given by structure constants, and their
representations.

Elements of an algebra are coordinate vectors in its basis.  Covectors are
coordinate vectors in the dual basis, so ``f(x) = f @ x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .exactla import Subspace, image, kernel, solve, to_exact, zeros


def _inexact(*arrays) -> bool:
    return any(a.dtype.kind in "fc" for a in arrays)


def _as_array(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype.kind == "f":
        return arr.copy()
    return to_exact(arr)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``."""

    structure: np.ndarray
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        c = _as_array(self.structure)
        n = c.shape[0] if c.ndim == 3 else -1
        if c.ndim != 3 or c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "structure", c)
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise ValueError("basis_names length does not match the dimension")
        object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_brackets(
        cls,
        basis_names: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
    ) -> "LieAlgebra":
        """Build from brackets declared for index pairs; antisymmetry is filled in."""
        n = len(basis_names)
        c = zeros((n, n, n))
        for (i, j), combo in brackets.items():
            for k, coef in combo.items():
                c[i, j, k] = Fraction(coef)
                c[j, i, k] = -Fraction(coef)
        return cls(c, tuple(basis_names))

    @classmethod
    def abelian(cls, n: int, basis_names: Sequence[str] = ()) -> "LieAlgebra":
        return cls(zeros((n, n, n)), tuple(basis_names))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.structure.shape == other.structure.shape
            and bool(np.all(self.structure == other.structure))
        )

    def __hash__(self):
        return hash(tuple(self.structure.flat))

    @cached_property
    def _sparse(self) -> tuple[tuple[int, int, int, object], ...]:
        c = self.structure
        return tuple(
            (i, j, k, c[i, j, k]) for i, j, k in zip(*np.nonzero(c != 0))
        )

    @cached_property
    def structure_float(self) -> np.ndarray:
        return self.structure.astype(float)

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x)
        y = np.asarray(y)
        if _inexact(x, y):
            return np.tensordot(np.tensordot(x, self.structure_float, axes=(0, 0)), y, axes=(0, 0))
        out = zeros(self.dim)
        for i, j, k, c in self._sparse:
            xi = x[i]
            if xi == 0:
                continue
            yj = y[j]
            if yj == 0:
                continue
            out[k] = out[k] + c * xi * yj
        return out

    def ad(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]``."""
        x = np.asarray(x)
        if _inexact(x):
            return np.tensordot(x, self.structure_float, axes=(0, 0)).T
        out = zeros((self.dim, self.dim))
        for i, j, k, c in self._sparse:
            if x[i] != 0:
                out[k, j] = out[k, j] + c * x[i]
        return out

    @cached_property
    def ad_basis(self) -> np.ndarray:
        return np.array([self.ad(e) for e in np.eye(self.dim, dtype=int).astype(object)])

    def coad(self, x) -> np.ndarray:
        """Matrix of the coadjoint derivative ``f -> x.f`` with ``(x.f)(y) = -f([x, y])``."""
        return -self.ad(x).T

    def form(self, f) -> np.ndarray:
        """Matrix ``B[i, j] = f([e_i, e_j])``."""
        f = np.asarray(f)
        if _inexact(f):
            return np.tensordot(self.structure_float, f, axes=(2, 0))
        out = zeros((self.dim, self.dim))
        for i, j, k, c in self._sparse:
            if f[k] != 0:
                out[i, j] = out[i, j] + c * f[k]
        return out

    def isotropy(self, f, tol: float | None = None) -> Subspace:
        """``{x : f([x, y]) = 0 for all y}``."""
        return kernel(self.form(f).T, tol)

    def killing_form(self) -> np.ndarray:
        ads = self.ad_basis
        n = self.dim
        out = zeros((n, n))
        for i in range(n):
            for j in range(n):
                out[i, j] = np.trace(ads[i] @ ads[j])
        return out

    def bracket_space(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of ``[x, y]`` for ``x`` in ``a`` and ``y`` in ``b``."""
        vecs = [self.bracket(x, y) for x in a.vectors() for y in b.vectors()]
        return Subspace.span(vecs, self.dim)

    def is_subalgebra(self, s: Subspace) -> bool:
        return self.bracket_space(s, s).issubset(s)

    def subalgebra(self, s: Subspace) -> "LieAlgebra":
        """Structure constants of a subalgebra in the canonical basis of ``s``."""
        basis = s.vectors()
        m = s.dim
        c = zeros((m, m, m))
        for i in range(m):
            for j in range(m):
                br = self.bracket(basis[i], basis[j])
                try:
                    c[i, j, :] = s.coordinates(br)
                except ValueError:
                    raise ValueError("subspace is not closed under the bracket") from None
        return LieAlgebra(c)


@dataclass(frozen=True, eq=False)
class Representation:
    """A linear action of a Lie algebra: ``matrices[i]`` represents basis element ``i``."""

    algebra: LieAlgebra
    matrices: np.ndarray
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        m = _as_array(self.matrices)
        if m.ndim != 3 or m.shape[0] != self.algebra.dim or m.shape[1] != m.shape[2]:
            raise ValueError(
                f"representation needs {self.algebra.dim} square matrices, got shape {m.shape}"
            )
        m.flags.writeable = False
        object.__setattr__(self, "matrices", m)
        names = tuple(self.basis_names) or tuple(f"v{i + 1}" for i in range(m.shape[1]))
        if len(names) != m.shape[1]:
            raise ValueError("basis_names length does not match the representation dimension")
        object.__setattr__(self, "basis_names", names)

    @property
    def space_dim(self) -> int:
        return self.matrices.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.matrices.shape == other.matrices.shape
            and bool(np.all(self.matrices == other.matrices))
        )

    def __hash__(self):
        return hash((self.algebra, tuple(self.matrices.flat)))

    def act(self, x) -> np.ndarray:
        """The matrix ``rho'(x)``."""
        return np.tensordot(np.asarray(x), self.matrices, axes=(0, 0))

    def dual_act(self, x) -> np.ndarray:
        """Matrix of the contragredient action ``p -> x.p = -rho'(x)^T p``."""
        return -self.act(x).T


def bracket(g: LieAlgebra, x, y) -> np.ndarray:
    return g.bracket(x, y)


def coderivative(g: LieAlgebra, a, f) -> np.ndarray:
    """``(a.f)(y) = -f([a, y])``."""
    return g.coad(a) @ np.asarray(f)


def contragredient(rep: Representation, a, p) -> np.ndarray:
    """``(a.p)(v) = -p(a.v)``."""
    return rep.dual_act(a) @ np.asarray(p)


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(g: LieAlgebra, rep: Representation | None = None) -> ValidationReport:
    """Check antisymmetry, the Jacobi identity and (optionally) the homomorphism property."""
    report = ValidationReport()
    c = g.structure
    n = g.dim
    for i in range(n):
        for j in range(i, n):
            if any(c[i, j, k] + c[j, i, k] != 0 for k in range(n)):
                report.violations.append(
                    Violation("antisymmetry", (i, j), f"[{g.basis_names[i]}, {g.basis_names[j]}] is not antisymmetric")
                )
    e = np.eye(n, dtype=int).astype(object)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                jac = (
                    g.bracket(e[i], g.bracket(e[j], e[k]))
                    + g.bracket(e[j], g.bracket(e[k], e[i]))
                    + g.bracket(e[k], g.bracket(e[i], e[j]))
                )
                if any(x != 0 for x in jac):
                    names = (g.basis_names[i], g.basis_names[j], g.basis_names[k])
                    report.violations.append(
                        Violation("jacobi", (i, j, k), "Jacobi identity fails for ({}, {}, {})".format(*names))
                    )
    if rep is not None:
        if rep.algebra.dim != n:
            report.violations.append(Violation("shape", (), "representation is for a different algebra"))
            return report
        m = rep.matrices
        for i in range(n):
            for j in range(i + 1, n):
                lhs = m[i] @ m[j] - m[j] @ m[i]
                rhs = rep.act(c[i, j])
                if np.any(lhs != rhs):
                    report.violations.append(
                        Violation(
                            "homomorphism",
                            (i, j),
                            f"rho([{g.basis_names[i]}, {g.basis_names[j]}]) != [rho({g.basis_names[i]}), rho({g.basis_names[j]})]",
                        )
                    )
    return report


def matrix_algebra(matrices: Sequence, basis_names: Sequence[str] = ()) -> tuple[LieAlgebra, Representation]:
    """The Lie algebra spanned by linearly independent matrices, with its defining representation."""
    mats = to_exact(matrices)
    k, d, _ = mats.shape
    flat = np.array([m.reshape(-1) for m in mats]).T
    if image(flat).dim != k:
        raise ValueError("matrices are linearly dependent")
    c = zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            try:
                c[i, j, :] = solve(flat, comm.reshape(-1))
            except ValueError:
                raise ValueError("matrices do not span a Lie algebra") from None
    g = LieAlgebra(c, tuple(basis_names))
    return g, Representation(g, mats)
