"""Semidirect products ``g = k x_rho V`` and their adjoint and coadjoint data.

An element of ``g`` is a vector ``(A, a)`` with ``A`` in ``k`` and ``a`` in
``V`` stacked as one coordinate vector; a covector is ``(f, p)`` likewise.

Group elements ``(k, v)`` are stored through the matrices of ``k`` in the
representation and in the adjoint representation of ``k``, together with
the translation ``v``.  The multiplication is ``(k, v)(l, u) = (kl, k.u + v)``.
Exact (``dtype=object``) and float arrays both work; sampling uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exactla import Subspace, identity, image, inverse, kernel, rank, solve, to_exact, zeros
from .lie_core import LieAlgebra, Representation


class SingularElementError(ValueError):
    """Raised for a group element whose matrices are not invertible."""


class SemidirectProduct:
    """The Lie algebra ``k x_rho V`` with bracket ``[(A,a),(B,b)] = ([A,B], A.b - B.a)``."""

    def __init__(self, k: LieAlgebra, rho: Representation, name: str = ""):
        if rho.algebra.dim != k.dim:
            raise ValueError("representation does not match the algebra")
        self.k = k
        self.rho = rho
        self.name = name
        self.nk = k.dim
        self.nv = rho.space_dim
        self.g = self._assemble()

    def _assemble(self) -> LieAlgebra:
        nk, nv = self.nk, self.nv
        n = nk + nv
        c = zeros((n, n, n))
        c[:nk, :nk, :nk] = self.k.structure
        m = self.rho.matrices
        for i in range(nk):
            for a in range(nv):
                col = m[i][:, a]
                c[i, nk + a, nk:] = col
                c[nk + a, i, nk:] = -col
        names = self.k.basis_names + self.rho.basis_names
        return LieAlgebra(c, names)

    @property
    def dim(self) -> int:
        return self.nk + self.nv

    def __eq__(self, other):
        if not isinstance(other, SemidirectProduct):
            return NotImplemented
        return self.k == other.k and self.rho == other.rho

    def __hash__(self):
        return hash((self.k, self.rho))

    def __repr__(self):
        return f"SemidirectProduct({self.name or 'g'}: dim k={self.nk}, dim V={self.nv})"

    def split(self, x) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x)
        return x[: self.nk], x[self.nk :]

    def join(self, a, b) -> np.ndarray:
        return np.concatenate([np.asarray(a), np.asarray(b)])

    def embed_k(self, s: Subspace) -> Subspace:
        """``s + 0`` inside ``g`` (or ``g*``) for a subspace of ``k`` (or ``k*``)."""
        pad = zeros(self.nv)
        return Subspace.span([self.join(v, pad) for v in s.vectors()], self.dim)

    def embed_v(self, s: Subspace) -> Subspace:
        pad = zeros(self.nk)
        return Subspace.span([self.join(pad, v) for v in s.vectors()], self.dim)

    @cached_property
    def v_subspace(self) -> Subspace:
        return self.embed_v(Subspace.full(self.nv))

    @cached_property
    def rep_float(self) -> np.ndarray:
        return self.rho.matrices.astype(float)

    @cached_property
    def k_ad_float(self) -> np.ndarray:
        return self.k.ad_basis.astype(float)

    def rep_stack(self, exact: bool) -> np.ndarray:
        return self.rho.matrices if exact else self.rep_float

    @cached_property
    def faithful(self) -> bool:
        flat = np.array([m.reshape(-1) for m in self.rho.matrices]).T
        return rank(flat) == self.nk


@dataclass(frozen=True)
class CovectorPoint:
    """A point ``(f, p)`` of ``g* = k* + V*``."""

    f: np.ndarray
    p: np.ndarray

    @classmethod
    def from_vector(cls, sd: SemidirectProduct, n) -> "CovectorPoint":
        f, p = sd.split(n)
        return cls(np.asarray(f), np.asarray(p))

    def vector(self) -> np.ndarray:
        return np.concatenate([self.f, self.p])

    def __eq__(self, other):
        if not isinstance(other, CovectorPoint):
            return NotImplemented
        return (
            self.f.shape == other.f.shape
            and self.p.shape == other.p.shape
            and bool(np.all(self.f == other.f))
            and bool(np.all(self.p == other.p))
        )

    def __hash__(self):
        return hash((tuple(self.f), tuple(self.p)))

    def scaled(self, lam) -> "CovectorPoint":
        return CovectorPoint(self.f * lam, self.p * lam)


def point_vector(n) -> np.ndarray:
    return n.vector() if isinstance(n, CovectorPoint) else np.asarray(n)


# ---------------------------------------------------------------------------
# the odot pairing and the tau maps


def _is_float(*arrays) -> bool:
    return any(np.asarray(a).dtype.kind in "fc" for a in arrays)


def odot(sd: SemidirectProduct, p, v) -> np.ndarray:
    """``p (.) v`` in ``k*``: ``(p (.) v)(A) = p(A.v)``."""
    p = np.asarray(p)
    v = np.asarray(v)
    m = sd.rep_stack(not _is_float(p, v))
    return (m @ v) @ p


def tau(sd: SemidirectProduct, p) -> np.ndarray:
    """Matrix of ``tau_p : k -> V*``, ``tau_p(A) = -A.p``."""
    p = np.asarray(p)
    m = sd.rep_stack(not _is_float(p))
    return np.array([m[i].T @ p for i in range(sd.nk)]).T.reshape(sd.nv, sd.nk)


def tau_star(sd: SemidirectProduct, p) -> np.ndarray:
    """Matrix of ``tau_p^* : V -> k*``, ``tau_p^*(v) = p (.) v``."""
    return tau(sd, p).T


def stabilizer_p(sd: SemidirectProduct, p, tol: float | None = None) -> Subspace:
    """``k_p = ker tau_p``."""
    return kernel(tau(sd, p), tol)


def image_tau_star(sd: SemidirectProduct, p, tol: float | None = None) -> Subspace:
    return image(tau_star(sd, p), tol)


def kernel_tau_star(sd: SemidirectProduct, p, tol: float | None = None) -> Subspace:
    return kernel(tau_star(sd, p), tol)


def fundamental_field(sd: SemidirectProduct, xi, m) -> np.ndarray:
    """Infinitesimal coadjoint action ``xi.m = (A.h + q (.) a, A.q)`` for ``xi = (A, a)``, ``m = (h, q)``."""
    a_k, a_v = sd.split(xi)
    h, q = sd.split(point_vector(m))
    dh = sd.k.coad(a_k) @ h + odot(sd, q, a_v)
    dq = sd.rho.dual_act(a_k) @ q
    return np.concatenate([dh, dq])


def fundamental_matrix(sd: SemidirectProduct, m) -> np.ndarray:
    """Matrix of ``xi -> xi.m``."""
    n = sd.dim
    mv = point_vector(m)
    exact = not _is_float(mv)
    basis = np.eye(n, dtype=int).astype(object) if exact else np.eye(n)
    return np.array([fundamental_field(sd, e, mv) for e in basis]).T.reshape(n, n)


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True, eq=False)
class GroupElement:
    """``(k, v)`` with ``rho`` the matrix of ``k`` on ``V`` and ``ad`` its adjoint matrix on ``k``."""

    rho: np.ndarray
    ad: np.ndarray
    v: np.ndarray
    rho_inv: np.ndarray
    ad_inv: np.ndarray

    @property
    def exact(self) -> bool:
        return self.rho.dtype == object

    def to_float(self) -> "GroupElement":
        return GroupElement(*(np.asarray(x, dtype=float) for x in (self.rho, self.ad, self.v, self.rho_inv, self.ad_inv)))


def _check_invertible(m: np.ndarray, what: str):
    n = m.shape[0]
    if m.dtype == object:
        if rank(m) != n:
            raise SingularElementError(f"{what} is singular")
    else:
        if np.linalg.cond(m) > 1e12:
            raise SingularElementError(f"{what} is singular")


def make_element(sd: SemidirectProduct, rho_k, v=None, ad=None) -> GroupElement:
    """Group element from the matrix of ``k`` on ``V``.

    When ``ad`` is omitted it is recovered from ``rho(k) rho'(X) rho(k)^-1 = rho'(Ad(k) X)``,
    which needs a faithful representation.
    """
    rho_k = np.asarray(rho_k)
    exact = rho_k.dtype == object or rho_k.dtype.kind in "iu"
    if exact:
        rho_k = to_exact(rho_k)
    else:
        rho_k = rho_k.astype(float)
    if rho_k.shape != (sd.nv, sd.nv):
        raise ValueError(f"expected a {sd.nv}x{sd.nv} matrix, got {rho_k.shape}")
    _check_invertible(rho_k, "k_matrix")
    rho_inv = inverse(rho_k)
    if v is None:
        v = zeros(sd.nv) if exact else np.zeros(sd.nv)
    v = to_exact(v) if exact else np.asarray(v, dtype=float)
    if ad is None:
        if not sd.faithful:
            raise ValueError("the adjoint matrix must be supplied for a non-faithful representation")
        mats = sd.rep_stack(exact)
        flat = np.array([m.reshape(-1) for m in mats]).T
        cols = []
        for i in range(sd.nk):
            conj = rho_k @ mats[i] @ rho_inv
            if exact:
                try:
                    cols.append(solve(flat, conj.reshape(-1)))
                except ValueError:
                    raise ValueError("matrix does not normalize the representation") from None
            else:
                sol, *_ = np.linalg.lstsq(flat, conj.reshape(-1), rcond=None)
                if np.linalg.norm(flat @ sol - conj.reshape(-1)) > 1e-8 * max(1.0, np.linalg.norm(conj)):
                    raise ValueError("matrix does not normalize the representation")
                cols.append(sol)
        ad = np.array(cols).T.reshape(sd.nk, sd.nk)
    else:
        ad = to_exact(ad) if exact else np.asarray(ad, dtype=float)
    _check_invertible(ad, "adjoint matrix")
    return GroupElement(rho_k, ad, v, rho_inv, inverse(ad))


def identity_element(sd: SemidirectProduct, exact: bool = True) -> GroupElement:
    if exact:
        return GroupElement(identity(sd.nv), identity(sd.nk), zeros(sd.nv), identity(sd.nv), identity(sd.nk))
    return GroupElement(np.eye(sd.nv), np.eye(sd.nk), np.zeros(sd.nv), np.eye(sd.nv), np.eye(sd.nk))


def expm(x: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    norm = np.linalg.norm(x, 1)
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    y = x / (2**s)
    term = np.eye(n)
    out = np.eye(n)
    for j in range(1, 30):
        term = term @ y / j
        out = out + term
        if np.linalg.norm(term, 1) < 1e-18 * max(1.0, np.linalg.norm(out, 1)):
            break
    for _ in range(s):
        out = out @ out
    return out


def exp_k(sd: SemidirectProduct, a, v=None) -> GroupElement:
    """``(exp A, v)`` in floats."""
    a = np.asarray(a, dtype=float)
    rho_x = np.tensordot(a, sd.rep_float, axes=(0, 0))
    ad_x = np.tensordot(a, sd.k_ad_float, axes=(0, 0))
    vv = np.zeros(sd.nv) if v is None else np.asarray(v, dtype=float)
    return GroupElement(expm(rho_x), expm(ad_x), vv, expm(-rho_x), expm(-ad_x))


def exp_g(sd: SemidirectProduct, xi) -> GroupElement:
    """``exp(A, a)`` in floats, through the affine matrix ``[[rho'(A), a], [0, 0]]``."""
    a_k, a_v = sd.split(np.asarray(xi, dtype=float))
    rho_x = np.tensordot(a_k, sd.rep_float, axes=(0, 0))
    ad_x = np.tensordot(a_k, sd.k_ad_float, axes=(0, 0))
    aff = np.zeros((sd.nv + 1, sd.nv + 1))
    aff[: sd.nv, : sd.nv] = rho_x
    aff[: sd.nv, sd.nv] = a_v
    e = expm(aff)
    return GroupElement(e[: sd.nv, : sd.nv], expm(ad_x), e[: sd.nv, sd.nv], expm(-rho_x), expm(-ad_x))


def multiply(sd: SemidirectProduct, g1: GroupElement, g2: GroupElement) -> GroupElement:
    return GroupElement(
        g1.rho @ g2.rho,
        g1.ad @ g2.ad,
        g1.rho @ g2.v + g1.v,
        g2.rho_inv @ g1.rho_inv,
        g2.ad_inv @ g1.ad_inv,
    )


def invert(sd: SemidirectProduct, g: GroupElement) -> GroupElement:
    return GroupElement(g.rho_inv, g.ad_inv, -(g.rho_inv @ g.v), g.rho, g.ad)


def act_v(g: GroupElement, u) -> np.ndarray:
    """``k.u``."""
    return g.rho @ np.asarray(u)


def act_vstar(g: GroupElement, p) -> np.ndarray:
    """``k.p`` with ``(k.p)(u) = p(k^-1.u)``."""
    return g.rho_inv.T @ np.asarray(p)


def act_kstar(g: GroupElement, f) -> np.ndarray:
    """``k.f`` with ``(k.f)(B) = f(Ad(k^-1) B)``."""
    return g.ad_inv.T @ np.asarray(f)


def adjoint(sd: SemidirectProduct, g: GroupElement, xi) -> np.ndarray:
    """``Ad(k,v)(A,a) = (Ad(k)A, k.a - rho'(Ad(k)A) v)``."""
    a_k, a_v = sd.split(xi)
    b = g.ad @ a_k
    mats = sd.rep_stack(g.exact and not _is_float(xi))
    rb = np.tensordot(b, mats, axes=(0, 0))
    return np.concatenate([b, g.rho @ a_v - rb @ g.v])


def coadjoint(sd: SemidirectProduct, g: GroupElement, n) -> np.ndarray:
    """``Coad(k,v)(f,p) = (k.f + (k.p) (.) v, k.p)``."""
    f, p = sd.split(point_vector(n))
    kp = act_vstar(g, p)
    return np.concatenate([act_kstar(g, f) + odot(sd, kp, g.v), kp])


def random_element(sd: SemidirectProduct, rng: np.random.Generator, scale: float = 1.0) -> GroupElement:
    """A float group element ``(exp A, v)`` with Gaussian ``A`` and ``v``."""
    return exp_k(sd, scale * rng.standard_normal(sd.nk), scale * rng.standard_normal(sd.nv))


def exp_in(alg: LieAlgebra, x) -> np.ndarray:
    """``Ad(exp x) = exp(ad x)`` in floats for any algebra."""
    return expm(np.tensordot(np.asarray(x, dtype=float), alg.ad_basis.astype(float), axes=(0, 0)))


def sample_directions(basis, rng: np.random.Generator, samples: int) -> list[np.ndarray]:
    """Deterministic probes ``t * A`` for basis vectors ``A`` and ``t`` in {1, -1, 1/2, -1/2},
    followed by seeded random combinations, truncated to ``samples`` items."""
    vecs = [np.asarray(b, dtype=float) for b in basis]
    if not vecs or samples <= 0:
        return []
    out = [t * b for b in vecs for t in (1.0, -1.0, 0.5, -0.5)]
    m = np.array(vecs)
    while len(out) < samples:
        out.append(rng.standard_normal(len(vecs)) @ m)
    return out[:samples]
