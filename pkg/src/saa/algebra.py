"""Symplectic alternating algebras given by an alternating ternary form.

An algebra of dimension 2n over GF(p) is stored as the full trilinear tensor
``phi[a, b, c] = (e_a e_b, e_c)`` on the standard basis (0-based indices,
e_{2i} = x_{i+1}, e_{2i+1} = y_{i+1}). Products follow in closed form: the
x_j-coordinate of u.v is phi(u, v, y_j) and the y_j-coordinate is
-phi(u, v, x_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping

import numpy as np

from .field import PrimeField
from .linalg import (
    DimensionMismatch,
    Subspace,
    gram_of,
    is_symplectic,
    kernel,
    pairing,
    perp,
    standard_gram,
)


class NotNilpotentError(ValueError):
    pass


class NotAnIdealError(ValueError):
    pass


def basis_label(a: int) -> str:
    """Name of the 0-based basis index a, e.g. 0 -> 'x1', 3 -> 'y2'."""
    return ("x" if a % 2 == 0 else "y") + str(a // 2 + 1)


@dataclass(frozen=True)
class TernaryForm:
    """Nonzero values gamma_abc = (e_a e_b, e_c) on 1-based triples a < b < c."""

    p: int
    n: int
    values: tuple[tuple[tuple[int, int, int], int], ...]

    @classmethod
    def from_dict(cls, p: int, n: int, values: Mapping[tuple[int, int, int], int]) -> TernaryForm:
        items = []
        for key, v in values.items():
            a, b, c = key
            if not (1 <= a < b < c <= 2 * n):
                raise ValueError(f"triple {key} is not strictly increasing in 1..{2 * n}")
            v = int(v) % p
            if v:
                items.append(((a, b, c), v))
        return cls(p, n, tuple(sorted(items)))

    def as_dict(self) -> dict[tuple[int, int, int], int]:
        return dict(self.values)

    def tensor(self) -> np.ndarray:
        d = 2 * self.n
        phi = np.zeros((d, d, d), dtype=np.int64)
        for (a, b, c), v in self.values:
            a, b, c = a - 1, b - 1, c - 1
            m = (-v) % self.p
            phi[a, b, c] = phi[b, c, a] = phi[c, a, b] = v
            phi[b, a, c] = phi[a, c, b] = phi[c, b, a] = m
        return phi


def _products_from_phi(phi: np.ndarray, p: int) -> np.ndarray:
    table = np.empty_like(phi)
    table[..., 0::2] = phi[..., 1::2]
    table[..., 1::2] = -phi[..., 0::2]
    return table % p


@dataclass(frozen=True, eq=False)
class Algebra:
    """A symplectic alternating algebra of dimension 2n over GF(p)."""

    field: PrimeField
    n: int
    phi: np.ndarray = field(repr=False)

    def __init__(self, F, n: int, form: TernaryForm | Mapping | None = None):
        F = F if isinstance(F, PrimeField) else PrimeField(F)
        if form is None:
            form = {}
        if not isinstance(form, TernaryForm):
            form = TernaryForm.from_dict(F.p, n, form)
        if form.p != F.p or form.n != n:
            raise DimensionMismatch("ternary form does not match field/dimension")
        phi = form.tensor()
        phi.setflags(write=False)
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_trilinear(cls, F, n: int, phi) -> Algebra:
        """Wrap a raw (2n)^3 tensor without any symmetry checks (see check_axioms)."""
        F = F if isinstance(F, PrimeField) else PrimeField(F)
        self = cls.__new__(cls)
        phi = np.array(phi, dtype=np.int64) % F.p
        if phi.shape != (2 * n,) * 3:
            raise DimensionMismatch(f"expected shape {(2 * n,) * 3}, got {phi.shape}")
        phi.setflags(write=False)
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phi", phi)
        return self

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def table(self) -> np.ndarray:
        """table[a, b] is the coordinate vector of e_a e_b."""
        t = _products_from_phi(self.phi, self.p)
        t.setflags(write=False)
        return t

    @cached_property
    def form(self) -> TernaryForm:
        d = self.dim
        vals = {}
        for a, b, c in combinations(range(d), 3):
            v = int(self.phi[a, b, c])
            if v:
                vals[(a + 1, b + 1, c + 1)] = v
        return TernaryForm.from_dict(self.p, self.n, vals)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.p == other.p and self.n == other.n and np.array_equal(self.phi, other.phi)

    def __hash__(self):
        return hash((self.p, self.n, self.phi.tobytes()))

    def __repr__(self):
        terms = ", ".join(
            f"({basis_label(a - 1)}{basis_label(b - 1)},{basis_label(c - 1)})={v}"
            for (a, b, c), v in self.form.values)
        return f"Algebra(GF({self.p}), dim={self.dim}, {{{terms}}})"

    def full(self) -> Subspace:
        return Subspace.full(self.p, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.p, self.dim)

    def span(self, rows) -> Subspace:
        return Subspace.span(rows, self.p, self.dim)

    def vector(self, **coords) -> np.ndarray:
        """Vector from named coordinates, e.g. A.vector(x1=1, y3=2)."""
        v = np.zeros(self.dim, dtype=np.int64)
        for name, c in coords.items():
            i = int(name[1:]) - 1
            v[2 * i + (name[0] == "y")] = c
        return v % self.p

    def basis_vector(self, name: str) -> np.ndarray:
        return self.vector(**{name: 1})

    @cached_property
    def series(self) -> SeriesReport:
        return series_report(self)


def multiply(A: Algebra, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != (A.dim,) or v.shape != (A.dim,):
        raise DimensionMismatch(f"vectors must have length {A.dim}")
    return (v @ (u @ A.table.reshape(A.dim, -1)).reshape(A.dim, A.dim)) % A.p


def phi_eval(A: Algebra, u, v, w) -> int:
    """The ternary form (u v, w)."""
    return pairing(multiply(A, u, v), w, A.p)


def product_rows(A: Algebra, U, V) -> np.ndarray:
    """All products u_i v_j of rows of U and V, as a (len(U)*len(V), dim) array."""
    d = A.dim
    U = np.asarray(U, dtype=np.int64).reshape(-1, d)
    V = np.asarray(V, dtype=np.int64).reshape(-1, d)
    UT = (U @ A.table.reshape(d, d * d)).reshape(-1, d, d) % A.p
    return np.matmul(V, UT).reshape(-1, d) % A.p


def subspace_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    if not U.dim or not V.dim:
        return A.zero()
    return A.span(product_rows(A, U.basis, V.basis))


def is_ideal(A: Algebra, I: Subspace) -> bool:
    return subspace_product(A, I, A.full()) <= I


def lower_central_series(A: Algebra) -> list[Subspace]:
    """[L^1, L^2, ...] ending at {0} or at the first repeated term."""
    L = A.full()
    terms = [L]
    for _ in range(A.dim + 1):
        cur = terms[-1]
        if not cur.dim:
            break
        nxt = subspace_product(A, cur, L)
        if nxt == cur:
            break
        terms.append(nxt)
    return terms


def _next_upper(A: Algebra, Z: Subspace) -> Subspace:
    """{x : x e_j in Z for every basis vector e_j}."""
    d, p = A.dim, A.p
    red = np.eye(d, dtype=np.int64)
    for i, c in enumerate(Z.pivots):
        red[c] = (red[c] - Z.basis[i]) % p
    big = np.einsum("ajc,ce->aje", A.table, red).reshape(d, d * d) % p
    return A.span(kernel(big.T, p))


def upper_central_series(A: Algebra, method: str = "direct") -> list[Subspace]:
    """[Z_0, Z_1, ...] ending at L or at the first repeated term."""
    if method == "dual":
        return [perp(T) for T in lower_central_series(A)]
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    terms = [A.zero()]
    for _ in range(A.dim + 1):
        cur = terms[-1]
        if cur.dim == A.dim:
            break
        nxt = _next_upper(A, cur)
        if nxt == cur:
            break
        terms.append(nxt)
    return terms


def nilpotency_class(A: Algebra) -> int | None:
    """Least c with L^{c+1} = 0, or None when the algebra is not nilpotent."""
    lcs = A.series.lcs
    if lcs[-1].dim:
        return None
    return len(lcs) - 1


def is_nilpotent(A: Algebra) -> bool:
    return nilpotency_class(A) is not None


def center(A: Algebra) -> Subspace:
    return _next_upper(A, A.zero())


@dataclass(frozen=True)
class SeriesReport:
    lcs: list[Subspace]
    ucs: list[Subspace]
    nilpotency_class: int | None
    rank: int

    @property
    def lcs_dims(self) -> list[int]:
        return [T.dim for T in self.lcs]

    @property
    def ucs_dims(self) -> list[int]:
        return [T.dim for T in self.ucs]


def series_report(A: Algebra) -> SeriesReport:
    lcs = lower_central_series(A)
    ucs = upper_central_series(A, "direct")
    cls = len(lcs) - 1 if not lcs[-1].dim else None
    rank = A.dim - (lcs[1].dim if len(lcs) > 1 else lcs[0].dim)
    return SeriesReport(lcs, ucs, cls, rank)


def lcs_term(A: Algebra, m: int) -> Subspace:
    """L^m for m >= 1 (stable beyond the computed series)."""
    lcs = A.series.lcs
    if m < 1:
        raise ValueError("m must be >= 1")
    if m <= len(lcs):
        return lcs[m - 1]
    return lcs[-1]


def ucs_term(A: Algebra, m: int) -> Subspace:
    ucs = A.series.ucs
    return ucs[min(m, len(ucs) - 1)]


def check_axioms(A: Algebra) -> bool:
    """Audit the defining identities on all basis triples.

    Checks that the product is alternating, that (e_a e_b, e_c) is totally
    antisymmetric, and the cyclic identity (u.v, w) = (v.w, u).
    """
    p, d = A.p, A.dim
    phi = A.phi % p
    if not np.array_equal(phi, (-phi.transpose(1, 0, 2)) % p):
        return False
    if not np.array_equal(phi, (-phi.transpose(0, 2, 1)) % p):
        return False
    T = A.table
    if any(T[a, a].any() for a in range(d)):
        return False
    # P[a, b, c] = (e_a e_b, e_c)
    P = (T @ standard_gram(A.n)) % p
    return bool(np.array_equal(P, P.transpose(2, 0, 1)))


def _left_normed_triples(A: Algebra) -> np.ndarray:
    """X[a, b, c] = (e_a e_b) e_c."""
    return np.einsum("abk,kcl->abcl", A.table, A.table) % A.p


def is_lie(A: Algebra) -> bool:
    X = _left_normed_triples(A)
    jac = X + X.transpose(2, 0, 1, 3) + X.transpose(1, 2, 0, 3)
    return not (jac % A.p).any()


def is_associative(A: Algebra) -> bool:
    X = _left_normed_triples(A)
    Y = np.einsum("bck,akl->abcl", A.table, A.table) % A.p
    return bool(np.array_equal(X, Y))


def change_basis(A: Algebra, S, check: bool = True) -> Algebra:
    """The algebra in the standard basis given by the columns of S.

    The result has (f_a f_b, f_c) = phi(S e_a, S e_b, S e_c); the map
    e_k -> S e_k is then an isomorphism from the result onto A.
    """
    S = np.asarray(S, dtype=np.int64) % A.p
    if check and not is_symplectic(S, A.p):
        raise ValueError("basis change is not symplectic")
    phi = np.einsum("abc,ai,bj,ck->ijk", A.phi, S, S, S, optimize=True) % A.p
    return Algebra.from_trilinear(A.field, A.n, phi)


def symplectic_basis(rows, p: int) -> np.ndarray:
    """Greedy symplectic Gram-Schmidt on rows spanning a nondegenerate space.

    Returns rows x_1, y_1, ..., x_m, y_m. At each step x is the first
    remaining row and y the first later row pairing nontrivially with it.
    """
    pool = [np.asarray(r, dtype=np.int64) % p for r in rows]
    out = []
    while pool:
        u = pool.pop(0)
        if not u.any():
            continue
        for t, w in enumerate(pool):
            c = pairing(u, w, p)
            if c:
                break
        else:
            raise ValueError("form is degenerate on the given rows")
        v = pool.pop(t) * pow(c, -1, p) % p
        out += [u, v]
        pool = [(w - pairing(w, v, p) * u + pairing(w, u, p) * v) % p for w in pool]
    return np.array(out, dtype=np.int64).reshape(-1, len(rows[0]) if len(rows) else 0)


def quotient_basis(A: Algebra, I: Subspace) -> np.ndarray:
    """Standard basis rows of a complement of I meet I^perp inside I^perp."""
    W = perp(I)
    K = I & W
    C = W.complement_rows(K)
    if not len(C):
        return np.zeros((0, A.dim), dtype=np.int64)
    return symplectic_basis(C, A.p)


def induced_quotient(A: Algebra, I: Subspace) -> Algebra:
    """The algebra I^perp / (I meet I^perp) with the induced form and product."""
    if not is_ideal(A, I):
        raise NotAnIdealError("subspace is not an ideal")
    B = quotient_basis(A, I)
    m = len(B) // 2
    if m == 0:
        return Algebra(A.field, 0)
    phi = np.einsum("abc,ia,jb,kc->ijk", A.phi, B, B, B, optimize=True) % A.p
    return Algebra.from_trilinear(A.field, m, phi)


def is_abelian(A: Algebra) -> bool:
    return not A.phi.any()


def is_isotropic_subspace(U: Subspace) -> bool:
    return not gram_of(U.basis, U.p).any() if U.dim else True
