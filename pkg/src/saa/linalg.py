"""Dense exact linear algebra over GF(p) on numpy int64 arrays.

Vectors are coordinate rows in the basis e_1..e_2n, where e_{2i-1} = x_i and
e_{2i} = y_i. Subspaces are stored in reduced row-echelon form with zero rows
pruned, so two Subspace objects are equal iff they span the same space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .field import inverse_mod


class DimensionMismatch(ValueError):
    pass


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, cols or 0), dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2d matrix")
    if cols is not None and a.shape[1] != cols and a.shape[0]:
        raise DimensionMismatch(f"expected {cols} columns, got {a.shape[1]}")
    if cols is not None and a.shape[0] == 0:
        a = np.zeros((0, cols), dtype=np.int64)
    return a % p


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form mod p with zero rows dropped, plus pivot columns."""
    A = as_matrix(m, p)
    A = A[A.any(axis=1)]
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = A[r:, c].nonzero()[0]
        if not len(nz):
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        if A[r, c] != 1:
            A[r] = A[r] * inverse_mod(int(A[r, c]), p) % p
        col = A[:, c]
        hit = col.nonzero()[0]
        if len(hit) > 1:
            hit = hit[hit != r]
            A[hit] = (A[hit] - col[hit, None] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


def kernel(m, p: int) -> np.ndarray:
    """Rows spanning {x : m @ x == 0}, one per free column."""
    A = as_matrix(m, p)
    cols = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, c in enumerate(pivots):
            K[t, c] = -R[i, f] % p
    return K


def solve(A, b, p: int) -> np.ndarray | None:
    """A particular solution of A x = b with all free variables zero, or None."""
    A = as_matrix(A, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    cols = A.shape[1]
    R, pivots = rref(np.hstack([A, b]), p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    return x


@lru_cache(maxsize=None)
def _gram(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    J.setflags(write=False)
    return J


def standard_gram(n: int) -> np.ndarray:
    """Gram matrix of the standard basis x_1, y_1, ..., x_n, y_n (integer entries)."""
    return _gram(n)


def pairing(u, v, p: int) -> int:
    """The symplectic form (u, v) in the standard basis."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return int((u[0::2] @ v[1::2] - u[1::2] @ v[0::2]) % p)


def gram_of(rows, p: int) -> np.ndarray:
    """Matrix of pairings (r_i, r_j) for the given rows."""
    R = np.asarray(rows, dtype=np.int64)
    n = R.shape[1] // 2
    return (R @ standard_gram(n) @ R.T) % p


def is_symplectic(S, p: int) -> bool:
    """True iff the columns of S form a standard basis."""
    S = np.asarray(S, dtype=np.int64) % p
    d = S.shape[0]
    if S.shape != (d, d) or d % 2:
        return False
    J = standard_gram(d // 2)
    return bool(np.array_equal((S.T @ J @ S) % p, J % p))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^ambient in canonical reduced row-echelon form."""

    p: int
    ambient: int
    basis: np.ndarray = field(repr=False)
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, rows, p: int, ambient: int) -> Subspace:
        R, piv = rref(as_matrix(rows, p, ambient), p)
        R.setflags(write=False)
        return cls(p, ambient, R, piv)

    @classmethod
    def zero(cls, p: int, ambient: int) -> Subspace:
        return cls.span(np.zeros((0, ambient), dtype=np.int64), p, ambient)

    @classmethod
    def full(cls, p: int, ambient: int) -> Subspace:
        return cls.span(np.eye(ambient, dtype=np.int64), p, ambient)

    @classmethod
    def coordinate(cls, indices, p: int, ambient: int) -> Subspace:
        """Span of basis vectors e_i for 0-based indices i."""
        rows = np.zeros((len(indices), ambient), dtype=np.int64)
        for t, i in enumerate(indices):
            rows[t, i] = 1
        return cls.span(rows, p, ambient)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p, self.ambient, self.pivots) == (other.p, other.ambient, other.pivots) and \
            np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.p, self.ambient, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def _check(self, other: Subspace):
        if (self.p, self.ambient) != (other.p, other.ambient):
            raise DimensionMismatch(
                f"GF({self.p})^{self.ambient} vs GF({other.p})^{other.ambient}")

    def reduce(self, v) -> np.ndarray:
        """Reduce vector(s) modulo this subspace; result vanishes on pivot columns."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.dim:
            return v
        coeffs = v[..., list(self.pivots)]
        return (v - coeffs @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        return self.dim <= other.dim and not other.reduce(self.basis).any()

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def first_outside(self, other: Subspace) -> np.ndarray | None:
        """First basis row (lowest pivot) of self not lying in other."""
        for row in self.basis:
            if not other.contains(row):
                return row.copy()
        return None

    def complement_rows(self, sub: Subspace) -> np.ndarray:
        """Rows of self's basis extending sub's span to self, greedily by pivot."""
        rows = []
        acc = sub
        for row in self.basis:
            if not acc.contains(row):
                rows.append(row)
                acc = acc + Subspace.span(row, self.p, self.ambient)
        return np.array(rows, dtype=np.int64).reshape(-1, self.ambient)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    return Subspace.span(np.vstack([U.basis, V.basis]), U.p, U.ambient)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    """U meet V via the kernel of [U^T | -V^T]."""
    U._check(V)
    p = U.p
    if not U.dim or not V.dim:
        return Subspace.zero(p, U.ambient)
    M = np.hstack([U.basis.T, -V.basis.T])
    K = kernel(M, p)
    return Subspace.span(K[:, :U.dim] @ U.basis, p, U.ambient)


def perp(U: Subspace, gram=None) -> Subspace:
    """{v : (u, v) = 0 for all u in U}; the form defaults to the standard one."""
    p, d = U.p, U.ambient
    if not U.dim:
        return Subspace.full(p, d)
    g = standard_gram(d // 2) if gram is None else np.asarray(gram, dtype=np.int64)
    K = kernel(U.basis @ g, p)
    return Subspace.span(K, p, d)


def is_isotropic(U: Subspace) -> bool:
    return not gram_of(U.basis, U.p).any() if U.dim else True
