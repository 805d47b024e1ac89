"""Brute-force isomorphism oracle: search symplectic basis changes directly.

This is deliberately independent of the classification code. Two algebras
A, B on the same symplectic space are isomorphic iff some symplectic S
carries the ternary form of A to that of B, i.e. change_basis(A, S) == B.

The search space is the symplectic group Sp(2n, p), generated by breadth-first
closure from the transvections x -> x + (x, v) v with v = e_i or e_i + e_j.
Closures are memoized per (n, p). When the group exceeds the element budget
only a partial search is possible, so a negative answer becomes
BudgetExceeded. In ``auto`` mode the monomial symplectic matrices (plane
permutations, swaps inside planes, torus scalings) are tried first; any
witness found there is still a genuine, verified isomorphism.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, change_basis, multiply
from .linalg import is_symplectic, standard_gram

DEFAULT_BUDGET = 2_000_000
SCAN_CHUNK = 1 << 16

YES, NO, BUDGET_EXCEEDED = "yes", "no", "budget_exceeded"


@dataclass(frozen=True)
class OracleConfig:
    budget: int = DEFAULT_BUDGET
    strategy: str = "auto"  # "auto" (monomial pre-pass, then closure) or "closure"
    chunk: int = SCAN_CHUNK


@dataclass
class IsoResult:
    status: str
    witness: np.ndarray | None = None
    method: str = ""
    searched: int = 0
    group_order: int | None = None  # set when the closure completed

    def __bool__(self):
        return self.status == YES

    def __str__(self):
        if self.status == YES:
            return f"isomorphic ({self.method})"
        if self.status == NO:
            return "non-isomorphic"
        return f"budget exceeded after {self.searched} elements"


# ---------------------------------------------------------------------------
# symplectic group elements


def symplectic_group_order(n: int, p: int) -> int:
    """|Sp(2n, p)| = p^(n^2) * prod_{i=1..n} (p^(2i) - 1)."""
    out = p ** (n * n)
    for i in range(1, n + 1):
        out *= p ** (2 * i) - 1
    return out


def transvection(v, p: int, a: int = 1) -> np.ndarray:
    """Matrix of x -> x + a (x, v) v in the standard basis."""
    v = np.asarray(v, dtype=np.int64) % p
    n = len(v) // 2
    Jv = standard_gram(n) @ v
    return (np.eye(len(v), dtype=np.int64) + a * np.outer(v, Jv)) % p


def transvection_generators(n: int) -> list[np.ndarray]:
    """The vectors e_i and e_i + e_j used as transvection directions."""
    d = 2 * n
    out = []
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        out.append(v)
    for i, j in itertools.combinations(range(d), 2):
        v = np.zeros(d, dtype=np.int64)
        v[i] = v[j] = 1
        out.append(v)
    return out


def random_symplectic(n: int, p: int, rng: np.random.Generator, steps: int | None = None) -> np.ndarray:
    """Product of random transvections (a random element of Sp(2n, p))."""
    d = 2 * n
    S = np.eye(d, dtype=np.int64)
    J = standard_gram(n)
    for _ in range(steps or 4 * d + 4):
        v = rng.integers(0, p, size=d)
        a = int(rng.integers(1, p)) if p > 2 else 1
        S = (S + a * np.outer(S @ v, J @ v)) % p
    return S


# ---------------------------------------------------------------------------
# encoding matrices as integers for the closure


class _Codec:
    """Base-p packing of flattened d x d matrices into rows of uint64 words."""

    def __init__(self, d: int, p: int):
        self.d, self.p = d, p
        self.per_word = max(1, int(63 // math.log2(p)) if p > 1 else 63)
        while p ** self.per_word >= 2**63:
            self.per_word -= 1
        size = d * d
        self.words = -(-size // self.per_word)
        self.pad = self.words * self.per_word - size
        self.powers = np.array([p**k for k in range(self.per_word)], dtype=np.uint64)

    def encode(self, M: np.ndarray) -> np.ndarray:
        flat = M.reshape(len(M), -1).astype(np.uint64)
        if self.pad:
            flat = np.hstack([flat, np.zeros((len(M), self.pad), dtype=np.uint64)])
        words = flat.reshape(len(M), self.words, self.per_word) @ self.powers
        if self.words == 1:
            return words[:, 0]
        return np.ascontiguousarray(words).view(np.dtype((np.void, 8 * self.words)))[:, 0]

    def decode(self, codes: np.ndarray) -> np.ndarray:
        if self.words == 1:
            words = codes.astype(np.uint64)[:, None]
        else:
            words = np.frombuffer(codes.tobytes(), dtype=np.uint64).reshape(len(codes), self.words)
        digits = np.empty((len(codes), self.words, self.per_word), dtype=np.int64)
        rest = words.copy()
        p = np.uint64(self.p)
        for k in range(self.per_word):
            digits[:, :, k] = (rest % p).astype(np.int64)
            rest //= p
        flat = digits.reshape(len(codes), -1)[:, : self.d * self.d]
        return flat.reshape(len(codes), self.d, self.d)


@dataclass
class GroupClosure:
    n: int
    p: int
    codes: np.ndarray  # sorted encodings of the elements found
    complete: bool
    budget: int
    codec: _Codec = field(repr=False)

    def __len__(self):
        return len(self.codes)

    def matrices(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        return self.codec.decode(self.codes[start:stop])


_CLOSURES: dict[tuple[int, int], GroupClosure] = {}


def symplectic_closure(n: int, p: int, budget: int = DEFAULT_BUDGET) -> GroupClosure:
    """All of Sp(2n, p) by BFS over right multiplication by transvections.

    Stops (complete=False) as soon as more than ``budget`` elements are known.
    """
    key = (n, p)
    cached = _CLOSURES.get(key)
    if cached is not None and cached.complete:
        if len(cached) <= budget:
            return cached
        return GroupClosure(n, p, cached.codes[: budget + 1], False, budget, cached.codec)
    if cached is not None and cached.budget >= budget:
        return cached
    d = 2 * n
    codec = _Codec(d, p)
    J = standard_gram(n)
    gens = [(v, J @ v) for v in transvection_generators(n)] if n else []
    visited = codec.encode(np.eye(d, dtype=np.int64)[None])
    frontier = visited.copy()
    complete = True
    while len(frontier):
        found = []
        for s in range(0, len(frontier), SCAN_CHUNK):
            X = codec.decode(frontier[s : s + SCAN_CHUNK])
            for v, Jv in gens:
                Y = (X + (X @ v)[:, :, None] * Jv[None, None, :]) % p
                found.append(codec.encode(Y))
        new = np.unique(np.concatenate(found))
        new = new[~np.isin(new, visited, assume_unique=True)]
        visited = np.union1d(visited, new)
        frontier = new
        if len(visited) > budget:
            complete = False
            break
    result = GroupClosure(n, p, visited, complete, budget, codec)
    _CLOSURES[key] = result
    return result


def clear_closure_cache():
    _CLOSURES.clear()


# ---------------------------------------------------------------------------
# monomial subgroup


def monomial_count(n: int, p: int) -> int:
    return math.factorial(n) * (2 * (p - 1)) ** n


def monomial_symplectic(n: int, p: int, chunk: int = SCAN_CHUNK):
    """Yield blocks of monomial symplectic matrices.

    Plane i goes to plane perm[i], either as (x, y) -> (a x', a^-1 y') or as
    (x, y) -> (a y', -a^-1 x').
    """
    d = 2 * n
    inv = [0] + [pow(a, -1, p) for a in range(1, p)]
    per_plane = 2 * (p - 1)
    total = per_plane**n
    for perm in itertools.permutations(range(n)):
        for s in range(0, total, chunk):
            idx = np.arange(s, min(total, s + chunk))
            S = np.zeros((len(idx), d, d), dtype=np.int64)
            rest = idx.copy()
            rows = np.arange(len(idx))
            for i in range(n):
                c = rest % per_plane
                rest //= per_plane
                swap = c >= p - 1
                a = c % (p - 1) + 1
                ainv = np.array(inv)[a]
                t = perm[i]
                x_i, y_i, x_t, y_t = 2 * i, 2 * i + 1, 2 * t, 2 * t + 1
                S[rows[~swap], x_t, x_i] = a[~swap]
                S[rows[~swap], y_t, y_i] = ainv[~swap]
                S[rows[swap], y_t, x_i] = a[swap]
                S[rows[swap], x_t, y_i] = (-ainv[swap]) % p
            yield S


# ---------------------------------------------------------------------------
# scanning candidate basis changes


def _scan(phiA: np.ndarray, target: np.ndarray, S: np.ndarray, p: int, order) -> int | None:
    """Index of the first S (in block order) carrying phiA to the target form."""
    alive = np.arange(len(S))
    for i, j, k in order:
        if not len(alive):
            return None
        Si = S[alive]
        T1 = np.einsum("na,abc->nbc", Si[:, :, i], phiA) % p
        T2 = np.einsum("nb,nbc->nc", Si[:, :, j], T1) % p
        val = np.einsum("nc,nc->n", Si[:, :, k], T2) % p
        alive = alive[val == target[i, j, k]]
    return int(alive[0]) if len(alive) else None


def _triple_order(phiB: np.ndarray):
    d = phiB.shape[0]
    trip = list(itertools.combinations(range(d), 3))
    return [t for t in trip if phiB[t]] + [t for t in trip if not phiB[t]]


def verify_witness(A: Algebra, B: Algebra, S) -> bool:
    """S symplectic, and e_k -> S e_k maps products of B to products of A."""
    S = np.asarray(S, dtype=np.int64) % A.p
    if S.shape != (A.dim, A.dim) or not is_symplectic(S, A.p):
        return False
    p = A.p
    for i in range(B.dim):
        for j in range(B.dim):
            ei = np.zeros(B.dim, dtype=np.int64)
            ej = np.zeros(B.dim, dtype=np.int64)
            ei[i], ej[j] = 1, 1
            lhs = S @ multiply(B, ei, ej) % p
            rhs = multiply(A, S[:, i], S[:, j])
            if not np.array_equal(lhs, rhs):
                return False
    return change_basis(A, S) == B


def brute_force_isomorphic(A: Algebra, B: Algebra, budget: int = DEFAULT_BUDGET,
                           strategy: str = "auto", chunk: int = SCAN_CHUNK) -> IsoResult:
    """Search Sp(2n, p) for S with change_basis(A, S) == B.

    Returns Yes with a verified witness, No only after an exhaustive search of
    the complete group, and BudgetExceeded otherwise.
    """
    if A.p != B.p or A.n != B.n:
        raise ValueError("algebras must share the field and the dimension")
    if strategy not in ("auto", "closure"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if A.p >= 1 << 26:
        raise ValueError("the brute-force oracle is for small primes only")
    n, p, d = A.n, A.p, A.dim
    I = np.eye(d, dtype=np.int64)
    if A == B:
        return IsoResult(YES, I, "identity", 1, None)
    phiA = np.asarray(A.phi, dtype=np.int64) % p
    phiB = np.asarray(B.phi, dtype=np.int64) % p
    order = _triple_order(phiB)

    def found(S, method, searched, group_order=None):
        if not verify_witness(A, B, S):
            raise AssertionError("oracle produced an invalid witness")
        return IsoResult(YES, S, method, searched, group_order)

    searched = 0
    if strategy == "auto":
        limit = min(budget, monomial_count(n, p))
        for block in monomial_symplectic(n, p, chunk):
            block = block[: max(0, limit - searched)]
            if not len(block):
                break
            hit = _scan(phiA, phiB, block, p, order)
            if hit is not None:
                return found(block[hit], "monomial", searched + hit + 1)
            searched += len(block)

    G = symplectic_closure(n, p, budget)
    for s in range(0, len(G), chunk):
        block = G.matrices(s, s + chunk)
        hit = _scan(phiA, phiB, block, p, order)
        if hit is not None:
            return found(block[hit], "closure", searched + s + hit + 1,
                         len(G) if G.complete else None)
    searched += len(G)
    if G.complete:
        return IsoResult(NO, None, "closure", searched, len(G))
    return IsoResult(BUDGET_EXCEEDED, None, "closure", searched, None)
