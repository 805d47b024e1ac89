"""Vectorized classification of whole blocks of presentations (n <= 4).

Used by the census, where millions of presentations are classified. Labels
come from dim L^2 and, in maximal class, from the cube coset of
Q = (y3 y4 y3, y3 y4 y4), since y3, y4 span L modulo L^2 in any presentation
of maximal class. Agreement with classify_small is covered by the tests.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .classify import ClassLabel, ClassificationError
from .field import PrimeField
from .presentation import num_parameters, triples

CHUNK = 1 << 15


@lru_cache(maxsize=None)
def _scatter(n: int):
    """For each parameter, the six (a, b, c, sign) tensor slots it fills."""
    keys = triples(n)
    slots = []
    for kind in ("x", "y"):
        for i, j, k in keys:
            a = 2 * (i - 1) + (kind == "y")
            b, c = 2 * (j - 1) + 1, 2 * (k - 1) + 1
            slots.append([(a, b, c, 1), (b, c, a, 1), (c, a, b, 1),
                          (b, a, c, -1), (a, c, b, -1), (c, b, a, -1)])
    return slots


def decode(indices: np.ndarray, n: int, p: int) -> np.ndarray:
    """Parameter vectors for enumeration indices (first parameter most significant)."""
    m = num_parameters(n)
    out = np.empty((len(indices), m), dtype=np.int64)
    rest = indices.astype(np.int64)
    for t in range(m - 1, -1, -1):
        out[:, t] = rest % p
        rest //= p
    return out


def product_tensors(params: np.ndarray, n: int, p: int) -> np.ndarray:
    """T[s, a, b] = e_a e_b for each presentation s."""
    d = 2 * n
    N = len(params)
    phi = np.zeros((N, d, d, d), dtype=np.int64)
    for t, slots in enumerate(_scatter(n)):
        for a, b, c, sign in slots:
            phi[:, a, b, c] = sign * params[:, t]
    T = np.empty_like(phi)
    T[..., 0::2] = phi[..., 1::2]
    T[..., 1::2] = -phi[..., 0::2]
    return T % p


def batch_rank(M: np.ndarray, p: int) -> np.ndarray:
    """Rank mod p of each matrix M[s] (shape (N, rows, cols))."""
    A = (M % p).astype(np.int32)
    N, R, C = A.shape
    inv = np.array(PrimeField(p).inverse_table, dtype=np.int32)
    rk = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    rows = np.arange(R)
    for c in range(C):
        cand = (A[:, :, c] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        tgt = np.minimum(rk, R - 1)
        piv = np.where(has, np.argmax(cand, axis=1), tgt)
        prow = A[ar, piv]
        A[ar, piv] = A[ar, tgt]
        # inv[0] == 0, so rows without a pivot eliminate nothing
        prow = prow * inv[prow[:, c]][:, None] % p
        A[ar, tgt] = np.where(has[:, None], prow, A[ar, tgt])
        f = A[:, :, c].copy()
        f[ar, tgt] = 0
        A -= f[:, :, None] * prow[:, None, :]
        A %= p
        rk += has
    return rk


@lru_cache(maxsize=None)
def _live_pairs(n: int):
    """Index pairs a < b whose product can be nonzero in some presentation."""
    live = set()
    for slots in _scatter(n):
        for a, b, c, _ in slots:
            live.add((min(a, b), max(a, b)))
    pairs = sorted(live)
    return np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])


def _pair(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return ((u[:, 0::2] * v[:, 1::2]).sum(1) - (u[:, 1::2] * v[:, 0::2]).sum(1)) % p


def _code_label(code: int, n: int) -> ClassLabel:
    if code == 0:
        return ClassLabel("Abelian", 2 * n)
    if code == 1:
        return ClassLabel("N6", 6)
    if code == 2:
        return ClassLabel("L2", 8)
    if code == 3:
        return ClassLabel("L3", 8)
    return ClassLabel("Lr", 8, code - 4)


def classify_codes(params: np.ndarray, n: int, p: int) -> np.ndarray:
    """Integer class codes: 0 abelian, 1 N6, 2 L2, 3 L3, 4 + r for Lr(r)."""
    N = len(params)
    codes = np.zeros(N, dtype=np.int64)
    if n <= 2:
        return codes
    T = product_tensors(params, n, p)
    iu, ju = _live_pairs(n)
    dim_L2 = batch_rank(T[:, iu, ju, :], p)
    if n == 3:
        codes[dim_L2 == 3] = 1
        known = (dim_L2 == 0) | (dim_L2 == 3)
    elif n == 4:
        codes[dim_L2 == 3] = 2
        codes[dim_L2 == 5] = 3
        mx = np.flatnonzero(dim_L2 == 6)
        if len(mx):
            Tm = T[mx]
            y3, y4 = 5, 7
            v = Tm[:, y3, y4, :]
            w1 = np.einsum("na,nac->nc", v, Tm[:, :, y3, :]) % p
            w2 = np.einsum("na,nac->nc", v, Tm[:, :, y4, :]) % p
            Q = _pair(w1, w2, p)
            if (Q == 0).any():
                raise ClassificationError("cube invariant vanished in maximal class")
            F = PrimeField(p)
            reps = np.array([0] + [F.cube_coset_rep(q * q) for q in range(1, p)])
            codes[mx] = 4 + reps[Q]
        known = np.isin(dim_L2, [0, 3, 5, 6])
    else:
        raise ValueError("batch classification covers n <= 4")
    if not known.all():
        bad = int(dim_L2[~known][0])
        raise ClassificationError(f"impossible dim L^2 = {bad} for n = {n}")
    return codes


def classify_params(params: np.ndarray, n: int, p: int) -> list[ClassLabel]:
    """Labels for a block of presentations given as parameter rows."""
    return [_code_label(int(c), n) for c in classify_codes(np.asarray(params), n, p)]


def census_counts(n: int, p: int, lo: int, hi: int):
    """(counts, first index) per label over enumeration indices [lo, hi)."""
    counts, first = {}, {}
    for start in range(lo, hi, CHUNK):
        idx = np.arange(start, min(hi, start + CHUNK))
        codes = classify_codes(decode(idx, n, p), n, p)
        uniq, pos, k = np.unique(codes, return_index=True, return_counts=True)
        for code, f, c in zip(uniq, pos, k):
            lab = _code_label(int(code), n)
            counts[lab] = counts.get(lab, 0) + int(c)
            first.setdefault(lab, int(idx[f]))
    return counts, first


def left_normed_cubes(params: np.ndarray, n: int, p: int) -> np.ndarray:
    """X[s, a, b, c] = (e_a e_b) e_c for each presentation s, NOT reduced mod p.

    Entries are sums of 2n products of residues; the matmul runs in float32,
    which is exact below 2^24, and the result is returned as int32.
    """
    d = 2 * n
    if 3 * d * (p - 1) ** 2 >= 1 << 24:
        raise ValueError("prime too large for the float32 path")
    T = product_tensors(params, n, p).astype(np.float32)
    X = np.matmul(T.reshape(len(T), d * d, d), T.reshape(len(T), d, d * d))
    return X.astype(np.int32).reshape(len(T), d, d, d, d)


def lie_assoc_cube_counts(n: int, p: int, lo: int = 0, hi: int | None = None,
                   chunk: int = 1 << 12) -> dict[str, int]:
    """Count Lie / associative algebras, and those of them with L^3 != 0."""
    total = p ** num_parameters(n)
    hi = total if hi is None else hi
    # entries are >= 0, so divisibility by p is a table lookup
    nonzero = (np.arange(3 * 2 * n * (p - 1) ** 2 + 1) % p) != 0
    out = {"total": 0, "lie": 0, "associative": 0, "violations": 0}
    for start in range(lo, hi, chunk):
        idx = np.arange(start, min(hi, start + chunk))
        X = left_normed_cubes(decode(idx, n, p), n, p)
        N = len(X)
        bca = X.transpose(0, 3, 1, 2, 4)  # [a, b, c] -> (e_b e_c) e_a
        cab = X.transpose(0, 2, 3, 1, 4)
        two = X + bca
        lie = ~nonzero[two + cab].reshape(N, -1).any(axis=1)
        # e_a (e_b e_c) = -(e_b e_c) e_a
        assoc = ~nonzero[two].reshape(N, -1).any(axis=1)
        cube_zero = ~nonzero[X].reshape(N, -1).any(axis=1)
        out["total"] += N
        out["lie"] += int(lie.sum())
        out["associative"] += int(assoc.sum())
        out["violations"] += int(((lie | assoc) & ~cube_zero).sum())
    return out
