"""Invariants and the classification of nilpotent algebras of dimension <= 8."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .algebra import (
    Algebra,
    NotNilpotentError,
    center,
    change_basis,
    induced_quotient,
    is_abelian,
    multiply,
    nilpotency_class,
    phi_eval,
    subspace_product,
)
from .field import PrimeField
from .linalg import Subspace, gram_of, is_isotropic, pairing, perp, solve, standard_gram
from .presentation import (
    NilpotentPresentation,
    adapted_basis,
    build_algebra,
    build_isotropic_chain,
    catalogue_presentation,
    extract_presentation,
    num_parameters,
    read_presentation,
)


class UnsupportedDimension(ValueError):
    pass


class ClassificationError(RuntimeError):
    """An input contradicted a structural fact that should always hold."""


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"needs {required} presentations, budget is {budget}")
        self.required = required
        self.budget = budget


DEFAULT_ENUM_BUDGET = 10**7


@dataclass(frozen=True)
class Fingerprint:
    lcs_dims: tuple[int, ...]
    ucs_dims: tuple[int, ...]
    nilpotency_class: int | None
    dim_center: int
    center_isotropic: bool
    dim_L2L2: int
    rank: int

    def summary(self) -> str:
        return (f"lcs {' '.join(map(str, self.lcs_dims))}; class {self.nilpotency_class}; "
                f"center {self.dim_center}{'i' if self.center_isotropic else ''}; "
                f"L2L2 {self.dim_L2L2}")


def fingerprint(A: Algebra) -> Fingerprint:
    rep = A.series
    L2 = rep.lcs[1] if len(rep.lcs) > 1 else rep.lcs[0]
    Z = center(A)
    return Fingerprint(
        lcs_dims=tuple(rep.lcs_dims),
        ucs_dims=tuple(rep.ucs_dims),
        nilpotency_class=rep.nilpotency_class,
        dim_center=Z.dim,
        center_isotropic=is_isotropic(Z),
        dim_L2L2=subspace_product(A, L2, L2).dim,
        rank=rep.rank,
    )


_TAG_ORDER = {"Abelian": 0, "N6": 1, "L2": 2, "L3": 3, "Lr": 4}


@total_ordering
@dataclass(frozen=True)
class ClassLabel:
    tag: str
    dim: int
    param: int | None = None

    def __str__(self):
        if self.tag == "Abelian":
            return f"Abelian({self.dim})"
        if self.tag == "Lr":
            return f"Lr({self.param})"
        return self.tag

    def _key(self):
        return (self.dim, _TAG_ORDER[self.tag], self.param or 0)

    def __lt__(self, other):
        return self._key() < other._key()

    @classmethod
    def parse(cls, text: str) -> ClassLabel:
        text = text.strip()
        if text.startswith("Abelian(") and text.endswith(")"):
            return cls("Abelian", int(text[8:-1]))
        if text.startswith("Lr(") and text.endswith(")"):
            return cls("Lr", 8, int(text[3:-1]))
        if text == "N6":
            return cls("N6", 6)
        if text in ("L2", "L3"):
            return cls(text, 8)
        raise ValueError(f"not a class label: {text!r}")


def _hyperbolic_pair(U: Subspace):
    """u, v in U with (u, v) = 1, or None if U is isotropic."""
    G = gram_of(U.basis, U.p)
    hits = np.argwhere(G)
    if not len(hits):
        return None
    i, j = hits[0]
    u, v = U.basis[i], U.basis[j]
    return u, v * pow(int(G[i, j]), -1, U.p) % U.p


def _columns(S):
    return [S[:, k].copy() for k in range(S.shape[1])]


def _matrix(cols):
    return np.stack(cols, axis=1)


def normalize_dim6(A: Algebra):
    """Basis change S with change_basis(A, S) == P1 (A nilpotent, non-abelian, dim 6)."""
    p = A.p
    P, S = extract_presentation(A)
    x1, y1, x2, y2, x3, y3 = _columns(S)
    a = phi_eval(A, x1, y2, y3)
    b = phi_eval(A, y1, y2, y3)
    if b == 0:
        x1, y1 = (-y1) % p, x1
        a, b = phi_eval(A, x1, y2, y3), phi_eval(A, y1, y2, y3)
    if b == 0:
        raise ClassificationError("dim-6 presentation has no nonzero triple")
    x3, y3 = x3 * b % p, y3 * pow(b, -1, p) % p
    a = phi_eval(A, x1, y2, y3)
    x1 = (x1 - a * y1) % p
    S = _matrix([x1, y1, x2, y2, x3, y3])
    target = build_algebra(catalogue_presentation("P1", A.field), check=False)
    if change_basis(A, S) != target:
        raise ClassificationError("dim-6 normalization did not reach P1")
    return S


def _normalize_L2(A: Algebra, Z: Subspace):
    pair = _hyperbolic_pair(Z)
    if pair is None:
        raise ClassificationError("a 5-dimensional center must be non-isotropic")
    u, v = pair
    I = A.span(np.vstack([u, v]))
    from .algebra import quotient_basis
    B = quotient_basis(A, I)
    Q = induced_quotient(A, I)
    if is_abelian(Q) or nilpotency_class(Q) is None:
        raise ClassificationError("complement of the central plane must be N6")
    S6 = normalize_dim6(Q)
    S = np.hstack([(B.T @ S6) % A.p, u.reshape(-1, 1), v.reshape(-1, 1)]) % A.p
    target = build_algebra(catalogue_presentation("P2", A.field), check=False)
    if change_basis(A, S) != target:
        raise ClassificationError("dim-8 normalization did not reach P2")
    return S


def _normalize_Lr(A: Algebra, Z: Subspace):
    """Adapted basis bringing a maximal-class dim-8 algebra to P(r); returns (r, S)."""
    p = A.p
    Z2 = A.series.ucs[2]
    chain = build_isotropic_chain(A)
    if chain[2] != Z or chain[3] != Z2:
        raise ClassificationError("chain terms I2, I3 must be Z1, Z2 in maximal class")
    x1, y1, x2, y2, x3, y3, x4, y4 = _columns(adapted_basis(A, chain))

    # x1 y2 -> new x4, y1 y2 -> new x3; y3, y4 follow by the inverse transpose
    z1 = multiply(A, x1, y2)
    z2 = multiply(A, y1, y2)
    M = []
    for z in (z2, z1):
        c = solve(np.stack([x3, x4], axis=1), z, p)
        if c is None:
            raise ClassificationError("x1 y2 and y1 y2 must lie in the center")
        M.append(c)
    M = np.array(M).T % p  # columns: coordinates of new x3, x4 in (x3, x4)
    det = int(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % p
    if det == 0:
        raise ClassificationError("x1 y2 and y1 y2 must be linearly independent")
    inv = pow(det, -1, p)
    Minv_T = np.array([[M[1, 1], -M[1, 0]], [-M[0, 1], M[0, 0]]]) * inv % p
    X = np.stack([x3, x4], axis=1)
    Y = np.stack([y3, y4], axis=1)
    x3, x4 = _columns(X @ M % p)
    y3, y4 = _columns(Y @ Minv_T % p)

    r = phi_eval(A, x2, y3, y4)
    if r == 0:
        raise ClassificationError("(x2 y3, y4) must be nonzero in maximal class")
    t1 = phi_eval(A, x1, y3, y4)
    t2 = phi_eval(A, y1, y3, y4)
    t3 = phi_eval(A, y2, y3, y4)
    rinv = pow(r, -1, p)
    a = t1 * rinv % p
    b = t2 * rinv % p
    c = (t3 + a * t2 - b * t1) * rinv % p
    x1, y1, y2 = (x1 - a * x2) % p, (y1 - b * x2) % p, (y2 + a * y1 - b * x1 - c * x2) % p
    S = _matrix([x1, y1, x2, y2, x3, y3, x4, y4])
    target = build_algebra(catalogue_presentation("Pr", A.field, r=r), check=False)
    if change_basis(A, S) != target:
        raise ClassificationError("dim-8 normalization did not reach P(r)")
    return r, S


def _complete_ys(fixed, xs, p: int):
    """y_k (k = 1..len(xs)) with (x_j, y_k) = delta_jk, (y_j, y_k) = 0 for j < k and
    orthogonal to every vector in ``fixed``; free coordinates set to zero."""
    n = (len(xs[0])) // 2
    J = standard_gram(n)
    ys = []
    for k in range(len(xs)):
        rows = [x @ J for x in xs] + [f @ J for f in fixed] + [y @ J for y in ys]
        rhs = [int(j == k) for j in range(len(xs))] + [0] * (len(fixed) + len(ys))
        y = solve(np.array(rows), rhs, p)
        if y is None:
            raise ClassificationError("could not complete a standard basis")
        ys.append(y % p)
    return ys


def _normalize_L3(A: Algebra, Z: Subspace):
    """Basis change S with change_basis(A, S) == P3, for dim Z = 3 isotropic.

    Steps: a standard basis with Z = <x2, x3, x4> and L^2 = Z + <x1, y1>;
    clear (y2 y3, y4) by moving one y_k along x1; relabel y2, y3, y4 so that
    (y2 y3, y4 y3) != 0 and rescale it to 1; make y2 y4 = 0; finally take
    x1 = y2 y3 and y1 = y4 y3.
    """
    p = A.p
    L2 = perp(Z)
    c1, c2 = L2.complement_rows(Z)
    g = pairing(c1, c2, p)
    if g == 0:
        raise ClassificationError("L^2 / Z(L) must be nondegenerate")
    x1, y1 = c1, c2 * pow(g, -1, p) % p
    xs = list(Z.basis)
    y2, y3, y4 = _complete_ys([x1, y1], xs, p)
    x = {1: x1, 2: xs[0], 3: xs[1], 4: xs[2]}
    y = {1: y1, 2: y2, 3: y3, 4: y4}

    # (y_i y_j, y_k) = 0 for {i, j, k} = {2, 3, 4}
    t = phi_eval(A, y[2], y[3], y[4])
    if t:
        for i, j, k in ((2, 3, 4), (2, 4, 3), (3, 4, 2)):
            s = phi_eval(A, y[i], y[j], x[1])
            if s:
                a = phi_eval(A, y[i], y[j], y[k]) * pow(s, -1, p) % p
                y[k] = (y[k] - a * x[1]) % p
                y[1] = (y[1] - a * x[k]) % p
                break
        else:
            raise ClassificationError("x1 must act nontrivially")

    # relabel so that (y2 y3, y4 y3) != 0
    for perm in itertools.permutations((2, 3, 4)):
        u2, u3, u4 = (y[k] for k in perm)
        q = pairing(multiply(A, u2, u3), multiply(A, u4, u3), p)
        if q:
            x = {1: x[1], 2: x[perm[0]], 3: x[perm[1]], 4: x[perm[2]]}
            y = {1: y[1], 2: u2, 3: u3, 4: u4}
            break
    else:
        raise ClassificationError("V^2 must be a nondegenerate plane")
    # scale y4 so that the pairing becomes 1
    a = pow(q, -1, p)
    y[4], x[4] = y[4] * a % p, x[4] * q % p

    m23 = multiply(A, y[2], y[3])
    m43 = multiply(A, y[4], y[3])
    m24 = multiply(A, y[2], y[4])
    coef = solve(np.stack([m23, m43], axis=1), m24, p)
    if coef is None:
        raise ClassificationError("y2 y4 must lie in the span of y2 y3, y4 y3")
    al, be = (int(c) for c in coef)
    y[2] = (y[2] + be * y[3]) % p
    y[4] = (y[4] - al * y[3]) % p
    x[3] = (x[3] - be * x[2] + al * x[4]) % p
    x[1], y[1] = multiply(A, y[2], y[3]), multiply(A, y[4], y[3])

    S = _matrix([x[1], y[1], x[2], y[2], x[3], y[3], x[4], y[4]])
    target = build_algebra(catalogue_presentation("P3", A.field), check=False)
    if change_basis(A, S) != target:
        raise ClassificationError("dim-8 normalization did not reach P3")
    return S


def normal_form(A: Algebra):
    """(label, S) where change_basis(A, S) is the catalogue algebra."""
    d = A.dim
    if d > 8:
        raise UnsupportedDimension(f"classification covers dimension <= 8, got {d}")
    if nilpotency_class(A) is None:
        raise NotNilpotentError("classification covers nilpotent algebras only")
    ident = np.eye(d, dtype=np.int64)
    if is_abelian(A):
        return ClassLabel("Abelian", d), ident
    if d <= 4:
        raise ClassificationError("nilpotent algebras of dimension <= 4 are abelian")
    if d == 6:
        return ClassLabel("N6", 6), normalize_dim6(A)
    Z = center(A)
    if Z.dim == 5:
        return ClassLabel("L2", 8), _normalize_L2(A, Z)
    if Z.dim == 3:
        L3 = A.series.lcs[2]
        if not is_isotropic(Z) or L3 != Z:
            raise ClassificationError("dim Z = 3 forces an isotropic center equal to L^3")
        return ClassLabel("L3", 8), _normalize_L3(A, Z)
    if Z.dim == 2:
        r, S = _normalize_Lr(A, Z)
        return ClassLabel("Lr", 8, A.field.cube_coset_rep(r)), S
    raise ClassificationError(f"impossible center dimension {Z.dim} in dimension 8")


def classify_small(A: Algebra) -> ClassLabel:
    return normal_form(A)[0]


def cube_invariant(A: Algebra) -> int:
    """Cube-coset invariant of a maximal-class algebra of dimension 8.

    For u, v spanning L modulo L^2, Q = (uvu, uvv) changes by the cube of the
    determinant under a change of u, v; for P(r), Q = -r^2. The coset of
    Q^2 therefore agrees with that of r.
    """
    lcs = A.series.lcs
    if A.dim != 8 or nilpotency_class(A) != 5:
        raise ValueError("cube invariant needs a maximal-class algebra of dimension 8")
    u, v = A.full().complement_rows(lcs[1])
    uv = multiply(A, u, v)
    Q = pairing(multiply(A, uv, u), multiply(A, uv, v), A.p)
    if Q == 0:
        raise ClassificationError("cube invariant vanished")
    return A.field.cube_coset_rep(Q * Q)


def enumeration_size(n: int, F) -> int:
    p = F.p if isinstance(F, PrimeField) else F
    return p ** num_parameters(n)


def enumerate_presentations(n: int, F, budget: int = DEFAULT_ENUM_BUDGET, start: int = 0,
                            stop: int | None = None):
    """All presentations in lexicographic parameter order (alpha keys, then beta)."""
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    total = enumeration_size(n, F)
    if total > budget:
        raise BudgetExceededError(total, budget)
    m = num_parameters(n)
    it = itertools.product(range(F.p), repeat=m)
    for vals in itertools.islice(it, start, total if stop is None else stop):
        yield NilpotentPresentation.from_parameters(F, n, vals)


@dataclass(frozen=True)
class CensusRow:
    label: ClassLabel
    presentation: NilpotentPresentation
    fingerprint: Fingerprint
    count: int


def shard_bounds(total: int, shards: int) -> list[tuple[int, int]]:
    return [(total * i // shards, total * (i + 1) // shards) for i in range(shards)]


def _census_exact_shard(args):
    n, p, lo, hi = args
    counts, first = {}, {}
    for idx, P in enumerate(enumerate_presentations(n, p, budget=float("inf"), start=lo, stop=hi),
                            start=lo):
        label = classify_small(build_algebra(P, check=False))
        counts[label] = counts.get(label, 0) + 1
        first.setdefault(label, idx)
    return counts, first


def _census_batch_shard(args):
    from .batch import census_counts
    n, p, lo, hi = args
    return census_counts(n, p, lo, hi)


def census(n: int, F, method: str = "batch", jobs: int = 1,
           budget: int = DEFAULT_ENUM_BUDGET) -> list[CensusRow]:
    """Classify every presentation with half-dimension n and group by class."""
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    if n > 4:
        raise UnsupportedDimension("census covers n <= 4")
    total = enumeration_size(n, F)
    if total > budget:
        raise BudgetExceededError(total, budget)
    worker = {"batch": _census_batch_shard, "exact": _census_exact_shard}[method]
    nshards = max(1, jobs) * (4 if jobs > 1 else 1)
    tasks = [(n, F.p, lo, hi) for lo, hi in shard_bounds(total, nshards) if hi > lo]
    if jobs > 1:
        from multiprocessing import Pool
        with Pool(jobs) as pool:
            parts = pool.map(worker, tasks)
    else:
        parts = [worker(t) for t in tasks]

    counts, first = {}, {}
    for c, f in parts:
        for label, k in c.items():
            counts[label] = counts.get(label, 0) + k
            first[label] = min(first.get(label, total), f[label])
    rows = []
    m = num_parameters(n)
    for label in sorted(counts):
        vals = np.unravel_index(first[label], (F.p,) * m) if m else ()
        P = NilpotentPresentation.from_parameters(F, n, [int(v) for v in vals])
        rows.append(CensusRow(label, P, fingerprint(build_algebra(P, check=False)), counts[label]))
    assert sum(r.count for r in rows) == total
    return rows


def format_census(rows: list[CensusRow], fmt: str = "table") -> str:
    if fmt == "lines":
        return "".join(f"class {r.label} count {r.count}\n" for r in rows)
    header = f"{'class':<12} {'count':>10}  {'fingerprint':<44} representative"
    out = [header]
    for r in rows:
        out.append(f"{str(r.label):<12} {r.count:>10}  {r.fingerprint.summary():<44} {r.presentation}")
    out.append(f"{'total':<12} {sum(r.count for r in rows):>10}")
    return "\n".join(out) + "\n"


def isomorphic_by_label(A: Algebra, B: Algebra) -> bool:
    return classify_small(A) == classify_small(B)
