"""Nilpotent presentations, isotropic chains and the catalogue of named algebras.

A nilpotent presentation of half-dimension n lists the values
(x_i y_j, y_k) = alpha(i, j, k) and (y_i y_j, y_k) = beta(i, j, k) for
1 <= i < j < k <= n; every other basis triple vanishes up to antisymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping

import numpy as np

from .algebra import (
    Algebra,
    TernaryForm,
    NotNilpotentError,
    center,
    change_basis,
    multiply,
    nilpotency_class,
    subspace_product,
)
from .field import PrimeField
from .linalg import Subspace, is_isotropic, perp, solve, standard_gram, rank


class OutOfRange(ValueError):
    pass


class PresentationError(ValueError):
    pass


def triples(n: int) -> list[tuple[int, int, int]]:
    return list(combinations(range(1, n + 1), 3))


def num_parameters(n: int) -> int:
    return 2 * comb(n, 3)


def x_index(i: int) -> int:
    """1-based global index of x_i."""
    return 2 * i - 1


def y_index(i: int) -> int:
    return 2 * i


def _clean(p: int, n: int, values: Mapping, name: str):
    out = []
    for key, v in values.items():
        i, j, k = key
        if not (1 <= i < j < k <= n):
            raise PresentationError(f"{name}{key}: need 1 <= i < j < k <= {n}")
        v = int(v) % p
        if v:
            out.append(((i, j, k), v))
    return tuple(sorted(out))


@dataclass(frozen=True)
class NilpotentPresentation:
    field: PrimeField
    n: int
    alpha: tuple[tuple[tuple[int, int, int], int], ...] = ()
    beta: tuple[tuple[tuple[int, int, int], int], ...] = ()

    @classmethod
    def make(cls, F, n: int, alpha: Mapping | None = None, beta: Mapping | None = None):
        F = F if isinstance(F, PrimeField) else PrimeField(F)
        if n < 0:
            raise PresentationError("n must be nonnegative")
        return cls(F, n, _clean(F.p, n, alpha or {}, "alpha"), _clean(F.p, n, beta or {}, "beta"))

    @classmethod
    def from_parameters(cls, F, n: int, values) -> NilpotentPresentation:
        """Inverse of parameters(): alpha values on sorted triples, then beta values."""
        keys = triples(n)
        values = list(values)
        if len(values) != 2 * len(keys):
            raise PresentationError(f"expected {2 * len(keys)} parameters")
        m = len(keys)
        return cls.make(F, n, dict(zip(keys, values[:m])), dict(zip(keys, values[m:])))

    @property
    def p(self) -> int:
        return self.field.p

    def parameters(self) -> tuple[int, ...]:
        a, b = dict(self.alpha), dict(self.beta)
        keys = triples(self.n)
        return tuple(a.get(t, 0) for t in keys) + tuple(b.get(t, 0) for t in keys)

    def ternary_form(self) -> TernaryForm:
        vals = {}
        for (i, j, k), v in self.alpha:
            vals[(x_index(i), y_index(j), y_index(k))] = v
        for (i, j, k), v in self.beta:
            vals[(y_index(i), y_index(j), y_index(k))] = v
        return TernaryForm.from_dict(self.p, self.n, vals)

    def __str__(self):
        parts = [f"(x{i}y{j},y{k})={v}" for (i, j, k), v in self.alpha]
        parts += [f"(y{i}y{j},y{k})={v}" for (i, j, k), v in self.beta]
        return ", ".join(parts) if parts else "0"


def presentation_from_form(form: TernaryForm) -> NilpotentPresentation | None:
    """Read a presentation off a form already in presentation shape, else None."""
    alpha, beta = {}, {}
    for (a, b, c), v in form.values:
        if a % 2 == 1 and b % 2 == 0 and c % 2 == 0:
            i, j, k = (a + 1) // 2, b // 2, c // 2
            if not i < j:
                return None
            alpha[(i, j, k)] = v
        elif a % 2 == 0 and b % 2 == 0 and c % 2 == 0:
            beta[(a // 2, b // 2, c // 2)] = v
        else:
            return None
    return NilpotentPresentation.make(form.p, form.n, alpha, beta)


def build_algebra(P: NilpotentPresentation, check: bool = True) -> Algebra:
    A = Algebra(P.field, P.n, P.ternary_form())
    if check and nilpotency_class(A) is None:
        raise PresentationError("presentation did not give a nilpotent algebra")
    return A


@dataclass(frozen=True)
class IsotropicChain:
    """Ideals I_0 < I_1 < ... < I_n, dim I_r = r, with the vectors added at each step."""

    terms: tuple[Subspace, ...]
    steps: tuple[np.ndarray, ...]

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, r: int) -> Subspace:
        return self.terms[r]


def _descend(A: Algebra, W: Subspace, I: Subspace) -> Subspace:
    """Last term of W, WL, WLL, ... that is not contained in I."""
    L = A.full()
    while True:
        nxt = subspace_product(A, W, L)
        if nxt <= I:
            return W
        W = nxt


def build_isotropic_chain(A: Algebra, center_adapted: bool = True) -> IsotropicChain:
    """A maximal chain of isotropic ideals with central steps.

    Each step adds the first basis vector (lowest pivot) of the relevant space
    that is not yet in the current ideal I: the last nonzero-modulo-I term of
    I^perp L ... L. With ``center_adapted`` and an isotropic center of
    dimension below n, the first steps run through Z(L) so that I_r = Z(L).
    """
    if nilpotency_class(A) is None:
        raise NotNilpotentError("isotropic chains exist only for nilpotent algebras")
    Z = center(A)
    use_center = center_adapted and Z.dim < A.n and is_isotropic(Z)
    I = A.zero()
    terms, steps = [I], []
    while I.dim < A.n:
        if use_center and I.dim < Z.dim:
            W = Z
        else:
            W = _descend(A, perp(I), I)
        u = W.first_outside(I)
        I = I + A.span(u)
        terms.append(I)
        steps.append(u)
    return IsotropicChain(tuple(terms), tuple(steps))


def chain_is_valid(A: Algebra, chain: IsotropicChain) -> bool:
    from .algebra import is_ideal
    L = A.full()
    for r, I in enumerate(chain.terms):
        if I.dim != r or not is_isotropic(I) or not is_ideal(A, I):
            return False
        if r and not subspace_product(A, I, L) <= chain.terms[r - 1]:
            return False
    return len(chain.terms) == A.n + 1


def adapted_basis(A: Algebra, chain: IsotropicChain) -> np.ndarray:
    """Standard basis (as columns) with I_k = F x_n + ... + F x_{n+1-k}.

    y_k solves (x_j, y_k) = delta_jk and (y_j, y_k) = 0 for j < k, taking the
    solution whose free coordinates are zero.
    """
    n, p, d = A.n, A.p, A.dim
    J = standard_gram(n)
    xs = [chain.steps[n - i] for i in range(1, n + 1)]  # x_1 .. x_n
    ys = []
    for k in range(1, n + 1):
        rows = [x @ J for x in xs] + [y @ J for y in ys]
        rhs = [int(j == k) for j in range(1, n + 1)] + [0] * len(ys)
        y = solve(np.array(rows), rhs, p)
        if y is None:
            raise PresentationError("could not complete the isotropic flag to a standard basis")
        ys.append(y)
    S = np.zeros((d, d), dtype=np.int64)
    for i in range(n):
        S[:, 2 * i] = xs[i]
        S[:, 2 * i + 1] = ys[i]
    return S % p


def read_presentation(B: Algebra) -> NilpotentPresentation:
    """The presentation of an algebra whose standard basis is already adapted."""
    P = presentation_from_form(B.form)
    if P is None:
        raise PresentationError("form is not in nilpotent-presentation shape")
    return P


def extract_presentation(A: Algebra, chain: IsotropicChain | None = None):
    """Return (P, S) with build_algebra(P) == change_basis(A, S)."""
    if chain is None:
        chain = build_isotropic_chain(A)
    S = adapted_basis(A, chain)
    B = change_basis(A, S)
    P = read_presentation(B)
    if build_algebra(P, check=False) != B:
        raise PresentationError("round trip failed")
    return P, S


def is_maximal_class_presentation(P: NilpotentPresentation) -> bool:
    """The criterion on x_{i}y_{i+1} (2 <= i <= n-2) and on x_1 y_2, y_1 y_2."""
    if P.n < 4:
        raise OutOfRange("the maximal-class criterion needs n >= 4")
    A = build_algebra(P, check=False)
    for i in range(2, P.n - 1):
        if not multiply(A, A.basis_vector(f"x{i}"), A.basis_vector(f"y{i + 1}")).any():
            return False
    u = multiply(A, A.basis_vector("x1"), A.basis_vector("y2"))
    v = multiply(A, A.basis_vector("y1"), A.basis_vector("y2"))
    return rank(np.vstack([u, v]), P.p) == 2


def maximal_class_family(n: int, F) -> NilpotentPresentation:
    """(x_i y_{i+1}, y_n) = -1 for 1 <= i <= n-2 and (y_1 y_2, y_{n-1}) = -1."""
    if n < 4:
        raise OutOfRange("maximal class needs n >= 4")
    alpha = {(i, i + 1, n): -1 for i in range(1, n - 1)}
    return NilpotentPresentation.make(F, n, alpha, {(1, 2, n - 1): -1})


def _example12(F) -> Algebra:
    x, y = x_index, y_index
    form = {
        (x(3), y(5), y(6)): 1,
        (x(2), y(4), y(6)): 1,
        (x(1), y(4), y(5)): 1,
        (y(1), y(2), y(3)): 1,
    }
    return Algebra(F, 6, form)


def catalogue_presentation(name: str, F, r: int | None = None, n: int | None = None):
    """Presentation of a named algebra (None for example12, which is given as a form)."""
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    key = name.lower()
    if key == "p1":
        return NilpotentPresentation.make(F, 3, beta={(1, 2, 3): 1})
    if key == "p2":
        return NilpotentPresentation.make(F, 4, beta={(1, 2, 3): 1})
    if key == "p3":
        return NilpotentPresentation.make(F, 4, alpha={(1, 3, 4): 1}, beta={(1, 2, 3): 1})
    if key in ("pr", "p(r)"):
        if r is None or r % F.p == 0:
            raise ValueError("Pr needs a nonzero parameter r")
        return NilpotentPresentation.make(F, 4, alpha={(2, 3, 4): r, (1, 2, 4): 1},
                                          beta={(1, 2, 3): 1})
    if key in ("prop211", "prop211_example"):
        return NilpotentPresentation.make(F, 4, alpha={(2, 3, 4): 1, (1, 2, 3): 1},
                                          beta={(1, 2, 4): 1})
    if key == "maxclass":
        if n is None:
            raise ValueError("maxclass needs n")
        return maximal_class_family(n, F)
    if key == "abelian":
        if n is None:
            raise ValueError("abelian needs n")
        return NilpotentPresentation.make(F, n)
    if key == "example12":
        return None
    raise KeyError(f"unknown builtin {name!r}")


BUILTIN_NAMES = ("example12", "prop211_example", "P1", "P2", "P3", "Pr", "maxclass", "abelian")


def builtin(name: str, F, r: int | None = None, n: int | None = None) -> Algebra:
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    if name.lower() == "example12":
        return _example12(F)
    return build_algebra(catalogue_presentation(name, F, r=r, n=n), check=False)
