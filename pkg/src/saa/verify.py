"""Checks of the structure theory's quantitative claims, runnable as one suite.

Each claim is a small function returning (ok, detail). ``run_claims`` runs a
selection and reports per-claim pass/fail; the CLI's ``verify-paper`` command
is a thin wrapper around it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .algebra import (
    center,
    change_basis,
    is_associative,
    is_ideal,
    is_lie,
    multiply,
    nilpotency_class,
    subspace_product,
    upper_central_series,
)
from .batch import lie_assoc_cube_counts
from .classify import census, classify_small, enumerate_presentations
from .field import PrimeField
from .linalg import is_isotropic, perp
from .presentation import (
    build_algebra,
    build_isotropic_chain,
    builtin,
    chain_is_valid,
    extract_presentation,
    is_maximal_class_presentation,
)


@dataclass(frozen=True)
class Claim:
    id: str
    title: str
    check: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class ClaimResult:
    id: str
    title: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.id}: {self.title} -- {self.detail}"


# ---------------------------------------------------------------------------
# the sweep: every presentation with n = 3, 4 over a field, plus the 12-dim example


@lru_cache(maxsize=4)
def _presentation_algebras(p: int):
    F = PrimeField(p)
    return tuple(build_algebra(P, check=False)
                 for n in (3, 4) for P in enumerate_presentations(n, F))


def sweep(p: int = 3):
    """The algebras of the standard sweep over GF(p)."""
    return list(_presentation_algebras(p)) + [builtin("example12", p)]


def _first_failure(algebras, predicate):
    for k, A in enumerate(algebras):
        if not predicate(A):
            return k, A
    return None


def _sweep_check(predicate, what: str, p: int = 3):
    algebras = sweep(p)
    bad = _first_failure(algebras, predicate)
    if bad is None:
        return True, f"{what} on all {len(algebras)} algebras over GF({p})"
    k, A = bad
    return False, f"{what} fails on sweep item {k}: {A!r}"


# ---------------------------------------------------------------------------
# claims


def claim_example12():
    for p in (3, 5, 7):
        A = builtin("example12", p)
        rep = A.series
        L2 = rep.lcs[1]
        L2L2 = subspace_product(A, L2, L2)
        L4 = rep.lcs[3] if len(rep.lcs) > 3 else A.zero()
        y2y3 = multiply(A, A.basis_vector("y2"), A.basis_vector("y3"))
        facts = {
            "lcs dims": rep.lcs_dims == [12, 9, 6, 3, 0],
            "class 4": rep.nilpotency_class == 4,
            "dim L2L2 = 3": L2L2.dim == 3,
            "L2L2 = <x1,x2,x3>": L2L2 == A.span([A.basis_vector(f"x{i}") for i in (1, 2, 3)]),
            "L2L2 not an ideal": not is_ideal(A, L2L2),
            "L2L2 not in L4": not (L2L2 <= L4),
            "y2y3 = x1": np.array_equal(y2y3, A.basis_vector("x1")),
        }
        failed = [k for k, v in facts.items() if not v]
        if failed:
            return False, f"GF({p}): {', '.join(failed)}"
    return True, "lcs 12 9 6 3 0, class 4, L2L2 = <x1,x2,x3> not an ideal, not in L4 over GF(3,5,7)"


def _duality(A):
    """Z_m computed directly equals (L^(m+1))^perp for every m."""
    direct = upper_central_series(A, "direct")
    return direct == [perp(L) for L in A.series.lcs]


def claim_duality():
    return _sweep_check(_duality, "Z_m = (L^(m+1))^perp")


def _rank_formula(A):
    rep = A.series
    Z = center(A)
    return A.dim - rep.lcs_dims[1] == Z.dim and (A.dim == 0 or Z.dim >= 2)


def claim_rank_formula():
    return _sweep_check(_rank_formula, "dim L - dim L^2 = dim Z(L) >= 2")


def _no_dim_one_terms(A):
    rep = A.series
    return 1 not in rep.lcs_dims and all(A.dim - z != 1 for z in rep.ucs_dims)


def claim_no_dim_one_terms():
    return _sweep_check(_no_dim_one_terms, "no lcs term of dim 1, no ucs term of codim 1")


def claim_no_dim_two_terms():
    def bound(A):
        dims = A.series.lcs_dims
        return all(dims[m - 1] != 2 for m in (2, 3, 4) if m - 1 < len(dims))
    ok, detail = _sweep_check(bound, "dim L^m != 2 for m = 2, 3, 4")
    if not ok:
        return ok, detail
    A = builtin("prop211_example", 3)
    dims = A.series.lcs_dims
    if len(dims) < 5 or dims[4] != 2:
        return False, f"example has lcs dims {dims}, expected dim L^5 = 2"
    return True, detail + f"; example lcs dims {' '.join(map(str, dims))}"


def claim_isotropic_chains():
    def chain_ok(A):
        c = nilpotency_class(A)
        if c is None:
            return False
        if A.dim >= 6 and c > A.dim - 3:
            return False
        if A.dim <= 4 and c > 1:
            return False
        return chain_is_valid(A, build_isotropic_chain(A))
    return _sweep_check(chain_ok, "class <= 2n-3 and a valid isotropic chain exists")


def claim_lie_or_associative():
    def holds(A):
        if is_lie(A) or is_associative(A):
            rep = A.series
            return len(rep.lcs_dims) < 3 or rep.lcs_dims[2] == 0
        return True
    ok, detail = _sweep_check(holds, "Lie or associative => L^3 = 0", 3)
    if not ok:
        return ok, detail
    counts = [lie_assoc_cube_counts(n, 5) for n in (3, 4)]
    bad = sum(c["violations"] for c in counts)
    total = sum(c["total"] for c in counts)
    if bad:
        return False, f"{bad} violations among the {total} presentations over GF(5)"
    A = builtin("example12", 5)
    if (is_lie(A) or is_associative(A)) and A.series.lcs_dims[2]:
        return False, "12-dim example over GF(5) has L^3 != 0 while Lie or associative"
    return True, detail + f"; and all {total + 1} algebras over GF(5)"


def claim_maximal_class_ideals():
    for p in (3, 5):
        A = builtin("maxclass", p, n=5)
        rep = A.series
        Z3, L2 = rep.ucs[3], rep.lcs[1]
        d1 = subspace_product(A, Z3, L2).dim
        d2 = subspace_product(A, rep.lcs[3], rep.lcs[2]).dim
        c = rep.nilpotency_class
        if (d1, d2, c) != (1, 2, 7):
            return False, f"GF({p}): dim Z3 L2 = {d1}, dim L4 L3 = {d2}, class {c}"
    for n in (4, 5, 6):
        c = nilpotency_class(builtin("maxclass", 3, n=n))
        if c != 2 * n - 3:
            return False, f"maximal-class family n={n} has class {c}"
    return True, "dim Z3 L2 = 1, dim L4 L3 = 2, class 7 over GF(3), GF(5); family classes 5, 7, 9"


def claim_maximal_class_criterion():
    bad = 0
    count = 0
    for P in enumerate_presentations(4, 3):
        A = build_algebra(P, check=False)
        bad += is_maximal_class_presentation(P) != (nilpotency_class(A) == 5)
        count += 1
    if bad:
        return False, f"{bad} disagreements among {count} presentations"
    return True, f"criterion <=> class 5 on all {count} presentations (n=4, GF(3))"


def claim_census():
    expected = [(3, 3, 2), (4, 3, 4), (4, 5, 4), (4, 7, 6)]
    got = []
    for n, p, k in expected:
        rows = census(n, p)
        got.append(f"n={n},p={p}:{len(rows)}")
        if len(rows) != k:
            return False, f"census n={n} p={p} gave {len(rows)} classes, expected {k}"
    return True, "class counts " + ", ".join(got)


def claim_cube():
    F = PrimeField(7)
    labels = {r: classify_small(builtin("Pr", F, r=r)) for r in range(1, 7)}
    if labels[1] != labels[6] or labels[1] == labels[2]:
        return False, f"labels {labels}"
    A = builtin("Pr", F, r=2)
    rep = A.series
    Z = center(A)
    if rep.ucs_dims != [0, 2, 3, 5, 6, 8] or Z.dim != 2 or rep.nilpotency_class != 5:
        return False, f"P(2) ucs {rep.ucs_dims}, center {Z.dim}"
    # Z(L) = L^5, Z_2 = L^4, Z_3 = L^3, Z_4 = L^2 as subspaces
    if [rep.ucs[m] for m in (1, 2, 3, 4)] != [rep.lcs[m] for m in (4, 3, 2, 1)]:
        return False, "upper central terms differ from lower central terms in P(2)"
    chain = build_isotropic_chain(A)
    if chain[2] != rep.ucs[1] or chain[3] != rep.ucs[2]:
        return False, "isotropic chain does not pass through Z1, Z2"
    P1, P2, P3 = (builtin(k, F) for k in ("P1", "P2", "P3"))
    y1y2 = multiply(P1, P1.basis_vector("y1"), P1.basis_vector("y2"))
    if not np.array_equal(y1y2, P1.basis_vector("x3")) or center(P1).dim != 3:
        return False, "P1: y1 y2 != x3 or center dim != 3"
    if center(P2).dim != 5 or is_isotropic(center(P2)):
        return False, "P2 center is not 5-dimensional and non-isotropic"
    Z3 = center(P3)
    if Z3 != P3.span([P3.basis_vector(f"x{i}") for i in (2, 3, 4)]) or nilpotency_class(P3) != 3:
        return False, "P3: center != <x2,x3,x4> or class != 3"
    if P3.series.lcs[2] != Z3:
        return False, "P3: L^3 != Z(L)"
    return True, "P(1)~P(6), P(1)!~P(2) over GF(7); P(r), P1, P2, P3 structure"


def claim_roundtrip():
    def rt(A):
        P, S = extract_presentation(A)
        return build_algebra(P, check=False) == change_basis(A, S)
    return _sweep_check(rt, "build(extract(A)) == A in the returned basis")


CLAIMS: tuple[Claim, ...] = (
    Claim("intro", "12-dim example: class 4, L2L2 not an ideal, not in L4", claim_example12),
    Claim("eq1", "duality of upper and lower central series", claim_duality),
    Claim("cor22", "rank equals center dimension", claim_rank_formula),
    Claim("prop29", "no lcs term of dimension 1", claim_no_dim_one_terms),
    Claim("prop211", "dim L^m != 2 for m <= 4, sharp at m = 5", claim_no_dim_two_terms),
    Claim("thm210", "isotropic chains and the class bound 2n-3", claim_isotropic_chains),
    Claim("lemma11", "Lie or associative implies L^3 = 0", claim_lie_or_associative),
    Claim("thm32", "characteristic ideals in maximal class", claim_maximal_class_ideals),
    Claim("thm34", "maximal-class criterion", claim_maximal_class_criterion),
    Claim("census", "classification counts in dimensions 6 and 8", claim_census),
    Claim("cube", "cube-coset criterion and named algebras", claim_cube),
    Claim("roundtrip", "presentation extraction round trip", claim_roundtrip),
)

CLAIM_IDS = tuple(c.id for c in CLAIMS)


def run_claims(only=None, on_result=None) -> list[ClaimResult]:
    """Run all claims (or those in ``only``); exceptions count as failures."""
    if only:
        unknown = set(only) - set(CLAIM_IDS)
        if unknown:
            raise KeyError(f"unknown claim id(s): {', '.join(sorted(unknown))}")
    results = []
    for claim in CLAIMS:
        if only and claim.id not in only:
            continue
        t = time.perf_counter()
        try:
            ok, detail = claim.check()
        except Exception as exc:  # a crash is a failed claim, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = ClaimResult(claim.id, claim.title, bool(ok), detail, time.perf_counter() - t)
        results.append(res)
        if on_result:
            on_result(res)
    return results
