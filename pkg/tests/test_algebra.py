import numpy as np
import pytest
from hypothesis import given, strategies as st

from saa.algebra import (
    Algebra,
    NotAnIdealError,
    center,
    change_basis,
    check_axioms,
    induced_quotient,
    is_associative,
    is_ideal,
    is_lie,
    lower_central_series,
    multiply,
    nilpotency_class,
    phi_eval,
    series_report,
    subspace_product,
    upper_central_series,
)
from saa.field import PrimeField
from saa.linalg import DimensionMismatch, is_isotropic, pairing, perp
from saa.presentation import builtin

from strategies import algebras, nilpotent_algebras


def basis(A):
    return np.eye(A.dim, dtype=np.int64)


# ---------------------------------------------------------------------------
# golden values


def test_products_examples():
    P1 = builtin("P1", 3)
    assert np.array_equal(multiply(P1, P1.basis_vector("y1"), P1.basis_vector("y2")),
                          P1.basis_vector("x3"))
    ex = builtin("example12", 5)
    assert np.array_equal(multiply(ex, ex.basis_vector("y2"), ex.basis_vector("y3")),
                          ex.basis_vector("x1"))
    u = ex.vector(x1=2, y4=3, y6=1)
    assert not multiply(ex, u, u).any()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_example12_series(p):
    A = builtin("example12", p)
    rep = series_report(A)
    assert rep.lcs_dims == [12, 9, 6, 3, 0]
    assert rep.ucs_dims == [0, 3, 6, 9, 12]
    assert rep.nilpotency_class == 4 and rep.rank == 3
    L2, L4 = rep.lcs[1], rep.lcs[3]
    L2L2 = subspace_product(A, L2, L2)
    assert L2L2 == A.span([A.basis_vector(f"x{i}") for i in (1, 2, 3)])
    assert not is_ideal(A, L2L2)
    assert not L2L2 <= L4
    assert check_axioms(A)


def test_dim_two_example_lcs():
    A = builtin("prop211_example", 3)
    dims = series_report(A).lcs_dims
    assert dims[4] == 2 and nilpotency_class(A) == 5


@pytest.mark.parametrize("p", [3, 5, 7])
def test_pr_series(p):
    A = builtin("Pr", p, r=2 if p > 2 else 1)
    rep = series_report(A)
    assert rep.ucs_dims == [0, 2, 3, 5, 6, 8]
    assert rep.lcs_dims == [8, 6, 5, 3, 2, 0]
    assert rep.nilpotency_class == 5
    assert center(A).dim == 2 and is_isotropic(center(A))


def test_abelian_and_zero():
    A = Algebra(PrimeField(5), 3)
    assert lower_central_series(A)[-1].dim == 0
    assert series_report(A).lcs_dims == [6, 0]
    assert upper_central_series(A)[1] == A.full()
    assert nilpotency_class(A) == 1
    assert nilpotency_class(Algebra(PrimeField(5), 0)) == 0
    assert center(A) == A.full()
    assert is_lie(A) and is_associative(A)


def test_center_examples():
    P1 = builtin("P1", 5)
    assert center(P1) == P1.span([P1.basis_vector(f"x{i}") for i in (1, 2, 3)])
    P2 = builtin("P2", 5)
    assert center(P2).dim == 5 and not is_isotropic(center(P2))
    assert center(builtin("P3", 5)).dim == 3


def test_lie_examples():
    assert is_lie(builtin("P1", 3))
    A = builtin("Pr", 3, r=1)
    assert not is_lie(A) and not is_associative(A)


def test_is_ideal_examples():
    A = builtin("example12", 3)
    assert is_ideal(A, A.zero()) and is_ideal(A, A.full())
    for L in lower_central_series(A):
        assert is_ideal(A, L)


def test_check_axioms_negative_control():
    A = builtin("P1", 5)
    phi = np.array(A.phi)
    phi[0, 1, 2] = (phi[0, 1, 2] + 1) % 5  # breaks antisymmetry of a single entry
    assert not check_axioms(Algebra.from_trilinear(A.field, 3, phi))
    # a symmetric "form" is not alternating
    sym = np.zeros((4, 4, 4), dtype=np.int64)
    sym[0, 0, 1] = 1
    assert not check_axioms(Algebra.from_trilinear(PrimeField(3), 2, sym))


def test_dimension_errors():
    A = builtin("P1", 3)
    with pytest.raises(DimensionMismatch):
        multiply(A, np.zeros(4), np.zeros(6))
    with pytest.raises(ValueError):
        Algebra(PrimeField(3), 2, {(1, 2, 9): 1})


def test_change_basis_rejects_non_symplectic():
    A = builtin("P1", 5)
    with pytest.raises(ValueError):
        change_basis(A, 2 * np.eye(6, dtype=np.int64))


# ---------------------------------------------------------------------------
# induced quotients


def test_quotient_trivial_cases():
    A = builtin("P2", 5)
    assert induced_quotient(A, A.zero()) == A
    assert induced_quotient(A, A.full()).dim == 0


def test_quotient_of_P2_by_hyperbolic_plane_is_P1():
    """P2 = F x4 + F y4 (+) its perp; the quotient by span(x4, y4) is P1."""
    from saa.classify import classify_small
    A = builtin("P2", 5)
    I = A.span([A.basis_vector("x4"), A.basis_vector("y4")])
    assert is_ideal(A, I) and is_ideal(A, perp(I))
    Q = induced_quotient(A, I)
    assert Q.dim == 6 and check_axioms(Q)
    assert Q == builtin("P1", 5)
    assert str(classify_small(Q)) == "N6"
    # quotient by the other summand is the 2-dim abelian algebra
    assert induced_quotient(A, perp(I)) == Algebra(PrimeField(5), 1)


def test_quotient_requires_ideal():
    A = builtin("P1", 3)
    with pytest.raises(NotAnIdealError):
        induced_quotient(A, A.span([A.basis_vector("y1")]))


@given(nilpotent_algebras())
def test_quotient_by_lcs_terms(A):
    for I in series_report(A).lcs:
        Q = induced_quotient(A, I)
        assert check_axioms(Q)
        assert Q.dim == perp(I).dim - (I & perp(I)).dim


# ---------------------------------------------------------------------------
# properties


@given(algebras())
def test_axioms_and_self_adjointness(A):
    assert check_axioms(A)
    E = basis(A)
    for x in E:
        for u in E:
            for v in E:
                assert pairing(multiply(A, u, x), v, A.p) == pairing(u, multiply(A, v, x), A.p)
    for u in E:
        for v in E:
            for w in E:
                assert phi_eval(A, u, v, w) == phi_eval(A, v, w, u)


@given(algebras())
def test_duality_on_arbitrary_algebras(A):
    """Z_m = (L^(m+1))^perp holds whether or not the algebra is nilpotent."""
    lcs = lower_central_series(A)
    direct = upper_central_series(A, "direct")
    assert upper_central_series(A, "dual") == [perp(L) for L in lcs]
    for Z, L in zip(direct, lcs):
        assert Z == perp(L)


@given(nilpotent_algebras())
def test_central_series_duality(A):
    assert upper_central_series(A, "direct") == upper_central_series(A, "dual")


@given(nilpotent_algebras())
def test_rank_formula_and_bounds(A):
    rep = series_report(A)
    Z = center(A)
    assert rep.rank == A.dim - rep.lcs_dims[1] == Z.dim >= 2
    assert 1 not in rep.lcs_dims
    assert all(A.dim - z != 1 for z in rep.ucs_dims)
    assert all(rep.lcs_dims[m - 1] != 2 for m in (2, 3, 4) if m <= len(rep.lcs_dims))
    assert rep.nilpotency_class <= A.dim - 3


@given(nilpotent_algebras())
def test_lcs_times_ucs_vanishes(A):
    rep = series_report(A)
    for m in range(1, len(rep.ucs)):
        if m - 1 < len(rep.lcs):
            assert subspace_product(A, rep.lcs[m - 1], rep.ucs[m]).dim == 0


@given(nilpotent_algebras())
def test_ideals_and_perps(A):
    rep = series_report(A)
    for I in rep.lcs + rep.ucs:
        J = perp(I)
        assert is_ideal(A, J)
        assert subspace_product(A, I, J).dim == 0
        K = I & J  # an isotropic ideal
        assert is_ideal(A, K) and is_isotropic(K)
        assert subspace_product(A, K, K).dim == 0


@given(nilpotent_algebras(conjugate=True))
def test_lie_or_associative_has_trivial_cube(A):
    if A.p != 2 and (is_lie(A) or is_associative(A)):
        dims = series_report(A).lcs_dims
        assert len(dims) < 3 or dims[2] == 0


@given(nilpotent_algebras(), st.integers(0, 2**32 - 1))
def test_change_basis_preserves_products(A, seed):
    from saa.oracle import random_symplectic
    S = random_symplectic(A.n, A.p, np.random.default_rng(seed))
    B = change_basis(A, S)
    assert check_axioms(B)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = S @ B.table[i, j] % A.p
            assert np.array_equal(lhs, multiply(A, S[:, i], S[:, j]))
