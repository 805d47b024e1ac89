import math

import pytest
from hypothesis import given, strategies as st

from saa.field import (
    DivisionByZero,
    FieldElement,
    FieldMismatch,
    PrimeField,
    cube_coset_rep,
    fp_arith,
    fp_inverse,
    inverse_mod,
    is_prime,
)

PRIMES_TO_101 = [p for p in range(2, 102) if is_prime(p)]


def test_is_prime_small():
    assert PRIMES_TO_101[:6] == [2, 3, 5, 7, 11, 13]
    assert len(PRIMES_TO_101) == 26
    assert not is_prime(1) and not is_prime(0) and not is_prime(91)


@pytest.mark.parametrize("bad", [0, 1, 4, 91, 2**31 + 11])
def test_field_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_arith_examples():
    F3, F7 = PrimeField(3), PrimeField(7)
    assert fp_arith(F3(2), F3(2), "add") == F3(1)
    assert fp_arith(F7(4), F7(0), "mul") == F7(0)
    assert fp_arith(F7(5), F7(3), "mul") == F7(1)
    assert fp_arith(F7(2), F7(5), "sub") == F7(4)
    assert F7(-1).value == 6


def test_mismatched_moduli():
    with pytest.raises(FieldMismatch):
        fp_arith(PrimeField(3)(1), PrimeField(5)(1), "add")
    with pytest.raises(ValueError):
        fp_arith(PrimeField(3)(1), PrimeField(3)(1), "div")


def test_inverse_examples():
    assert fp_inverse(PrimeField(7)(1)).value == 1
    assert fp_inverse(PrimeField(7)(2)).value == 4
    assert fp_inverse(PrimeField(3)(2)).value == 2
    with pytest.raises(DivisionByZero):
        fp_inverse(PrimeField(5)(0))
    with pytest.raises(ZeroDivisionError):
        PrimeField(5)(3) / PrimeField(5)(0)


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_inverse_exhaustive(p):
    F = PrimeField(p)
    for a in range(1, p):
        assert (fp_inverse(F(a)) * F(a)).value == 1
        assert inverse_mod(a, p) == pow(a, -1, p)


def test_cube_coset_examples():
    assert cube_coset_rep(PrimeField(7)(1)).value == 1
    assert cube_coset_rep(PrimeField(7)(6)).value == 1
    assert cube_coset_rep(PrimeField(3)(2)).value == 1
    assert PrimeField(7).cubes == frozenset({1, 6})
    with pytest.raises(DivisionByZero):
        cube_coset_rep(PrimeField(7)(0))


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_cube_coset_invariance_and_count(p):
    F = PrimeField(p)
    reps = {F.cube_coset_rep(r) for r in range(1, p)}
    assert len(reps) == math.gcd(3, p - 1) == F.num_cube_cosets
    for r in range(1, p):
        s = F.cube_coset_rep(r)
        # r / s is a cube and s is the smallest residue with that property
        assert r * F.inv(s) % p in F.cubes
        assert all(r * F.inv(t) % p not in F.cubes for t in range(1, s))
        for t in range(1, p):
            assert F.cube_coset_rep(r * pow(t, 3, p) % p) == s


@given(st.sampled_from(PRIMES_TO_101), st.integers(), st.integers(), st.integers())
def test_field_axioms(p, a, b, c):
    F = PrimeField(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == F(0) and -x + x == F(0)
    if y:
        assert (x / y) * y == x


def test_element_is_canonical_and_hashable():
    F = PrimeField(5)
    assert F(7) == F(2) and hash(F(7)) == hash(F(2))
    assert isinstance(F(3), FieldElement) and int(F(13)) == 3
