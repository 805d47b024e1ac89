"""Exact arithmetic in prime fields GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd


class DivisionByZero(ZeroDivisionError):
    pass


class FieldMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    g, s, _ = egcd(a, p)
    assert g == 1
    return s % p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p < 2**31) or not is_prime(self.p):
            raise ValueError(f"modulus must be a prime below 2^31, got {self.p}")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def __str__(self):
        return f"GF({self.p})"

    def __iter__(self):
        for v in range(self.p):
            yield FieldElement(v, self.p)

    def inv(self, a: int) -> int:
        return inverse_mod(a, self.p)

    @cached_property
    def inverse_table(self) -> list[int]:
        # index 0 is a placeholder, never a valid inverse
        return [0] + [inverse_mod(a, self.p) for a in range(1, self.p)]

    @cached_property
    def cubes(self) -> frozenset[int]:
        """The subgroup (F*)^3 as residues."""
        return frozenset(pow(t, 3, self.p) for t in range(1, self.p))

    @cached_property
    def _coset_reps(self) -> list[int]:
        reps = [0] * self.p
        for r in range(1, self.p):
            reps[r] = min(r * c % self.p for c in self.cubes)
        return reps

    def cube_coset_rep(self, r: int) -> int:
        """Smallest s in F* with r/s a cube; constant on cosets of (F*)^3."""
        r %= self.p
        if r == 0:
            raise DivisionByZero("cube coset of 0 is undefined")
        return self._coset_reps[r]

    @property
    def num_cube_cosets(self) -> int:
        return gcd(3, self.p - 1)


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.p}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.p, self.p)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((b - self.value) % self.p, self.p)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def inverse(self) -> FieldElement:
        return FieldElement(inverse_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(inverse_mod(b, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def fp_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.p != b.p:
        raise FieldMismatch(f"GF({a.p}) vs GF({b.p})")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def fp_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


def cube_coset_rep(r: FieldElement) -> FieldElement:
    F = PrimeField(r.p)
    return F(F.cube_coset_rep(r.value))
