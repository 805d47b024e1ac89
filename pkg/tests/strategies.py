"""Shared hypothesis strategies for algebras over small prime fields."""

from itertools import combinations

import numpy as np
from hypothesis import strategies as st

from saa.algebra import Algebra, change_basis
from saa.field import PrimeField
from saa.oracle import random_symplectic
from saa.presentation import NilpotentPresentation, build_algebra, num_parameters

primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def presentations(draw, n=None, p=None):
    p = p or draw(primes)
    n = n or draw(st.integers(3, 4))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=num_parameters(n),
                         max_size=num_parameters(n)))
    return NilpotentPresentation.from_parameters(PrimeField(p), n, vals)


@st.composite
def nilpotent_algebras(draw, n=None, p=None, conjugate=True):
    """A presentation algebra, optionally moved to a random symplectic basis."""
    A = build_algebra(draw(presentations(n=n, p=p)))
    if conjugate and draw(st.booleans()):
        seed = draw(st.integers(0, 2**32 - 1))
        S = random_symplectic(A.n, A.p, np.random.default_rng(seed))
        A = change_basis(A, S)
    return A


@st.composite
def algebras(draw, n=None, p=None):
    """An arbitrary (usually non-nilpotent) algebra from random form values."""
    p = p or draw(primes)
    n = n or draw(st.integers(1, 3))
    keys = list(combinations(range(1, 2 * n + 1), 3))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=len(keys), max_size=len(keys)))
    return Algebra(PrimeField(p), n, dict(zip(keys, vals)))
