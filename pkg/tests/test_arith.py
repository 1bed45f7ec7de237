import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_legendre, naive_pow
from trinogen.arith import (
    Factorization,
    divisors_from,
    factor,
    is_prime,
    is_squarefree,
    jacobi,
    legendre,
    mod_pow,
    trial_division,
    valuation,
)


def test_examples():
    assert is_prime(1546463)
    assert factor(80782).factors == ((2, 1), (13, 2), (239, 1))
    assert is_squarefree(5) and is_squarefree(85)
    assert not is_squarefree(125)
    assert legendre(5, 3) == -1
    assert legendre(2, 13) == -1
    assert mod_pow(3, 13 * 13, 13 * 13) % 13 == 3
    assert divisors_from(factor(28)) == [1, 2, 4, 7, 14, 28]


def test_small_primality_against_sympy():
    for n in range(-5, 20000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize(
    "n",
    [
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to the first 9 prime bases
        318665857834031151167461,  # fools bases up to 37
        2**61 - 1,
        2**89 - 1,
        2**127 - 1,
        (2**61 - 1) * (2**63 - 25),
    ],
)
def test_hard_primality_cases(n):
    assert is_prime(n) == sympy.isprime(n)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=2**128 - 1))
def test_is_prime_matches_sympy_128_bit(n):
    assert is_prime(n) == sympy.isprime(n)


def test_width_cap():
    with pytest.raises(ValueError):
        is_prime(2**128 + 1)
    with pytest.raises(ValueError):
        factor(2**130)


@pytest.mark.parametrize("bad", [0, -6])
def test_factor_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factor(bad)


def test_factorization_reconstructs_random_63_bit():
    rng = random.Random(7)
    for _ in range(10_000):
        n = rng.randrange(1, 2**63)
        f = factor(n)
        prod = 1
        for p, e in f.factors:
            assert is_prime(p)
            prod *= p**e
        assert prod == n


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2**64, max_value=2**100))
def test_factor_matches_sympy_beyond_64_bits(n):
    assert dict(factor(n).factors) == sympy.factorint(n)


def test_semiprime_needs_pollard():
    p, q = 1_000_003, 998_244_353
    assert factor(p * q).factors == ((p, 1), (q, 1))
    assert factor(p**3 * q**2).factors == ((p, 3), (q, 2))


def test_trial_division_cofactor():
    found, rest = trial_division(2**5 * 3 * 1_000_003 * 1_000_033)
    assert found == {2: 5, 3: 1}
    assert rest == 1_000_003 * 1_000_033
    found, rest = trial_division(2 * 999_983)
    assert found == {2: 1, 999_983: 1} and rest == 1


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2), (5, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))


def test_legendre_against_brute_force():
    for p in (q for q in range(3, 200) if sympy.isprime(q)):
        for a in range(p):
            assert legendre(a, p) == brute_legendre(a, p)


def test_legendre_rejects_non_odd_prime():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            legendre(3, p)


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 5000).map(lambda n: 2 * n + 1))
def test_jacobi_matches_sympy(a, n):
    assert jacobi(a, n) == sympy.jacobi_symbol(a, n)


def test_mod_pow_against_naive():
    rng = random.Random(11)
    for _ in range(1000):
        b, e, m = rng.randrange(10**9), rng.randrange(1001), rng.randrange(2, 10**6 + 1)
        assert mod_pow(b, e, m) == naive_pow(b, e, m)


def test_valuation():
    assert valuation(80782, 13) == 2
    assert valuation(-48, 2) == 4
    with pytest.raises(ValueError):
        valuation(0, 3)
