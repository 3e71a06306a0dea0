import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tckit import intmath

from .oracles import sieve, trial_factor


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (37, [(37, 1)]), (480, [(2, 5), (3, 1), (5, 1)])],
)
def test_factorize_examples(n, expected):
    assert intmath.factorize(n) == expected


def test_factorize_480_matches_oracle():
    assert intmath.factorize(480) == trial_factor(480)


@pytest.mark.parametrize("n, rad", [(37, 37), (12, 6), (1, 1)])
def test_radical(n, rad):
    assert intmath.radical(n) == rad


@pytest.mark.parametrize("n, sf", [(37, 37), (16, 1), (12, 3)])
def test_sqfree_part(n, sf):
    assert intmath.sqfree_part(n) == sf


@pytest.mark.parametrize("n, p, v", [(48, 2, 4), (37, 2, 0), (37, 37, 1), (2, 2, 1)])
def test_vp(n, p, v):
    assert intmath.vp(n, p) == v


@pytest.mark.parametrize("x, value", [(1.5, 1), (2, 2), (10, 210), (0, 1)])
def test_primorial(x, value):
    assert intmath.primorial_upto(x) == value


def test_errors():
    with pytest.raises(ValueError):
        intmath.factorize(0)
    with pytest.raises(ValueError):
        intmath.vp(0, 2)
    with pytest.raises(ValueError):
        intmath.vp(12, 4)
    with pytest.raises(ValueError):
        intmath.primorial_upto(-1)


def test_primes_upto_matches_sieve():
    assert intmath.primes_upto(500) == sieve(500)


def test_is_prime_large():
    assert intmath.is_prime(2**61 - 1)
    assert not intmath.is_prime((2**31 - 1) * (2**19 - 1))
    with pytest.raises(ValueError):
        intmath.is_prime((2**61 - 1) * (2**31 - 1))
    # strong pseudoprime to the first several bases
    assert not intmath.is_prime(3_215_031_751)


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_roundtrip(n):
    fac = intmath.factorize(n)
    assert intmath.expand(fac) == n
    assert all(intmath.is_prime(p) and e >= 1 for p, e in fac)
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=10**5))
def test_factorize_matches_trial_division(n):
    assert intmath.factorize(n) == trial_factor(n)


@given(st.integers(min_value=1, max_value=10**9))
def test_sqfree_times_square(n):
    d = intmath.sqfree_part(n)
    assert intmath.is_squarefree(d)
    assert intmath.is_square(n // d) and n % d == 0
    assert intmath.radical(n) % d == 0


@given(st.integers(min_value=1, max_value=10**9), st.sampled_from([2, 3, 5, 7, 11, 37]))
def test_vp_definition(n, p):
    v = intmath.vp(n, p)
    assert n % p**v == 0 and n % p ** (v + 1) != 0


@given(st.integers(min_value=-(10**9), max_value=10**9).filter(bool))
def test_prime_divisors_sign_independent(n):
    assert intmath.prime_divisors(n) == intmath.prime_divisors(-n)


@given(st.integers(min_value=1, max_value=5000))
def test_divisors(n):
    assert intmath.divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(min_value=0, max_value=10**12))
def test_is_square(n):
    assert intmath.is_square(n) == (math.isqrt(n) ** 2 == n)
