"""Exact integer utilities: primality, factorization, radicals, valuations."""

from __future__ import annotations

import math
from functools import reduce
from operator import mul
from typing import Iterable

# Miller-Rabin with these bases is deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

# gaps of the 2-3-5 wheel, starting from 7
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)

Factorization = list[tuple[int, int]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"primality of {n} is outside the deterministic range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` by wheel trial division.

    Returns ``[(p, e), ...]`` with strictly increasing primes; ``factorize(1)``
    is the empty list.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: Factorization = []
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p, i = 7, 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += _WHEEL[i]
        i = (i + 1) & 7
    if n > 1:
        out.append((n, 1))
    return out


def expand(fac: Iterable[tuple[int, int]]) -> int:
    return prod(p**e for p, e in fac)


def prod(values: Iterable[int]) -> int:
    return reduce(mul, values, 1)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(abs(n))]


def radical(n: int) -> int:
    return prod(prime_divisors(n))


def sqfree_part(n: int) -> int:
    """The square-free ``m`` with ``n / m`` a perfect square."""
    return prod(p for p, e in factorize(n) if e % 2)


def vp(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def primes_upto(x: float) -> list[int]:
    """All primes ``<= x`` by a sieve of Eratosthenes."""
    n = math.floor(x)
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def primorial_upto(x: float) -> int:
    if x < 0:
        raise ValueError("primorial_upto needs x >= 0")
    return prod(primes_upto(x))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
