"""Integral Weierstrass models over Q and their reductions mod p.

Models are taken to be minimal; nothing here reduces a model. For a
semi-stable model the multiplicative-reduction test below (``p | disc`` and
``p`` not dividing ``c4``) already certifies minimality at every bad prime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import intmath
from .config import DEFAULT_POINT_CEILING
from .errors import BadReduction, CeilingExceeded, SingularModel


class Reduction(str, enum.Enum):
    GOOD = "Good"
    MULTIPLICATIVE = "Multiplicative"
    ADDITIVE = "Additive"


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False)
    b4: int = field(init=False)
    b6: int = field(init=False)
    b8: int = field(init=False)
    c4: int = field(init=False)
    c6: int = field(init=False)
    disc: int = field(init=False)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        for name, value in zip(
            ("b2", "b4", "b6", "b8", "c4", "c6", "disc"), (b2, b4, b6, b8, c4, c6, disc)
        ):
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self):
        return "[" + ",".join(map(str, self.ainvs)) + "]"


def invariants(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    """Build a curve, rejecting singular models."""
    curve = WeierstrassCurve(int(a1), int(a2), int(a3), int(a4), int(a6))
    if curve.disc == 0:
        raise SingularModel(f"singular model {curve}: discriminant is 0")
    return curve


def bad_primes(curve) -> list[int]:
    return intmath.prime_divisors(curve.disc)


def reduction_type(curve, p: int) -> Reduction:
    if curve.disc % p:
        return Reduction.GOOD
    if curve.c4 % p:
        return Reduction.MULTIPLICATIVE
    return Reduction.ADDITIVE


def is_semistable(curve) -> bool:
    return all(reduction_type(curve, p) != Reduction.ADDITIVE for p in bad_primes(curve))


def semistable_conductor(curve) -> int:
    """Conductor of a semi-stable curve, which is the radical of its discriminant."""
    if not is_semistable(curve):
        raise ValueError("conductor is only derived for semi-stable curves; supply N")
    return intmath.radical(abs(curve.disc))


# -- point counting ---------------------------------------------------------


def _check_prime(curve, p: int, ceiling: int) -> None:
    if p > ceiling:
        raise CeilingExceeded(f"p = {p} exceeds point-counting ceiling {ceiling}")
    if curve.disc % p == 0:
        raise BadReduction(f"{curve} has bad reduction at {p}")


@lru_cache(maxsize=64)
def _square_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=bool)
    table[(np.arange(p, dtype=np.int64) ** 2) % p] = True
    return table


def _y_discriminant(curve, p: int) -> np.ndarray:
    """(a1 x + a3)^2 + 4 (x^3 + a2 x^2 + a4 x + a6) mod p for every x in F_p."""
    x = np.arange(p, dtype=np.int64)
    h = (curve.a1 % p * x + curve.a3 % p) % p
    f = _eval_mod([curve.a6, curve.a4, curve.a2, 1], x, p)
    return (h * h + 4 * f) % p


def count_points(curve, p: int, ceiling: int = DEFAULT_POINT_CEILING) -> int:
    """#E(F_p), point at infinity included."""
    _check_prime(curve, p, ceiling)
    if p == 2:
        return 1 + sum(
            1 for x in range(2) for y in range(2) if _on_curve(curve, x, y, 2)
        )
    d = _y_discriminant(curve, p)
    squares = _square_table(p)
    # each x contributes 1 + legendre(d) points
    nonzero = d != 0
    chi = np.where(squares[d], 1, -1)
    return 1 + p + int(chi[nonzero].sum())


def trace_ap(curve, p: int, ceiling: int = DEFAULT_POINT_CEILING) -> int:
    return p + 1 - count_points(curve, p, ceiling)


@dataclass(frozen=True)
class FrobeniusSample:
    p: int
    ap: int


def frobenius_samples(
    curve, limit: int, ceiling: int = DEFAULT_POINT_CEILING
) -> list[FrobeniusSample]:
    if limit > ceiling:
        raise CeilingExceeded(f"limit {limit} exceeds point-counting ceiling {ceiling}")
    return [
        FrobeniusSample(p, trace_ap(curve, p, ceiling))
        for p in intmath.primes_upto(limit)
        if curve.disc % p
    ]


# -- group law and l-torsion --------------------------------------------------


def _on_curve(curve, x: int, y: int, p: int) -> bool:
    a1, a2, a3, a4, a6 = curve.ainvs
    return (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0


def add_points(curve, P, Q, p: int):
    """Chord-and-tangent addition on E(F_p); ``None`` is the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, _ = curve.ainvs
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(2 * y1 + a1 * x1 + a3, -1, p)
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p)
    lam %= p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return (x3, y3)


def multiply_point(curve, k: int, P, p: int):
    R = None
    while k:
        if k & 1:
            R = add_points(curve, R, P, p)
        P = add_points(curve, P, P, p)
        k >>= 1
    return R


def _pmul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _psub(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    out = [a - b for a, b in zip(f, g)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _ppow(f: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _pmul(out, f)
    return out


def division_polynomial(curve, n: int) -> list[int]:
    """Coefficients (constant term first) of the reduced division polynomial f_n.

    ``psi_n = f_n`` for odd ``n`` and ``psi_n = psi_2 f_n`` for even ``n``, so
    for odd ``n`` the roots of ``f_n`` are the x-coordinates of the nonzero
    n-torsion points.
    """
    return _division_polys(curve.ainvs, n)[n]


@lru_cache(maxsize=32)
def _division_polys(ainvs: tuple[int, ...], n: int) -> dict[int, list[int]]:
    c = WeierstrassCurve(*ainvs)
    b2, b4, b6, b8 = c.b2, c.b4, c.b6, c.b8
    B2 = _ppow([b6, 2 * b4, b2, 4], 2)  # psi_2^4
    f = {
        0: [0],
        1: [1],
        2: [1],
        3: [b8, 3 * b6, 3 * b4, b2, 3],
        4: [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2],
    }
    for k in range(5, n + 1):
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                f[k] = _psub(
                    _pmul(B2, _pmul(f[m + 2], _ppow(f[m], 3))),
                    _pmul(f[m - 1], _ppow(f[m + 1], 3)),
                )
            else:
                f[k] = _psub(
                    _pmul(f[m + 2], _ppow(f[m], 3)),
                    _pmul(B2, _pmul(f[m - 1], _ppow(f[m + 1], 3))),
                )
        else:
            f[k] = _pmul(
                f[m],
                _psub(
                    _pmul(f[m + 2], _ppow(f[m - 1], 2)),
                    _pmul(f[m - 2], _ppow(f[m + 1], 2)),
                ),
            )
    return f


def _eval_mod(coeffs: list[int], x: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = (acc * x + c % p) % p
    return acc


def torsion_rank(curve, p: int, ell: int, ceiling: int = DEFAULT_POINT_CEILING) -> int:
    """Dimension over F_ell of E(F_p)[ell], for an odd prime ell != p.

    This equals the dimension of the fixed space of Frobenius at ``p`` acting
    on E[ell].
    """
    if ell == 2 or ell == p or not intmath.is_prime(ell):
        raise ValueError("torsion_rank needs an odd prime ell different from p")
    _check_prime(curve, p, ceiling)
    if p == 2:
        pts = [(x, y) for x in range(2) for y in range(2) if _on_curve(curve, x, y, 2)]
        count = 1 + sum(1 for P in pts if multiply_point(curve, ell, P, 2) is None)
    else:
        x = np.arange(p, dtype=np.int64)
        roots = _eval_mod(division_polynomial(curve, ell), x, p) == 0
        d = _y_discriminant(curve, p)
        squares = _square_table(p)
        count = 1 + int(np.sum(np.where(d[roots] == 0, 1, np.where(squares[d[roots]], 2, 0))))
    if count == 1:
        return 0
    if count == ell:
        return 1
    if count == ell * ell:
        return 2
    raise AssertionError(f"{count} {ell}-torsion points over F_{p}")


def two_division_cubic(curve) -> tuple[int, int, int, int]:
    """Coefficients (leading first) of 4x^3 + b2 x^2 + 2 b4 x + b6."""
    return (4, curve.b2, 2 * curve.b4, curve.b6)
