"""Mod-ell image classification and the exceptional prime set.

Surjectivity at ell in {3, 5, 7} is proven by exclusion. Any proper subgroup
of GL2(F_ell) with surjective determinant lies, up to conjugacy, in a Borel
subgroup, the normalizer of a split or non-split Cartan subgroup, or the
preimage of an exceptional subgroup of PGL2(F_ell). Each Frobenius element
contributes the conjugation invariant (trace, det, dim of fixed space), read
off as (a_p, p, rank of E(F_p)[ell]). Once the observed invariants fit inside
no single class, the image is all of GL2(F_ell).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import gl2, intmath
from .config import DEFAULT_POINT_CEILING, DEFAULT_PRIME_LIMIT
from .curve import is_semistable, torsion_rank, trace_ap, two_division_cubic
from .errors import CMCurveError

CHECKABLE = (2, 3, 5, 7)


class Verdict(str, enum.Enum):
    FULL = "Full"
    BOREL = "Borel"
    SPLIT_CARTAN_NORMALIZER = "SplitCartanNormalizer"
    NONSPLIT_CARTAN_NORMALIZER = "NonsplitCartanNormalizer"
    EXCEPTIONAL = "Exceptional"
    UNDETERMINED = "Undetermined"


# search order when several classes still fit the samples
CLASS_ORDER = (
    Verdict.BOREL,
    Verdict.SPLIT_CARTAN_NORMALIZER,
    Verdict.NONSPLIT_CARTAN_NORMALIZER,
    Verdict.EXCEPTIONAL,
)


@dataclass(frozen=True)
class ImageClass:
    """Verdict on G(ell) with its evidence.

    ``basis`` records how the verdict was reached: ``signature`` (Frobenius
    exclusion), ``two-division`` (exact, ell = 2), ``mazur`` (semi-stable and
    ell >= 11), ``assumed`` (ell >= 11 on a non-semi-stable curve) or
    ``injected`` (supplied by a caller).
    """

    ell: int
    verdict: Verdict
    heuristic: bool
    basis: str
    certificate: tuple[int, ...] = ()
    matched: tuple[Verdict, ...] = ()
    order: int | None = None
    samples: int = 0

    @property
    def is_full(self) -> bool:
        return self.verdict == Verdict.FULL

    @property
    def proven_full(self) -> bool:
        return self.is_full and self.basis in ("signature", "two-division", "mazur")

    def to_json(self) -> dict:
        out = {
            "ell": self.ell,
            "verdict": self.verdict.value,
            "heuristic": self.heuristic,
            "basis": self.basis,
            "certificate": list(self.certificate),
            "matched": [v.value for v in self.matched],
            "samples": self.samples,
        }
        if self.order is not None:
            out["order"] = self.order
        return out


# -- signature tables ---------------------------------------------------------

Signature = tuple[int, int, int]


def element_signature(x: gl2.Elt, ell: int) -> Signature:
    a, b, c, d = x
    tr = (a + d) % ell
    dt = (a * d - b * c) % ell
    if x == (1, 0, 0, 1):
        fix = 2
    elif ((a - 1) * (d - 1) - b * c) % ell == 0:
        fix = 1
    else:
        fix = 0
    return (tr, dt, fix)


def frobenius_signature(tr: int, dt: int, ell: int, rank=None) -> Signature:
    """Invariant of Frobenius from trace and det, with the fixed-space rank
    supplied only where (trace, det) leaves it open."""
    tr %= ell
    dt %= ell
    if (1 - tr + dt) % ell:
        return (tr, dt, 0)
    if (tr, dt) != (2 % ell, 1):
        return (tr, dt, 1)
    if rank is None:
        raise ValueError("rank needed when the characteristic polynomial is (x-1)^2")
    return (tr, dt, rank)


@dataclass(frozen=True)
class SignatureTable:
    ell: int
    classes: dict = field(hash=False)
    full: frozenset = field(hash=False)
    representatives: dict = field(hash=False, repr=False)

    def pairs(self, name: Verdict) -> frozenset:
        return frozenset((t, d) for t, d, _ in self.classes[name])

    def containing(self, observed) -> tuple[Verdict, ...]:
        return tuple(v for v in CLASS_ORDER if v in self.classes and observed <= self.classes[v])


def _generator_mod(ell: int) -> int:
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in intmath.prime_divisors(ell - 1)):
            return g
    return 1


def _nonsquare(ell: int) -> int:
    return next(e for e in range(2, ell) if pow(e, (ell - 1) // 2, ell) == ell - 1)


def _exceptional_rep(ell: int) -> gl2.SubgroupModN | None:
    """Preimage in GL2(F_ell) of an S4 inside PGL2(F_ell).

    For ell in {5, 7} the largest exceptional subgroup of PGL2 not containing
    PSL2 is S4 (A4 sits inside it, and A5 in PGL2(F_5) is PSL2 itself). S4 is
    the only centreless group of order 24, which identifies it.
    """
    if ell not in (5, 7):
        return None
    g = _generator_mod(ell)
    scalar = (g, 0, 0, g)
    target = 24 * (ell - 1)
    rng = random.Random(f"s4:{ell}")
    for _ in range(20000):
        x, y = gl2.random_element(ell, rng), gl2.random_element(ell, rng)
        H = gl2.subgroup_closure([scalar, x, y], n=ell, budget=gl2.gl2_order(ell))
        if H.order != target:
            continue
        scalars = {(s, 0, 0, s) for s in range(1, ell)}
        central_mod_scalars = [
            h
            for h in H.elements
            if h not in scalars
            and all(
                gl2.commutator(h, k, ell) in scalars for k in H.generators
            )
        ]
        if not central_mod_scalars:
            return H
    raise RuntimeError(f"no S4 found in PGL2(F_{ell})")


@lru_cache(maxsize=None)
def build_signature_table(ell: int) -> SignatureTable:
    if ell not in (3, 5, 7):
        raise ValueError("signature tables exist for ell in {3, 5, 7}")
    g = _generator_mod(ell)
    eps = _nonsquare(ell)
    reps = {
        Verdict.BOREL: gl2.subgroup_closure(
            [(g, 0, 0, 1), (1, 0, 0, g), (1, 1, 0, 1)], n=ell
        ),
        Verdict.SPLIT_CARTAN_NORMALIZER: gl2.subgroup_closure(
            [(g, 0, 0, 1), (1, 0, 0, g), (0, 1, 1, 0)], n=ell
        ),
    }
    cartan = [(a, b * eps % ell, b, a) for a in range(ell) for b in range(ell) if (a or b)]
    reps[Verdict.NONSPLIT_CARTAN_NORMALIZER] = gl2.subgroup_closure(
        cartan + [(1, 0, 0, ell - 1)], n=ell
    )
    exc = _exceptional_rep(ell)
    if exc is not None:
        reps[Verdict.EXCEPTIONAL] = exc
    classes = {
        v: frozenset(element_signature(x, ell) for x in H.elements) for v, H in reps.items()
    }
    full = frozenset(element_signature(x, ell) for x in gl2.full_group(ell).elements)
    return SignatureTable(ell, classes, full, reps)


def certificate_is_valid(table: SignatureTable, signatures) -> bool:
    """True when no single maximal class realizes all of ``signatures``."""
    signatures = frozenset(signatures)
    return all(not signatures <= s for s in table.classes.values())


# -- mod 2 ----------------------------------------------------------------------


def _integer_roots(coeffs: list[int]) -> set[int]:
    """Integer roots of a monic integer polynomial (leading coefficient first)."""
    const = coeffs[-1]
    if const == 0:
        return {0} | _integer_roots(coeffs[:-1]) if len(coeffs) > 2 else {0}
    roots = set()
    for d in intmath.divisors(abs(const)):
        for r in (d, -d):
            acc = 0
            for c in coeffs:
                acc = acc * r + c
            if acc == 0:
                roots.add(r)
    return roots


def two_torsion_roots(curve) -> set:
    """Rational roots of the 2-division cubic, as x-coordinates times 4."""
    _, b2, b4x2, b6 = two_division_cubic(curve)
    # x = X/4 turns 4x^3 + b2 x^2 + 2b4 x + b6 into X^3 + b2 X^2 + 8b4 X + 16b6
    return _integer_roots([1, b2, 4 * b4x2, 16 * b6])


def mod2_image(curve) -> ImageClass:
    nroots = len(two_torsion_roots(curve))
    if nroots == 0:
        order = 3 if intmath.is_square(curve.disc) else 6
    elif nroots == 1:
        order = 2
    else:
        order = 1
    verdict = {
        6: Verdict.FULL,
        3: Verdict.NONSPLIT_CARTAN_NORMALIZER,
        2: Verdict.BOREL,
        1: Verdict.BOREL,
    }[order]
    return ImageClass(2, verdict, heuristic=False, basis="two-division", order=order)


# -- ell in {3, 5, 7} -------------------------------------------------------------


def observed_signatures(curve, ell: int, prime_limit: int, ceiling: int = DEFAULT_POINT_CEILING):
    """Yield (p, signature) for good primes p <= prime_limit, p != ell."""
    for p in intmath.primes_upto(prime_limit):
        if p == ell or curve.disc % p == 0:
            continue
        ap = trace_ap(curve, p, ceiling)
        rank = None
        if ap % ell == 2 % ell and p % ell == 1:
            rank = torsion_rank(curve, p, ell, ceiling)
        yield p, frobenius_signature(ap, p, ell, rank)


def classify_mod_ell(
    curve,
    ell: int,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    ceiling: int = DEFAULT_POINT_CEILING,
) -> ImageClass:
    if ell == 2:
        return mod2_image(curve)
    if ell not in CHECKABLE:
        raise ValueError(f"classification is implemented for ell in {CHECKABLE}")
    table = build_signature_table(ell)
    alive = dict(table.classes)
    witnesses: dict[Verdict, int] = {}
    seen = 0
    for p, sig in observed_signatures(curve, ell, prime_limit, ceiling):
        seen += 1
        for v in list(alive):
            if sig not in alive[v]:
                witnesses[v] = p
                del alive[v]
        if not alive:
            return ImageClass(
                ell,
                Verdict.FULL,
                heuristic=False,
                basis="signature",
                certificate=tuple(sorted(set(witnesses.values()))),
                samples=seen,
            )
    if not seen:
        return ImageClass(ell, Verdict.UNDETERMINED, heuristic=True, basis="signature")
    matched = tuple(v for v in CLASS_ORDER if v in alive)
    return ImageClass(
        ell, matched[0], heuristic=True, basis="signature", matched=matched, samples=seen
    )


def revalidate(curve, image: ImageClass, ceiling: int = DEFAULT_POINT_CEILING) -> bool:
    """Recompute a Full certificate from its primes and check it against the tables."""
    if not image.is_full or image.basis != "signature":
        raise ValueError("only signature certificates can be revalidated")
    table = build_signature_table(image.ell)
    sigs = set()
    for p in image.certificate:
        ap = trace_ap(curve, p, ceiling)
        rank = None
        if ap % image.ell == 2 % image.ell and p % image.ell == 1:
            rank = torsion_rank(curve, p, image.ell, ceiling)
        sigs.add(frobenius_signature(ap, p, image.ell, rank))
    return certificate_is_valid(table, sigs)


# -- the exceptional set -----------------------------------------------------------


@dataclass
class ExceptionalSet:
    primes: list[int]
    images: dict[int, ImageClass]
    semistable: bool
    conditional_reasons: list[str] = field(default_factory=list)

    @property
    def nonfull(self) -> list[int]:
        return sorted(ell for ell, im in self.images.items() if not im.is_full)


def assemble_S(
    disc_primes, images: dict[int, ImageClass], semistable: bool = True
) -> ExceptionalSet:
    """S = {2, 3, 5} together with the bad primes and every prime whose image is not Full."""
    S = {2, 3, 5} | set(disc_primes) | {ell for ell, im in images.items() if not im.is_full}
    reasons = []
    if not semistable:
        reasons.append(
            "not semi-stable: surjectivity at primes >= 11 is assumed, not proven"
        )
    return ExceptionalSet(sorted(S), dict(sorted(images.items())), semistable, reasons)


def exceptional_set(
    curve,
    non_cm: bool,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    ceiling: int = DEFAULT_POINT_CEILING,
) -> ExceptionalSet:
    if not non_cm:
        raise CMCurveError("the curve must be asserted non-CM")
    semistable = is_semistable(curve)
    bad = intmath.prime_divisors(curve.disc)
    images = {ell: classify_mod_ell(curve, ell, prime_limit, ceiling) for ell in CHECKABLE}
    for p in bad:
        if p not in images:
            # Mazur: a semi-stable curve has surjective mod-p image for p >= 11
            basis = "mazur" if semistable else "assumed"
            images[p] = ImageClass(p, Verdict.FULL, heuristic=not semistable, basis=basis)
    return assemble_S(bad, images, semistable)
