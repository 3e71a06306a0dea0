"""The torsion conductor bound n_E and the quantities around it."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import intmath
from .config import DEFAULT_POINT_CEILING, DEFAULT_PRIME_LIMIT
from .curve import is_semistable, semistable_conductor
from .errors import NotSemistable
from .gl2 import gl2_order
from .image import ExceptionalSet, ImageClass, exceptional_set

SCHEMA = "1"

# primes within this distance of B_E count as below it
B_E_SLACK = 1e-6


class AlphaSource(str, enum.Enum):
    SURJECTIVE_TATE_MODULE = "SurjectiveTateModule"
    DEFAULT_FLOOR = "DefaultFloor"
    USER_OVERRIDE = "UserOverride"


def alpha_p(p: int, image: ImageClass | None, override: int | None = None):
    """Stabilization exponent max(1, n_Q(p)) and where its value came from.

    For p > 3 with proven surjective mod-p image the Tate-module image is all
    of GL2(Z_p), so n_Q(p) = 0 and the exponent is 1. Otherwise n_Q(p) is not
    known and the floor (or the caller's override) is used.
    """
    if p > 3 and image is not None and image.proven_full:
        return 1, AlphaSource.SURJECTIVE_TATE_MODULE
    if override is not None:
        if override < 0:
            raise ValueError("alpha override must be >= 0")
        return max(1, override), AlphaSource.USER_OVERRIDE
    return 1, AlphaSource.DEFAULT_FLOOR


def beta_p(p: int, S) -> int:
    """p-adic valuation of |GL2(Z/mZ)| with m the product of S minus p."""
    S = set(S)
    if p not in S:
        raise ValueError(f"{p} is not in S")
    m = intmath.prod(ell for ell in S if ell != p)
    return intmath.vp(gl2_order(m), p)


def A_of_E(nonfull_primes) -> int:
    """30 times every prime with non-surjective image, taken literally (no dedup of 2, 3, 5)."""
    return 30 * intmath.prod(nonfull_primes)


def B_E(N: int, disc: int) -> float:
    if N < 1 or disc == 0:
        raise ValueError("need N >= 1 and nonzero discriminant")
    factor = math.prod(math.sqrt(1 + 1 / p) for p in intmath.prime_divisors(disc))
    return 4 * math.sqrt(6) / 3 * N * factor + 1


def conditional_mE_bound(N: int, disc: int, C_Q: int) -> int:
    """primorial(B_E)^(C_Q + 4) * rad(disc)^5, the bound conditional on n_Q(p) <= C_Q."""
    if C_Q < 0:
        raise ValueError("C_Q must be >= 0")
    cutoff = B_E(N, disc) + B_E_SLACK
    return intmath.primorial_upto(cutoff) ** (C_Q + 4) * intmath.radical(abs(disc)) ** 5


@dataclass(frozen=True)
class PrimeRecord:
    p: int
    alpha: int
    alpha_source: AlphaSource
    beta: int

    @property
    def exponent(self) -> int:
        return self.alpha + self.beta


def assemble_nE(records) -> int:
    return intmath.prod(r.p**r.exponent for r in records)


@dataclass
class ConductorReport:
    S: list[int]
    records: list[PrimeRecord]
    n_E: int
    A_E: int
    disc: int
    rad_disc: int
    semistable: bool
    conditional_reasons: list[str] = field(default_factory=list)
    images: dict = field(default_factory=dict)
    label: str | None = None
    ainvs: tuple | None = None
    conductor: int | None = None

    @property
    def conditional(self) -> bool:
        return bool(self.conditional_reasons)

    @property
    def n_E_factored(self) -> list[tuple[int, int]]:
        return [(r.p, r.exponent) for r in self.records]

    def record(self, p: int) -> PrimeRecord:
        return next(r for r in self.records if r.p == p)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "S": self.S,
            "primes": [
                {
                    "p": r.p,
                    "alpha": r.alpha,
                    "alpha_source": r.alpha_source.value,
                    "beta": r.beta,
                    "exponent": r.exponent,
                }
                for r in self.records
            ],
            "n_E": str(self.n_E),
            "n_E_factored": [[p, e] for p, e in self.n_E_factored],
            "A_E": str(self.A_E),
            "disc": str(self.disc),
            "rad_disc": str(self.rad_disc),
            "semistable": self.semistable,
            "conditional": self.conditional,
            "conditional_reasons": self.conditional_reasons,
            "images": {str(ell): im.to_json() for ell, im in sorted(self.images.items())},
        }
        if self.label is not None:
            out["label"] = self.label
        if self.ainvs is not None:
            out["ainvs"] = list(self.ainvs)
        if self.conductor is not None:
            out["conductor"] = str(self.conductor)
        return out


def report_from_set(
    exc: ExceptionalSet, disc: int, alpha_overrides: dict[int, int] | None = None
) -> ConductorReport:
    overrides = alpha_overrides or {}
    reasons = list(exc.conditional_reasons)
    records = []
    for p in exc.primes:
        a, source = alpha_p(p, exc.images.get(p), overrides.get(p))
        if source != AlphaSource.SURJECTIVE_TATE_MODULE:
            reasons.append(
                f"alpha_{p} = {a} from {source.value}: the stabilization exponent at {p} is not known"
            )
        records.append(PrimeRecord(p, a, source, beta_p(p, exc.primes)))
    return ConductorReport(
        S=list(exc.primes),
        records=records,
        n_E=assemble_nE(records),
        A_E=A_of_E(exc.nonfull),
        disc=disc,
        rad_disc=intmath.radical(abs(disc)),
        semistable=exc.semistable,
        conditional_reasons=reasons,
        images=exc.images,
    )


def compute_nE(
    curve,
    non_cm: bool,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    alpha_overrides: dict[int, int] | None = None,
    conductor: int | None = None,
    ceiling: int = DEFAULT_POINT_CEILING,
    label: str | None = None,
) -> ConductorReport:
    exc = exceptional_set(curve, non_cm, prime_limit, ceiling)
    report = report_from_set(exc, curve.disc, alpha_overrides)
    report.label = label
    report.ainvs = curve.ainvs
    if conductor is None and is_semistable(curve):
        conductor = semistable_conductor(curve)
    report.conductor = conductor
    return report


def check_nE_bound(report: ConductorReport) -> tuple[bool, int, int]:
    """n_E <= (210 rad(disc))^5, the explicit semi-stable instance of the n_E bound.

    Returns (holds, n_E, right-hand side).
    """
    if not report.semistable:
        raise NotSemistable("the explicit bound is only claimed for semi-stable curves")
    rhs = (210 * report.rad_disc) ** 5
    return report.n_E <= rhs, report.n_E, rhs
