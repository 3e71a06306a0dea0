"""Machine checks of the group theory behind the stabilization and splitting lemmas.

Each check returns a ``CheckOutcome``. A failed outcome always carries a
counterexample complete enough to be replayed without the original inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import gl2, intmath
from .gl2 import SimpleGroupId

Matrix = list[list[int]]


@dataclass
class CheckOutcome:
    name: str
    parameters: dict
    passed: bool
    counterexample: dict | None = None
    expected_fail: bool = False

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failed check needs a counterexample")

    @property
    def ok(self) -> bool:
        """Whether this outcome is the one the suite expects."""
        return self.passed != self.expected_fail

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "passed": self.passed,
            "expected_fail": self.expected_fail,
            "counterexample": self.counterexample,
        }


def _elt(A: Matrix) -> tuple[int, int, int, int]:
    return (A[0][0], A[0][1], A[1][0], A[1][1])


def _rows(x) -> Matrix:
    return [[x[0], x[1]], [x[2], x[3]]]


# -- stabilization lemma: matrix core ----------------------------------------------


def power_lift_check(p: int, alpha: int, A: Matrix, B: Matrix) -> CheckOutcome:
    """X = I + p^alpha A + p^(alpha+1) B satisfies X^p = I + p^(alpha+1) A mod p^(alpha+2)."""
    n = p ** (alpha + 2)
    a, b = _elt(A), _elt(B)
    X = tuple(
        (i + p**alpha * u + p ** (alpha + 1) * v) % n for i, u, v in zip((1, 0, 0, 1), a, b)
    )
    Xp = _raw_power(X, p, n)
    expected = tuple((i + p ** (alpha + 1) * u) % n for i, u in zip((1, 0, 0, 1), a))
    params = {"p": p, "alpha": alpha, "modulus": n}
    if Xp == expected:
        return CheckOutcome("power-lift", params, True)
    cx = {
        "modulus": n,
        "p": p,
        "alpha": alpha,
        "A": _rows(a),
        "B": _rows(b),
        "X": _rows(X),
        "X^p": _rows(Xp),
        "expected": _rows(expected),
    }
    return CheckOutcome("power-lift", params, False, cx)


def _raw_power(x, k: int, n: int):
    # X need not be invertible mod n here, so avoid gl2.power's identity tweaks
    out = (1 % n, 0, 0, 1 % n)
    for _ in range(k):
        out = gl2.mul(out, x, n)
    return out


def replay_power_lift(cx: dict) -> bool:
    """True when the serialized counterexample really violates the congruence."""
    n, p = cx["modulus"], cx["p"]
    X = _elt(cx["X"])
    return _rows(_raw_power(X, p, n)) == cx["X^p"] and cx["X^p"] != cx["expected"]


def power_lift_trials(p: int, alpha: int, trials: int = 10_000, seed: int = 0) -> CheckOutcome:
    rng = random.Random(f"power-lift:{seed}:{p}:{alpha}")
    n = p ** (alpha + 2)
    for t in range(trials):
        A = [[rng.randrange(n) for _ in range(2)] for _ in range(2)]
        B = [[rng.randrange(n) for _ in range(2)] for _ in range(2)]
        out = power_lift_check(p, alpha, A, B)
        if not out.passed:
            out.parameters.update(trials=trials, seed=seed, failed_trial=t)
            return out
    return CheckOutcome(
        "power-lift", {"p": p, "alpha": alpha, "modulus": n, "trials": trials, "seed": seed}, True
    )


KERNEL_FEASIBLE = ((2, 2), (3, 1))


def _lift_offsets(spec: str, p: int, rng: random.Random):
    if spec == "random":
        return lambda A: tuple(rng.randrange(p) for _ in range(4))
    if spec == "zero":
        return lambda A: (0, 0, 0, 0)
    if spec == "adversarial":
        # offsets that cancel the leading term one level up
        return lambda A: tuple((-u) % p for u in A)
    raise ValueError(f"unknown generator spec {spec!r}")


def kernel_absorption_check(
    p: int, alpha: int, generator_spec: str = "random", seed: int = 0
) -> CheckOutcome:
    """Lift every I + p^alpha A in ker(pi_1) to N' and confirm ker(pi_2) <= <lifts>."""
    if (p, alpha) not in KERNEL_FEASIBLE:
        raise ValueError(f"(p, alpha) must be one of {KERNEL_FEASIBLE}")
    n = p ** (alpha + 2)
    rng = random.Random(f"kernel:{seed}:{p}:{alpha}:{generator_spec}")
    offset = _lift_offsets(generator_spec, p, rng)
    lifts = []
    for A in _all_matrices(p):
        B = offset(A)
        lifts.append(
            tuple(
                (i + p**alpha * u + p ** (alpha + 1) * v) % n
                for i, u, v in zip((1, 0, 0, 1), A, B)
            )
        )
    N = gl2.subgroup_closure(lifts, n=n)
    kernel = gl2.reduction_kernel(p, alpha, alpha + 2)
    missing = sorted(kernel.elements - N.elements)
    params = {
        "p": p,
        "alpha": alpha,
        "modulus": n,
        "generator_spec": generator_spec,
        "seed": seed,
        "closure_order": N.order,
    }
    if not missing:
        return CheckOutcome("kernel-absorption", params, True)
    cx = {
        "modulus": n,
        "generators": [_rows(x) for x in lifts],
        "missing": _rows(missing[0]),
    }
    return CheckOutcome("kernel-absorption", params, False, cx)


def _all_matrices(p: int):
    return [(a, b, c, d) for a in range(p) for b in range(p) for c in range(p) for d in range(p)]


def vp_stability_check(p: int, M: int) -> CheckOutcome:
    """The p-part of |GL2(Z/MZ)| depends only on the primes dividing M."""
    if M % p == 0:
        raise ValueError(f"{p} divides {M}")
    lhs = intmath.vp(gl2.gl2_order(M), p)
    rhs = intmath.vp(gl2.gl2_order(intmath.radical(M)), p)
    params = {"p": p, "M": M}
    if lhs == rhs:
        return CheckOutcome("vp-stability", params, True)
    return CheckOutcome(
        "vp-stability", params, False, {"p": p, "M": M, "vp_M": lhs, "vp_rad_M": rhs}
    )


# -- splitting lemma: group theory ------------------------------------------------------


def commutator_sl2_check(M: int) -> CheckOutcome:
    G = gl2.full_group(M)
    K = gl2.commutator_subgroup(G)
    S = gl2.det_kernel(M)
    params = {"M": M, "commutator_order": K.order, "sl2_order": S.order}
    # the identity is claimed for odd M only; even moduli are negative controls
    if K == S:
        return CheckOutcome("commutator-sl2", params, True, expected_fail=M % 2 == 0)
    diff = sorted(K.elements ^ S.elements)
    cx = {
        "modulus": M,
        "witness": _rows(diff[0]),
        "in_commutator": diff[0] in K.elements,
        "in_sl2": diff[0] in S.elements,
    }
    return CheckOutcome("commutator-sl2", params, False, cx, expected_fail=M % 2 == 0)


def psl2_allowed(M: int) -> set[SimpleGroupId]:
    """Simple quotients permitted for GL2(Z/MZ): PSL2(F_p) for p | M, p > 3."""
    return {SimpleGroupId("PSL2", p) for p in intmath.prime_divisors(M) if p > 3}


def simple_quotient_check(M: int) -> CheckOutcome:
    """Containment of the simple non-abelian quotients of GL2(Z/MZ).

    GL2(Z/MZ) is the product of GL2(Z/p^k) over the prime powers in M, and a
    simple non-abelian quotient of a direct product factors through one
    factor, so the factors are searched one at a time.
    """
    found: set = set()
    for p, k in intmath.factorize(M):
        found |= gl2.simple_nonabelian_quotients(gl2.full_group(p**k))
    allowed = psl2_allowed(M)
    params = {"M": M, "found": sorted(map(str, found)), "allowed": sorted(map(str, allowed))}
    if found <= allowed:
        return CheckOutcome("simple-quotients", params, True)
    cx = {"modulus": M, "unexpected": sorted(map(str, found - allowed))}
    return CheckOutcome("simple-quotients", params, False, cx)


def occ_formula(M: int) -> set[SimpleGroupId]:
    """The simple sections of GL2(Z/MZ) predicted by the p mod 5 rule."""
    a5 = SimpleGroupId("PSL2", 5)
    out = set()
    for p in intmath.prime_divisors(M):
        if p == 5:
            out.add(a5)
        elif p > 5 and p % 5 in (1, 4):
            out |= {SimpleGroupId("PSL2", p), a5}
        elif p > 5:
            out.add(SimpleGroupId("PSL2", p))
    return out


def occ_formula_check(M: int, budget: int = 200, seed: int = 0) -> CheckOutcome:
    if M > 15:
        raise ValueError("occ_formula_check is pinned to M <= 15")
    found = gl2.occ_search(M, budget=budget, seed=seed)
    expected = occ_formula(M)
    params = {
        "M": M,
        "budget": budget,
        "seed": seed,
        "found": sorted(map(str, found)),
        "expected": sorted(map(str, expected)),
        "complete": found == expected,
    }
    if found <= expected:
        return CheckOutcome("occ-formula", params, True)
    cx = {"modulus": M, "unexpected": sorted(map(str, found - expected))}
    return CheckOutcome("occ-formula", params, False, cx)


# -- suites ---------------------------------------------------------------------

POWER_LIFT_CASES = ((3, 1), (3, 2), (5, 1), (7, 1), (2, 2), (2, 3))
COMMUTATOR_MODULI = (3, 5, 7, 9, 15)
QUOTIENT_MODULI = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
OCC_MODULI = (2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15)


def _suite_power_lift(seed: int) -> list[CheckOutcome]:
    out = [power_lift_trials(p, a, 10_000, seed) for p, a in POWER_LIFT_CASES]
    witness = power_lift_check(2, 1, [[1, 0], [0, 1]], [[0, 0], [0, 0]])
    witness.expected_fail = True
    out.append(witness)
    return out


def _suite_kernel(seed: int) -> list[CheckOutcome]:
    out = []
    for p, a in KERNEL_FEASIBLE:
        for run in range(100):
            out.append(kernel_absorption_check(p, a, "random", seed * 1000 + run))
        out.append(kernel_absorption_check(p, a, "zero", seed))
        out.append(kernel_absorption_check(p, a, "adversarial", seed))
    return out


def _suite_vp(seed: int) -> list[CheckOutcome]:
    return [
        vp_stability_check(p, M)
        for p in intmath.primes_upto(50)
        for M in range(1, 501)
        if M % p
    ]


def _suite_commutator(seed: int) -> list[CheckOutcome]:
    return [commutator_sl2_check(M) for M in COMMUTATOR_MODULI + (2,)]


def _suite_quotients(seed: int) -> list[CheckOutcome]:
    return [simple_quotient_check(M) for M in QUOTIENT_MODULI]


def _suite_occ(seed: int) -> list[CheckOutcome]:
    return [occ_formula_check(M, 200, seed) for M in OCC_MODULI]


SUITES: dict[str, Callable[[int], list[CheckOutcome]]] = {
    "power-lift": _suite_power_lift,
    "kernel": _suite_kernel,
    "vp": _suite_vp,
    "commutator": _suite_commutator,
    "quotients": _suite_quotients,
    "occ": _suite_occ,
}


def run_suite(selector: str, seed: int = 0) -> list[CheckOutcome]:
    if selector == "all":
        return [o for name in SUITES for o in SUITES[name](seed)]
    if selector not in SUITES:
        raise KeyError(selector)
    return SUITES[selector](seed)
