"""Explicit finite subgroups of GL2(Z/nZ).

Elements are 4-tuples ``(a, b, c, d)`` of canonical residues standing for
``[[a, b], [c, d]]``; the modulus lives on the enclosing group. ``MatModN`` is
the public value type wrapping one such tuple with its modulus.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import intmath
from .config import DEFAULT_NORMAL_LIMIT, closure_budget
from .errors import BudgetExceeded, SizeExceeded

Elt = tuple[int, int, int, int]


def identity(n: int) -> Elt:
    one = 1 % n
    return (one, 0, 0, one)


def mul(x: Elt, y: Elt, n: int) -> Elt:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def det(x: Elt, n: int) -> int:
    a, b, c, d = x
    return (a * d - b * c) % n


def inv(x: Elt, n: int) -> Elt:
    a, b, c, d = x
    u = pow((a * d - b * c) % n, -1, n) if n > 1 else 0
    return ((d * u) % n, (-b * u) % n, (-c * u) % n, (a * u) % n)


def power(x: Elt, k: int, n: int) -> Elt:
    out = identity(n)
    while k:
        if k & 1:
            out = mul(out, x, n)
        x = mul(x, x, n)
        k >>= 1
    return out


def commutator(x: Elt, y: Elt, n: int) -> Elt:
    return mul(mul(x, y, n), mul(inv(x, n), inv(y, n), n), n)


def conjugate(g: Elt, x: Elt, n: int) -> Elt:
    """g x g^-1"""
    return mul(mul(g, x, n), inv(g, n), n)


@dataclass(frozen=True)
class MatModN:
    n: int
    entries: Elt

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be >= 1")
        entries = tuple(int(v) % self.n for v in self.entries)
        if len(entries) != 4:
            raise ValueError("a 2x2 matrix needs four entries")
        object.__setattr__(self, "entries", entries)
        if math.gcd(det(entries, self.n), self.n) != 1:
            raise ValueError(f"{entries} is not invertible mod {self.n}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], n: int) -> "MatModN":
        (a, b), (c, d) = rows
        return cls(n, (a, b, c, d))

    def __mul__(self, other: "MatModN") -> "MatModN":
        if other.n != self.n:
            raise ValueError("moduli differ")
        return MatModN(self.n, mul(self.entries, other.entries, self.n))

    def inverse(self) -> "MatModN":
        return MatModN(self.n, inv(self.entries, self.n))

    def det(self) -> int:
        return det(self.entries, self.n)

    def trace(self) -> int:
        return (self.entries[0] + self.entries[3]) % self.n

    def __pow__(self, k: int) -> "MatModN":
        if k < 0:
            return self.inverse() ** (-k)
        return MatModN(self.n, power(self.entries, k, self.n))

    def rows(self) -> list[list[int]]:
        a, b, c, d = self.entries
        return [[a, b], [c, d]]


@dataclass(frozen=True, eq=False)
class SubgroupModN:
    """A finite subgroup of GL2(Z/nZ) held as an explicit element set.

    ``generators`` is a generating set; groups built by closure keep only the
    generators that actually enlarged the group.
    """

    n: int
    elements: frozenset
    generators: tuple = field(default=())

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, MatModN):
            return x.n == self.n and x.entries in self.elements
        return x in self.elements

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupModN)
            and self.n == other.n
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.n, self.elements))

    def __le__(self, other: "SubgroupModN") -> bool:
        return self.n == other.n and self.elements <= other.elements

    def __lt__(self, other: "SubgroupModN") -> bool:
        return self.n == other.n and self.elements < other.elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            mul(x, y, self.n) == mul(y, x, self.n) for i, x in enumerate(gens) for y in gens[i + 1 :]
        )

    def mats(self) -> list[MatModN]:
        return [MatModN(self.n, e) for e in sorted(self.elements)]


# -- orders and reductions ---------------------------------------------------


def gl2_order(n: int) -> int:
    """|GL2(Z/nZ)| from |GL2(Z/p^k)| = p^(4(k-1)) (p^2 - 1)(p^2 - p)."""
    if n < 1:
        raise ValueError("n must be positive")
    return intmath.prod(
        p ** (4 * (k - 1)) * (p * p - 1) * (p * p - p) for p, k in intmath.factorize(n)
    )


def project(m: MatModN, d: int) -> MatModN:
    if d < 1 or m.n % d:
        raise ValueError(f"{d} does not divide {m.n}")
    return MatModN(d, m.entries)


# -- closure ------------------------------------------------------------------


def _close(
    n: int,
    gens: Iterable[Elt],
    budget: int,
    base: list[Elt] | None = None,
    base_gens: Sequence[Elt] = (),
) -> tuple[list[Elt], list[Elt]]:
    """Dimino's algorithm: extend the closed group ``base`` by ``gens``.

    The element list is kept as a union of right cosets of the previous
    group, so each new generator costs one multiplication per element.
    """
    if base is None:
        elements = [identity(n)]
    else:
        elements = list(base)
    members = set(elements)
    used = list(base_gens)
    for g in gens:
        if g in members:
            continue
        prev = list(elements)
        used.append(g)
        reps = [g]
        coset = [mul(h, g, n) for h in prev]
        elements.extend(coset)
        members.update(coset)
        i = 0
        while i < len(reps):
            r = reps[i]
            for s in used:
                e = mul(r, s, n)
                if e not in members:
                    coset = [mul(h, e, n) for h in prev]
                    elements.extend(coset)
                    members.update(coset)
                    reps.append(e)
                    if len(elements) > budget:
                        raise BudgetExceeded(
                            f"closure mod {n} exceeded budget of {budget} elements"
                        )
            i += 1
        if len(elements) > budget:
            raise BudgetExceeded(f"closure mod {n} exceeded budget of {budget} elements")
    return elements, used


def subgroup_closure(
    generators: Sequence[MatModN | Elt], n: int | None = None, budget: int | None = None
) -> SubgroupModN:
    """Smallest subgroup containing ``generators``."""
    if n is None:
        mods = {g.n for g in generators if isinstance(g, MatModN)}
        if len(mods) != 1:
            raise ValueError("generators need one common modulus (or pass n)")
        n = mods.pop()
    gens = []
    for g in generators:
        if isinstance(g, MatModN):
            if g.n != n:
                raise ValueError("generators need one common modulus")
            gens.append(g.entries)
        else:
            gens.append(tuple(v % n for v in g))
    budget = closure_budget() if budget is None else budget
    elements, used = _close(n, gens, budget)
    return SubgroupModN(n, frozenset(elements), tuple(used))


def extend(G: SubgroupModN, gens: Iterable[Elt], budget: int | None = None) -> SubgroupModN:
    budget = closure_budget() if budget is None else budget
    gens = [g for g in gens if g not in G.elements]
    if not gens:
        return G
    elements, used = _close(G.n, gens, budget, base=list(G.elements), base_gens=G.generators)
    return SubgroupModN(G.n, frozenset(elements), tuple(used))


def from_elements(n: int, elements: Iterable[Elt]) -> SubgroupModN:
    """Wrap an explicit element set, checking that it is a subgroup."""
    elements = frozenset(elements)
    try:
        G = subgroup_closure(sorted(elements), n=n, budget=len(elements))
    except BudgetExceeded:
        G = None
    if G is None or G.elements != elements:
        raise ValueError("element set is not closed under multiplication")
    return G


def units(n: int) -> list[int]:
    return [u for u in range(n) if math.gcd(u, n) == 1]


@lru_cache(maxsize=32)
def full_group(n: int, budget: int | None = None) -> SubgroupModN:
    """GL2(Z/nZ) as the closure of elementary matrices and diag(u, 1)."""
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)] + [(u, 0, 0, 1) for u in units(n)]
    return subgroup_closure(gens, n=n, budget=budget)


def det_kernel(n: int) -> SubgroupModN:
    """SL2(Z/nZ) by direct enumeration of all matrices with determinant 1."""
    one = 1 % n
    els = [
        (a, b, c, d)
        for a in range(n)
        for b in range(n)
        for c in range(n)
        for d in range(n)
        if (a * d - b * c) % n == one
    ]
    return from_elements(n, els)


def reduction_kernel(p: int, alpha: int, level: int) -> SubgroupModN:
    """Kernel of GL2(Z/p^level) -> GL2(Z/p^(level-1)), i.e. I + p^(level-1) M2(Z/p)."""
    if not intmath.is_prime(p) or alpha < 1 or level not in (alpha + 1, alpha + 2):
        raise ValueError("need p prime, alpha >= 1 and level in {alpha+1, alpha+2}")
    n = p**level
    q = p ** (level - 1)
    els = [
        ((1 + q * a) % n, (q * b) % n, (q * c) % n, (1 + q * d) % n)
        for a in range(p)
        for b in range(p)
        for c in range(p)
        for d in range(p)
    ]
    return from_elements(n, els)


def random_element(n: int, rng: random.Random) -> Elt:
    while True:
        x = (rng.randrange(n), rng.randrange(n), rng.randrange(n), rng.randrange(n))
        if math.gcd(det(x, n), n) == 1:
            return x


# -- derived and normal subgroups ----------------------------------------------


def commutator_subgroup(G: SubgroupModN, budget: int | None = None) -> SubgroupModN:
    """[G, G] as the normal closure of the commutators of generator pairs."""
    n = G.n
    gens = list(G.generators)
    comms = [commutator(x, y, n) for x in gens for y in gens]
    K = subgroup_closure(comms, n=n, budget=budget)
    changed = True
    while changed:
        changed = False
        for x in gens:
            new = [conjugate(x, k, n) for k in K.generators]
            new = [c for c in new if c not in K.elements]
            if new:
                K = extend(K, new, budget)
                changed = True
    return K


def conjugacy_classes(G: SubgroupModN) -> list[list[Elt]]:
    n = G.n
    gens = G.generators
    seen: set = set()
    classes = []
    for x in sorted(G.elements):
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        i = 0
        while i < len(orbit):
            y = orbit[i]
            for g in gens:
                z = conjugate(g, y, n)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
            i += 1
        classes.append(orbit)
    return classes


def normal_subgroups(G: SubgroupModN, limit: int = DEFAULT_NORMAL_LIMIT) -> list[SubgroupModN]:
    """All normal subgroups of G, smallest first.

    Every normal subgroup is the join of the normal closures of the classes it
    contains, so the lattice is generated from those closures by joins.
    """
    if G.order > limit:
        raise SizeExceeded(f"|G| = {G.order} exceeds normal-subgroup limit {limit}")
    n = G.n
    budget = G.order
    classes = conjugacy_classes(G)
    class_of = {x: i for i, cls in enumerate(classes) for x in cls}

    def mask(H: SubgroupModN) -> frozenset:
        return frozenset(class_of[x] for x in H.elements)

    trivial = subgroup_closure([], n=n)
    lattice: dict[frozenset, SubgroupModN] = {mask(trivial): trivial}
    atoms: dict[frozenset, SubgroupModN] = {}
    for cls in classes:
        N = subgroup_closure(cls, n=n, budget=budget)
        atoms.setdefault(mask(N), N)
    lattice.update(atoms)
    queue = list(lattice)
    while queue:
        m = queue.pop()
        X = lattice[m]
        for am, A in atoms.items():
            if am <= m:
                continue
            J = extend(X, A.generators, budget)
            jm = mask(J)
            if jm not in lattice:
                lattice[jm] = J
                queue.append(jm)
    return sorted(lattice.values(), key=lambda H: (H.order, sorted(H.elements)))


# -- simple groups ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SimpleGroupId:
    """A finite simple non-abelian group, named by family and parameter.

    ``PSL2(F_q)`` carries ``family="PSL2"`` and ``param=q``; A5 is PSL2(F_5)
    and A6 is PSL2(F_9). Orders not matching a PSL2 are kept as
    ``family="order"``.
    """

    family: str
    param: int

    def __str__(self):
        if self.family == "PSL2":
            return f"PSL2(F{self.param})"
        return f"Simple[{self.param}]"

    @property
    def alias(self) -> str | None:
        return {5: "A5", 9: "A6"}.get(self.param) if self.family == "PSL2" else None


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


# orders of all simple non-abelian groups below 10^4
SIMPLE_ORDERS = (60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080, 5616, 6048, 6072, 7800, 7920, 9828)


def identify_simple(order: int) -> SimpleGroupId:
    """Name a simple non-abelian group from its order (valid below 20160)."""
    for q in range(4, 200):
        if psl2_order(q) == order and len(intmath.factorize(q)) == 1:
            return SimpleGroupId("PSL2", 5 if q == 4 else q)
    return SimpleGroupId("order", order)


def simple_nonabelian_quotients(
    G: SubgroupModN, limit: int = DEFAULT_NORMAL_LIMIT
) -> frozenset[SimpleGroupId]:
    """Simple non-abelian groups G/N, for N running over maximal normal subgroups."""
    normals = normal_subgroups(G, limit)
    derived = commutator_subgroup(G, budget=G.order)
    found = set()
    for N in normals:
        if N.order == G.order or derived <= N:
            continue
        if any(N < M and M.order < G.order for M in normals):
            continue
        found.add(identify_simple(G.order // N.order))
    return frozenset(found)


def _could_have_simple_quotient(H: SubgroupModN) -> bool:
    return (
        H.order >= 60
        and any(H.order % s == 0 for s in SIMPLE_ORDERS if s <= H.order)
        and not H.is_abelian()
    )


def occ_search(
    M: int,
    budget: int = 200,
    seed: int = 0,
    normal_limit: int = DEFAULT_NORMAL_LIMIT,
    closure_limit: int | None = None,
) -> frozenset[SimpleGroupId]:
    """Simple non-abelian quotients of randomly generated subgroups of GL2(Z/MZ).

    Each of ``budget`` samples closes a pair of random elements and collects
    the simple non-abelian quotients of the result. Subgroups larger than
    ``normal_limit`` are skipped, so the answer is a subset of the true set of
    simple sections. Sample ``i`` draws from its own generator seeded by
    ``(seed, i)``, so the result does not depend on evaluation order.
    """
    found: set = set()
    seen: set = set()
    for i in range(budget):
        rng = random.Random(f"{seed}:{i}")
        pair = [random_element(M, rng), random_element(M, rng)]
        H = subgroup_closure(pair, n=M, budget=closure_limit)
        if H.elements in seen:
            continue
        seen.add(H.elements)
        if H.order > normal_limit or not _could_have_simple_quotient(H):
            continue
        found |= simple_nonabelian_quotients(H, normal_limit)
    return frozenset(found)
