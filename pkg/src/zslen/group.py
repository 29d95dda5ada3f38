"""Finite abelian groups in invariant-factor form, with element arithmetic.

Every group is canonicalized at construction to C_{n1} + ... + C_{nr} with
1 < n1 | n2 | ... | nr, so structural equality coincides with isomorphism
and groups can serve as cache keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import InvalidArgumentError, ResourceLimitError

# All downstream enumeration is exponential in the group order; this cap
# keeps the toolkit at desk scale.  Pass max_order=None to lift it.
DEFAULT_MAX_ORDER = 64


def _prime_powers(n: int) -> list[tuple[int, int]]:
    """Prime-power decomposition of n >= 2 as (prime, exponent) pairs."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """C_{n1} + ... + C_{nr}; the empty factor tuple is the trivial group."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        facs = self.invariant_factors
        if any(n <= 1 for n in facs):
            raise InvalidArgumentError(f"invariant factors must exceed 1: {facs}")
        if any(facs[i + 1] % facs[i] != 0 for i in range(len(facs) - 1)):
            raise InvalidArgumentError(f"divisibility chain violated: {facs}")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def element(self, coords) -> "GroupElement":
        """Build an element, reducing each coordinate modulo its factor."""
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise InvalidArgumentError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        reduced = tuple(a % n for a, n in zip(coords, self.invariant_factors))
        return GroupElement(self, reduced)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def __str__(self):
        if not self.invariant_factors:
            return "C1"
        return "+".join(f"C{n}" for n in self.invariant_factors)


@dataclass(frozen=True)
class GroupElement:
    """An element of its group, coordinates reduced modulo the factors."""

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        facs = self.group.invariant_factors
        if len(self.coords) != len(facs):
            raise InvalidArgumentError("coordinate count does not match group rank")
        if any(not (0 <= a < n) for a, n in zip(self.coords, facs)):
            raise InvalidArgumentError(f"coordinates not reduced: {self.coords}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(a) for a in self.coords) + ")"


def make_group(moduli, max_order: int | None = DEFAULT_MAX_ORDER) -> FiniteAbelianGroup:
    """Canonicalize the direct sum of cyclic groups C_m for m in moduli.

    The moduli are split into prime powers and greedily recombined into a
    divisibility chain; factors equal to 1 are dropped.
    """
    by_prime: dict[int, list[int]] = {}
    for m in moduli:
        if not isinstance(m, int) or isinstance(m, bool) or m <= 0:
            raise InvalidArgumentError(f"modulus must be a positive integer: {m!r}")
        for p, e in _prime_powers(m):
            by_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for j in range(depth):
        f = 1
        for p, exps in by_prime.items():
            exps_desc = sorted(exps, reverse=True)
            if j < len(exps_desc):
                f *= p ** exps_desc[j]
        chain.append(f)
    group = FiniteAbelianGroup(tuple(reversed(chain)))
    if max_order is not None and group.order > max_order:
        raise ResourceLimitError("group order", max_order, group.order)
    return group


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise InvalidArgumentError("elements belong to different groups")
    facs = a.group.invariant_factors
    return GroupElement(
        a.group, tuple((x + y) % n for x, y, n in zip(a.coords, b.coords, facs))
    )


def neg(a: GroupElement) -> GroupElement:
    facs = a.group.invariant_factors
    return GroupElement(a.group, tuple((-x) % n for x, n in zip(a.coords, facs)))


def zero(group: FiniteAbelianGroup) -> GroupElement:
    return group.zero()


def order_of(g: GroupElement) -> int:
    """Least k >= 1 with k*g = 0: lcm over coordinates of n_i/gcd(a_i, n_i)."""
    facs = g.group.invariant_factors
    return math.lcm(1, *(n // math.gcd(a, n) for a, n in zip(g.coords, facs)))


@lru_cache(maxsize=None)
def elements(group: FiniteAbelianGroup) -> tuple[GroupElement, ...]:
    """All elements in lexicographic coordinate order; first is zero."""
    ranges = [range(n) for n in group.invariant_factors]
    return tuple(GroupElement(group, coords) for coords in product(*ranges))


class _Tables:
    """Index-based arithmetic tables for the enumeration engines."""

    __slots__ = ("group", "index", "add", "neg", "order")

    def __init__(self, group: FiniteAbelianGroup):
        els = elements(group)
        self.group = group
        self.index = {g: i for i, g in enumerate(els)}
        self.add = tuple(
            tuple(self.index[add(a, b)] for b in els) for a in els
        )
        self.neg = tuple(self.index[neg(a)] for a in els)
        self.order = tuple(order_of(a) for a in els)


@lru_cache(maxsize=None)
def tables(group: FiniteAbelianGroup) -> _Tables:
    return _Tables(group)
