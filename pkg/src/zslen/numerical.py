"""Numerical monoids: cofinite additive submonoids of the nonnegative integers.

Length sets are tabulated bottom-up: lengths[n] is the bitmask of achievable
factorization lengths of n over the minimal generators, so the table costs
O(n * #generators) bitwise ors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgumentError
from .lengths import LengthSet


@dataclass(frozen=True)
class NumericalMonoid:
    """<n1,...,nt> with gcd 1, generators minimal and sorted ascending."""

    generators: tuple[int, ...]
    frobenius_bound: int  # largest integer outside the monoid; -1 for N0

    def __str__(self):
        return "<" + ",".join(str(n) for n in self.generators) + ">"


def _reachable(target: int, gens: tuple[int, ...]) -> bool:
    table = [False] * (target + 1)
    table[0] = True
    for n in range(1, target + 1):
        table[n] = any(n >= g and table[n - g] for g in gens)
    return table[target]


def make_numerical(raw_gens) -> NumericalMonoid:
    """Build the monoid, dropping redundant generators and computing the
    Frobenius bound by an Apery-style sweep modulo the least generator."""
    gens = sorted(set(raw_gens))
    if not gens:
        raise InvalidArgumentError("at least one generator required")
    if any(not isinstance(g, int) or g <= 0 for g in gens):
        raise InvalidArgumentError(f"generators must be positive integers: {raw_gens}")
    if math.gcd(*gens) != 1:
        raise InvalidArgumentError(f"gcd of generators must be 1: {gens}")
    minimal: list[int] = []
    for i, g in enumerate(gens):
        others = tuple(h for j, h in enumerate(gens) if j != i)
        if not others or not _reachable(g, others):
            minimal.append(g)
    gens = tuple(minimal)

    n1 = gens[0]
    if n1 == 1:
        return NumericalMonoid((1,), -1)
    # apery[r] = least element of the monoid congruent to r mod n1
    INF = math.inf
    apery = [INF] * n1
    apery[0] = 0
    # relax residue classes until stable; bounded by n1 rounds
    for _ in range(n1):
        changed = False
        for r in range(n1):
            if apery[r] == INF:
                continue
            for g in gens[1:]:
                cand = apery[r] + g
                rr = cand % n1
                if cand < apery[rr]:
                    apery[rr] = cand
                    changed = True
        if not changed:
            break
    frobenius = int(max(apery)) - n1
    return NumericalMonoid(gens, frobenius)


def contains(monoid: NumericalMonoid, n: int) -> bool:
    if n < 0:
        return False
    return n > monoid.frobenius_bound or _reachable(n, monoid.generators)


def num_length_set(monoid: NumericalMonoid, n: int) -> LengthSet:
    """Exact L(n) = { sum k_i : sum k_i*g_i = n }; L(0) = {0}."""
    if n == 0:
        return LengthSet.of([0])
    if not contains(monoid, n):
        raise InvalidArgumentError(f"{n} is not in {monoid}")
    masks = [0] * (n + 1)
    masks[0] = 1
    for m in range(1, n + 1):
        acc = 0
        for g in monoid.generators:
            if g <= m:
                acc |= masks[m - g] << 1
        masks[m] = acc
    return LengthSet.from_mask(masks[n])


def num_elasticity(monoid: NumericalMonoid) -> Fraction:
    """Closed form n_t/n_1."""
    gens = monoid.generators
    return Fraction(gens[-1], gens[0])


def num_min_delta(monoid: NumericalMonoid) -> int | None:
    """Closed form gcd of consecutive generator differences; None when the
    monoid is free (single generator, empty distance set)."""
    gens = monoid.generators
    if len(gens) == 1:
        return None
    return math.gcd(*(b - a for a, b in zip(gens, gens[1:])))


@lru_cache(maxsize=None)
def _monoid_members(monoid: NumericalMonoid, bound: int) -> tuple[int, ...]:
    return tuple(n for n in range(1, bound + 1) if contains(monoid, n))


def accumulated_delta(monoid: NumericalMonoid, bound: int) -> tuple[int, ...]:
    """Union of Delta(L(n)) over members n <= bound."""
    out: set[int] = set()
    for n in _monoid_members(monoid, bound):
        vals = num_length_set(monoid, n).values
        out.update(b - a for a, b in zip(vals, vals[1:]))
    return tuple(sorted(out))
