"""Sequences over a subset G0 of a finite abelian group.

A sequence is a finite multiset of group elements, i.e. an element of the
free abelian monoid F(G0), stored sparsely as an exponent mapping.  The
canonical text encoding is "[g:mult,...]" with elements listed in the
group's element order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidArgumentError
from .group import FiniteAbelianGroup, GroupElement, elements

# Multiplicities are mathematically unbounded; this guard keeps encodings
# and k-fold powers sane.
_MAX_MULTIPLICITY = 2**63


@dataclass(frozen=True)
class Sequence:
    """A multiset over group elements with strictly positive multiplicities."""

    group: FiniteAbelianGroup
    items: tuple[tuple[GroupElement, int], ...]

    def __post_init__(self):
        seen = set()
        for g, m in self.items:
            if g.group != self.group:
                raise InvalidArgumentError("sequence term from a different group")
            if not isinstance(m, int) or m <= 0:
                raise InvalidArgumentError(f"multiplicity must be positive: {m!r}")
            if m >= _MAX_MULTIPLICITY:
                raise InvalidArgumentError(f"multiplicity overflow: {m}")
            if g in seen:
                raise InvalidArgumentError(f"duplicate term {g}")
            seen.add(g)
        if tuple(sorted(self.items, key=lambda it: it[0].coords)) != self.items:
            raise InvalidArgumentError("items not in canonical element order")

    @classmethod
    def make(cls, group: FiniteAbelianGroup, exponents: Mapping[GroupElement, int]) -> "Sequence":
        items = tuple(
            (g, m)
            for g, m in sorted(exponents.items(), key=lambda it: it[0].coords)
            if m != 0
        )
        return cls(group, items)

    @classmethod
    def from_elements(cls, group: FiniteAbelianGroup, terms: Iterable[GroupElement]) -> "Sequence":
        exps: dict[GroupElement, int] = {}
        for g in terms:
            exps[g] = exps.get(g, 0) + 1
        return cls.make(group, exps)

    @classmethod
    def empty(cls, group: FiniteAbelianGroup) -> "Sequence":
        return cls(group, ())

    @property
    def length(self) -> int:
        return sum(m for _, m in self.items)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.items)

    @property
    def exponents(self) -> dict[GroupElement, int]:
        return dict(self.items)

    def v(self, g: GroupElement) -> int:
        for h, m in self.items:
            if h == g:
                return m
        return 0

    def dense(self, order: tuple[GroupElement, ...]) -> tuple[int, ...]:
        """Exponent vector relative to an element order covering the support."""
        pos = {g: i for i, g in enumerate(order)}
        vec = [0] * len(order)
        for g, m in self.items:
            if g not in pos:
                raise InvalidArgumentError(f"support element {g} outside alphabet")
            vec[pos[g]] = m
        return tuple(vec)

    def __mul__(self, other: "Sequence") -> "Sequence":
        return mul(self, other)

    def __pow__(self, k: int) -> "Sequence":
        if not isinstance(k, int) or k < 0:
            raise InvalidArgumentError(f"power must be a nonnegative integer: {k!r}")
        return Sequence.make(self.group, {g: m * k for g, m in self.items})

    def __str__(self):
        return encode_sequence(self)


def sigma(s: Sequence) -> GroupElement:
    """Sum of the sequence; the empty sequence sums to zero."""
    facs = s.group.invariant_factors
    total = [0] * len(facs)
    for g, m in s.items:
        for i, a in enumerate(g.coords):
            total[i] = (total[i] + m * a) % facs[i]
    return GroupElement(s.group, tuple(total))


def is_zero_sum(s: Sequence) -> bool:
    return sigma(s) == s.group.zero()


def negate(s: Sequence) -> Sequence:
    return Sequence.make(s.group, {-g: m for g, m in s.items})


def mul(s: Sequence, t: Sequence) -> Sequence:
    if s.group != t.group:
        raise InvalidArgumentError("sequences over different groups")
    exps = dict(s.items)
    for g, m in t.items:
        exps[g] = exps.get(g, 0) + m
    return Sequence.make(s.group, exps)


def divides(t: Sequence, s: Sequence) -> bool:
    """True iff t | s, i.e. v_g(t) <= v_g(s) for all g."""
    if t.group != s.group:
        raise InvalidArgumentError("sequences over different groups")
    exps = dict(s.items)
    return all(exps.get(g, 0) >= m for g, m in t.items)


def quotient(s: Sequence, t: Sequence) -> Sequence:
    """s with t removed; requires divides(t, s)."""
    if not divides(t, s):
        raise InvalidArgumentError("quotient requires divisibility")
    exps = dict(s.items)
    for g, m in t.items:
        exps[g] -= m
    return Sequence.make(s.group, exps)


def canonical_subset(group: FiniteAbelianGroup, subset: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    """Deduplicate and sort a subset of group elements into canonical order."""
    out = []
    seen = set()
    for g in subset:
        if g.group != group:
            raise InvalidArgumentError(f"element {g} not in group {group}")
        if g not in seen:
            seen.add(g)
            out.append(g)
    return tuple(sorted(out, key=lambda g: g.coords))


def enumerate_zero_sum(
    group: FiniteAbelianGroup,
    subset: Iterable[GroupElement] | None,
    max_length: int,
) -> list[Sequence]:
    """All zero-sum sequences over the subset with length <= max_length.

    Deterministic order: length ascending, then lexicographic on the dense
    exponent vector over the subset's canonical element order.
    """
    if max_length < 0:
        raise InvalidArgumentError(f"max_length must be nonnegative: {max_length}")
    alphabet = canonical_subset(group, elements(group) if subset is None else subset)
    found: list[tuple[int, tuple[int, ...]]] = []
    facs = group.invariant_factors
    rank = len(facs)
    coords = [g.coords for g in alphabet]
    vec = [0] * len(alphabet)

    def rec(i: int, remaining: int, total: tuple[int, ...]):
        if i == len(alphabet):
            if all(x == 0 for x in total):
                found.append((max_length - remaining, tuple(vec)))
            return
        g = coords[i]
        cur = total
        for k in range(remaining + 1):
            if k:
                cur = tuple((cur[j] + g[j]) % facs[j] for j in range(rank))
                vec[i] = k
            rec(i + 1, remaining - k, cur)
        vec[i] = 0

    rec(0, max_length, (0,) * rank)
    found.sort()
    return [
        Sequence.make(group, {alphabet[i]: m for i, m in enumerate(v) if m})
        for _, v in found
    ]


# -- text encoding ------------------------------------------------------------


def encode_element(g: GroupElement) -> str:
    if len(g.coords) == 0:
        return "()"
    if len(g.coords) == 1:
        return str(g.coords[0])
    return "(" + ",".join(str(a) for a in g.coords) + ")"


def encode_sequence(s: Sequence) -> str:
    return "[" + ",".join(f"{encode_element(g)}:{m}" for g, m in s.items) + "]"


def split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InvalidArgumentError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise InvalidArgumentError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_element(group: FiniteAbelianGroup, text: str) -> GroupElement:
    text = text.strip()
    try:
        if text.startswith("("):
            if not text.endswith(")"):
                raise ValueError
            inner = text[1:-1].strip()
            coords = [int(t) for t in inner.split(",")] if inner else []
        else:
            coords = [int(text)]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse group element {text!r}") from None
    return group.element(coords)


def parse_sequence(group: FiniteAbelianGroup, text: str) -> Sequence:
    """Parse the canonical "[g:mult,...]" encoding."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise InvalidArgumentError(f"sequence must be bracketed: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return Sequence.empty(group)
    exps: dict[GroupElement, int] = {}
    for part in split_top_level(body):
        if ":" not in part:
            raise InvalidArgumentError(f"missing ':' in sequence item {part!r}")
        el_text, _, mult_text = part.rpartition(":")
        g = parse_element(group, el_text)
        try:
            m = int(mult_text.strip())
        except ValueError:
            raise InvalidArgumentError(f"bad multiplicity in {part!r}") from None
        if m <= 0:
            raise InvalidArgumentError(f"multiplicity must be positive in {part!r}")
        exps[g] = exps.get(g, 0) + m
    return Sequence.make(group, exps)
