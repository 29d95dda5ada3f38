"""Almost arithmetical (multi)progression fits for length sets.

A fit decomposes L as y + (L' | L* | L'') inside y + D + dZ, where the
central part L* is the full periodic pattern on a window [0, max L*], the
initial part sits in [-M, -1] and the end part in max L* + [1, M].  A set
too short to put d itself into the central part still fits with the window
{0}; such fits are reported with length 0 and flagged degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .atoms import AtomSet, enumerate_atoms
from .errors import InvalidArgumentError
from .group import FiniteAbelianGroup
from .invariants import (
    SystemOfLengthSets,
    UnionOfLengths,
    delta_of_group,
    elasticity,
    system,
    unions_range,
)
from .lengths import LengthSet


@dataclass(frozen=True)
class AAMPFit:
    """A valid decomposition of a concrete finite set."""

    shift: int  # y
    difference: int  # d
    period: tuple[int, ...]  # D, with 0 and d included
    length: int  # maximal l with l*d in the central part; 0 when degenerate
    bound: int  # M
    initial: tuple[int, ...]  # L', relative to the shift
    central: tuple[int, ...]  # L*, relative to the shift
    end: tuple[int, ...]  # L'', relative to the shift
    degenerate: bool

    def reconstruct(self) -> LengthSet:
        parts = self.initial + self.central + self.end
        return LengthSet.of(self.shift + x for x in parts)


def _validate_period(d: int, period: Iterable[int]) -> tuple[int, ...]:
    dset = tuple(sorted(set(period)))
    if d < 1:
        raise InvalidArgumentError(f"difference must be positive: {d}")
    if 0 not in dset or d not in dset:
        raise InvalidArgumentError(f"period must contain 0 and {d}: {dset}")
    if any(x < 0 or x > d for x in dset):
        raise InvalidArgumentError(f"period must lie in [0, {d}]: {dset}")
    return dset


def fit_aamp(lengths: LengthSet, d: int, period: Iterable[int]) -> AAMPFit | None:
    """Best fit of the set for a fixed difference and period, minimizing the
    bound M, tie-broken by maximal length then minimal shift.  None when no
    shift places the set inside y + D + dZ.
    """
    dset = _validate_period(d, period)
    residues = {x % d for x in dset}
    vals = lengths.values
    best: tuple[int, int, int] | None = None  # (M, -l, y)
    best_fit: AAMPFit | None = None
    for y in vals:
        rel = [x - y for x in vals]
        if any(x % d not in residues for x in rel):
            continue
        rel_set = set(rel)
        # candidate windows end at m in the pattern; the window must be
        # covered exactly
        for m in rel:
            if m < 0 or m % d not in residues:
                continue
            pattern = [x for x in range(0, m + 1) if x % d in residues]
            if not all(x in rel_set for x in pattern):
                continue
            if any(0 <= x <= m and x not in pattern for x in rel_set):
                continue
            initial = tuple(x for x in rel if x < 0)
            end = tuple(x for x in rel if x > m)
            bound = max([0] + [-x for x in initial] + [x - m for x in end])
            ell = m // d
            key = (bound, -ell, y)
            if best is None or key < best:
                best = key
                best_fit = AAMPFit(
                    shift=y,
                    difference=d,
                    period=dset,
                    length=ell,
                    bound=bound,
                    initial=initial,
                    central=tuple(pattern),
                    end=end,
                    degenerate=ell == 0,
                )
    return best_fit


def best_aamp(
    lengths: LengthSet,
    candidate_d: Iterable[int],
    max_residues: int = 8,
) -> AAMPFit:
    """Search all candidate differences and the residue-driven periods.

    Periods are D = {0} | R | {d} with R a subset of the nonzero residues
    of (L - min L) mod d: residues outside the set can never lower M.
    When a difference has more than max_residues distinct nonzero residues
    only the full residue pattern is tried for it.
    """
    cands = sorted(set(candidate_d))
    if not cands or any(d < 1 for d in cands):
        raise InvalidArgumentError(f"candidate differences must be positive: {cands}")
    best_key = None
    best_fit: AAMPFit | None = None
    base = lengths.min
    for d in cands:
        nonzero = sorted({(x - base) % d for x in lengths.values} - {0})
        if len(nonzero) <= max_residues:
            subsets = [
                [r for j, r in enumerate(nonzero) if mask >> j & 1]
                for mask in range(1 << len(nonzero))
            ]
        else:
            subsets = [nonzero]
        for rsub in subsets:
            dset = tuple(sorted({0, d, *rsub}))
            fit = fit_aamp(lengths, d, dset)
            if fit is None:
                continue
            key = (fit.bound, d, len(dset))
            if best_key is None or key < best_key:
                best_key = key
                best_fit = fit
    if best_fit is None:  # unreachable: the full residue pattern always fits
        raise InvalidArgumentError("no candidate difference admits a fit")
    return best_fit


# -- whole-system verification -------------------------------------------------


@dataclass(frozen=True)
class StructureFitReport:
    """verify_structure_theorem output: the fits of every computed length set."""

    group: FiniteAbelianGroup
    bound: int
    candidates: tuple[int, ...]
    max_bound: int
    witness: LengthSet | None
    witness_fit: AAMPFit | None
    histogram: tuple[tuple[tuple[int, int, int], int], ...]  # (d, |D|, M) -> count
    round_trip_failures: tuple[LengthSet, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.round_trip_failures


def verify_structure_theorem(
    group: FiniteAbelianGroup,
    bound: int,
    atoms: AtomSet | None = None,
    sys: SystemOfLengthSets | None = None,
) -> StructureFitReport:
    """Fit every L in system(G, bound) as an AAMP with difference drawn from
    the accumulated distance set, and report the largest bound M needed."""
    if atoms is None:
        atoms = enumerate_atoms(group)
    if sys is None:
        sys = system(group, None, bound, atoms)
    delta = delta_of_group(group, None, bound, atoms).distances
    candidates = delta if delta else (1,)
    max_bound = -1
    witness = None
    witness_fit = None
    hist: dict[tuple[int, int, int], int] = {}
    bad_round_trips = []
    for ls in sys.length_sets():
        fit = best_aamp(ls, candidates)
        if fit.reconstruct() != ls:
            bad_round_trips.append(ls)
        key = (fit.difference, len(fit.period), fit.bound)
        hist[key] = hist.get(key, 0) + 1
        if fit.bound > max_bound:
            max_bound = fit.bound
            witness = ls
            witness_fit = fit
    return StructureFitReport(
        group,
        bound,
        tuple(candidates),
        max(max_bound, 0),
        witness,
        witness_fit,
        tuple(sorted(hist.items())),
        tuple(bad_round_trips),
    )


@dataclass(frozen=True)
class UnionsStructureReport:
    """verify_unions_structure output: AAP shape of each U_k plus the density
    trend toward (rho - 1/rho)/d."""

    group: FiniteAbelianGroup
    ks: tuple[int, ...]
    difference: int
    unions: tuple[UnionOfLengths, ...]
    aap_bounds: tuple[int, ...]
    all_intervals: bool
    density_target: Fraction
    density_rows: tuple[tuple[int, Fraction], ...]  # (k, |U_k|/k)
    settles_by: int | None  # least k from which ratios stay within tolerance
    tolerance: Fraction

    @property
    def ok(self) -> bool:
        return self.all_intervals and all(m == 0 for m in self.aap_bounds)


def verify_unions_structure(
    group: FiniteAbelianGroup,
    k_max: int,
    atoms: AtomSet | None = None,
    tolerance: Fraction = Fraction(1, 10),
) -> UnionsStructureReport:
    """Check each U_k is an AAP with difference min Delta (an interval for a
    finite abelian group), and track |U_k|/k against the limit density.

    The density check is a trend statement on the computed range: it
    records the first k from which every later computed ratio stays within
    the tolerance of the limit value.
    """
    if atoms is None:
        atoms = enumerate_atoms(group)
    unions = unions_range(group, k_max, atoms)
    # min Delta(G) = 1 whenever B(G) is not half-factorial (|G| >= 3); for
    # |G| <= 2 all unions are singletons and d = 1 fits them degenerately.
    d = 1
    aap_bounds = []
    for k in sorted(unions):
        fit = fit_aamp(LengthSet.of(unions[k].values), d, (0, d))
        aap_bounds.append(fit.bound if fit is not None else -1)
    rho = elasticity(group, atoms)
    target = (rho - 1 / rho) / d
    rows = tuple(
        (k, Fraction(len(unions[k].values), k)) for k in sorted(unions)
    )
    settles_by = None
    for i, (k, ratio) in enumerate(rows):
        if all(abs(r - target) <= tolerance for _, r in rows[i:]):
            settles_by = k
            break
    return UnionsStructureReport(
        group=group,
        ks=tuple(sorted(unions)),
        difference=d,
        unions=tuple(unions[k] for k in sorted(unions)),
        aap_bounds=tuple(aap_bounds),
        all_intervals=all(u.is_interval() for u in unions.values()),
        density_target=target,
        density_rows=rows,
        settles_by=settles_by,
        tolerance=tolerance,
    )
