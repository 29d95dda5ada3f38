"""Versioned on-disk cache for atom sets.

Cache files are JSON documents written atomically (temp file + rename).
Loads validate the stored atoms (zero-sum, antichain) before trusting
them; any mismatch produces a warning and a recompute, never a wrong
answer.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .atoms import AtomSet
from .group import FiniteAbelianGroup, elements
from .sequence import Sequence, canonical_subset, divides, is_zero_sum

log = logging.getLogger(__name__)

FORMAT_VERSION = 1

ENV_CACHE_DIR = "ZSLEN_CACHE_DIR"


def cache_key(group: FiniteAbelianGroup, subset) -> str:
    """Filesystem-safe key from the canonical group and subset encoding."""
    facs = "x".join(str(n) for n in group.invariant_factors) or "1"
    subset = canonical_subset(group, subset)
    if subset == canonical_subset(group, elements(group)):
        token = "all"
    else:
        blob = ";".join(",".join(map(str, g.coords)) for g in subset)
        token = hashlib.sha256(blob.encode()).hexdigest()[:16]
    return f"atoms_c{facs}_{token}"


def cache_path(cache_dir: str | os.PathLike, group: FiniteAbelianGroup, subset) -> Path:
    return Path(cache_dir) / (cache_key(group, subset) + ".json")


def cache_store(cache_dir: str | os.PathLike, atoms: AtomSet) -> Path:
    """Write the atom set atomically; returns the file path."""
    path = cache_path(cache_dir, atoms.group, atoms.subset)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "format_version": FORMAT_VERSION,
        "invariant_factors": list(atoms.group.invariant_factors),
        "subset": [list(g.coords) for g in atoms.subset],
        "atoms": [list(v) for v in atoms.vectors()],
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(
    cache_dir: str | os.PathLike, group: FiniteAbelianGroup, subset
) -> AtomSet | None:
    """Load a cached atom set, or None if missing or invalid."""
    subset = canonical_subset(group, subset)
    path = cache_path(cache_dir, group, subset)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        log.warning("unreadable atom cache %s (%s); recomputing", path, exc)
        return None
    if doc.get("format_version") != FORMAT_VERSION:
        log.warning("atom cache %s has format %r, want %r; recomputing",
                    path, doc.get("format_version"), FORMAT_VERSION)
        return None
    if tuple(doc.get("invariant_factors", [])) != group.invariant_factors:
        log.warning("atom cache %s is for a different group; recomputing", path)
        return None
    stored_subset = [tuple(c) for c in doc.get("subset", [])]
    if stored_subset != [g.coords for g in subset]:
        log.warning("atom cache %s is for a different subset; recomputing", path)
        return None
    try:
        atoms = tuple(
            Sequence.make(group, {subset[i]: m for i, m in enumerate(vec) if m})
            for vec in doc.get("atoms", [])
        )
    except Exception as exc:
        log.warning("malformed atom cache %s (%s); recomputing", path, exc)
        return None
    if not _valid_atom_list(atoms):
        log.warning("atom cache %s failed validation; recomputing", path)
        return None
    return AtomSet(group, subset, atoms)


def _valid_atom_list(atoms: tuple[Sequence, ...]) -> bool:
    if len(set(atoms)) != len(atoms):
        return False
    for a in atoms:
        if a.length == 0 or not is_zero_sum(a):
            return False
    for i, u in enumerate(atoms):
        for v in atoms[i + 1 :]:
            if divides(u, v) or divides(v, u):
                return False
    return True
