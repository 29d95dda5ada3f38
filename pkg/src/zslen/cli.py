"""Command-line front end: configuration, atom-cache persistence, and
machine-readable reports tying the computation modules together.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 resource limit.  JSON is the canonical machine format; CSV is available
for the tabular outputs (system, unions); text is a readable summary.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .atoms import (
    DEFAULT_NODE_LIMIT,
    AtomSet,
    davenport,
    davenport_star,
    enumerate_atoms,
)
from .cache import ENV_CACHE_DIR, cache_load, cache_store
from .errors import InvalidArgumentError, ResourceLimitError
from .group import DEFAULT_MAX_ORDER, FiniteAbelianGroup, elements, make_group
from .invariants import (
    delta_of_group,
    delta_star,
    system,
    unions_range,
)
from .lengths import (
    DEFAULT_MEMO_LIMIT,
    LengthSet,
    delta_of,
    elasticity_of,
    length_set,
    peek_engine,
)
from .numerical import (
    contains,
    make_numerical,
    num_elasticity,
    num_length_set,
    num_min_delta,
)
from .sequence import (
    canonical_subset,
    encode_sequence,
    parse_element,
    parse_sequence,
    split_top_level,
)
from .structure_fit import best_aamp, fit_aamp, verify_structure_theorem
from .transfer import check_atom_correspondence, check_transfer, make_instance
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_INVALID_ARGUMENTS = 2
EXIT_RESOURCE_LIMIT = 3

REPORT_SCHEMA = "zslen-report/1"


def _parse_group(text: str, max_order: int | None) -> FiniteAbelianGroup:
    try:
        moduli = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse group moduli {text!r}") from None
    if not moduli:
        raise InvalidArgumentError("group requires at least one modulus")
    return make_group(moduli, max_order)


def _parse_subset(group: FiniteAbelianGroup, text: str | None):
    if text is None or text == "all":
        return tuple(elements(group))
    if text == "nonzero":
        return tuple(g for g in elements(group) if g != group.zero())
    parts = [p for p in split_top_level(text) if p.strip()]
    return canonical_subset(group, [parse_element(group, p) for p in parts])


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse integer list {text!r}") from None


def _parse_k_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return int(lo), int(hi)
        k = int(text)
        return k, k
    except ValueError:
        raise InvalidArgumentError(f"cannot parse k range {text!r}") from None


def _fraction_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if x == float("inf"):
        return "inf"
    return str(x)


# atom sets fetched while handling the current command, for resource counters
_TOUCHED_ATOMS: list[AtomSet] = []


def _get_atoms(group: FiniteAbelianGroup, subset, args) -> AtomSet:
    # the environment variable overrides the flag
    cache_dir = os.environ.get(ENV_CACHE_DIR) or args.cache_dir
    atoms = None
    if cache_dir:
        atoms = cache_load(cache_dir, group, subset)
    if atoms is None:
        atoms = enumerate_atoms(group, subset, node_limit=args.node_limit)
        if cache_dir:
            cache_store(cache_dir, atoms)
    _TOUCHED_ATOMS.append(atoms)
    return atoms


def _resource_counters(args) -> dict:
    return {
        "atom_lattice_nodes": sum(a.nodes_visited for a in _TOUCHED_ATOMS),
        "memo_entries": sum(
            engine.memo_size
            for a in _TOUCHED_ATOMS
            if (engine := peek_engine(a, args.memo_limit)) is not None
        ),
    }


# -- subcommand handlers ------------------------------------------------------


def cmd_atoms(args):
    group = _parse_group(args.group, args.max_order)
    subset = _parse_subset(group, args.subset)
    atoms = _get_atoms(group, subset, args)
    dav, witness = davenport(group, atoms) if subset == tuple(elements(group)) else (None, None)
    results = {
        "group": list(group.invariant_factors),
        "subset": [list(g.coords) for g in atoms.subset],
        "count": len(atoms),
        "atoms": [encode_sequence(a) for a in atoms.atoms],
    }
    if dav is not None:
        results["davenport"] = dav
        results["davenport_witness"] = encode_sequence(witness)
    return results, []


def cmd_davenport(args):
    group = _parse_group(args.group, args.max_order)
    atoms = _get_atoms(group, tuple(elements(group)), args)
    dav, witness = davenport(group, atoms)
    return {
        "group": list(group.invariant_factors),
        "davenport": dav,
        "davenport_star": davenport_star(group),
        "witness": encode_sequence(witness),
    }, []


def cmd_lengths(args):
    group = _parse_group(args.group, args.max_order)
    seq = parse_sequence(group, args.sequence)
    atoms = _get_atoms(group, tuple(elements(group)), args)
    ls = length_set(seq, atoms, args.memo_limit)
    return {
        "group": list(group.invariant_factors),
        "sequence": encode_sequence(seq),
        "lengths": list(ls.values),
        "delta": list(delta_of(ls)),
        "elasticity": _fraction_str(elasticity_of(ls)),
    }, []


def cmd_system(args):
    group = _parse_group(args.group, args.max_order)
    subset = _parse_subset(group, args.subset)
    atoms = _get_atoms(group, subset, args)
    sys_ = system(group, subset, args.bound, atoms, args.memo_limit)
    return {
        "group": list(group.invariant_factors),
        "subset": [list(g.coords) for g in sys_.subset],
        "bound": sys_.bound,
        "entries": [
            {"lengths": list(ls.values), "witness": encode_sequence(w)}
            for ls, w in sys_.entries
        ],
    }, []


def cmd_unions(args):
    group = _parse_group(args.group, args.max_order)
    atoms = _get_atoms(group, tuple(elements(group)), args)
    lo, hi = _parse_k_range(args.k)
    if lo < 1 or hi < lo:
        raise InvalidArgumentError(f"bad k range {args.k!r}")
    unions = unions_range(group, hi, atoms, memo_limit=args.memo_limit)
    return {
        "group": list(group.invariant_factors),
        "unions": [
            {
                "k": k,
                "values": list(unions[k].values),
                "rho_k": unions[k].rho,
                "lambda_k": unions[k].lam,
                "interval": unions[k].is_interval(),
            }
            for k in range(lo, hi + 1)
        ],
    }, []


def cmd_delta(args):
    group = _parse_group(args.group, args.max_order)
    subset = _parse_subset(group, args.subset)
    atoms = _get_atoms(group, subset, args)
    report = delta_of_group(group, subset, args.bound, atoms, args.memo_limit)
    return {
        "group": list(group.invariant_factors),
        "subset": [list(g.coords) for g in report.subset],
        "bound": report.bound,
        "delta": list(report.distances),
        "exact": report.exact,
    }, []


def cmd_delta_star(args):
    group = _parse_group(args.group, args.max_order)
    report = delta_star(
        group, args.bound, node_limit=args.node_limit, memo_limit=args.memo_limit
    )
    return {
        "group": list(group.invariant_factors),
        "bound": report.bound,
        "delta_star": list(report.values),
        "subsets_scanned": report.subsets_scanned,
    }, []


def _fit_payload(fit):
    if fit is None:
        return None
    return {
        "shift": fit.shift,
        "difference": fit.difference,
        "period": list(fit.period),
        "length": fit.length,
        "bound": fit.bound,
        "initial": list(fit.initial),
        "central": list(fit.central),
        "end": list(fit.end),
        "degenerate": fit.degenerate,
    }


def cmd_fit(args):
    values = _parse_ints(args.set)
    if not values:
        raise InvalidArgumentError("empty length set")
    ls = LengthSet.of(values)
    if args.d is not None:
        period = _parse_ints(args.period) if args.period else [0, args.d]
        fit = fit_aamp(ls, args.d, period)
    elif args.candidates:
        fit = best_aamp(ls, _parse_ints(args.candidates))
    else:
        raise InvalidArgumentError("fit needs --d (with optional --period) or --candidates")
    return {"set": list(ls.values), "fit": _fit_payload(fit)}, []


def cmd_verify_structure(args):
    group = _parse_group(args.group, args.max_order)
    report = verify_structure_theorem(group, args.bound)
    results = {
        "group": list(group.invariant_factors),
        "bound": args.bound,
        "candidates": list(report.candidates),
        "max_bound": report.max_bound,
        "witness": list(report.witness.values) if report.witness else None,
        "witness_fit": _fit_payload(report.witness_fit),
        "histogram": [
            {"difference": d, "period_size": p, "bound": m, "count": c}
            for (d, p, m), c in report.histogram
        ],
    }
    verdicts = [
        {
            "name": f"thm5.3 fits reconstruct, {group} (bound {args.bound})",
            "pass": report.ok,
            "witness": f"max M = {report.max_bound}",
        }
    ]
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return results, verdicts


def cmd_numerical(args):
    monoid = make_numerical(_parse_ints(args.gens))
    results = {
        "generators": list(monoid.generators),
        "frobenius_bound": monoid.frobenius_bound,
        "elasticity": _fraction_str(num_elasticity(monoid)),
        "min_delta": num_min_delta(monoid),
    }
    if args.n is not None:
        member = contains(monoid, args.n)
        results["n"] = args.n
        results["member"] = member
        if member or args.n == 0:
            ls = num_length_set(monoid, args.n)
            results["lengths"] = list(ls.values)
            results["delta"] = list(delta_of(ls))
            results["elasticity_of_n"] = _fraction_str(elasticity_of(ls))
    return results, []


def cmd_transfer_check(args):
    group = _parse_group(args.group, args.max_order)
    subset = _parse_subset(group, args.subset)
    instance = make_instance(group, subset, args.primes_per_class)
    report = check_transfer(
        instance, args.samples, args.max_word_length, args.seed,
        args.node_limit, args.memo_limit,
    )
    corr = check_atom_correspondence(instance, args.node_limit)
    results = {
        "group": list(group.invariant_factors),
        "primes_per_class": args.primes_per_class,
        "samples": report.samples,
        "passes": report.passes,
        "seed": report.seed,
        "max_word_length": report.max_word_length,
        "failures": [
            {"word": str(w), "direct": list(d.values), "transferred": list(t.values)}
            for w, d, t in report.failures
        ],
        "h_atoms": corr.h_atom_count,
        "b_atoms": corr.b_atom_count,
    }
    verdicts = [
        {
            "name": f"lemma4.2 length preservation, {group}",
            "pass": report.ok,
            "witness": f"{report.passes}/{report.samples} samples, seed {report.seed}",
        },
        {
            "name": f"lemma4.2 atom correspondence, {group}",
            "pass": corr.ok,
            "witness": f"{corr.h_atom_count} H-atoms onto {corr.b_atom_count} B-atoms",
        },
    ]
    return results, verdicts


def cmd_verify(args):
    group = _parse_group(args.group, args.max_order) if args.group else None
    verdicts = run_suite(
        args.suite,
        group,
        args.bound,
        args.k_max,
        args.samples,
        args.seed,
        args.primes_per_class,
        args.small,
    )
    results = {
        "suite": args.suite,
        "passed": sum(1 for v in verdicts if v.passed),
        "failed": sum(1 for v in verdicts if not v.passed),
    }
    return results, [v.as_dict() for v in verdicts]


# -- argument parsing and report assembly --------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json",
                   help="output format (csv only for tabular commands)")
    p.add_argument("--cache-dir", default=None,
                   help=f"atom cache directory (or ${ENV_CACHE_DIR})")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker pool size (reserved; computations run "
                        "deterministically in-process)")
    p.add_argument("--stable", action="store_true",
                   help="omit timing so identical runs are byte-identical")
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT,
                   help="lattice node ceiling for atom enumeration")
    p.add_argument("--memo-limit", type=int, default=DEFAULT_MEMO_LIMIT,
                   help="memo table ceiling for the factorization engine")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                   help="group order cap")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zslen",
        description="Factorization-length invariants of zero-sum sequence "
                    "monoids over finite abelian groups and numerical monoids.",
    )
    parser.add_argument("--version", action="version", version=f"zslen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        p = sub.add_parser(name, **kw)
        _add_common(p)
        p.set_defaults(handler=handler)
        return p

    p = add("atoms", cmd_atoms, help="enumerate minimal zero-sum sequences")
    p.add_argument("--group", required=True, help="comma list of moduli, e.g. 3,3")
    p.add_argument("--subset", default="all", help="all | nonzero | explicit elements")

    p = add("davenport", cmd_davenport, help="Davenport constant and witness")
    p.add_argument("--group", required=True)

    p = add("lengths", cmd_lengths, help="set of lengths of one sequence")
    p.add_argument("--group", required=True)
    p.add_argument("--sequence", required=True, help='e.g. "[1:3,2:3]"')

    p = add("system", cmd_system, help="system of sets of lengths up to a bound")
    p.add_argument("--group", required=True)
    p.add_argument("--subset", default="all")
    p.add_argument("--bound", type=int, required=True)

    p = add("unions", cmd_unions, help="unions of sets of lengths U_k")
    p.add_argument("--group", required=True)
    p.add_argument("--k", required=True, help="single k or range, e.g. 1..6")

    p = add("delta", cmd_delta, help="accumulated distance set")
    p.add_argument("--group", required=True)
    p.add_argument("--subset", default="all")
    p.add_argument("--bound", type=int, required=True)

    p = add("delta-star", cmd_delta_star, help="minimal distances over subsets")
    p.add_argument("--group", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("fit", cmd_fit, help="AAMP fit of an explicit set")
    p.add_argument("--set", required=True, help='comma list, e.g. "2,3,7,8"')
    p.add_argument("--d", type=int, default=None, help="difference")
    p.add_argument("--period", default=None, help='period, e.g. "0,1,5"')
    p.add_argument("--candidates", default=None,
                   help="candidate differences for a best fit")
    p = add("verify-structure", cmd_verify_structure,
            help="AAMP fits across a whole system")
    p.add_argument("--group", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--report", default=None, help="also write results to this file")

    p = add("numerical", cmd_numerical, help="numerical monoid invariants")
    p.add_argument("--gens", required=True, help='comma list, e.g. "3,5,7"')
    p.add_argument("--n", type=int, default=None, help="element to factor")

    p = add("transfer-check", cmd_transfer_check,
            help="transfer homomorphism cross-checks")
    p.add_argument("--group", required=True)
    p.add_argument("--subset", default="all")
    p.add_argument("--primes-per-class", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-word-length", type=int, default=10)

    p = add("verify", cmd_verify, help="run a named verification suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.add_argument("--group", default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--primes-per-class", type=int, default=2)
    p.add_argument("--small", action="store_true", help="CI-scale bundle")

    return parser


def _render_csv(command: str, results: dict) -> str:
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf)
    if command == "system":
        writer.writerow(["lengths", "witness"])
        for entry in results["entries"]:
            writer.writerow([" ".join(map(str, entry["lengths"])), entry["witness"]])
    elif command == "unions":
        writer.writerow(["k", "lambda_k", "rho_k", "values"])
        for row in results["unions"]:
            writer.writerow(
                [row["k"], row["lambda_k"], row["rho_k"],
                 " ".join(map(str, row["values"]))]
            )
    else:
        raise InvalidArgumentError(f"csv output is not defined for {command!r}")
    return buf.getvalue()


def _render_text(report: dict) -> str:
    lines = [f"zslen {report['command']}"]
    for key, value in sorted(report["results"].items()):
        lines.append(f"  {key}: {value}")
    for v in report["verdicts"]:
        mark = "PASS" if v["pass"] else "FAIL"
        lines.append(f"  [{mark}] {v['name']} -- {v['witness']}")
    if "timing" in report:
        lines.append(f"  elapsed: {report['timing']['seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def _config_echo(args) -> dict:
    skip = {"handler", "command", "format", "stable"}
    return {
        k: v for k, v in sorted(vars(args).items()) if k not in skip
    }


def _validate_common(args):
    if getattr(args, "bound", None) is not None and args.bound < 0:
        raise InvalidArgumentError(f"bound must be nonnegative: {args.bound}")
    for name in ("node_limit", "memo_limit", "threads"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise InvalidArgumentError(f"{name.replace('_', '-')} must be positive: {value}")
    for name in ("samples", "max_order"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise InvalidArgumentError(f"{name.replace('_', '-')} must be nonnegative: {value}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    _TOUCHED_ATOMS.clear()
    report = {
        "schema": REPORT_SCHEMA,
        "tool": {"name": "zslen", "version": __version__},
        "command": args.command,
        "config": _config_echo(args),
    }
    try:
        _validate_common(args)
        results, verdicts = args.handler(args)
        report["results"] = results
        report["verdicts"] = verdicts
        report["resources"] = _resource_counters(args)
        if not args.stable:
            report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        if args.format == "json":
            output = json.dumps(report, indent=2, sort_keys=True) + "\n"
        elif args.format == "csv":
            output = _render_csv(args.command, results)
        else:
            output = _render_text(report)
    except InvalidArgumentError as exc:
        report["error"] = {"type": "invalid-argument", "reason": str(exc)}
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_INVALID_ARGUMENTS
    except ResourceLimitError as exc:
        report["error"] = {
            "type": "resource-limit",
            "reason": str(exc),
            "bound": exc.bound_name,
            "limit": exc.limit,
        }
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_RESOURCE_LIMIT
    sys.stdout.write(output)
    if any(not v["pass"] for v in verdicts):
        return EXIT_VERIFICATION_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
