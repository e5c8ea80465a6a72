"""Command-line frontend.

Subcommands: correlate, converge, counts, sparse-paving, verify-paper.
Inputs come either from a named construction (--construct) or from a file
(--matrix, --graph, --circuits).  Output is a human-readable table by
default; --json emits a stable envelope

    {"tool": ..., "input": ..., "data": ..., "stats": ...}

whose data section is deterministic for fixed inputs and flags (counts as
decimal strings, rationals as "num/den" in lowest terms; wall time lives
only in stats).  Exit codes: 0 success, 2 parse error, 3 invalid pair,
4 degenerate pair, 5 no eligible pair, 6 verification failure,
7 enumeration guard tripped, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import __version__
from .constructions import generate_sparse_paving, m_rp_matroid
from .correlation import (
    alpha_max,
    beta_max,
    beta_from_counts,
    beta_parallel_sequence,
    pair_counts_table,
    report_for,
)
from .counting import (
    count_partition,
    count_spanning_trees_matrix_tree,
    parse_edge_file,
    subsets_to_scan,
)
from .errors import (
    DisconnectedGraph,
    EnumLimitExceeded,
    InvalidRank,
    MclError,
    NoEligiblePair,
    NotPrime,
    NotSparsePaving,
    OutOfRange,
    ParseError,
)
from .exact import format_ratio
from .linalg import load_matrix
from .matroid import (
    graphic_matroid,
    linear_matroid,
    parallel_extend,
    sparse_paving_from_circuits,
    uniform_matroid,
)
from .verify import CHECK_NAMES, run_checks

DEFAULT_ENUM_LIMIT = 10**7

VERIFY_FAILURE_EXIT = 6

_CONSTRUCT_ERRORS = (NotPrime, InvalidRank, OutOfRange, NotSparsePaving)


def _ratio_or_none(q):
    return None if q is None else format_ratio(q)


def _counts_dict(c):
    return {
        "b": str(c.b),
        "b_i": str(c.b_i),
        "b_j": str(c.b_j),
        "b_ij": str(c.b_ij),
        "b_i_not_j": str(c.b_i_only),
        "b_j_not_i": str(c.b_j_only),
        "b_neither": str(c.b_neither),
    }


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("MCL_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ParseError(f"MCL_THREADS must be an integer, got {env!r}") from None


def _guard_enum(args, planned: int) -> int:
    limit = args.enum_limit if args.enum_limit is not None else DEFAULT_ENUM_LIMIT
    if planned > limit:
        raise EnumLimitExceeded(
            f"planned enumeration of {planned} subsets exceeds the guard of {limit}; "
            f"raise --enum-limit to proceed"
        )
    return planned


def _resolve_input(args):
    """Build the matroid from flags; returns (matroid, descriptor, default_pair)."""
    sources = [s for s in ("construct", "matrix", "graph", "circuits") if getattr(args, s, None)]
    if len(sources) != 1:
        raise ParseError(
            "exactly one input is required: --construct NAME, --matrix FILE, "
            "--graph FILE or --circuits FILE"
        )
    kind = sources[0]
    try:
        if kind == "construct":
            return _resolve_construct(args)
        if kind == "matrix":
            matrix = load_matrix(args.matrix)
            desc = {"kind": "matrix_file", "path": args.matrix,
                    "field": str(matrix.field), "dims": [matrix.nrows, matrix.ncols]}
            return linear_matroid(matrix), desc, None
        if kind == "graph":
            with open(args.graph, "r", encoding="utf-8") as fh:
                edges = parse_edge_file(fh.read())
            desc = {"kind": "graph_file", "path": args.graph, "edges": len(edges)}
            return graphic_matroid(edges), desc, None
        with open(args.circuits, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        try:
            n, r, circuits = payload["n"], payload["r"], payload["circuits"]
        except (TypeError, KeyError):
            raise ParseError("circuit file must be a JSON object with n, r, circuits") from None
        m = sparse_paving_from_circuits(int(n), int(r), [tuple(c) for c in circuits])
        desc = {"kind": "circuits_file", "path": args.circuits,
                "n": int(n), "r": int(r), "circuits": len(m.circuits)}
        return m, desc, None
    except OSError as exc:
        raise ParseError(f"cannot read input file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in circuit file: {exc}") from None
    except _CONSTRUCT_ERRORS as exc:
        raise ParseError(str(exc)) from None


def _require(args, names: list[str], construct: str):
    values = []
    for name in names:
        value = getattr(args, name)
        if value is None:
            flags = ", ".join(f"--{n}" for n in names)
            raise ParseError(f"--construct {construct} needs {flags}")
        values.append(value)
    return values


def _resolve_construct(args):
    name = args.construct
    if name in ("m_rp", "m_rp_rational"):
        r, p = _require(args, ["rank", "prime"], name)
        field = "gf" if name == "m_rp" else "q"
        m = m_rp_matroid(r, p, field)
        desc = {"kind": "construct", "construct": name, "rank": r, "prime": p}
        return m, desc, m.pair
    if name == "uniform":
        r, n = _require(args, ["rank", "elements"], name)
        desc = {"kind": "construct", "construct": name, "rank": r, "elements": n}
        return uniform_matroid(r, n), desc, None
    if name == "sparse_paving":
        n, r = _require(args, ["elements", "rank"], name)
        seed = args.seed if args.seed is not None else 0
        target = args.circuits_count
        m = generate_sparse_paving(n, r, target, seed)
        desc = {
            "kind": "construct", "construct": name, "elements": n, "rank": r,
            "circuits_requested": target, "circuits": len(m.circuits), "seed": seed,
        }
        return m, desc, None
    raise ParseError(f"unknown construction {name!r}")


def _envelope(descriptor, data, scanned: int, t0: float):
    return {
        "tool": {"name": "mcl", "version": __version__},
        "input": descriptor,
        "data": data,
        "stats": {
            "subsets_scanned": scanned,
            "wall_time_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        },
    }


def _emit(args, envelope, human_lines):
    if args.json:
        print(json.dumps(envelope, indent=2))
    else:
        for line in human_lines:
            print(line)


def _kv(key: str, value) -> str:
    return f"  {key:<14} {value}"


def _human_counts(c) -> list[str]:
    d = _counts_dict(c)
    return [_kv(k, v) for k, v in d.items()]


def cmd_correlate(args) -> int:
    t0 = time.perf_counter()
    m, desc, default_pair = _resolve_input(args)
    threads = _threads(args)
    pair = tuple(args.pair) if args.pair else default_pair
    scanned = _guard_enum(args, subsets_to_scan(m.n, m.full_rank))
    if pair is not None:
        counts = count_partition(m, pair, threads=threads)
        report = report_for(m, pair, counts=counts)
        data = {
            "pair": list(report.pair),
            "counts": _counts_dict(counts),
            "beta": format_ratio(report.beta),
            "alpha": _ratio_or_none(report.alpha),
            "case": str(report.case_label),
        }
        human = [
            f"pair ({report.pair[0]}, {report.pair[1]})  [n={m.n}, r={m.full_rank}]",
            *_human_counts(counts),
            _kv("beta", data["beta"]),
            _kv("alpha", data["alpha"] if data["alpha"] is not None else "undefined (0/0)"),
            _kv("case", data["case"]),
        ]
        _emit(args, _envelope(desc, data, scanned, t0), human)
        return 0
    table = pair_counts_table(m)
    bval, bpair = beta_max(m, table=table)
    data = {"beta_max": {"value": format_ratio(bval), "pair": list(bpair)}}
    human = [
        f"maxima over all pairs  [n={m.n}, r={m.full_rank}]",
        _kv("beta_max", f"{format_ratio(bval)} at pair {bpair}"),
    ]
    try:
        aval, apair = alpha_max(m, table=table)
        data["alpha_max"] = {"value": format_ratio(aval), "pair": list(apair)}
        human.append(_kv("alpha_max", f"{format_ratio(aval)} at pair {apair}"))
    except NoEligiblePair:
        data["alpha_max"] = None
        human.append(_kv("alpha_max", "no valid pair"))
    _emit(args, _envelope(desc, data, scanned, t0), human)
    return 0


def cmd_converge(args) -> int:
    t0 = time.perf_counter()
    m, desc, default_pair = _resolve_input(args)
    threads = _threads(args)
    pair = tuple(args.pair) if args.pair else default_pair
    if pair is None:
        raise ParseError("converge needs --pair I J (this input has no distinguished pair)")
    k_max = args.k_max
    if k_max < 1:
        raise ParseError(f"--k-max must be >= 1, got {k_max}")
    scanned = _guard_enum(args, subsets_to_scan(m.n, m.full_rank))
    counts = count_partition(m, pair, threads=threads)
    trace = beta_parallel_sequence(counts, k_max, pair=pair)
    brute: dict[int, str] = {}
    if args.brute_check:
        r = m.full_rank
        planned = scanned
        for k in range(2, min(args.brute_check, k_max) + 1):
            planned += subsets_to_scan(2 + k * (m.n - 2), r)
        scanned = _guard_enum(args, planned)
        for k in range(2, min(args.brute_check, k_max) + 1):
            ext = parallel_extend(m, pair, k)
            value = beta_from_counts(count_partition(ext, (0, 1), threads=threads))
            if value != dict(trace.entries)[k]:
                raise MclError(
                    f"brute-force check failed at k={k}: enumeration gives "
                    f"{format_ratio(value)}, formula gives {format_ratio(dict(trace.entries)[k])}"
                )
            brute[k] = format_ratio(value)
    first = trace.entries[0][1]
    direction = (
        "constant" if trace.limit == first
        else "increasing" if trace.limit > first
        else "decreasing"
    )
    data = {
        "pair": list(pair),
        "entries": [
            {"k": k, "beta": format_ratio(v), **({"brute": brute[k]} if k in brute else {})}
            for k, v in trace.entries
        ],
        "limit": format_ratio(trace.limit),
        "direction": direction,
    }
    human = [f"parallel-extension trace for pair {pair}  [n={m.n}, r={m.full_rank}]"]
    for entry in data["entries"]:
        note = f"   (brute-force: {entry['brute']})" if "brute" in entry else ""
        human.append(_kv(f"k={entry['k']}", entry["beta"] + note))
    human.append(_kv("limit", data["limit"] + f"   ({direction})"))
    _emit(args, _envelope(desc, data, scanned, t0), human)
    return 0


def cmd_counts(args) -> int:
    t0 = time.perf_counter()
    m, desc, default_pair = _resolve_input(args)
    threads = _threads(args)
    pair = tuple(args.pair) if args.pair else default_pair
    scanned = _guard_enum(args, subsets_to_scan(m.n, m.full_rank))
    if pair is not None:
        counts = count_partition(m, pair, threads=threads)
        data = {"pair": list(pair), "counts": _counts_dict(counts)}
        human = [f"basis counts for pair {pair}  [n={m.n}, r={m.full_rank}]",
                 *_human_counts(counts)]
    else:
        from .counting import count_bases

        total = count_bases(m, threads=threads)
        data = {"counts": {"b": str(total)}}
        human = [f"basis count  [n={m.n}, r={m.full_rank}]", _kv("b", total)]
    if desc.get("kind") == "graph_file":
        try:
            trees = count_spanning_trees_matrix_tree(m.edges)
            data["spanning_trees_matrix_tree"] = str(trees)
            human.append(_kv("matrix-tree", trees))
        except DisconnectedGraph:
            pass
    _emit(args, _envelope(desc, data, scanned, t0), human)
    return 0


def cmd_sparse_paving(args) -> int:
    t0 = time.perf_counter()
    if args.elements is None or args.rank is None:
        raise ParseError("sparse-paving needs --elements N and --rank R")
    seed = args.seed if args.seed is not None else 0
    try:
        m = generate_sparse_paving(args.elements, args.rank, args.circuits_count, seed)
    except _CONSTRUCT_ERRORS as exc:
        raise ParseError(str(exc)) from None
    payload = {"n": m.n, "r": m.r, "circuits": [list(c) for c in m.circuits]}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    desc = {"kind": "construct", "construct": "sparse_paving", "elements": m.n,
            "rank": m.r, "circuits_requested": args.circuits_count, "seed": seed}
    data = {**payload, "circuits_achieved": len(m.circuits)}
    human = [
        f"sparse paving matroid  [n={m.n}, r={m.r}]",
        _kv("requested", args.circuits_count),
        _kv("achieved", len(m.circuits)),
        _kv("circuits", " ".join("{" + ",".join(map(str, c)) + "}" for c in m.circuits) or "(none)"),
    ]
    if args.out:
        human.append(_kv("written to", args.out))
    _emit(args, _envelope(desc, data, 0, t0), human)
    return 0


def cmd_verify_paper(args) -> int:
    t0 = time.perf_counter()
    names = None
    if args.only:
        names = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [n for n in names if n not in CHECK_NAMES]
        if unknown:
            raise ParseError(f"unknown checks: {', '.join(unknown)}")
    results = run_checks(names)
    failures = [r for r in results if not r.passed]
    if args.json:
        data = {
            "checks": [
                {"name": r.name, "passed": r.passed, "expected": r.expected,
                 "computed": r.computed, **({"detail": r.detail} if r.detail else {})}
                for r in results
            ],
            "passed": len(results) - len(failures),
            "failed": len(failures),
        }
        envelope = {
            "tool": {"name": "mcl", "version": __version__},
            "input": {"kind": "verification", "checks": len(results)},
            "data": data,
            "stats": {
                "wall_time_ms": round((time.perf_counter() - t0) * 1000.0, 3),
                "check_ms": {r.name: round(r.elapsed_ms, 3) for r in results},
            },
        }
        print(json.dumps(envelope, indent=2))
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.name:<{width}}  {status}  {r.computed}")
            if not r.passed:
                print(f"{'':<{width}}        expected: {r.expected}")
                if r.detail:
                    print(f"{'':<{width}}        note: {r.detail}")
        print(f"\n{len(results) - len(failures)}/{len(results)} checks passed "
              f"({(time.perf_counter() - t0):.1f} s)")
    return 0 if not failures else VERIFY_FAILURE_EXIT


def _add_common_flags(sp, with_input=True, with_pair=True):
    if with_input:
        sp.add_argument("--construct",
                        choices=["m_rp", "m_rp_rational", "uniform", "sparse_paving"],
                        help="named construction to build")
        sp.add_argument("--matrix", metavar="FILE", help="matrix text file (linear matroid)")
        sp.add_argument("--graph", metavar="FILE", help="edge-list file (graphic matroid)")
        sp.add_argument("--circuits", metavar="FILE",
                        help="JSON circuit-list file (sparse paving matroid)")
    sp.add_argument("--rank", "-r", type=int, help="rank parameter for constructions")
    sp.add_argument("--prime", "-p", type=int, help="prime parameter for m_rp constructions")
    sp.add_argument("--elements", "-n", type=int, help="ground-set size for constructions")
    sp.add_argument("--circuits-count", type=int, default=0,
                    help="requested circuit count for sparse_paving (default 0)")
    sp.add_argument("--seed", type=int, default=None, help="seed for seeded constructions")
    if with_pair:
        sp.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"),
                        help="distinguished element pair")
    sp.add_argument("--json", action="store_true", help="emit the JSON envelope")
    sp.add_argument("--threads", type=int, default=None,
                    help="enumeration workers (default: MCL_THREADS or 1)")
    sp.add_argument("--enum-limit", type=int, default=None,
                    help=f"abort if an enumeration would scan more subsets (default {DEFAULT_ENUM_LIMIT})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcl",
        description="Exact basis-correlation invariants of matroids "
                    "(correlation constant beta and alpha-ratio).",
    )
    parser.add_argument("--version", action="version", version=f"mcl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("correlate", help="beta/alpha for a pair, or maxima over all pairs")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_correlate)

    sp = sub.add_parser("converge", help="parallel-extension trace beta(M_k) toward alpha")
    _add_common_flags(sp)
    sp.add_argument("--k-max", type=int, default=8, help="largest multiplicity k (default 8)")
    sp.add_argument("--brute-check", type=int, default=0, metavar="K",
                    help="also brute-force the extended matroids for k <= K")
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("counts", help="exact basis counts (seven-way with --pair)")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("sparse-paving", help="generate a seeded sparse paving instance")
    _add_common_flags(sp, with_input=False, with_pair=False)
    sp.add_argument("--out", metavar="FILE", help="also write the circuits JSON to FILE")
    sp.set_defaults(func=cmd_sparse_paving)

    sp = sub.add_parser("verify-paper", help="run the verification suite and print a table")
    sp.add_argument("--only", metavar="NAMES", help="comma-separated subset of checks to run")
    sp.add_argument("--json", action="store_true", help="emit the JSON envelope")
    sp.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MclError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
