"""Command-line interface.

Subcommands: ``estimate``, ``exact``, ``compare``, ``bounds``, ``generate``.

Exit codes: 0 success, 1 compare found distance mismatches, 2 bad flags,
3 invalid or unreadable input, 4 internal invariant failure, 5 graph too
large for the exact oracle.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import math
import sys
from typing import List, Optional

import numpy as np

from progapsp import generators
from progapsp.bounds import DEFAULT_C_UNIV, compare_bounds, vertex_diameter_bound
from progapsp.engine import DisconnectedGraphError, InvariantError, RunConfig, run
from progapsp.graph import Graph, GraphFormatError, parse_edge_list, serialize_edge_list, validate_connected
from progapsp.oracle import ExactTables, OracleLimitError, compare, exact_centrality
from progapsp.records import from_exact, from_result, read_tsv, write_tsv

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INVARIANT = 4
EXIT_ORACLE_LIMIT = 5


class InputError(Exception):
    pass


def _open_interval(name: str):
    def parse(text: str) -> float:
        try:
            x = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}") from None
        if not 0 < x < 1:
            raise argparse.ArgumentTypeError(f"{name} must lie in (0, 1), got {text}")
        return x

    return parse


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def _multiplier(text: str) -> float:
    x = _positive(text)
    if not x > 1:
        raise argparse.ArgumentTypeError(f"must exceed 1, got {text}")
    return x


def _diam(text: str):
    if text in ("auto", "exact", "trivial"):
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected auto, exact, trivial or an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"vertex diameter must be >= 1, got {text}")
    return value


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _read_graph(path: str) -> Graph:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        g = parse_edge_list(data)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    if not validate_connected(g):
        raise InputError(f"{path}: graph is not connected")
    return g


@contextlib.contextmanager
def _writer(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _dump_json(obj, path: Optional[str]) -> None:
    with _writer(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _diam_args(diam) -> tuple:
    if isinstance(diam, int):
        return "provided", diam
    return diam, None


def cmd_estimate(args) -> int:
    g = _read_graph(args.input)
    diam_mode, diam_value = _diam_args(args.diam)
    try:
        cfg = RunConfig(
            epsilon=args.epsilon,
            delta=args.delta,
            mode=args.mode,
            seed=args.seed,
            schedule_multiplier=args.multiplier,
            c_univ=args.c_univ,
            diam_mode=diam_mode,
            diam_value=diam_value,
            include_zero=args.include_zero,
        )
        result = run(g, cfg)
    except DisconnectedGraphError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        # e.g. provided diameter above n, exact diameter over the size limit
        raise InputError(str(exc)) from None
    result.check_invariants()

    with _writer(args.output) as fh:
        write_tsv(from_result(result, with_paths=args.paths), fh)
    if args.report:
        report = result.report.to_dict()
        if not args.timings:
            for it in report["iterations"]:
                del it["elapsed"]
        report["seed"] = args.seed
        report["emitted_pairs"] = len(result.pairs)
        report["certified"] = ["eps-net", "eps-representative"] if report["stop_reason"] == "eta-met" else ["eps-net"]
        _dump_json(report, args.report)
    return 0


def cmd_exact(args) -> int:
    g = _read_graph(args.input)
    exact = exact_centrality(g)
    with _writer(args.output) as fh:
        write_tsv(from_exact(exact), fh)
    return 0


def _exact_from_records(rec) -> ExactTables:
    pairs = len(rec)
    n = (1 + math.isqrt(1 + 8 * pairs)) // 2
    if n * (n - 1) // 2 != pairs or rec.c is None:
        raise InputError("exact table must list every pair of a graph with its centrality")
    dist = np.zeros((n, n))
    t = np.zeros((n, n), dtype=np.int64)
    c = np.zeros((n, n))
    if pairs and (int(rec.v.max()) >= n or np.any(rec.u >= rec.v)):
        raise InputError("exact table has malformed pairs")
    dist[rec.u, rec.v] = dist[rec.v, rec.u] = rec.d
    t[rec.u, rec.v] = t[rec.v, rec.u] = rec.t
    c[rec.u, rec.v] = c[rec.v, rec.u] = rec.c
    return ExactTables(dist=dist, t=t, c=c)


def cmd_compare(args) -> int:
    try:
        with open(args.estimate) as fh:
            est = read_tsv(fh)
        with open(args.exact) as fh:
            exact_rec = read_tsv(fh)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    exact = _exact_from_records(exact_rec)
    try:
        report = compare(est, exact, args.epsilon)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _dump_json(report.to_dict(), args.output)
    return 0 if report.distances_ok else EXIT_MISMATCH


def cmd_bounds(args) -> int:
    if args.input is not None:
        g = _read_graph(args.input)
        n = g.n
        diam_mode, diam_value = _diam_args(args.diam or "auto")
        try:
            diam_v = vertex_diameter_bound(g, diam_mode, diam_value)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        if args.n is None or not isinstance(args.diam, int):
            raise argparse.ArgumentTypeError("without --input, give --n N and --diam D (integer)")
        n, diam_v = args.n, args.diam
        if not 1 <= diam_v <= n:
            raise argparse.ArgumentTypeError(f"--diam must lie in [1, {n}]")
    _dump_json(compare_bounds(n, diam_v, args.epsilon, args.delta, args.c_univ), args.output)
    return 0


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "path":
        g = generators.path_graph(args.n)
    elif kind == "cycle":
        g = generators.cycle_graph(args.n)
    elif kind == "star":
        g = generators.star_graph(args.n - 1)
    elif kind == "grid":
        g = generators.grid_graph(args.rows, args.cols)
    else:
        if args.m is None:
            raise argparse.ArgumentTypeError("random graphs need --m")
        g = generators.random_sparse_graph(args.n, args.m, args.seed, args.wmin, args.wmax)
    with _writer(args.output) as fh:
        fh.write(serialize_edge_list(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="progapsp",
        description="Central shortest paths and shortest path centrality by progressive tree sampling.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="sample trees until the stopping rule or the cap")
    p.add_argument("--input", required=True, help="edge-list file ('-' for stdin)")
    p.add_argument("--epsilon", required=True, type=_open_interval("--epsilon"))
    p.add_argument("--delta", required=True, type=_open_interval("--delta"))
    p.add_argument("--mode", choices=("distances", "centrality"), default="distances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multiplier", type=_multiplier, default=1.5, help="geometric schedule ratio")
    p.add_argument("--c-univ", type=_positive, default=DEFAULT_C_UNIV, help="universal constant of the VC bounds")
    p.add_argument("--diam", type=_diam, default="auto", help="auto | exact | trivial | integer bound")
    p.add_argument("--include-zero", type=_bool, default=True)
    p.add_argument("--paths", action="store_true", help="append reconstructed paths")
    p.add_argument("--output", default="-")
    p.add_argument("--report", help="JSON run report path")
    p.add_argument("--timings", action="store_true", help="include wall times in the report")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("exact", help="exact distances and centralities for every pair")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("compare", help="check an estimate TSV against an exact TSV")
    p.add_argument("--estimate", required=True)
    p.add_argument("--exact", required=True)
    p.add_argument("--epsilon", required=True, type=_open_interval("--epsilon"))
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bounds", help="VC-based sample sizes next to the Hoeffding/union size")
    p.add_argument("--input")
    p.add_argument("--n", type=int)
    p.add_argument("--diam", type=_diam)
    p.add_argument("--epsilon", required=True, type=_open_interval("--epsilon"))
    p.add_argument("--delta", required=True, type=_open_interval("--delta"))
    p.add_argument("--c-univ", type=_positive, default=DEFAULT_C_UNIV)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("generate", help="write a fixture graph as an edge list")
    p.add_argument("kind", choices=("path", "cycle", "star", "grid", "random"))
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=10)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return 0


if __name__ == "__main__":
    sys.exit(main())
