"""
Command-line front end.

    app.py invariants --graph6 'C~'
    app.py construct --family realize -r 4 -d 2 --check
    app.py enumerate --n 6 --expect-absent "3,1;4,1;4,2"
    app.py verify --input corpus.g6 --checks sum-bound

Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 resource cap.
Results go to stdout; logs and progress go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Tuple

from edgeideal import config as settings
from edgeideal.config import OUTPUT_FORMATS, Config
from edgeideal.constructions import FAMILIES, lemma_a_applicable, lemma_a_prediction
from edgeideal.enumeration import CHECKS, cross_check_witnesses, scan, verify_corpus
from edgeideal.errors import CorpusParseError, EdgeIdealError, GraphFormatError, UsageError
from edgeideal.graph import (
    Graph,
    as_vertex_set,
    cone_over_subset,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    parse_edge_list,
)
from edgeideal.homology import Field
from edgeideal.invariants import betti_table, hilbert_series, invariant_report, pure_resolution_check, regularity

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _read_text(path: str) -> str:
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")


def _load_graph(args) -> Graph:
    if args.graph6 is not None:
        return graph6_decode(args.graph6)
    if args.edges is not None:
        return parse_edge_list(_read_text(args.edges))
    raise UsageError("give exactly one of --graph6 or --edges")


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """'3,1;4,1' -> [(3, 1), (4, 1)]."""
    pairs = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        try:
            r, d = (int(part) for part in chunk.split(","))
        except ValueError:
            raise UsageError(f"expected 'r,d' pairs separated by ';', got {chunk!r}")
        pairs.append((r, d))
    return pairs


def parse_subset(text: str, n: int) -> int:
    if text.strip().lower() == "all":
        return (1 << n) - 1
    try:
        members = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"subset must be comma-separated vertices or 'all', got {text!r}")
    return as_vertex_set(n, members)


def cmd_invariants(args, config: Config) -> int:
    g = _load_graph(args)
    bt = betti_table(g, config.field, config.desk_cap, config.workers)
    report = invariant_report(g, config.field, config.desk_cap, betti=bt)
    try:
        pure = pure_resolution_check(bt, report)
    except EdgeIdealError as e:
        logger.error(f"Pure resolution check failed: {e}")
        raise
    if config.output_format == "json":
        payload = report.to_json()
        payload["betti"] = bt.to_json()
        payload["pureResolution"] = pure
        print(json.dumps(payload, indent=2))
    elif config.output_format == "tsv":
        print(report.to_tsv())
    else:
        print(report.to_text())
        print(bt.render())
    for name, ok in report.bounds.items():
        if not ok:
            logger.error(f"Bound {name} violated for {report.graph6}")
    return EXIT_OK if report.bounds_ok else EXIT_CHECK_FAILED


def _family_arguments(args, params) -> List[int]:
    values = []
    for name in params:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"family {args.family} needs -{name}")
        values.append(value)
    return values


def _print_graph(g: Graph, emit: str):
    if emit == "graph6":
        print(graph6_encode(g))
    else:
        print(format_edge_list(g), end="")


def cmd_construct(args, config: Config) -> int:
    if args.family == "cone":
        base = _load_graph(args)
        if args.subset is None:
            raise UsageError("family cone needs --subset")
        subset = parse_subset(args.subset, base.n)
        g = cone_over_subset(base, subset)
        _print_graph(g, args.emit)
        if not args.check:
            return EXIT_OK
        verdict = lemma_a_applicable(base, subset, config.field, config.desk_cap)
        prediction = lemma_a_prediction(base, subset, verdict)
        if prediction is None:
            failed = verdict.failed() or ["independence of the vertices outside S"]
            logger.error(f"No cone prediction applies; failed: {', '.join(failed)}")
            return EXIT_CHECK_FAILED
    else:
        family = FAMILIES[args.family]
        values = _family_arguments(args, family.params)
        g = family.build(*values)
        _print_graph(g, args.emit)
        if not args.check:
            return EXIT_OK
        prediction = family.predict(*values)

    series = hilbert_series(g)
    reg = regularity(g, config.field, config.desk_cap, config.workers) if prediction.expected_reg is not None else None
    problems = prediction.mismatches(series, reg)
    for problem in problems:
        logger.error(f"{prediction.source}: {problem}")
    logger.info(f"{prediction.source}: H = {series.render()}, reg = {reg}")
    return EXIT_CHECK_FAILED if problems else EXIT_OK


def cmd_enumerate(args, config: Config) -> int:
    if args.input is not None:
        lines = _read_text(args.input).splitlines()
        graphs = []
        for number, line in enumerate(lines, start=1):
            if line.strip():
                try:
                    graphs.append(graph6_decode(line))
                except GraphFormatError as e:
                    raise CorpusParseError(number, str(e))
        table = scan(args.n, config.field, config.workers, args.connected, graphs=graphs,
                     progress=args.progress, desk_cap=config.desk_cap)
    elif args.n is not None:
        table = scan(args.n, config.field, config.workers, args.connected,
                     progress=args.progress, desk_cap=config.desk_cap)
    else:
        raise UsageError("enumerate needs --n or --input")
    if args.cross_field:
        cross_check_witnesses(table, Field.parse(args.cross_field), config.desk_cap, progress=args.progress)

    if config.output_format == "json":
        print(json.dumps(table.to_json(), indent=2))
    elif config.output_format == "tsv":
        print(table.to_tsv())
    else:
        print(table.to_text())

    if args.expect_absent:
        present = table.present(parse_pairs(args.expect_absent))
        if present:
            for r, d in present:
                logger.error(f"Pair ({r}, {d}) expected absent but realized by {table.witnesses[(r, d)]}")
            return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_verify(args, config: Config) -> int:
    checks = [name.strip() for name in args.checks.split(",")] if args.checks else None
    report = verify_corpus(_read_text(args.input).splitlines(), config.field, checks, config.desk_cap)
    if config.output_format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        for name, counts in report.outcomes.items():
            print(f"{name}\t{counts['passed']}\t{counts['failed']}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="coefficient field: GF2, GF(p) or QQ (env EDGEIDEAL_FIELD)")
    common.add_argument("--workers", type=int, default=None, help="worker processes (env EDGEIDEAL_WORKERS)")
    common.add_argument("--desk-cap", type=int, default=None,
                        help="largest n for homology scans, default 12 (env EDGEIDEAL_DESK_CAP)")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--log-level", default=None, help="logging level (env EDGEIDEAL_LOG_LEVEL)")

    parser = argparse.ArgumentParser(prog="edgeideal", description="Edge-ideal invariants of finite simple graphs")
    commands = parser.add_subparsers(dest="command", required=True)

    invariants = commands.add_parser("invariants", parents=[common], help="invariants of one graph")
    source = invariants.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph6")
    source.add_argument("--edges", help="edge-list file")
    invariants.set_defaults(handler=cmd_invariants)

    construct = commands.add_parser("construct", parents=[common], help="build a graph family member")
    construct.add_argument("--family", required=True, choices=sorted(FAMILIES) + ["cone"])
    construct.add_argument("-r", type=int)
    construct.add_argument("-d", type=int)
    construct.add_argument("-n", type=int)
    construct.add_argument("-m", type=int)
    cone_source = construct.add_mutually_exclusive_group()
    cone_source.add_argument("--graph6", help="base graph for --family cone")
    cone_source.add_argument("--edges", help="base graph edge-list file for --family cone")
    construct.add_argument("--subset", help="cone subset: comma-separated vertices or 'all'")
    construct.add_argument("--emit", choices=("graph6", "edges"), default="graph6")
    construct.add_argument("--check", action="store_true", help="compare computed invariants with the prediction")
    construct.set_defaults(handler=cmd_construct)

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="realizability table over all graphs")
    enumerate_.add_argument("--n", type=int)
    enumerate_.add_argument("--input", help="scan this graph6 corpus instead of generating")
    enumerate_.add_argument("--connected", action="store_true", help="only connected graphs")
    enumerate_.add_argument("--expect-absent", help="pairs 'r,d;r,d' that must not be realized")
    enumerate_.add_argument("--cross-field", help="recompute witnesses and their one-edge neighbours over this field")
    enumerate_.add_argument("--no-progress", dest="progress", action="store_false")
    enumerate_.set_defaults(handler=cmd_enumerate)

    verify = commands.add_parser("verify", parents=[common], help="check a graph6 corpus")
    verify.add_argument("--input", required=True)
    verify.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = (args.log_level or settings.LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        print(f"unknown log level {level!r}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = Config.from_env().override(
            field=Field.parse(args.field) if args.field else None,
            workers=args.workers,
            desk_cap=args.desk_cap,
            output_format=args.output_format,
        )
        return args.handler(args, config)
    except EdgeIdealError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
