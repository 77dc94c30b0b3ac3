"""Command-line interface: argument parsing, reading the H-rep file, running
the engine or the oracle, and the process exit code.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import TYPE_CHECKING

from .._base import LatticeCountError
from ..decompose import EngineOptions
from ..engine import ORACLE_LIMIT, brute_force_count, count_genfun, genfun_polytope
from ..genfun import render_genfun
from ._diagnostics import RunReport, report_error
from ._hrep_format import parse_hrep

if TYPE_CHECKING:
    from ..genfun import GenFun
    from ..polytope import HRep

logger = logging.getLogger("lattice_count.cli")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-count",
        description="Count the integer points of a rational polytope given by inequalities",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable debug logging to stderr (vertices, triangulations, decomposition depth)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser("count", help="Count via a short rational generating function")
    count.add_argument("filename", type=Path, help="Polytope in matrix H-representation format")
    EngineOptions.add_cli_arguments(count)
    count.add_argument(
        "--print-genfun",
        action="store_true",
        help="Also print the generating function, one term per line",
    )
    count.add_argument(
        "--stats",
        action="store_true",
        help="Also print one JSON line of decomposition statistics",
    )

    oracle = commands.add_parser("oracle", help="Count by scanning the integer bounding box")
    oracle.add_argument("filename", type=Path, help="Polytope in matrix H-representation format")
    oracle.add_argument(
        "--limit",
        type=int,
        default=ORACLE_LIMIT,
        help="Refuse boxes with more integer points than this (default: %(default)s)",
    )
    return parser


def _read(path: Path) -> HRep:
    return parse_hrep(path.read_text(encoding="utf-8"))


def _compute(path: Path, p: HRep, options: EngineOptions) -> tuple[RunReport, GenFun]:
    start = time.perf_counter()
    g, stats = genfun_polytope(p, options)
    total = count_genfun(g, options)
    wall_ms = round((time.perf_counter() - start) * 1000)
    logger.debug("%s: %d terms in %d ms", path, len(g), wall_ms)
    return RunReport(total, stats, wall_ms, options), g


def _count(args: argparse.Namespace, p: HRep) -> int:
    path: Path = args.filename
    options = EngineOptions.from_args(args)
    try:
        report, g = _compute(path, p, options)
    except LatticeCountError as error:
        logger.debug("Counting %s failed", path, exc_info=True)
        return report_error(path, error)

    print(report.count)
    if args.print_genfun:
        print(render_genfun(g), end="")
    if args.stats:
        print(report.stats_json())
    return 0


def _oracle(args: argparse.Namespace, p: HRep) -> int:
    try:
        total = brute_force_count(p, args.limit)
    except LatticeCountError as error:
        logger.debug("Oracle for %s failed", args.filename, exc_info=True)
        return report_error(args.filename, error)
    print(total)
    return 0


def main(argv: list[str] | None = None) -> int:
    """Main entry point.

    Args:
        argv: Command-line arguments

    Returns:
        0: the count was printed.
        1: the file could not be read or parsed, or the polytope was
            rejected (empty, unbounded, lower-dimensional, too large for
            the oracle), or the engine failed; one `error:` line on stderr.

        `argparse` itself exits with 2 on malformed arguments.
    """
    args = _build_parser().parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)

    try:
        p = _read(args.filename)
    except (OSError, UnicodeDecodeError, LatticeCountError) as error:
        logger.debug("Could not read %s", args.filename, exc_info=True)
        return report_error(args.filename, error)

    if args.command == "oracle":
        return _oracle(args, p)
    return _count(args, p)
