#!/usr/bin/env python3
"""Benchmark script comparing the decomposition modes.

Usage:
    python benchmark.py [--iterations=3] [--max-index 1 10 100]

This script measures, per instance, mode and index threshold:
- Wall time of the whole CLI run
- Cones emitted and decomposition depth (from `--stats`)
"""

from __future__ import annotations

import argparse
import itertools
import json
import subprocess
import sys
import tempfile
import time
from pathlib import Path
from typing import TypedDict

MODES = ("dual-stopped", "primal-irrational", "all-primal", "homogenized")


def cube_rows(d: int, k: int) -> list[list[int]]:
    rows = []
    for i in range(d):
        rows.append([k] + [-1 if j == i else 0 for j in range(d)])
        rows.append([0] + [1 if j == i else 0 for j in range(d)])
    return rows


def cross_rows(d: int, r: int) -> list[list[int]]:
    return [[r] + [-s for s in signs] for signs in itertools.product((1, -1), repeat=d)]


def simplex_rows(d: int, t: int) -> list[list[int]]:
    rows = [[0] + [1 if j == i else 0 for j in range(d)] for i in range(d)]
    rows.append([t] + [-1] * d)
    return rows


# Each entry is one generated instance in matrix H-representation.
INSTANCES: dict[str, list[list[int]]] = {
    "cube 3d, side 100": cube_rows(3, 100),
    "simplex 3d, t=20": simplex_rows(3, 20),
    "cross-polytope 4d, r=3": cross_rows(4, 3),
    "cross-polytope 5d, r=1": cross_rows(5, 1),
}


class RunTimingResult(TypedDict):
    instance: str
    mode: str
    max_index: int
    elapsed_ms: float
    return_code: int
    count: int | None
    cones_emitted: int | None
    max_depth: int | None


def write_instances(directory: Path) -> dict[str, Path]:
    paths = {}
    for i, (name, rows) in enumerate(INSTANCES.items()):
        path = directory / f"instance_{i}.hrep"
        lines = [f"{len(rows)} {len(rows[0])}", *(" ".join(map(str, row)) for row in rows)]
        path.write_text("\n".join(lines) + "\n")
        paths[name] = path
    return paths


def run_count(instance: str, path: Path, mode: str, max_index: int) -> RunTimingResult:
    command = [sys.executable, "-m", "lattice_count.cli", "count", "--stats", "--mode", mode]
    start = time.perf_counter()
    # Every argument comes from this module's own constants and generated files.
    result = subprocess.run(  # noqa: S603
        [*command, "--max-index", str(max_index), str(path)],
        capture_output=True,
        text=True,
        check=False,
    )
    elapsed = time.perf_counter() - start

    count = cones = depth = None
    if result.returncode == 0:
        count_line, stats_line = result.stdout.splitlines()[:2]
        stats = json.loads(stats_line)
        count, cones, depth = int(count_line), stats["cones_emitted"], stats["max_depth"]
    else:
        print(f"  ⚠ {instance} / {mode} exited {result.returncode}: {result.stderr.strip()[:200]}", file=sys.stderr)

    return {
        "instance": instance,
        "mode": mode,
        "max_index": max_index,
        "elapsed_ms": elapsed * 1000,
        "return_code": result.returncode,
        "count": count,
        "cones_emitted": cones,
        "max_depth": depth,
    }


def benchmark_instance(instance: str, path: Path, max_indices: list[int], iterations: int) -> list[RunTimingResult]:
    print(f"\n{'=' * 78}")
    print(instance)
    print(f"{'=' * 78}")
    print(f"  {'mode':20s} {'ℓ':>5s} {'count':>10s} {'cones':>8s} {'depth':>6s} {'avg ms':>10s}")

    results = []
    for mode, max_index in itertools.product(MODES, max_indices):
        runs = [run_count(instance, path, mode, max_index) for _ in range(iterations)]
        first = runs[0]
        avg_ms = sum(r["elapsed_ms"] for r in runs) / len(runs)
        print(
            f"  {mode:20s} {max_index:5d} {first['count']!s:>10s} {first['cones_emitted']!s:>8s}"
            f" {first['max_depth']!s:>6s} {avg_ms:10.1f}"
        )
        results.extend(runs)
    return results


def main() -> None:
    parser = argparse.ArgumentParser(description="Benchmark the decomposition modes")
    parser.add_argument(
        "--iterations",
        type=int,
        default=3,
        help="Number of timed runs per configuration (default: 3)",
    )
    parser.add_argument(
        "--max-index",
        type=int,
        nargs="+",
        default=[1, 10, 100],
        help="Index thresholds to compare (default: 1 10 100)",
    )
    args = parser.parse_args()

    print("Lattice Count Mode Benchmark")
    print("=" * 78)

    all_results: list[RunTimingResult] = []
    with tempfile.TemporaryDirectory() as directory:
        for instance, path in write_instances(Path(directory)).items():
            all_results.extend(benchmark_instance(instance, path, args.max_index, args.iterations))

    print("\n\n" + "=" * 78)
    print("📈 SUMMARY")
    print("=" * 78)

    for instance in INSTANCES:
        counts = {r["count"] for r in all_results if r["instance"] == instance and r["return_code"] == 0}
        status = "✓ all modes agree" if len(counts) == 1 else f"✗ counts differ: {sorted(map(str, counts))}"
        print(f"  {instance:30s} {status}")

    print("\n" + "-" * 78)
    print("Average wall time per mode (all instances and thresholds):")
    print("-" * 78)
    for mode in MODES:
        times = [r["elapsed_ms"] for r in all_results if r["mode"] == mode]
        print(f"  {mode:20s} {sum(times) / len(times):10.1f} ms")


if __name__ == "__main__":
    main()
