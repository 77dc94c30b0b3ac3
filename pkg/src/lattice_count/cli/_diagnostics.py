"""Run reports and error lines printed by the CLI."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .._base import HRepParseError

if TYPE_CHECKING:
    from pathlib import Path

    from ..decompose import DecompStats, EngineOptions

__all__ = ["STATS_KEYS", "RunReport", "report_error"]

STATS_KEYS = ("cones_emitted", "max_depth", "vertices", "triangulation_simplices", "wall_ms")


@dataclass(frozen=True, slots=True)
class RunReport:
    count: int
    stats: DecompStats
    wall_ms: int
    options: EngineOptions

    def stats_json(self) -> str:
        """One JSON object with exactly `STATS_KEYS`."""
        values = {
            "cones_emitted": self.stats.cones_emitted,
            "max_depth": self.stats.max_depth,
            "vertices": self.stats.vertices,
            "triangulation_simplices": self.stats.triangulation_simplices,
            "wall_ms": self.wall_ms,
        }
        return json.dumps(values)


def report_error(path: Path, error: Exception) -> int:
    """Prints `path: error: message` (with line and column for parse errors) to stderr. Returns 1."""
    if isinstance(error, HRepParseError):
        print(f"{path}:{error.line}:{error.column}: error: {error.message}", file=sys.stderr)
    elif isinstance(error, OSError):
        print(f"{path}: error: {error.strerror or error}", file=sys.stderr)
    else:
        print(f"{path}: error: {error}", file=sys.stderr)
    return 1
