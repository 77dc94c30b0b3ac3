"""Command-line front end.

Usage: python -m lattice_count.cli {count,oracle} FILE

Input files use the matrix H-representation format read by
`parse_hrep()`: a header `m n` with n = d + 1, then one row `b -a_1 ... -a_d`
per inequality a·x <= b.
"""

from __future__ import annotations

from ._cli import main
from ._hrep_format import parse_hrep, render_hrep

__all__ = ["main", "parse_hrep", "render_hrep"]
