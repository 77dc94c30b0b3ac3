"""The matrix H-representation text format.

    m n
    b_1 -a_11 ... -a_1d
    ...
    b_m -a_m1 ... -a_md

Each row encodes b_i − ⟨a_i, x⟩ ≥ 0 and n = d + 1. Entries are integers or
fractions `p/q`; a rational row is scaled to integers together with its
right-hand side. Blank lines and lines starting with `#` are skipped.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .._base import HRepParseError
from ..polytope import HRep

__all__ = ["parse_hrep", "render_hrep"]

_NUMBER = re.compile(r"[+-]?\d+(?:/\d+)?", re.ASCII)
_COUNT = re.compile(r"\d+", re.ASCII)
_TOKEN = re.compile(r"\S+")


def _tokens(line: str) -> list[tuple[int, str]]:
    """(1-based column, text) for every whitespace-separated token."""
    return [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]


def _number(text: str, line: int, column: int) -> Fraction:
    if not _NUMBER.fullmatch(text):
        raise HRepParseError(line, column, f"expected an integer or fraction, got {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise HRepParseError(line, column, f"zero denominator in {text!r}")
    return Fraction(text)


def parse_hrep(text: str) -> HRep:
    header: tuple[int, int] | None = None
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    last_line = 1
    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        tokens = _tokens(raw)
        if not tokens or tokens[0][1].startswith("#"):
            continue
        if header is None:
            if len(tokens) != 2:
                raise HRepParseError(number, tokens[0][0], "header must be `m n`")
            values = []
            for column, token in tokens:
                if not _COUNT.fullmatch(token):
                    raise HRepParseError(number, column, f"expected a positive integer, got {token!r}")
                values.append(int(token))
            m, n = values
            if m < 1:
                raise HRepParseError(number, tokens[0][0], "at least one inequality is required")
            if n < 2:
                raise HRepParseError(number, tokens[1][0], "n = d + 1 must be at least 2")
            header = (m, n)
            continue
        m, n = header
        if len(rows) == m:
            raise HRepParseError(number, tokens[0][0], f"more than the {m} rows announced in the header")
        if len(tokens) != n:
            raise HRepParseError(number, tokens[0][0], f"expected {n} entries, got {len(tokens)}")
        values = [_number(token, number, column) for column, token in tokens]
        if not any(values[1:]):
            raise HRepParseError(number, tokens[0][0], "row has an all-zero left-hand side")
        rhs.append(values[0])
        rows.append(tuple(-x for x in values[1:]))
    if header is None:
        raise HRepParseError(last_line, 1, "missing `m n` header")
    if len(rows) != header[0]:
        raise HRepParseError(last_line, 1, f"expected {header[0]} rows, got {len(rows)}")
    return HRep.from_rational_rows(rows, rhs)


def render_hrep(p: HRep) -> str:
    lines = [f"{p.row_count} {p.dimension + 1}"]
    lines.extend(" ".join([str(value), *(str(-x) for x in row)]) for row, value in zip(p.a, p.b, strict=True))
    return "\n".join(lines) + "\n"
