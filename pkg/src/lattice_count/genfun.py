"""Short rational generating functions and the two ways of counting with them.

A GenFun is Σ_i ε_i · (Σ_{a ∈ A_i} z^a) / Π_j (1 − z^(b_ij)). Its value at
z = 1 is the lattice-point count, but every term has a pole there, so the
count is read off after substituting along a generic direction λ:

- exponential: z^v ↦ e^(⟨λ, v⟩·τ), constant term of the Laurent series in τ;
- polynomial: z^v ↦ (1 + s)^⟨λ, v⟩, constant term of the Laurent series in s.

Both reduce each term to a truncated series of order d with exact rational
coefficients.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from . import _series
from ._base import GenericityError, GenFunParseError, ShapeError
from .arith import det, dot
from .decompose import Substitution

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ._base import IntMat, IntVec
    from .cones import ParallelepipedPoints, SimplicialCone

__all__ = [
    "GenFun",
    "GenFunTerm",
    "SubstitutionContext",
    "bernoulli_numbers",
    "count",
    "count_exponential",
    "count_polynomial",
    "is_generic",
    "parse_genfun",
    "pick_lambda",
    "render_genfun",
    "term_from_cone",
    "todd_polynomial",
]

logger = logging.getLogger("lattice_count.genfun")

MAX_LAMBDA_ATTEMPTS = 1000
# Failed draws before the entry range doubles.
_DRAWS_PER_RANGE = 8


@dataclass(frozen=True, slots=True)
class GenFunTerm:
    sign: int
    numerator: tuple[IntVec, ...]
    denominators: IntMat

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ShapeError("GenFunTerm", f"sign must be +1 or -1, got {self.sign}")
        if not self.numerator:
            raise ShapeError("GenFunTerm", "empty numerator")
        d = len(self.denominators)
        for vector in (*self.numerator, *self.denominators):
            if len(vector) != d:
                raise ShapeError("GenFunTerm", f"vector {list(vector)} does not live in Z^{d}")
        if det(self.denominators) == 0:
            raise ShapeError("GenFunTerm", "denominator generators are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.denominators)


@dataclass(frozen=True, slots=True)
class GenFun:
    dimension: int
    terms: tuple[GenFunTerm, ...] = ()

    def __post_init__(self) -> None:
        for term in self.terms:
            if term.dimension != self.dimension:
                raise ShapeError("GenFun", f"term in Z^{term.dimension} in a generating function over Z^{self.dimension}")

    def __add__(self, other: GenFun) -> GenFun:
        if other.dimension != self.dimension:
            raise ShapeError("GenFun", f"cannot add Z^{self.dimension} and Z^{other.dimension}")
        return GenFun(self.dimension, self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True, slots=True)
class SubstitutionContext:
    direction: IntVec
    series_order: int


def term_from_cone(cone: SimplicialCone, points: ParallelepipedPoints) -> GenFunTerm:
    return GenFunTerm(cone.sign, tuple(points), cone.generators)


def is_generic(g: GenFun, direction: Sequence[int]) -> bool:
    return all(dot(direction, b) != 0 for term in g.terms for b in term.denominators)


def pick_lambda(g: GenFun, seed: int = 0) -> SubstitutionContext:
    """First direction from a seeded stream with ⟨λ, b⟩ ≠ 0 for every denominator vector b.

    Entries are drawn from [−d·T, d·T]; T starts at 1 and doubles after every
    few rejected draws.
    """
    d = g.dimension
    rng = random.Random(seed)  # noqa: S311
    spread = 1
    for attempt in range(1, MAX_LAMBDA_ATTEMPTS + 1):
        direction = tuple(rng.randint(-d * spread, d * spread) for _ in range(d))
        if is_generic(g, direction):
            logger.debug("direction %s accepted after %d draws", direction, attempt)
            return SubstitutionContext(direction, d)
        if attempt % _DRAWS_PER_RANGE == 0:
            spread *= 2
    msg = f"no generic substitution direction found in {MAX_LAMBDA_ATTEMPTS} draws"
    raise GenericityError(msg)


def _require_generic(xi: Sequence[int]) -> None:
    if 0 in xi:
        msg = "substitution direction is orthogonal to a denominator vector"
        raise GenericityError(msg)


def _as_integer(total: Fraction, method: str) -> int:
    if total.denominator != 1:
        msg = f"{method} substitution produced the non-integer total {total}"
        raise GenericityError(msg)
    return int(total)


def _exponential_contribution(term: GenFunTerm, ctx: SubstitutionContext) -> Fraction:
    order = ctx.series_order
    xi = [dot(ctx.direction, b) for b in term.denominators]
    _require_generic(xi)
    # ξτ/(e^(ξτ) − 1) is the Todd series evaluated at −ξτ.
    todd = _series.todd_series(order)
    factors = [_series.scaled_argument(todd, -x) for x in xi]
    numerator = _series.exp_sum((dot(ctx.direction, a) for a in term.numerator), order)
    series = _series.multiply(_series.product(factors, order), numerator, order)
    return term.sign * series[order] / math.prod(-x for x in xi)


def count_exponential(g: GenFun, ctx: SubstitutionContext) -> int:
    total = sum((_exponential_contribution(term, ctx) for term in g.terms), start=Fraction(0))
    return _as_integer(total, "exponential")


def _polynomial_contribution(term: GenFunTerm, ctx: SubstitutionContext) -> Fraction:
    order = ctx.series_order
    xi = [dot(ctx.direction, b) for b in term.denominators]
    _require_generic(xi)
    sign = term.sign
    offset = 0
    # 1/(1 − (1+s)^−n) = −(1+s)^n / (1 − (1+s)^n).
    for x in xi:
        if x < 0:
            sign = -sign
            offset -= x
    # (1 − (1+s)^n) / s = −Σ_{k≥1} C(n, k)·s^(k−1).
    factors = [
        tuple(-Fraction(math.comb(abs(x), k + 1)) for k in range(order + 1)) for x in xi
    ]
    exponents = [dot(ctx.direction, a) + offset for a in term.numerator]
    shift = max(0, -min(exponents))
    if shift:
        factors.append(tuple(Fraction(math.comb(shift, k)) for k in range(order + 1)))
    numerator = _series.binomial_sum((e + shift for e in exponents), order)
    denominator = _series.product(factors, order)
    series = _series.multiply(numerator, _series.reciprocal(denominator, order), order)
    return sign * series[order]


def count_polynomial(g: GenFun, ctx: SubstitutionContext) -> int:
    total = sum((_polynomial_contribution(term, ctx) for term in g.terms), start=Fraction(0))
    return _as_integer(total, "polynomial")


def count(g: GenFun, method: Substitution = Substitution.EXPONENTIAL, seed: int = 0) -> int:
    ctx = pick_lambda(g, seed)
    if method is Substitution.POLYNOMIAL:
        return count_polynomial(g, ctx)
    return count_exponential(g, ctx)


def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0 .. B_n with B_1 = +1/2."""
    return _series.bernoulli_numbers(n)


def todd_polynomial(m: int, xs: Sequence[int | Fraction]) -> Fraction:
    """td_m(x): the coefficient of τ^m in Π_j x_j·τ / (1 − e^(−x_j·τ))."""
    todd = _series.todd_series(m)
    return _series.product((_series.scaled_argument(todd, x) for x in xs), m)[m]


def _render_vector(vector: Sequence[int]) -> str:
    return ",".join(map(str, vector))


def render_genfun(g: GenFun) -> str:
    """One line per term, `sign ; a a ... ; b | b | ...`, after a `# dimension d` header."""
    lines = [f"# dimension {g.dimension}"]
    for term in g.terms:
        numerator = " ".join(_render_vector(a) for a in term.numerator)
        denominators = " | ".join(_render_vector(b) for b in term.denominators)
        lines.append(f"{term.sign} ; {numerator} ; {denominators}")
    return "\n".join(lines) + "\n"


def _parse_vector(text: str, line: int) -> IntVec:
    try:
        return tuple(int(x) for x in text.strip().split(","))
    except ValueError:
        raise GenFunParseError(line, f"malformed vector {text.strip()!r}") from None


def parse_genfun(text: str) -> GenFun:
    dimension: int | None = None
    terms: list[GenFunTerm] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 2 and words[0] == "dimension" and words[1].isdigit():
                dimension = int(words[1])
            continue
        parts = line.split(";")
        if len(parts) != 3:
            raise GenFunParseError(number, "expected `sign ; numerator ; denominators`")
        sign_text, numerator_text, denominator_text = (p.strip() for p in parts)
        if sign_text not in ("1", "-1"):
            raise GenFunParseError(number, f"sign must be 1 or -1, got {sign_text!r}")
        numerator = tuple(_parse_vector(a, number) for a in numerator_text.split())
        denominators = tuple(_parse_vector(b, number) for b in denominator_text.split("|"))
        try:
            terms.append(GenFunTerm(int(sign_text), numerator, denominators))
        except ShapeError as e:
            raise GenFunParseError(number, str(e)) from None
    if dimension is None:
        if not terms:
            raise GenFunParseError(1, "no terms and no `# dimension` header")
        dimension = terms[0].dimension
    try:
        return GenFun(dimension, tuple(terms))
    except ShapeError as e:
        raise GenFunParseError(1, str(e)) from None
