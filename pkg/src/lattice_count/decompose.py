"""Signed decomposition of simplicial cones down to a maximum index.

One step replaces the cone K = cone(b_1, ..., b_d) of index D by the cones
K_i whose i-th generator is swapped for a short lattice vector w = B·α:

    [K] ≡ Σ_i sign(α_i)·[K_i]    (modulo lower-dimensional cones)

with index(K_i) = |α_i|·D. Children with α_i = 0 are lower-dimensional and
dropped. When the apex is irrational for K and all its descendants, the
dropped pieces carry no lattice points, so the identity holds exactly for
lattice-point counts.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Self

from ._base import DescentFailureError, IrrationalityError, OptionsError, ShapeError
from .arith import columns, det, from_columns, lll_reduce, mat_vec
from .cones import basis_inverse, index, polarize
from .irrational import depth_bound, verify_irrational

if TYPE_CHECKING:
    from ._base import IntMat, IntVec, RatVec
    from .cones import SimplicialCone

__all__ = [
    "DecompStats",
    "EngineOptions",
    "Mode",
    "ShortVector",
    "StopMetric",
    "Substitution",
    "decompose_step",
    "decompose_to_index",
    "short_vector",
]

logger = logging.getLogger("lattice_count.decompose")

# Above this dimension the 3^d combination search is cut down to pairs.
EXHAUSTIVE_SEARCH_DIMENSION = 8


class Mode(StrEnum):
    DUAL_STOPPED = "dual-stopped"
    PRIMAL_IRRATIONAL = "primal-irrational"
    ALL_PRIMAL = "all-primal"
    HOMOGENIZED = "homogenized"


class Substitution(StrEnum):
    POLYNOMIAL = "poly"
    EXPONENTIAL = "exp"


class StopMetric(StrEnum):
    OWN_INDEX = "own-index"
    POLAR_INDEX = "polar-index"


@dataclass(frozen=True, slots=True)
class ShortVector:
    w: IntVec
    alpha: RatVec

    @property
    def norm(self) -> Fraction:
        return max(abs(a) for a in self.alpha)


@dataclass(slots=True)
class DecompStats:
    """Counters for one run; `merge()` folds a per-vertex instance into the total."""

    cones_emitted: int = 0
    max_depth: int = 0
    nodes_visited: int = 0
    vertices: int = 0
    triangulation_simplices: int = 0
    depth_bound_violations: int = 0
    minkowski_misses: int = 0
    terms_per_vertex: list[int] = field(default_factory=list)

    def merge(self, other: DecompStats) -> None:
        self.cones_emitted += other.cones_emitted
        self.max_depth = max(self.max_depth, other.max_depth)
        self.nodes_visited += other.nodes_visited
        self.vertices += other.vertices
        self.triangulation_simplices += other.triangulation_simplices
        self.depth_bound_violations += other.depth_bound_violations
        self.minkowski_misses += other.minkowski_misses
        self.terms_per_vertex.extend(other.terms_per_vertex)


@dataclass(frozen=True, slots=True)
class EngineOptions:
    max_index: int = 1
    mode: Mode = Mode.PRIMAL_IRRATIONAL
    substitution: Substitution = Substitution.EXPONENTIAL
    deterministic: bool = False
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.max_index, bool) or not isinstance(self.max_index, int) or self.max_index < 1:
            raise OptionsError("max_index", f"must be an integer >= 1, got {self.max_index!r}")
        if self.mode not in set(Mode):
            raise OptionsError("mode", f"unknown mode {self.mode!r}")
        if self.substitution not in set(Substitution):
            raise OptionsError("substitution", f"unknown substitution {self.substitution!r}")
        # Plain strings from callers become the enum members.
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "substitution", Substitution(self.substitution))

    @classmethod
    def add_cli_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Registers one flag per field on `parser`; `from_args()` reads them back."""
        parser.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            default=Mode.PRIMAL_IRRATIONAL.value,
            help="Decomposition variant (default: %(default)s)",
        )
        parser.add_argument(
            "--max-index",
            type=_positive_int,
            default=1,
            metavar="L",
            help="Stop decomposing once a cone's index is at most L (default: %(default)s)",
        )
        parser.add_argument(
            "--substitution",
            choices=[s.value for s in Substitution],
            default=Substitution.EXPONENTIAL.value,
            help="How the count is extracted from the generating function (default: %(default)s)",
        )
        parser.add_argument(
            "--seed",
            type=int,
            default=0,
            help="Seed for the substitution direction search (default: %(default)s)",
        )
        parser.add_argument(
            "--deterministic",
            action="store_true",
            help="Process vertices one at a time in a single thread",
        )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Self:
        return cls(
            max_index=args.max_index,
            mode=Mode(args.mode),
            substitution=Substitution(args.substitution),
            deterministic=args.deterministic,
            rng_seed=args.seed,
        )


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        msg = f"expected an integer, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None
    if value < 1:
        msg = f"must be at least 1, got {value}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _centered(x: Fraction) -> Fraction:
    """x reduced modulo 1 into (−1/2, 1/2]."""
    return x - math.ceil(x - Fraction(1, 2))


def _coefficient_vectors(d: int) -> list[tuple[int, ...]]:
    """Nonzero vectors in {−1, 0, 1}^d with a positive first nonzero entry (one per ± pair)."""
    if d <= EXHAUSTIVE_SEARCH_DIMENSION:
        candidates = itertools.product((-1, 0, 1), repeat=d)
        return [c for c in candidates if any(c) and next(x for x in c if x) > 0]
    vectors = []
    for i in range(d):
        vectors.append(tuple(int(k == i) for k in range(d)))
        for j in range(i + 1, d):
            for sign in (1, -1):
                vectors.append(tuple(1 if k == i else sign if k == j else 0 for k in range(d)))
    return vectors


def short_vector(generators: IntMat) -> ShortVector:
    """A short nonzero w = B·α in Z^d, searched for among small combinations
    of an LLL-reduced basis of the lattice B⁻¹·Z^d of coordinate vectors.

    Every candidate α is reduced coordinate-wise modulo 1 (Z^d lies in that
    lattice), flipped so that some α_i > 0, and w is divided by its content.
    Ranking: smallest max|α_i|, then w inside the cone, then α lexicographic.
    """
    d = len(generators)
    big_d = abs(det(generators))
    if big_d < 2:
        raise ShapeError("short_vector", "cone is unimodular")
    # Columns of D·B⁻¹ span D·(B⁻¹·Z^d), an integer lattice.
    adjugate = tuple(tuple(int(x * big_d) for x in row) for row in basis_inverse(generators))
    reduced = lll_reduce(columns(adjugate))

    best: tuple[tuple[Fraction, int, RatVec], RatVec] | None = None
    for coefficients in _coefficient_vectors(d):
        combination = [sum(c * v[i] for c, v in zip(coefficients, reduced, strict=True)) for i in range(d)]
        alpha = tuple(_centered(Fraction(x, big_d)) for x in combination)
        if not any(alpha):
            continue
        if all(a <= 0 for a in alpha):
            alpha = tuple(-a for a in alpha)
        key = (max(abs(a) for a in alpha), 0 if all(a >= 0 for a in alpha) else 1, alpha)
        if best is None or key < best[0]:
            best = (key, alpha)
    if best is None:
        raise DescentFailureError(big_d)

    alpha = best[1]
    w = [int(x) for x in mat_vec(from_columns(generators), alpha)]
    content = math.gcd(*w)
    result = ShortVector(tuple(x // content for x in w), tuple(a / content for a in alpha))
    if result.norm >= 1:
        raise DescentFailureError(big_d)
    return result


def decompose_step(cone: SimplicialCone, vector: ShortVector) -> list[SimplicialCone]:
    children = []
    for i, a in enumerate(vector.alpha):
        if a == 0:
            continue
        generators = list(cone.generators)
        generators[i] = vector.w
        sign = cone.sign if a > 0 else -cone.sign
        children.append(dataclasses.replace(cone, generators=tuple(generators), sign=sign))
    return children


def _stop_value(cone: SimplicialCone, metric: StopMetric) -> int:
    if metric is StopMetric.POLAR_INDEX:
        return index(polarize(cone))
    return index(cone)


def decompose_to_index(
    cone: SimplicialCone,
    max_index: int,
    stop_metric: StopMetric = StopMetric.OWN_INDEX,
    *,
    verify: bool = False,
    stats: DecompStats | None = None,
) -> tuple[list[SimplicialCone], DecompStats]:
    """Depth-first signed decomposition until every leaf's stop metric is at most `max_index`.

    Leaves come out in depth-first order with children visited in generator
    order. With `verify`, every node is checked for an irrational apex and an
    `IrrationalityError` aborts the run.
    """
    if max_index < 1:
        raise OptionsError("max_index", f"must be >= 1, got {max_index}")
    stats = stats if stats is not None else DecompStats()
    d = cone.dimension
    bound = depth_bound(index(cone), d)
    leaves: list[SimplicialCone] = []
    deepest = 0
    misses = 0
    stack: list[tuple[SimplicialCone, int]] = [(cone, 0)]
    while stack:
        node, depth = stack.pop()
        stats.nodes_visited += 1
        deepest = max(deepest, depth)
        if verify and not verify_irrational(node):
            raise IrrationalityError(node.apex, node.generators)
        if _stop_value(node, stop_metric) <= max_index:
            leaves.append(node)
            continue
        parent_index = index(node)
        vector = short_vector(node.generators)
        if vector.norm**d * parent_index > 1:
            misses += 1
        children = decompose_step(node, vector)
        for child in children:
            if index(child) >= parent_index:
                raise DescentFailureError(parent_index)
        stack.extend((child, depth + 1) for child in reversed(children))

    stats.cones_emitted += len(leaves)
    stats.max_depth = max(stats.max_depth, deepest)
    stats.minkowski_misses += misses
    if deepest > bound:
        if misses:
            logger.debug("depth %d exceeds k(D)=%d after %d steps above the Minkowski bound", deepest, bound, misses)
        else:
            stats.depth_bound_violations += 1
            logger.warning("decomposition depth %d exceeds the bound k(D)=%d for index %d", deepest, bound, index(cone))
    return leaves, stats
