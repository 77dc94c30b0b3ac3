"""H-representation polytopes, vertex enumeration and cone conversions.

Vertex enumeration and both cone conversions go through cddlib's exact
double-description method (`cdd.gmp`, rational arithmetic). Cones are
handed over as {y : H·y ≤ 0}, polytopes as {x : A·x ≤ b}; cddlib reads a
row [c | g] as c + g·x ≥ 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

import cdd
import cdd.gmp

from ._base import (
    EmptyPolytopeError,
    NotAVertexError,
    NotFullDimensionalError,
    NotPointedError,
    ShapeError,
    UnboundedPolytopeError,
)
from .arith import dot, primitive, rank
from .linprog import LinearProgramStatus, maximize

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ._base import IntMat, IntVec, RatVec

__all__ = [
    "HRep",
    "RayCone",
    "Vertex",
    "check_polytope",
    "dual_description",
    "enumerate_vertices",
    "extreme_rays",
    "integer_bounding_box",
    "supporting_cone",
]

logger = logging.getLogger("lattice_count.polytope")


@dataclass(frozen=True, slots=True)
class HRep:
    """{x : a·x ≤ b} with integer rows."""

    a: IntMat
    b: IntVec

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ShapeError("HRep", f"{len(self.a)} rows vs {len(self.b)} right-hand sides")
        if not self.a:
            raise ShapeError("HRep", "no inequalities")
        d = len(self.a[0])
        for i, row in enumerate(self.a):
            if len(row) != d:
                raise ShapeError("HRep", f"row {i} has {len(row)} coefficients, expected {d}")
            if not any(row):
                raise ShapeError("HRep", f"row {i} has an all-zero left-hand side")

    @classmethod
    def from_rational_rows(
        cls, rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]
    ) -> HRep:
        """Clears each row (with its right-hand side) by the LCM of its denominators."""
        a: list[IntVec] = []
        b: list[int] = []
        for row, value in zip(rows, rhs, strict=True):
            entries = [Fraction(x) for x in (*row, value)]
            scale = math.lcm(*(x.denominator for x in entries))
            a.append(tuple(int(x * scale) for x in entries[:-1]))
            b.append(int(entries[-1] * scale))
        return cls(tuple(a), tuple(b))

    @property
    def dimension(self) -> int:
        return len(self.a[0])

    @property
    def row_count(self) -> int:
        return len(self.a)

    def contains(self, point: Sequence[int | Fraction]) -> bool:
        return all(dot(row, point) <= value for row, value in zip(self.a, self.b, strict=True))


@dataclass(frozen=True, slots=True)
class Vertex:
    point: RatVec
    tight_rows: frozenset[int]

    @property
    def is_simple(self) -> bool:
        return len(self.tight_rows) == len(self.point)


@dataclass(frozen=True, slots=True)
class RayCone:
    """apex + cone(generators); `facets` are outer normals when known."""

    apex: RatVec
    generators: IntMat
    facets: IntMat | None = field(default=None)

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != len(self.apex):
                raise ShapeError("RayCone", f"generator {list(g)} does not live in R^{len(self.apex)}")
            if math.gcd(*g) != 1:
                raise ShapeError("RayCone", f"generator {list(g)} is not primitive")

    @property
    def dimension(self) -> int:
        return len(self.apex)

    @property
    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dimension


def _generators(rows: Sequence[Sequence[int | Fraction]]) -> cdd.gmp.Matrix:
    """cddlib's V-representation of {x : row[0] + row[1:]·x ≥ 0 for every row}."""
    matrix = cdd.gmp.matrix_from_array(
        [[Fraction(x) for x in row] for row in rows],
        rep_type=cdd.RepType.INEQUALITY,
    )
    generators = cdd.gmp.copy_generators(cdd.gmp.polyhedron_from_matrix(matrix))
    logger.debug("%d inequalities -> %d generators", len(rows), len(generators.array))
    return generators


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> IntMat:
    """Primitive extreme rays of the pointed cone {y ∈ R^dim : H·y ≤ 0}, sorted."""
    if not constraints:
        raise NotPointedError(dim)
    generators = _generators([(0, *(-x for x in row)) for row in constraints])
    if generators.lin_set:
        raise NotPointedError(dim)
    # The apex comes back as the single row with a leading 1.
    return tuple(sorted(primitive(row[1:]) for row in generators.array if row[0] == 0))


def _coordinate_extreme(p: HRep, k: int, sense: int) -> Fraction:
    objective = [0] * p.dimension
    objective[k] = sense
    result = maximize(objective, p.a, p.b)
    if result.status is LinearProgramStatus.INFEASIBLE:
        raise EmptyPolytopeError
    if result.status is LinearProgramStatus.UNBOUNDED:
        raise UnboundedPolytopeError(tuple(objective))
    assert result.value is not None
    return result.value * sense


def check_polytope(p: HRep) -> None:
    """Raises unless `p` is nonempty, full-dimensional and bounded."""
    d = p.dimension
    # max t  s.t.  a·x + t ≤ b, t ≤ 1: t* > 0 iff p has an interior point.
    rows = [(*row, 1) for row in p.a] + [(0,) * d + (1,)]
    result = maximize((0,) * d + (1,), rows, (*p.b, 1))
    assert result.value is not None
    if result.value < 0:
        raise EmptyPolytopeError
    if result.value == 0:
        raise NotFullDimensionalError(d)
    for k in range(d):
        for sense in (1, -1):
            _coordinate_extreme(p, k, sense)


def integer_bounding_box(p: HRep) -> tuple[tuple[int, int], ...]:
    """Per coordinate, the integer range ⌈min x_k⌉ .. ⌊max x_k⌋ over `p`."""
    return tuple(
        (math.ceil(_coordinate_extreme(p, k, -1)), math.floor(_coordinate_extreme(p, k, 1)))
        for k in range(p.dimension)
    )


def enumerate_vertices(p: HRep) -> list[Vertex]:
    check_polytope(p)
    generators = _generators([(value, *(-x for x in row)) for row, value in zip(p.a, p.b, strict=True)])
    vertices = []
    for generator in generators.array:
        if generator[0] == 0:
            raise UnboundedPolytopeError(primitive(generator[1:]))
        point = tuple(Fraction(x) / generator[0] for x in generator[1:])
        tight = frozenset(i for i, (row, value) in enumerate(zip(p.a, p.b, strict=True)) if dot(row, point) == value)
        vertices.append(Vertex(point, tight))
    vertices.sort(key=lambda v: v.point)
    logger.debug("%d vertices, %d non-simple", len(vertices), sum(not v.is_simple for v in vertices))
    return vertices


def supporting_cone(p: HRep, vertex: Vertex) -> RayCone:
    """v + {y : a_i·y ≤ 0 for every row i tight at v}."""
    if not p.contains(vertex.point):
        raise NotAVertexError(vertex.point)
    tight = [i for i, (row, value) in enumerate(zip(p.a, p.b, strict=True)) if dot(row, vertex.point) == value]
    normals = [p.a[i] for i in tight]
    if not normals or rank(normals) < p.dimension:
        raise NotAVertexError(vertex.point)
    facets: list[IntVec] = []
    for normal in map(primitive, normals):
        if normal not in facets:
            facets.append(normal)
    generators = tuple(sorted(extreme_rays(facets, p.dimension)))
    return RayCone(vertex.point, generators, tuple(facets))


def dual_description(rays: Sequence[Sequence[int]]) -> IntMat:
    """Primitive outer facet normals of cone(rays), i.e. the generators of its polar."""
    if not rays:
        raise NotPointedError(0)
    dim = len(rays[0])
    normals = extreme_rays(rays, dim)
    if len(normals) < dim or rank(normals) < dim:
        raise NotPointedError(dim)
    return tuple(sorted(normals))
