"""Simplicial cones: index, polarization, triangulation and parallelepiped points."""

from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from ._base import NotPointedError, ShapeError, SingularMatrixError
from .arith import det, from_columns, inverse, mat_vec, primitive, rank, snf
from .linprog import LinearProgramStatus, maximize

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from ._base import IntMat, IntVec, RatMat, RatVec
    from .polytope import RayCone

__all__ = [
    "ParallelepipedPoints",
    "SimplicialCone",
    "enumerate_parallelepiped",
    "index",
    "polarize",
    "triangulate",
]

logger = logging.getLogger("lattice_count.cones")


@functools.lru_cache(maxsize=8192)
def _abs_det(generators: IntMat) -> int:
    return abs(det(generators))


@functools.lru_cache(maxsize=8192)
def basis_inverse(generators: IntMat) -> RatMat:
    """B⁻¹ for the matrix B whose columns are `generators`."""
    return inverse(from_columns(generators))


@dataclass(frozen=True, slots=True)
class SimplicialCone:
    """apex + cone(b_1, ..., b_d) carrying a ±1 sign from the decomposition."""

    apex: RatVec
    generators: IntMat
    sign: int = 1

    def __post_init__(self) -> None:
        d = len(self.apex)
        if len(self.generators) != d:
            raise ShapeError("SimplicialCone", f"{len(self.generators)} generators in R^{d}")
        for g in self.generators:
            if len(g) != d:
                raise ShapeError("SimplicialCone", f"generator {list(g)} does not live in R^{d}")
            if math.gcd(*g) != 1:
                raise ShapeError("SimplicialCone", f"generator {list(g)} is not primitive")
        if self.sign not in (1, -1):
            raise ShapeError("SimplicialCone", f"sign must be +1 or -1, got {self.sign}")
        if _abs_det(self.generators) == 0:
            raise SingularMatrixError("SimplicialCone")

    @property
    def dimension(self) -> int:
        return len(self.apex)

    @property
    def basis(self) -> IntMat:
        """Row-major B with the generators as columns."""
        return from_columns(self.generators)

    def coordinates(self, point: Sequence[int | Fraction]) -> RatVec:
        """λ with point = apex + B·λ."""
        shifted = [Fraction(x) - a for x, a in zip(point, self.apex, strict=True)]
        return mat_vec(basis_inverse(self.generators), shifted)

    def contains(self, point: Sequence[int | Fraction]) -> bool:
        return all(x >= 0 for x in self.coordinates(point))


@dataclass(frozen=True, slots=True)
class ParallelepipedPoints:
    points: tuple[IntVec, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[IntVec]:
        return iter(self.points)


def index(cone: SimplicialCone) -> int:
    return _abs_det(cone.generators)


def polarize(cone: SimplicialCone) -> SimplicialCone:
    """Columns of −(B⁻¹)ᵀ, i.e. the negated rows of B⁻¹, scaled to primitive vectors."""
    inv = basis_inverse(cone.generators)
    return SimplicialCone(cone.apex, tuple(primitive([-x for x in row]) for row in inv), cone.sign)


def require_pointed(generators: Sequence[IntVec], dim: int) -> None:
    """Raises unless cone(generators) is pointed and full-dimensional."""
    if not generators or rank(generators) < dim:
        raise NotPointedError(dim)
    # Pointed iff some u has ⟨u, g⟩ ≤ -1 for every generator g.
    result = maximize([0] * dim, generators, [-1] * len(generators))
    if result.status is LinearProgramStatus.INFEASIBLE:
        raise NotPointedError(dim)


def triangulate(cone: RayCone) -> list[SimplicialCone]:
    """Placing triangulation: an initial simplex from the first independent
    generators, then each remaining generator in input order is joined to
    every boundary facet it sees strictly from outside.
    """
    gens = cone.generators
    d = cone.dimension
    require_pointed(gens, d)
    if len(gens) == d:
        return [SimplicialCone(cone.apex, gens)]

    chosen: list[int] = []
    for i, g in enumerate(gens):
        if rank([gens[j] for j in chosen] + [g]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break

    simplices: list[tuple[int, ...]] = [tuple(chosen)]
    # Boundary facet -> the vertex of its simplex opposite to it.
    boundary: dict[frozenset[int], int] = {frozenset(chosen) - {v}: v for v in chosen}

    def side(facet: frozenset[int], vector: IntVec) -> int:
        return det([gens[i] for i in sorted(facet)] + [vector])

    for new in range(len(gens)):
        if new in chosen:
            continue
        visible = [
            facet
            for facet, opposite in boundary.items()
            if side(facet, gens[new]) * side(facet, gens[opposite]) < 0
        ]
        for facet in visible:
            del boundary[facet]
            simplices.append(tuple(sorted(facet | {new})))
            for v in facet:
                outer = (facet - {v}) | {new}
                if outer in boundary:
                    del boundary[outer]
                else:
                    boundary[outer] = v

    logger.debug("placing triangulation of %d generators in R^%d: %d simplices", len(gens), d, len(simplices))
    return [SimplicialCone(cone.apex, tuple(gens[i] for i in simplex)) for simplex in simplices]


def enumerate_parallelepiped(cone: SimplicialCone) -> ParallelepipedPoints:
    """Integer points of apex + {B·λ : 0 ≤ λ < 1}.

    With U·B·V = S, the vectors U⁻¹·g for g in the box Π{0..s_i−1} represent
    every coset of Z^d / B·Z^d once; each is moved into the parallelepiped
    by subtracting B·⌊λ⌋.
    """
    basis = cone.basis
    result = snf(basis)
    u_inv = tuple(tuple(int(x) for x in row) for row in inverse(result.U))
    inv = basis_inverse(cone.generators)
    points: list[IntVec] = []
    for g in itertools.product(*(range(s) for s in result.diagonal)):
        x = mat_vec(u_inv, g)
        lam = mat_vec(inv, [Fraction(xi) - a for xi, a in zip(x, cone.apex, strict=True)])
        floors = [math.floor(t) for t in lam]
        shift = mat_vec(basis, floors)
        points.append(tuple(xi - si for xi, si in zip(x, shift, strict=True)))
    return ParallelepipedPoints(tuple(points))
