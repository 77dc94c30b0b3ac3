"""End-to-end counting: one generating function per vertex cone, summed (Brion).

Per mode, a vertex's supporting cone C = v + cone(G) becomes a signed list of
simplicial cones of index at most ℓ:

- dual-stopped: triangulate the polar C°, decompose each dual simplex until
  its polar has index ≤ ℓ, polarize the leaves back; the apex stays at v and
  closed cones are counted as they are.
- primal-irrational: triangulate C° and polarize back (a simplicial C is used
  directly), move each simplicial cone's apex to its own irrational shift and
  decompose it in the primal.
- all-primal: one irrational shift for the whole vertex cone from the LP
  stability cube, then triangulate C itself and decompose in the primal.
- homogenized: the pyramid Q over P (apex at the origin, P at height 1) is
  counted instead; the apex's cone is the homogenization of P and the other
  vertices of Q take the primal-irrational route. Q holds exactly one more
  lattice point than P, the origin.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from ._base import EmptyPolytopeError, OracleLimitError
from .arith import primitive
from .cones import SimplicialCone, enumerate_parallelepiped, polarize, triangulate
from .decompose import DecompStats, EngineOptions, Mode, StopMetric, decompose_to_index
from .genfun import GenFun, count, term_from_cone
from .irrational import irrationalize_simplicial, irrationalize_vertex_cone
from .polytope import (
    HRep,
    RayCone,
    Vertex,
    check_polytope,
    dual_description,
    enumerate_vertices,
    integer_bounding_box,
    supporting_cone,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    from ._base import IntMat, IntVec
    from .genfun import GenFunTerm

__all__ = [
    "HomogenizationCone",
    "brute_force_count",
    "count_genfun",
    "count_polytope",
    "genfun_homogenization",
    "genfun_polytope",
]

logger = logging.getLogger("lattice_count.engine")

ORACLE_LIMIT = 10**8


@dataclass(frozen=True, slots=True)
class HomogenizationCone:
    """C = {(ξ·x, ξ) : x ∈ base, ξ ≥ 0} ⊂ R^(d+1)."""

    base: HRep

    @property
    def dimension(self) -> int:
        return self.base.dimension + 1

    @property
    def polar_rays(self) -> IntMat:
        """Primitive rays (a_i, −b_i) of C°, duplicates removed, in row order."""
        rays: list[IntVec] = []
        for row, value in zip(self.base.a, self.base.b, strict=True):
            ray = primitive((*row, -value))
            if ray not in rays:
                rays.append(ray)
        return tuple(rays)

    def pyramid(self) -> HRep:
        """{(x, ξ) : a·x − b·ξ ≤ 0, ξ ≤ 1}, the cone cut off at height 1."""
        d = self.base.dimension
        rows = [(*row, -value) for row, value in zip(self.base.a, self.base.b, strict=True)]
        return HRep((*rows, (0,) * d + (1,)), (0,) * len(rows) + (1,))


def _polarized_triangulation(apex: tuple[Fraction, ...], generators: IntMat) -> list[SimplicialCone]:
    """Simplicial cones at `apex` whose polars triangulate the polar of cone(generators)."""
    if len(generators) == len(apex):
        return [SimplicialCone(apex, generators)]
    dual = RayCone(apex, dual_description(generators))
    return [polarize(simplex) for simplex in triangulate(dual)]


def _dual_stopped(cone: RayCone, max_index: int, stats: DecompStats) -> list[SimplicialCone]:
    dual = RayCone(cone.apex, dual_description(cone.generators))
    simplices = triangulate(dual)
    stats.triangulation_simplices += len(simplices)
    leaves: list[SimplicialCone] = []
    for simplex in simplices:
        dual_leaves, _ = decompose_to_index(simplex, max_index, StopMetric.POLAR_INDEX, stats=stats)
        leaves.extend(polarize(leaf) for leaf in dual_leaves)
    return leaves


def _primal_irrational(cone: RayCone, max_index: int, stats: DecompStats) -> list[SimplicialCone]:
    simplices = _polarized_triangulation(cone.apex, cone.generators)
    stats.triangulation_simplices += len(simplices)
    leaves: list[SimplicialCone] = []
    for simplex in simplices:
        shifted = irrationalize_simplicial(simplex)
        found, _ = decompose_to_index(shifted, max_index, verify=True, stats=stats)
        leaves.extend(found)
    return leaves


def _all_primal(cone: RayCone, max_index: int, stats: DecompStats) -> list[SimplicialCone]:
    shift = irrationalize_vertex_cone(cone)
    simplices = triangulate(RayCone(shift.v_tilde, cone.generators, cone.facets))
    stats.triangulation_simplices += len(simplices)
    leaves: list[SimplicialCone] = []
    for simplex in simplices:
        found, _ = decompose_to_index(simplex, max_index, verify=True, stats=stats)
        leaves.extend(found)
    return leaves


_PIPELINES: dict[Mode, Callable[[RayCone, int, DecompStats], list[SimplicialCone]]] = {
    Mode.DUAL_STOPPED: _dual_stopped,
    Mode.PRIMAL_IRRATIONAL: _primal_irrational,
    Mode.ALL_PRIMAL: _all_primal,
    # Vertices of the pyramid other than its apex.
    Mode.HOMOGENIZED: _primal_irrational,
}


def _terms(leaves: Iterable[SimplicialCone]) -> list[GenFunTerm]:
    return [term_from_cone(leaf, enumerate_parallelepiped(leaf)) for leaf in leaves]


def _vertex_terms(p: HRep, mode: Mode, max_index: int, vertex: Vertex) -> tuple[list[GenFunTerm], DecompStats]:
    stats = DecompStats(vertices=1)
    cone = supporting_cone(p, vertex)
    terms = _terms(_PIPELINES[mode](cone, max_index, stats))
    stats.terms_per_vertex.append(len(terms))
    logger.debug("vertex %s: %d terms", [str(x) for x in vertex.point], len(terms))
    return terms, stats


def _map_vertices[T](work: Callable[[Vertex], T], vertices: list[Vertex], *, deterministic: bool) -> list[T]:
    """Results in vertex order, from a thread pool unless `deterministic`."""
    if deterministic or len(vertices) < 2:
        return [work(v) for v in vertices]
    with ThreadPoolExecutor() as executor:
        return list(executor.map(work, vertices))


def _genfun_over_vertices(p: HRep, vertices: list[Vertex], options: EngineOptions) -> tuple[GenFun, DecompStats]:
    work = functools.partial(_vertex_terms, p, options.mode, options.max_index)
    stats = DecompStats()
    terms: list[GenFunTerm] = []
    for vertex_terms, vertex_stats in _map_vertices(work, vertices, deterministic=options.deterministic):
        terms.extend(vertex_terms)
        stats.merge(vertex_stats)
    return GenFun(p.dimension, tuple(terms)), stats


def genfun_homogenization(p: HRep, max_index: int, *, stats: DecompStats | None = None) -> GenFun:
    """Generating function of C ∩ Z^(d+1) for the homogenization C of `p`.

    C° is triangulated from its rays (a_i, −b_i), each simplex is polarized
    back, its apex (the origin) moved to its own irrational shift, and the
    result decomposed in the primal.
    """
    check_polytope(p)
    stats = stats if stats is not None else DecompStats()
    cone = HomogenizationCone(p)
    origin = (Fraction(0),) * cone.dimension
    polar = RayCone(origin, cone.polar_rays)
    simplices = [polarize(simplex) for simplex in triangulate(polar)]
    stats.triangulation_simplices += len(simplices)
    leaves: list[SimplicialCone] = []
    for simplex in simplices:
        found, _ = decompose_to_index(irrationalize_simplicial(simplex), max_index, verify=True, stats=stats)
        leaves.extend(found)
    terms = _terms(leaves)
    stats.vertices += 1
    stats.terms_per_vertex.append(len(terms))
    return GenFun(cone.dimension, tuple(terms))


def _genfun_pyramid(p: HRep, options: EngineOptions) -> tuple[GenFun, DecompStats]:
    stats = DecompStats()
    apex = genfun_homogenization(p, options.max_index, stats=stats)
    pyramid = HomogenizationCone(p).pyramid()
    vertices = [v for v in enumerate_vertices(pyramid) if any(v.point)]
    rest, rest_stats = _genfun_over_vertices(pyramid, vertices, options)
    stats.merge(rest_stats)
    return apex + rest, stats


def genfun_polytope(p: HRep, options: EngineOptions) -> tuple[GenFun, DecompStats]:
    """The generating function of P ∩ Z^d, or of Q ∩ Z^(d+1) for the pyramid Q in homogenized mode."""
    if options.mode is Mode.HOMOGENIZED:
        return _genfun_pyramid(p, options)
    return _genfun_over_vertices(p, enumerate_vertices(p), options)


def count_genfun(g: GenFun, options: EngineOptions) -> int:
    """Lattice-point count of the polytope `g` was built for by `genfun_polytope()` with the same options."""
    total = count(g, options.substitution, options.rng_seed)
    if options.mode is Mode.HOMOGENIZED:
        # The pyramid's only lattice point below height 1 is the origin.
        total -= 1
    logger.debug("%s: %d terms, count %d", options.mode, len(g), total)
    return total


def count_polytope(p: HRep, options: EngineOptions | None = None) -> int:
    options = options if options is not None else EngineOptions()
    g, _ = genfun_polytope(p, options)
    return count_genfun(g, options)


def brute_force_count(p: HRep, limit: int = ORACLE_LIMIT) -> int:
    """Scans the integer bounding box; an empty polytope counts 0."""
    try:
        box = integer_bounding_box(p)
    except EmptyPolytopeError:
        return 0
    if any(high < low for low, high in box):
        return 0
    points = math.prod(high - low + 1 for low, high in box)
    if points > limit:
        raise OracleLimitError(points, limit)
    ranges = [range(low, high + 1) for low, high in box]
    return sum(1 for x in itertools.product(*ranges) if p.contains(x))
