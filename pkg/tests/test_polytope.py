from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_count._base import (
    EmptyPolytopeError,
    NotAVertexError,
    NotFullDimensionalError,
    NotPointedError,
    ShapeError,
    UnboundedPolytopeError,
)
from lattice_count.arith import dot, primitive
from lattice_count.polytope import (
    HRep,
    RayCone,
    Vertex,
    check_polytope,
    dual_description,
    enumerate_vertices,
    extreme_rays,
    integer_bounding_box,
    supporting_cone,
)

from ._polytopes import cross_polytope, cube, pointed_cone_rays


@pytest.mark.parametrize(
    ("a", "b", "match"),
    [
        (((1, 0), (0, 0)), (1, 1), "all-zero"),
        (((1, 0), (0, 1)), (1,), "right-hand sides"),
        (((1, 0), (0,)), (1, 1), "coefficients"),
        ((), (), "no inequalities"),
    ],
    ids=["zero-row", "rhs-count", "ragged", "empty"],
)
def test_hrep_validation(a: tuple[tuple[int, ...], ...], b: tuple[int, ...], match: str) -> None:
    with pytest.raises(ShapeError, match=match):
        HRep(a, b)


def test_from_rational_rows_clears_denominators_row_by_row() -> None:
    p = HRep.from_rational_rows([(Fraction(1, 2), Fraction(1, 3)), (-1, 0)], [1, Fraction(5, 2)])

    assert p.a == ((3, 2), (-2, 0))
    assert p.b == (6, 5)


def test_contains() -> None:
    square = cube(2, 1)

    assert square.contains((0, 1))
    assert square.contains((Fraction(1, 2), Fraction(1, 2)))
    assert not square.contains((2, 0))


def test_enumerate_vertices_of_the_unit_square() -> None:
    vertices = enumerate_vertices(cube(2, 1))

    assert [v.point for v in vertices] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(v.is_simple for v in vertices)


def test_enumerate_vertices_finds_rational_vertices() -> None:
    # x, y >= 0 and 2x + 2y <= 1.
    triangle = HRep(((-1, 0), (0, -1), (2, 2)), (0, 0, 1))

    points = [v.point for v in enumerate_vertices(triangle)]

    assert points == [(0, 0), (0, Fraction(1, 2)), (Fraction(1, 2), 0)]


def test_enumerate_vertices_marks_non_simple_vertices() -> None:
    vertices = enumerate_vertices(cross_polytope(3, 1))

    assert len(vertices) == 6
    assert all(not v.is_simple for v in vertices)
    assert all(len(v.tight_rows) == 4 for v in vertices)


def test_enumerate_vertices_ignores_redundant_rows() -> None:
    square = cube(2, 1)
    redundant = HRep((*square.a, (1, 1)), (*square.b, 5))

    assert [v.point for v in enumerate_vertices(redundant)] == [v.point for v in enumerate_vertices(square)]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_enumerate_vertices_of_the_cube(d: int) -> None:
    vertices = enumerate_vertices(cube(d, 3))

    assert len(vertices) == 2**d
    assert {v.point for v in vertices} == set(itertools.product((0, 3), repeat=d))
    assert all(v.is_simple for v in vertices)


@pytest.mark.parametrize(
    ("p", "error"),
    [
        (HRep(((1,), (-1,)), (0, -1)), EmptyPolytopeError),
        (HRep(((1,), (-1,)), (0, 0)), NotFullDimensionalError),
        (HRep(((-1,),), (0,)), UnboundedPolytopeError),
        (HRep(((1, 0), (-1, 0)), (1, 0)), UnboundedPolytopeError),
    ],
    ids=["empty", "single-point", "half-line", "strip"],
)
def test_check_polytope_rejects(p: HRep, error: type[Exception]) -> None:
    with pytest.raises(error):
        check_polytope(p)


def test_check_polytope_accepts_a_cube() -> None:
    check_polytope(cube(3, 2))


def test_integer_bounding_box() -> None:
    # x, y >= 0 and 2x + 3y <= 6.
    triangle = HRep(((-1, 0), (0, -1), (2, 3)), (0, 0, 6))

    assert integer_bounding_box(triangle) == ((0, 3), (0, 2))


def test_integer_bounding_box_rounds_inwards() -> None:
    segment = HRep(((2,), (-2,)), (5, 1))

    assert integer_bounding_box(segment) == ((0, 2),)


def test_supporting_cone_at_a_simple_vertex() -> None:
    square = cube(2, 1)
    origin = enumerate_vertices(square)[0]

    cone = supporting_cone(square, origin)

    assert cone.apex == (0, 0)
    assert cone.generators == ((0, 1), (1, 0))
    assert set(cone.facets or ()) == {(-1, 0), (0, -1)}


def test_supporting_cone_at_a_non_simple_vertex() -> None:
    octahedron = cross_polytope(3, 1)
    top = next(v for v in enumerate_vertices(octahedron) if v.point == (0, 0, 1))

    cone = supporting_cone(octahedron, top)

    assert sorted(cone.generators) == [(-1, 0, -1), (0, -1, -1), (0, 1, -1), (1, 0, -1)]
    assert not cone.is_simplicial


@pytest.mark.parametrize(
    "point",
    [(Fraction(1, 2), 0), (2, 2)],
    ids=["edge-midpoint", "outside"],
)
def test_supporting_cone_rejects_non_vertices(point: tuple[int | Fraction, ...]) -> None:
    with pytest.raises(NotAVertexError):
        supporting_cone(cube(2, 1), Vertex(point, frozenset()))


def test_dual_description_of_the_orthant() -> None:
    assert dual_description(((1, 0), (0, 1))) == ((-1, 0), (0, -1))


def test_dual_description_of_a_square_cone() -> None:
    rays = ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))

    assert dual_description(rays) == ((-1, -1, -1), (-1, 1, -1), (1, -1, -1), (1, 1, -1))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]).flatmap(pointed_cone_rays))
def test_dual_description_twice_gives_back_the_extreme_rays(rays: tuple[tuple[int, ...], ...]) -> None:
    normals = dual_description(rays)
    extreme = dual_description(normals)

    assert set(extreme) <= {primitive(ray) for ray in rays}
    assert dual_description(extreme) == normals
    assert all(dot(normal, ray) <= 0 for normal in normals for ray in rays)


def test_dual_description_rejects_lower_dimensional_cones() -> None:
    with pytest.raises(NotPointedError):
        dual_description(((1, 0, 0), (0, 1, 0)))


def test_extreme_rays_rejects_cones_with_lines() -> None:
    with pytest.raises(NotPointedError):
        extreme_rays(((1, 0),), 2)


def test_extreme_rays_drops_redundant_constraints() -> None:
    # y1 <= 0, y2 <= 0 and the implied y1 + y2 <= 0.
    rays = extreme_rays(((1, 0), (0, 1), (1, 1)), 2)

    assert sorted(rays) == [(-1, 0), (0, -1)]


def test_ray_cone_rejects_non_primitive_generators() -> None:
    with pytest.raises(ShapeError, match="primitive"):
        RayCone((Fraction(0), Fraction(0)), ((2, 0), (0, 1)))
