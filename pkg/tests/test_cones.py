from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lattice_count._base import NotPointedError, ShapeError, SingularMatrixError
from lattice_count.arith import det, mat_vec, primitive
from lattice_count.cones import SimplicialCone, enumerate_parallelepiped, index, polarize, triangulate
from lattice_count.polytope import RayCone

from ._polytopes import pointed_cone_rays

ORIGIN_2D = (Fraction(0), Fraction(0))
ORIGIN_3D = (Fraction(0),) * 3


@st.composite
def primitive_bases(draw: st.DrawFn, d: int) -> tuple[tuple[int, ...], ...]:
    entries = st.integers(min_value=-4, max_value=4)
    vectors = draw(st.lists(st.tuples(*(entries for _ in range(d))), min_size=d, max_size=d))
    assume(all(any(v) for v in vectors))
    generators = tuple(primitive(v) for v in vectors)
    assume(det(generators) != 0)
    return generators


def test_index() -> None:
    assert index(SimplicialCone(ORIGIN_2D, ((1, 0), (1, 5)))) == 5
    assert index(SimplicialCone(ORIGIN_3D, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == 1


@pytest.mark.parametrize(
    ("generators", "sign", "error"),
    [
        (((2, 0), (0, 1)), 1, ShapeError),
        (((1, 2), (-1, -2)), 1, SingularMatrixError),
        (((1, 0), (0, 1)), 2, ShapeError),
        (((1, 0),), 1, ShapeError),
    ],
    ids=["non-primitive", "dependent", "bad-sign", "too-few-generators"],
)
def test_simplicial_cone_validation(
    generators: tuple[tuple[int, ...], ...], sign: int, error: type[Exception]
) -> None:
    with pytest.raises(error):
        SimplicialCone(ORIGIN_2D, generators, sign)


def test_contains_uses_closed_cone() -> None:
    cone = SimplicialCone(ORIGIN_2D, ((1, 0), (1, 5)))

    assert cone.contains((1, 0))
    assert cone.contains((2, 3))
    assert not cone.contains((0, 1))


def test_polarize() -> None:
    cone = SimplicialCone(ORIGIN_2D, ((1, 0), (1, 5)), sign=-1)

    polar = polarize(cone)

    assert polar.generators == ((-5, 1), (0, -1))
    assert polar.sign == -1
    assert polar.apex == cone.apex


@settings(max_examples=40)
@given(primitive_bases(3))
def test_polarize_twice_is_the_identity(generators: tuple[tuple[int, ...], ...]) -> None:
    cone = SimplicialCone(ORIGIN_3D, generators)

    assert polarize(polarize(cone)) == cone


def test_enumerate_parallelepiped_points() -> None:
    cone = SimplicialCone(ORIGIN_2D, ((1, 0), (1, 5)))

    points = enumerate_parallelepiped(cone)

    assert sorted(points) == [(0, 0), (1, 1), (1, 2), (1, 3), (1, 4)]


def test_enumerate_parallelepiped_of_a_unimodular_cone_at_a_rational_apex() -> None:
    cone = SimplicialCone((Fraction(7, 12), Fraction(25, 48)), ((1, 0), (0, 1)))

    assert list(enumerate_parallelepiped(cone)) == [(1, 1)]


@settings(max_examples=40)
@given(primitive_bases(3), st.tuples(*(st.fractions(min_value=-2, max_value=2, max_denominator=7) for _ in range(3))))
def test_enumerate_parallelepiped_finds_one_point_per_coset(
    generators: tuple[tuple[int, ...], ...], apex: tuple[Fraction, ...]
) -> None:
    cone = SimplicialCone(apex, generators)

    points = enumerate_parallelepiped(cone)

    assert len(points) == index(cone)
    assert len(set(points)) == len(points)
    for point in points:
        coordinates = cone.coordinates(point)
        assert all(0 <= x < 1 for x in coordinates)


def test_triangulate_simplicial_cone_is_itself() -> None:
    cone = RayCone(ORIGIN_2D, ((1, 0), (1, 5)))

    assert triangulate(cone) == [SimplicialCone(ORIGIN_2D, ((1, 0), (1, 5)))]


@pytest.mark.parametrize(
    ("generators", "expected"),
    [
        (((1, 1), (1, 0), (0, 1)), 2),
        (((1, 0), (0, 1), (1, 1)), 1),
    ],
    ids=["interior-ray-first", "interior-ray-last"],
)
def test_triangulate_depends_on_generator_order(generators: tuple[tuple[int, ...], ...], expected: int) -> None:
    assert len(triangulate(RayCone(ORIGIN_2D, generators))) == expected


def test_triangulate_square_cone() -> None:
    rays = ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))

    simplices = triangulate(RayCone(ORIGIN_3D, rays))

    assert len(simplices) == 2
    # Both simplices together cover the cone's lattice points exactly once,
    # except on their shared facet.
    axis = range(-3, 4)
    for x in itertools.product(axis, axis, range(4)):
        inside = abs(x[0]) + abs(x[1]) <= x[2]
        covering = sum(s.contains(x) for s in simplices)
        assert (covering > 0) == inside


def test_triangulate_rejects_cones_with_lines() -> None:
    with pytest.raises(NotPointedError):
        triangulate(RayCone(ORIGIN_2D, ((1, 0), (-1, 0), (0, 1))))


def _overlapping_pieces(simplices: list[SimplicialCone]) -> list[tuple[int, int]]:
    """Pairs of pieces sharing a sampled interior point."""
    overlaps = []
    for i, piece in enumerate(simplices):
        for weights in itertools.product((1, 2, 5), repeat=piece.dimension):
            point = mat_vec(piece.basis, weights)
            overlaps.extend(
                (i, j)
                for j, other in enumerate(simplices)
                if j != i and all(x > 0 for x in other.coordinates(point))
            )
    return overlaps


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4]).flatmap(pointed_cone_rays))
def test_triangulation_pieces_have_disjoint_interiors(rays: tuple[tuple[int, ...], ...]) -> None:
    simplices = triangulate(RayCone((Fraction(0),) * len(rays[0]), rays))

    assert _overlapping_pieces(simplices) == []


def test_triangulation_of_the_cone_over_a_cube_has_disjoint_interiors() -> None:
    rays = tuple((*signs, 1) for signs in itertools.product((1, -1), repeat=3))

    simplices = triangulate(RayCone((Fraction(0),) * 4, rays))

    assert len(simplices) >= 5
    assert _overlapping_pieces(simplices) == []
