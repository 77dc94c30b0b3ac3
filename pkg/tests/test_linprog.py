from __future__ import annotations

from fractions import Fraction

import pytest

from lattice_count._base import ShapeError
from lattice_count.linprog import LinearProgramStatus, maximize, minimize


def test_maximize_bounded_interval() -> None:
    result = maximize((1,), ((1,), (-1,)), (3, 0))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == 3
    assert result.point == (3,)


def test_maximize_over_a_pentagon() -> None:
    rows = ((1, 0), (0, 1), (1, 1), (-1, 0), (0, -1))

    result = maximize((1, 1), rows, (2, 3, 4, 0, 0))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == 4


def test_maximize_with_infeasible_origin_needs_phase_one() -> None:
    # 1 <= x <= 2, 1 <= y <= 2.
    rows = ((1, 0), (-1, 0), (0, 1), (0, -1))

    result = maximize((-1, -1), rows, (2, -1, 2, -1))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == -2
    assert result.point == (1, 1)


def test_maximize_with_fractional_optimum() -> None:
    # 2x + 3y <= 1, x, y >= 0.
    result = maximize((1, 1), ((2, 3), (-1, 0), (0, -1)), (1, 0, 0))

    assert result.value == Fraction(1, 2)
    assert result.point == (Fraction(1, 2), 0)


def test_maximize_on_a_single_point() -> None:
    result = maximize((1,), ((1,), (-1,)), (1, -1))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.point == (1,)


def test_maximize_does_not_cycle_on_a_degenerate_program() -> None:
    # Beale's example, which cycles under the textbook largest-coefficient rule.
    rows = (
        (Fraction(1, 4), -8, -1, 9),
        (Fraction(1, 2), -12, Fraction(-1, 2), 3),
        (0, 0, 1, 0),
        (-1, 0, 0, 0),
        (0, -1, 0, 0),
        (0, 0, -1, 0),
        (0, 0, 0, -1),
    )

    result = maximize((Fraction(3, 4), -20, Fraction(1, 2), -6), rows, (0, 0, 1, 0, 0, 0, 0))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == Fraction(5, 4)


def test_maximize_unbounded() -> None:
    result = maximize((1,), ((-1,),), (-1,))

    assert result.status is LinearProgramStatus.UNBOUNDED
    assert result.value is None


def test_maximize_without_constraints_is_unbounded() -> None:
    assert maximize((1,), (), ()).status is LinearProgramStatus.UNBOUNDED


def test_maximize_zero_objective_without_constraints() -> None:
    result = maximize((), (), ())

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == 0
    assert result.point == ()


def test_maximize_infeasible() -> None:
    result = maximize((1,), ((1,), (-1,)), (0, -1))

    assert result.status is LinearProgramStatus.INFEASIBLE
    assert result.point is None


def test_maximize_with_redundant_equal_rows() -> None:
    rows = ((1, 1), (1, 1), (-1, 0), (0, -1))

    result = maximize((1, 0), rows, (2, 2, -1, 0))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == 2


def test_minimize() -> None:
    result = minimize((1,), ((-1,), (1,)), (5, 10))

    assert result.status is LinearProgramStatus.OPTIMAL
    assert result.value == -5
    assert result.point == (-5,)


@pytest.mark.parametrize(
    ("objective", "rows", "rhs"),
    [
        ((1, 1), ((1,),), (1,)),
        ((1,), ((1,), (1,)), (1,)),
    ],
    ids=["row-length", "rhs-length"],
)
def test_maximize_rejects_mismatched_shapes(
    objective: tuple[int, ...], rows: tuple[tuple[int, ...], ...], rhs: tuple[int, ...]
) -> None:
    with pytest.raises(ShapeError, match="maximize"):
        maximize(objective, rows, rhs)
