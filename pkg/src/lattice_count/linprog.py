"""Exact rational linear programming.

`maximize()` solves max ⟨c, x⟩ over {x free : rows·x ≤ rhs} with a
dictionary simplex over `Fraction`. Free variables are split as
x = x⁺ − x⁻; an infeasible start (some rhs < 0) is repaired with one
auxiliary variable x₀ (phase one), and Bland's smallest-index rule picks
both the entering and the leaving variable, so no input can cycle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING

from ._base import ShapeError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ._base import RatVec

__all__ = ["LinearProgramResult", "LinearProgramStatus", "maximize", "minimize"]

logger = logging.getLogger("lattice_count.linprog")


class LinearProgramStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, slots=True)
class LinearProgramResult:
    status: LinearProgramStatus
    value: Fraction | None = None
    point: RatVec | None = None


class _Tableau:
    """Rows read x_basic[i] + Σ_j a[i][j]·x_nonbasic[j] = b[i]; the objective
    reads z = z0 + Σ_j c[j]·x_nonbasic[j].
    """

    __slots__ = ("a", "b", "basic", "c", "nonbasic", "z0")

    def __init__(self, a: list[list[Fraction]], b: list[Fraction], basic: list[int], nonbasic: list[int]) -> None:
        self.a = a
        self.b = b
        self.basic = basic
        self.nonbasic = nonbasic
        self.c = [Fraction(0)] * len(nonbasic)
        self.z0 = Fraction(0)

    def pivot(self, i: int, j: int) -> None:
        piv = self.a[i][j]
        row = [x / piv for x in self.a[i]]
        row[j] = 1 / piv
        self.b[i] /= piv
        self.a[i] = row
        for k, other in enumerate(self.a):
            f = other[j]
            if k == i or f == 0:
                continue
            self.a[k] = [x - f * y for x, y in zip(other, row, strict=True)]
            self.a[k][j] = -f / piv
            self.b[k] -= f * self.b[i]
        delta = self.c[j]
        if delta:
            self.z0 += delta * self.b[i]
            self.c = [x - delta * y for x, y in zip(self.c, row, strict=True)]
            self.c[j] = -delta / piv
        self.basic[i], self.nonbasic[j] = self.nonbasic[j], self.basic[i]

    def bland(self) -> LinearProgramStatus:
        while True:
            entering = min(
                ((var, j) for j, var in enumerate(self.nonbasic) if self.c[j] > 0),
                default=None,
            )
            if entering is None:
                return LinearProgramStatus.OPTIMAL
            _, j = entering
            leaving = min(
                ((self.b[i] / self.a[i][j], var, i) for i, var in enumerate(self.basic) if self.a[i][j] > 0),
                default=None,
            )
            if leaving is None:
                return LinearProgramStatus.UNBOUNDED
            self.pivot(leaving[2], j)

    def set_objective(self, costs: dict[int, Fraction]) -> None:
        """Expresses z = Σ costs[var]·var in the current nonbasic variables."""
        self.z0 = Fraction(0)
        self.c = [costs.get(var, Fraction(0)) for var in self.nonbasic]
        for i, var in enumerate(self.basic):
            cost = costs.get(var)
            if cost:
                self.z0 += cost * self.b[i]
                self.c = [x - cost * y for x, y in zip(self.c, self.a[i], strict=True)]

    def drop_variable(self, var: int) -> None:
        """Removes a nonbasic variable that is fixed at zero."""
        j = self.nonbasic.index(var)
        del self.nonbasic[j]
        del self.c[j]
        for row in self.a:
            del row[j]

    def value_of(self, var: int) -> Fraction:
        return self.b[self.basic.index(var)] if var in self.basic else Fraction(0)


def _phase_one(tableau: _Tableau, aux: int) -> bool:
    """Drives the tableau to a feasible basis. Returns False if there is none."""
    worst = min(range(len(tableau.b)), key=lambda i: (tableau.b[i], tableau.basic[i]), default=None)
    if worst is None or tableau.b[worst] >= 0:
        tableau.drop_variable(aux)
        return True
    tableau.set_objective({aux: Fraction(-1)})
    tableau.pivot(worst, tableau.nonbasic.index(aux))
    tableau.bland()
    if tableau.z0 < 0:
        return False
    if aux in tableau.basic:
        i = tableau.basic.index(aux)
        j = next((j for j, x in enumerate(tableau.a[i]) if x != 0 and tableau.nonbasic[j] != aux), None)
        if j is None:
            # The row is redundant: aux = 0 regardless of the other variables.
            del tableau.a[i]
            del tableau.b[i]
            del tableau.basic[i]
        else:
            tableau.pivot(i, j)
    if aux in tableau.nonbasic:
        tableau.drop_variable(aux)
    return True


def maximize(
    objective: Sequence[int | Fraction],
    rows: Sequence[Sequence[int | Fraction]],
    rhs: Sequence[int | Fraction],
) -> LinearProgramResult:
    n = len(objective)
    m = len(rows)
    if len(rhs) != m:
        raise ShapeError("maximize", f"{m} rows vs {len(rhs)} right-hand sides")
    for k, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError("maximize", f"row {k} has {len(row)} entries, expected {n}")

    # Columns: x⁺ (0..n-1), x⁻ (n..2n-1), auxiliary (2n+m); slacks 2n..2n+m-1 start basic.
    aux = 2 * n + m
    a = [[Fraction(x) for x in row] + [-Fraction(x) for x in row] + [Fraction(-1)] for row in rows]
    tableau = _Tableau(a, [Fraction(x) for x in rhs], list(range(2 * n, 2 * n + m)), [*range(2 * n), aux])

    if not _phase_one(tableau, aux):
        logger.debug("phase one ended with a negative optimum; infeasible")
        return LinearProgramResult(LinearProgramStatus.INFEASIBLE)

    costs = {j: Fraction(objective[j]) for j in range(n)}
    costs.update({n + j: -Fraction(objective[j]) for j in range(n)})
    tableau.set_objective(costs)
    status = tableau.bland()
    if status is LinearProgramStatus.UNBOUNDED:
        return LinearProgramResult(status)
    point = tuple(tableau.value_of(j) - tableau.value_of(n + j) for j in range(n))
    return LinearProgramResult(status, tableau.z0, point)


def minimize(
    objective: Sequence[int | Fraction],
    rows: Sequence[Sequence[int | Fraction]],
    rhs: Sequence[int | Fraction],
) -> LinearProgramResult:
    result = maximize([-Fraction(x) for x in objective], rows, rhs)
    if result.value is None:
        return result
    return LinearProgramResult(result.status, -result.value, result.point)
