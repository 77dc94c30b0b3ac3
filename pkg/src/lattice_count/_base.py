"""Shared vector type aliases and the exception hierarchy.

Every error the library raises derives from `LatticeCountError`; the CLI
catches exactly that base class and reports the message, so anything else
escaping is a bug.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "DependentBasisError",
    "DescentFailureError",
    "EmptyPolytopeError",
    "GenFunParseError",
    "GenericityError",
    "HRepParseError",
    "IntMat",
    "IntVec",
    "IrrationalityError",
    "LatticeCountError",
    "LinearProgramError",
    "NotAVertexError",
    "NotFullDimensionalError",
    "NotPointedError",
    "OptionsError",
    "OracleLimitError",
    "RatMat",
    "RatVec",
    "ShapeError",
    "SingularMatrixError",
    "UnboundedPolytopeError",
]

type IntVec = tuple[int, ...]
type RatVec = tuple[Fraction, ...]
# Row-major.
type IntMat = tuple[IntVec, ...]
type RatMat = tuple[RatVec, ...]


class LatticeCountError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(LatticeCountError):
    def __init__(self, operation: str, detail: str) -> None:
        self.operation = operation
        msg = f"{operation}: {detail}"
        super().__init__(msg)


class SingularMatrixError(LatticeCountError):
    def __init__(self, operation: str) -> None:
        self.operation = operation
        msg = f"{operation}: matrix is singular"
        super().__init__(msg)


class DependentBasisError(LatticeCountError):
    def __init__(self, column: int) -> None:
        self.column = column
        msg = f"basis column {column} is linearly dependent on the preceding columns"
        super().__init__(msg)


class EmptyPolytopeError(LatticeCountError):
    def __init__(self) -> None:
        super().__init__("polytope is empty")


class UnboundedPolytopeError(LatticeCountError):
    def __init__(self, direction: tuple[Fraction, ...] | tuple[int, ...]) -> None:
        self.direction = direction
        msg = f"polytope is unbounded in direction {list(map(str, direction))}"
        super().__init__(msg)


class NotFullDimensionalError(LatticeCountError):
    def __init__(self, dimension: int) -> None:
        self.dimension = dimension
        msg = f"polytope is not full-dimensional in R^{dimension}"
        super().__init__(msg)


class NotPointedError(LatticeCountError):
    def __init__(self, dimension: int) -> None:
        self.dimension = dimension
        msg = f"cone in R^{dimension} is not pointed and full-dimensional"
        super().__init__(msg)


class NotAVertexError(LatticeCountError):
    def __init__(self, point: tuple[Fraction, ...]) -> None:
        self.point = point
        msg = f"{list(map(str, point))} is not a vertex of the polytope"
        super().__init__(msg)


class LinearProgramError(LatticeCountError):
    def __init__(self, purpose: str, status: str) -> None:
        self.purpose = purpose
        self.status = status
        msg = f"{purpose}: linear program is {status}"
        super().__init__(msg)


class DescentFailureError(LatticeCountError):
    def __init__(self, index: int) -> None:
        self.index = index
        msg = f"no short vector with max|alpha_i| < 1 found for a cone of index {index}"
        super().__init__(msg)


class IrrationalityError(LatticeCountError):
    def __init__(self, apex: tuple[Fraction, ...], generators: tuple[tuple[int, ...], ...]) -> None:
        self.apex = apex
        self.generators = generators
        msg = (
            f"irrationality check failed for the cone with apex {list(map(str, apex))} "
            f"and generators {[list(g) for g in generators]}"
        )
        super().__init__(msg)


class GenFunParseError(LatticeCountError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class GenericityError(LatticeCountError):
    """Raised when no usable substitution direction exists or the count is not an integer."""


class OptionsError(LatticeCountError):
    def __init__(self, option: str, detail: str) -> None:
        self.option = option
        msg = f"invalid {option}: {detail}"
        super().__init__(msg)


class OracleLimitError(LatticeCountError):
    def __init__(self, points: int, limit: int) -> None:
        self.points = points
        self.limit = limit
        msg = f"bounding box holds {points} integer points, over the oracle limit of {limit}"
        super().__init__(msg)


class HRepParseError(LatticeCountError):
    def __init__(self, line: int, column: int, message: str) -> None:
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")
