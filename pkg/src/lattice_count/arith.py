"""Exact integer and rational linear algebra.

Matrices are row-major tuples of tuples. Where an operation works on a set
of basis vectors (a cone's generators, an LLL basis) it takes one vector per
entry, i.e. the columns of the matrix the math is written with; use
`from_columns()` to get the row-major matrix back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, overload

from ._base import DependentBasisError, ShapeError, SingularMatrixError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ._base import IntMat, IntVec, RatMat, RatVec

__all__ = [
    "SnfResult",
    "columns",
    "det",
    "dot",
    "from_columns",
    "identity",
    "inverse",
    "is_lll_reduced",
    "lll_reduce",
    "mat_mul",
    "mat_vec",
    "primitive",
    "rank",
    "snf",
    "transpose",
]

LLL_DELTA = Fraction(3, 4)


@dataclass(frozen=True, slots=True)
class SnfResult:
    """`U·B·V = S` with `U`, `V` unimodular and `S` diagonal, s_1 | s_2 | ... | s_d."""

    U: IntMat
    S: IntMat
    V: IntMat

    @property
    def diagonal(self) -> IntVec:
        return tuple(self.S[i][i] for i in range(len(self.S)))


def shape(matrix: Sequence[Sequence[int | Fraction]], operation: str) -> tuple[int, int]:
    """Returns (rows, cols), rejecting ragged input."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    for i, row in enumerate(matrix):
        if len(row) != cols:
            msg = f"row {i} has {len(row)} entries, expected {cols}"
            raise ShapeError(operation, msg)
    return rows, cols


def _require_square(matrix: Sequence[Sequence[int | Fraction]], operation: str) -> int:
    rows, cols = shape(matrix, operation)
    if rows != cols:
        raise ShapeError(operation, f"expected a square matrix, got {rows}x{cols}")
    return rows


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose[T: (int, Fraction)](matrix: Sequence[Sequence[T]]) -> tuple[tuple[T, ...], ...]:
    shape(matrix, "transpose")
    return tuple(zip(*matrix, strict=True))


def columns[T: (int, Fraction)](matrix: Sequence[Sequence[T]]) -> tuple[tuple[T, ...], ...]:
    return transpose(matrix)


def from_columns[T: (int, Fraction)](vectors: Sequence[Sequence[T]]) -> tuple[tuple[T, ...], ...]:
    return transpose(vectors)


@overload
def dot(u: Sequence[int], v: Sequence[int]) -> int: ...
@overload
def dot(u: Sequence[int | Fraction], v: Sequence[Fraction]) -> Fraction: ...
@overload
def dot(u: Sequence[Fraction], v: Sequence[int | Fraction]) -> Fraction: ...
def dot(u: Sequence[int | Fraction], v: Sequence[int | Fraction]) -> int | Fraction:
    if len(u) != len(v):
        raise ShapeError("dot", f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v, strict=True)), start=0)


@overload
def mat_vec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> IntVec: ...
@overload
def mat_vec(matrix: Sequence[Sequence[int | Fraction]], vector: Sequence[Fraction]) -> RatVec: ...
@overload
def mat_vec(matrix: Sequence[Sequence[Fraction]], vector: Sequence[int | Fraction]) -> RatVec: ...
def mat_vec(
    matrix: Sequence[Sequence[int | Fraction]], vector: Sequence[int | Fraction]
) -> tuple[int | Fraction, ...]:
    _, cols = shape(matrix, "mat_vec")
    if cols != len(vector):
        raise ShapeError("mat_vec", f"{cols} columns vs vector of length {len(vector)}")
    return tuple(sum((a * b for a, b in zip(row, vector, strict=True)), start=0) for row in matrix)


@overload
def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMat: ...
@overload
def mat_mul(a: Sequence[Sequence[int | Fraction]], b: Sequence[Sequence[int | Fraction]]) -> RatMat: ...
def mat_mul(
    a: Sequence[Sequence[int | Fraction]], b: Sequence[Sequence[int | Fraction]]
) -> tuple[tuple[int | Fraction, ...], ...]:
    _, inner = shape(a, "mat_mul")
    rows_b, _ = shape(b, "mat_mul")
    if inner != rows_b:
        raise ShapeError("mat_mul", f"{inner} columns vs {rows_b} rows")
    cols_b = tuple(zip(*b, strict=True))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col, strict=True)), start=0) for col in cols_b) for row in a
    )


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    n = _require_square(matrix, "det")
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(matrix: Sequence[Sequence[int | Fraction]]) -> RatMat:
    """Gauss-Jordan elimination over `Fraction`, which keeps every entry reduced."""
    n = _require_square(matrix, "inverse")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("inverse")
        a[k], a[pivot] = a[pivot], a[k]
        scale = a[k][k]
        a[k] = [x / scale for x in a[k]]
        for i in range(n):
            factor = a[i][k]
            if i != k and factor != 0:
                a[i] = [x - factor * y for x, y in zip(a[i], a[k], strict=True)]
    return tuple(tuple(row[n:]) for row in a)


def rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    rows, cols = shape(matrix, "rank")
    a = [[Fraction(x) for x in row] for row in matrix]
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            factor = a[i][c] / a[r][c]
            if factor:
                a[i] = [x - factor * y for x, y in zip(a[i], a[r], strict=True)]
        r += 1
        if r == rows:
            break
    return r


def primitive(vector: Sequence[int | Fraction]) -> IntVec:
    """The primitive integer vector pointing the same way as `vector`."""
    denominators = [Fraction(x).denominator for x in vector]
    scale = math.lcm(*denominators) if denominators else 1
    scaled = [int(Fraction(x) * scale) for x in vector]
    g = math.gcd(*scaled)
    if g == 0:
        raise ShapeError("primitive", "zero vector has no direction")
    return tuple(x // g for x in scaled)


def snf(matrix: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form by repeated gcd row/column reduction with the smallest
    remaining entry as pivot. Row operations are mirrored on `U`, column
    operations on `V`.
    """
    n = _require_square(matrix, "snf")
    if det(matrix) == 0:
        raise SingularMatrixError("snf")
    s = [list(row) for row in matrix]
    u = [list(row) for row in identity(n)]
    v = [list(row) for row in identity(n)]

    def add_row(target: int, source: int, factor: int) -> None:
        for m in (s, u):
            m[target] = [x + factor * y for x, y in zip(m[target], m[source], strict=True)]

    def add_col(target: int, source: int, factor: int) -> None:
        for m in (s, v):
            for row in m:
                row[target] += factor * row[source]

    def swap_cols(i: int, j: int) -> None:
        for m in (s, v):
            for row in m:
                row[i], row[j] = row[j], row[i]

    for t in range(n):
        while True:
            _, pi, pj = min((abs(s[i][j]), i, j) for i in range(t, n) for j in range(t, n) if s[i][j] != 0)
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
            swap_cols(t, pj)
            pivot = s[t][t]
            clean = True
            for i in range(t + 1, n):
                if q := s[i][t] // pivot:
                    add_row(i, t, -q)
                clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if q := s[t][j] // pivot:
                    add_col(j, t, -q)
                clean = clean and s[t][j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if s[i][j] % pivot != 0),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    return SnfResult(
        U=tuple(tuple(row) for row in u),
        S=tuple(tuple(row) for row in s),
        V=tuple(tuple(row) for row in v),
    )


def _gram_schmidt(vectors: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Returns (mu, squared norms of the orthogonalized vectors)."""
    n = len(vectors)
    ortho: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i, b in enumerate(vectors):
        current = [Fraction(x) for x in b]
        for j in range(i):
            mu[i][j] = dot(b, ortho[j]) / norms[j]
            current = [x - mu[i][j] * y for x, y in zip(current, ortho[j], strict=True)]
        norm = dot(current, current)
        if norm == 0:
            raise DependentBasisError(i)
        ortho.append(current)
        norms.append(norm)
    return mu, norms


def _nearest(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = LLL_DELTA) -> IntMat:
    """LLL reduction of basis vectors (one per entry); returns the reduced vectors in the same layout."""
    vectors = [list(b) for b in basis]
    if not vectors:
        return ()
    shape(vectors, "lll_reduce")
    mu, norms = _gram_schmidt(vectors)
    n = len(vectors)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _nearest(mu[k][j])
            if q:
                vectors[k] = [a - q * b for a, b in zip(vectors[k], vectors[j], strict=True)]
                for m in range(j):
                    mu[k][m] -= q * mu[j][m]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            vectors[k - 1], vectors[k] = vectors[k], vectors[k - 1]
            mu, norms = _gram_schmidt(vectors)
            k = max(k - 1, 1)
    return tuple(tuple(b) for b in vectors)


def is_lll_reduced(basis: Sequence[Sequence[int]], delta: Fraction = LLL_DELTA) -> bool:
    mu, norms = _gram_schmidt(basis)
    n = len(basis)
    size_reduced = all(abs(mu[i][j]) <= Fraction(1, 2) for i in range(n) for j in range(i))
    lovasz = all(norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1] for k in range(1, n))
    return size_reduced and lovasz
