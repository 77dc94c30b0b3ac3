"""Truncated power series over `Fraction`.

A series of order n is the tuple of its coefficients of t^0 .. t^n; every
operation truncates its result back to the requested order.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

type Series = tuple[Fraction, ...]


def one(order: int) -> Series:
    return (Fraction(1),) + (Fraction(0),) * order


def multiply(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> Series:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return tuple(out)


def product(factors: Iterable[Sequence[Fraction]], order: int) -> Series:
    return functools.reduce(lambda acc, f: multiply(acc, f, order), factors, one(order))


def reciprocal(a: Sequence[Fraction], order: int) -> Series:
    """1/a, for a series with a nonzero constant term."""
    if not a or a[0] == 0:
        msg = "series with a zero constant term has no reciprocal"
        raise ZeroDivisionError(msg)
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for n in range(1, order + 1):
        acc = sum((a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)), start=Fraction(0))
        out[n] = -acc / a[0]
    return tuple(out)


def scaled_argument(a: Sequence[Fraction], factor: int | Fraction) -> Series:
    """The series of f(factor·t) given that of f(t)."""
    return tuple(c * Fraction(factor) ** k for k, c in enumerate(a))


def exp_sum(exponents: Iterable[int | Fraction], order: int) -> Series:
    """Σ_a e^(a·t): the coefficient of t^k is Σ_a a^k / k!."""
    powers = [Fraction(0)] * (order + 1)
    for a in exponents:
        term = Fraction(1)
        for k in range(order + 1):
            powers[k] += term
            term *= a
    return tuple(p / math.factorial(k) for k, p in enumerate(powers))


def binomial_sum(exponents: Iterable[int], order: int) -> Series:
    """Σ_a (1+s)^a for exponents a ≥ 0: the coefficient of s^k is Σ_a C(a, k)."""
    out = [Fraction(0)] * (order + 1)
    for a in exponents:
        for k in range(min(a, order) + 1):
            out[k] += math.comb(a, k)
    return tuple(out)


@functools.cache
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0 .. B_n by the Akiyama–Tanigawa triangle, with B_1 = +1/2.

    These are the coefficients of t/(1 − e^(−t)) = Σ B_k t^k / k!.
    """
    if n < 0:
        msg = "n must be >= 0"
        raise ValueError(msg)
    row = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return tuple(out)


def todd_series(order: int) -> Series:
    """t/(1 − e^(−t)) truncated at `order`."""
    return tuple(b / math.factorial(k) for k, b in enumerate(bernoulli_numbers(order)))
