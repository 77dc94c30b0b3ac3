"""Stability cubes and the uniform irrational shift of a cone's apex.

A stability cube is a box of apex positions that leave a cone's integer
points unchanged. Moving the apex inside it to `v_tilde = center + s`, with
s = (1/r)·((2M)^-1, ..., (2M)^-d), puts every facet of the cone and of every
cone the decomposition derives from it off the lattice: ⟨c, v_tilde⟩ ∉ Z for
every nonzero integer c with ‖c‖∞ < M, and M is chosen to bound the scaled
dual vectors det(B)·b*_i of all descendants.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from ._base import LinearProgramError
from .arith import det, dot, from_columns, mat_vec
from .cones import basis_inverse, index
from .linprog import LinearProgramStatus, maximize
from .polytope import dual_description

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ._base import IntMat, IntVec, RatMat, RatVec
    from .cones import SimplicialCone
    from .polytope import RayCone

__all__ = [
    "ShiftParams",
    "StabilityCube",
    "depth_bound",
    "dual_basis",
    "index_bound_for_triangulation",
    "irrationalize_simplicial",
    "irrationalize_vertex_cone",
    "make_shift",
    "stability_cube_lp",
    "stability_cube_simplicial",
    "verify_irrational",
]

logger = logging.getLogger("lattice_count.irrational")


@dataclass(frozen=True, slots=True)
class StabilityCube:
    center: RatVec
    radius: Fraction


@dataclass(frozen=True, slots=True)
class ShiftParams:
    D: int
    C: int
    k: int
    L: int
    M: int
    r: int
    s: RatVec
    v_tilde: RatVec


def dual_basis(generators: IntMat) -> RatMat:
    """b*_i, the columns of −(B⁻¹)ᵀ, unscaled."""
    return tuple(tuple(-x for x in row) for row in basis_inverse(generators))


def _l1(vector: Sequence[int | Fraction]) -> Fraction:
    return Fraction(sum(abs(x) for x in vector))


def stability_cube_simplicial(v: Sequence[int | Fraction], generators: IntMat) -> StabilityCube:
    """Closed-form cube for v + cone(B): each ⟨b*_i, ·⟩ is moved to the middle
    of its gap between consecutive values taken on Z^d, which are spaced 1/D.
    """
    big_d = index_of(generators)
    duals = dual_basis(generators)
    lam_hat = [(math.floor(big_d * dot(b_star, v)) + Fraction(1, 2)) / big_d for b_star in duals]
    center = tuple(-x for x in mat_vec(from_columns(generators), lam_hat))
    radius = 1 / (2 * big_d * max(_l1(b_star) for b_star in duals))
    return StabilityCube(center, radius)


def stability_cube_lp(v: Sequence[int | Fraction], facet_normals: Sequence[IntVec]) -> StabilityCube:
    """Largest cube around some center keeping ⌊⟨n, v⟩⌋ < ⟨n, ·⟩ < ⌊⟨n, v⟩⌋ + 1 for every facet normal n."""
    d = len(v)
    rows: list[tuple[int | Fraction, ...]] = []
    rhs: list[int] = []
    for normal in facet_normals:
        floor = math.floor(dot(normal, v))
        weight = _l1(normal)
        rows.append((*normal, weight))
        rhs.append(floor + 1)
        rows.append((*(-x for x in normal), weight))
        rhs.append(-floor)
    result = maximize((0,) * d + (1,), rows, rhs)
    if result.status is not LinearProgramStatus.OPTIMAL:
        raise LinearProgramError("stability cube", result.status)
    assert result.point is not None
    radius = result.point[-1]
    if radius <= 0:
        raise LinearProgramError("stability cube", "degenerate (radius <= 0)")
    return StabilityCube(result.point[:-1], radius)


def _at_most_log2(x: Fraction, n: int) -> bool:
    """x ≤ log₂ n, decided on integers only (n ≥ 2)."""
    if n & (n - 1) == 0:
        return x <= n.bit_length() - 1
    # log₂ n is irrational here, so the bracket below eventually excludes x.
    power, scale = n, 1
    while True:
        low = power.bit_length() - 1  # low ≤ scale·log₂ n < low + 1
        if x * scale <= low:
            return True
        if x * scale >= low + 1:
            return False
        power *= power
        scale *= 2


def depth_bound(big_d: int, d: int) -> int:
    """k(D) = ⌊1 + log₂log₂D / log₂(d/(d−1))⌋, i.e. the largest k with (d/(d−1))^(k−1) ≤ log₂D.

    k(1) = 0, and k = 0 in dimension 1 where every primitive cone is unimodular.
    """
    if big_d <= 1 or d <= 1:
        return 0
    ratio = Fraction(d, d - 1)
    k = 1
    while _at_most_log2(ratio**k, big_d):
        k += 1
    return k


def make_shift(cube: StabilityCube, big_d: int, big_c: int, d: int) -> ShiftParams:
    k = depth_bound(big_d, d)
    big_l = math.factorial(d - 1) * (d**k * big_c) ** (d - 1)
    big_m = 2 * big_l
    # r > 1/ρ, and a multiple of the center's denominator so ⟨c, center⟩ ∈ (1/r)·Z.
    denominator = math.lcm(*(x.denominator for x in cube.center))
    smallest = math.floor(1 / cube.radius) + 1
    r = -(-smallest // denominator) * denominator
    s = tuple(Fraction(1, r * (2 * big_m) ** j) for j in range(1, d + 1))
    v_tilde = tuple(c + x for c, x in zip(cube.center, s, strict=True))
    return ShiftParams(D=big_d, C=big_c, k=k, L=big_l, M=big_m, r=r, s=s, v_tilde=v_tilde)


def index_bound_for_triangulation(generators: Sequence[IntVec]) -> int:
    """⌈(max_i ‖b_i‖²)^(n/2)⌉, an upper bound on the index of any simplex spanned by the generators."""
    n = len(generators)
    largest = max(sum(x * x for x in g) for g in generators)
    if n % 2 == 0:
        return largest ** (n // 2)
    power = largest**n
    root = math.isqrt(power)
    return root if root * root == power else root + 1


def index_of(generators: IntMat) -> int:
    """|det(B)|; the generators need not be primitive."""
    return abs(det(generators))


def _max_entry(generators: Sequence[IntVec]) -> int:
    return max(abs(x) for g in generators for x in g)


def verify_irrational(cone: SimplicialCone) -> bool:
    """True iff ⟨det(B)·b*_i, apex⟩ ∉ Z for every i; then no facet holds a lattice point."""
    big_d = index(cone)
    return all(dot([big_d * x for x in b_star], cone.apex).denominator != 1 for b_star in dual_basis(cone.generators))


def irrationalize_simplicial(cone: SimplicialCone) -> SimplicialCone:
    """The same cone with its apex moved to the uniform irrational shift of its own stability cube."""
    cube = stability_cube_simplicial(cone.apex, cone.generators)
    params = make_shift(cube, index(cone), _max_entry(cone.generators), cone.dimension)
    logger.debug("simplicial shift: D=%d C=%d k=%d M=%d r=%d", params.D, params.C, params.k, params.M, params.r)
    return dataclasses.replace(cone, apex=params.v_tilde)


def irrationalize_vertex_cone(cone: RayCone) -> ShiftParams:
    """Shift for a whole (possibly non-simplicial) vertex cone, valid for every
    simplex of any triangulation of its generators and all their descendants.
    """
    facets = cone.facets if cone.facets is not None else dual_description(cone.generators)
    cube = stability_cube_lp(cone.apex, facets)
    params = make_shift(
        cube,
        index_bound_for_triangulation(cone.generators),
        _max_entry(cone.generators),
        cone.dimension,
    )
    logger.debug("vertex-cone shift: D=%d C=%d k=%d M=%d r=%d", params.D, params.C, params.k, params.M, params.r)
    return params
