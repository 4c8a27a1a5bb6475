"""Discretization of compact box-union sets to grid-square coverings.

Pipeline: the difference set K-K of a box union K, the squared gap from
integer points outside K-K to K-K, the threshold resolution derived from it,
the covering cell family at a given resolution, and the reduction of a cover
to one cell per residue class, yielding a tiling configuration.

The guarantee being exercised: at any resolution at or above the threshold,
the covering's integer difference set equals that of K exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Box, BoxUnion, TileConfig, Vec, normalize
from .diffset import _integer_points_in_box


class BoundaryIntegerPointError(ValueError):
    """Raised when an integer point sits at distance zero from K-K without
    being inside it, which would make the gap vanish.

    Unreachable with exact closed-box arithmetic (membership is exact, and a
    point outside a closed set has positive distance to it); kept as a guard
    for the strict-gap precondition.
    """


@dataclass(frozen=True)
class GapResult:
    """Squared minimum distance from outside integer points to K-K, and the
    smallest resolution n0 with n0^2 > 32 / gap_squared."""

    gap_squared: Fraction
    n0: int


@dataclass(frozen=True)
class CellCover:
    """Resolution n plus the cells (j1, j2) whose closed 1/n-square meets K."""

    n: int
    cells: frozenset[Vec]


def minkowski_diff(k: BoxUnion) -> BoxUnion:
    """K - K as the union over ordered box pairs of the closed difference box."""
    boxes: set[Box] = set()
    for (ax0, ay0, ax1, ay1) in k.boxes:
        for (bx0, by0, bx1, by1) in k.boxes:
            boxes.add((ax0 - bx1, ay0 - by1, ax1 - bx0, ay1 - by0))
    return BoxUnion(tuple(sorted(boxes)))


def _point_box_dist_sq(x: int, y: int, box: Box) -> Fraction:
    x0, y0, x1, y1 = box
    dx = max(x0 - x, 0, x - x1)
    dy = max(y0 - y, 0, y - y1)
    return dx * dx + dy * dy


def _dist_sq_to_union(x: int, y: int, k: BoxUnion) -> Fraction:
    return min(_point_box_dist_sq(x, y, b) for b in k.boxes)


def _smallest_n_with_square_above(bound: Fraction) -> int:
    """Smallest positive integer n with n^2 > bound, by exact comparison."""
    n = math.isqrt(max(0, math.floor(bound))) + 1
    while Fraction(n * n) <= bound:
        n += 1
    while n > 1 and Fraction((n - 1) * (n - 1)) > bound:
        n -= 1
    return n


def epsilon_gap(k: BoxUnion) -> GapResult:
    """Exact squared gap between K-K and the integer points outside it.

    Candidates are confined to the bounding box of K-K inflated by 2: just
    beyond the bounding box there is always an integer point outside K-K at
    squared distance <= 5/4 (step one unit past the extreme coordinate,
    round the other coordinate of an extreme point of K-K), while any point
    beyond the inflated window is farther than 2 from the whole set.
    """
    diff = minkowski_diff(k)
    x0, y0, x1, y1 = diff.bounding_box()
    best: Fraction | None = None
    for zx in range(math.ceil(x0) - 2, math.floor(x1) + 3):
        for zy in range(math.ceil(y0) - 2, math.floor(y1) + 3):
            if diff.contains_point(Fraction(zx), Fraction(zy)):
                continue
            d2 = _dist_sq_to_union(zx, zy, diff)
            if d2 == 0:
                raise BoundaryIntegerPointError(
                    f"boundary integer point ({zx},{zy}) on K-K"
                )
            if best is None or d2 < best:
                best = d2
    if best is None:
        raise BoundaryIntegerPointError("no integer point outside K-K in window")
    n0 = _smallest_n_with_square_above(32 / best)
    return GapResult(best, n0)


def cover_cells(k: BoxUnion, n: int) -> CellCover:
    """Cells whose closed 1/n-square intersects K (closed-box test, exact)."""
    if n < 1:
        raise ValueError("non-positive n")
    cells: set[Vec] = set()
    for (x0, y0, x1, y1) in k.boxes:
        # Cell j1 meets [x0, x1] iff j1 <= n*x1 and j1 >= n*x0 - 1.
        jx_lo = math.ceil(n * x0 - 1)
        jx_hi = math.floor(n * x1)
        jy_lo = math.ceil(n * y0 - 1)
        jy_hi = math.floor(n * y1)
        for j1 in range(jx_lo, jx_hi + 1):
            for j2 in range(jy_lo, jy_hi + 1):
                cells.add((j1, j2))
    return CellCover(n, frozenset(cells))


def integer_points_of_union(k: BoxUnion) -> frozenset[Vec]:
    pts: set[Vec] = set()
    for box in k.boxes:
        pts.update(_integer_points_in_box(*box))
    return frozenset(pts)


def cover_integer_diff_points(cover: CellCover) -> frozenset[Vec]:
    """Integer points of K_n - K_n for the cover's cell union.

    A candidate m is in the difference iff some pair of cells is within one
    step of m*n apart per coordinate; scanning cells against a hash set keeps
    this linear in the cover size per candidate.
    """
    n = cover.n
    cells = cover.cells
    if not cells:
        return frozenset()
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    span_x = max(xs) - min(xs) + 1
    span_y = max(ys) - min(ys) + 1
    mx_range = range(-((span_x + 1) // n + 1), (span_x + 1) // n + 2)
    my_range = range(-((span_y + 1) // n + 1), (span_y + 1) // n + 2)
    out: set[Vec] = set()
    for mx in mx_range:
        for my in my_range:
            found = False
            for (j1, j2) in cells:
                tx = j1 - mx * n
                ty = j2 - my * n
                for dx in (-1, 0, 1):
                    if found:
                        break
                    for dy in (-1, 0, 1):
                        if (tx + dx, ty + dy) in cells:
                            found = True
                            break
                if found:
                    break
            if found:
                out.add((mx, my))
    return frozenset(out)


def discretization_exact(k: BoxUnion, n: int) -> bool:
    """Whether the integer difference sets of K and of its n-cover coincide.

    Both sides are computed exactly; guaranteed true for n >= n0 from
    `epsilon_gap`.
    """
    if n < 1:
        raise ValueError("non-positive n")
    lhs = integer_points_of_union(minkowski_diff(k))
    rhs = cover_integer_diff_points(cover_cells(k, n))
    return lhs == rhs


def reduce_to_transversal(cover: CellCover) -> TileConfig:
    """Keep one cell per residue class, as a normalized tiling configuration.

    For each residue (i, j) the kept cell is the one whose translate
    (floor(j1/n), floor(j2/n)) is lexicographically smallest; the result is
    then normalized so the base cell's translate is zero.
    """
    n = cover.n
    chosen: dict[tuple[int, int], Vec] = {}
    for (j1, j2) in sorted(cover.cells):
        res = (j1 % n, j2 % n)
        u = (j1 // n, j2 // n)
        if res not in chosen or u < chosen[res]:
            chosen[res] = u
    for i in range(n):
        for j in range(n):
            if (i, j) not in chosen:
                raise ValueError(f"residue uncovered ({i},{j})")
    return normalize(TileConfig.from_map(n, chosen))
