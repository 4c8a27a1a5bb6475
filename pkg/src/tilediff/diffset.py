"""Integer difference sets of tiling configurations.

Two independent routes compute the same set: `difference_set` uses the
integer offset rule (an integer vector lands in the difference of two
translated grid squares exactly when the cells are within one step of each
other on the n-torus, per coordinate), while `geometric_oracle` builds every
pairwise difference box with exact rationals and lists its integer points.
The routes are property-tested against each other and must never disagree.

`lattice_span` reports the subgroup of Z^2 generated by a vector set as a
canonical triangular (Hermite-form) basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .model import TileConfig, Vec, on_axes, validate

# Witness for the membership of one vector: cells p, q and integer offset m
# with vector == u(p) - u(q) + m.
WitnessPair = tuple[tuple[int, int], tuple[int, int], Vec]


@dataclass(frozen=True)
class DiffSet:
    """Integer points of the difference set of a configuration's plane set.

    Always symmetric and containing the origin. `provenance` maps a vector to
    the list of witness pairs that produce it; it is None unless requested
    (the search hot path never retains it).
    """

    vectors: frozenset[Vec]
    provenance: Optional[dict[Vec, list[WitnessPair]]] = None

    def __contains__(self, v: Vec) -> bool:
        return v in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def sorted_vectors(self) -> list[Vec]:
        return sorted(self.vectors)


def admissible_offsets(d: Vec, n: int) -> list[Vec]:
    """Integer offsets m with |d - m*n| <= 1 per coordinate, m in {-1,0,1}^2.

    d is the (i, j) index difference of two cells. Non-empty exactly when the
    cells touch on the n-torus (8-neighbourhood including self).
    """
    mxs = [m for m in (-1, 0, 1) if abs(d[0] - m * n) <= 1]
    mys = [m for m in (-1, 0, 1) if abs(d[1] - m * n) <= 1]
    return [(mx, my) for mx in mxs for my in mys]


def difference_set(config: TileConfig, with_provenance: bool = False) -> DiffSet:
    """Exact integer difference set via the offset rule.

    Only cell pairs adjacent on the torus (including wraps and corners)
    admit offsets, so the result is a union over those pairs of
    u(p) - u(q) + m.
    """
    problems = validate(config)
    if problems:
        raise ValueError("invalid config: " + "; ".join(problems))
    n = config.n
    cells = list(config.cells())
    vectors: set[Vec] = set()
    provenance: dict[Vec, list[WitnessPair]] = {} if with_provenance else None
    for p in cells:
        up = config.u(*p)
        for q in cells:
            d = (p[0] - q[0], p[1] - q[1])
            ms = admissible_offsets(d, n)
            if not ms:
                continue
            uq = config.u(*q)
            base = (up[0] - uq[0], up[1] - uq[1])
            for m in ms:
                w = (base[0] + m[0], base[1] + m[1])
                vectors.add(w)
                if with_provenance:
                    provenance.setdefault(w, []).append((p, q, m))
    return DiffSet(frozenset(vectors), provenance)


def _integer_points_in_box(x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction):
    for x in range(math.ceil(x0), math.floor(x1) + 1):
        for y in range(math.ceil(y0), math.floor(y1) + 1):
            yield (x, y)


def geometric_oracle(config: TileConfig) -> DiffSet:
    """Independent oracle: exact Minkowski differences of all cell-box pairs.

    For cells p=(i,j) and q=(i',j') the difference of the two translated
    closed squares is the closed box
    [(i-i'-1)/n, (i-i'+1)/n] x [(j-j'-1)/n, (j-j'+1)/n] shifted by
    u(p) - u(q); its integer points are enumerated directly.
    """
    problems = validate(config)
    if problems:
        raise ValueError("invalid config: " + "; ".join(problems))
    n = config.n
    cells = list(config.cells())
    vectors: set[Vec] = set()
    for (i, j) in cells:
        up = config.u(i, j)
        for (i2, j2) in cells:
            uq = config.u(i2, j2)
            dx = up[0] - uq[0]
            dy = up[1] - uq[1]
            x0 = Fraction(i - i2 - 1, n) + dx
            x1 = Fraction(i - i2 + 1, n) + dx
            y0 = Fraction(j - j2 - 1, n) + dy
            y1 = Fraction(j - j2 + 1, n) + dy
            vectors.update(_integer_points_in_box(x0, y0, x1, y1))
    return DiffSet(frozenset(vectors))


@dataclass(frozen=True)
class AxesCheck:
    """Verdict of the axes-confinement test with a deterministic witness."""

    on_axes: bool
    witness: Optional[Vec] = None
    witness_pairs: tuple[WitnessPair, ...] = ()


def axes_subset(d: DiffSet) -> AxesCheck:
    """True iff every vector has x=0 or y=0.

    On failure the witness is the lexicographically smallest (x, then y)
    off-axes vector, with its provenance pairs when the set retains them.
    """
    off = [v for v in d.vectors if not on_axes(v)]
    if not off:
        return AxesCheck(True)
    witness = min(off)
    pairs = tuple(d.provenance.get(witness, ())) if d.provenance else ()
    return AxesCheck(False, witness, pairs)


@dataclass(frozen=True)
class LatticeSpan:
    """Subgroup of Z^2 generated by a vector set, in canonical Hermite form.

    rank 2 basis is ((d1, e), (0, d2)) with d1,d2 > 0 and 0 <= e < d2;
    index is d1*d2 for rank 2 and None (infinite) otherwise. A rank-1 basis
    vector has its first nonzero coordinate positive.
    """

    rank: int
    basis: tuple[Vec, ...]
    index: Optional[int]

    @property
    def generates_full_lattice(self) -> bool:
        return self.rank == 2 and self.index == 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def lattice_span(vectors: DiffSet | Iterable[Vec]) -> LatticeSpan:
    """Canonical basis of the subgroup of Z^2 generated by the vectors."""
    if isinstance(vectors, DiffSet):
        vecs = vectors.sorted_vectors()
    else:
        vecs = sorted(set(vectors))
    # Row-reduce into at most two echelon rows: (a, b) with a > 0, then (0, c).
    row1: Optional[Vec] = None  # pivot in x
    row2: Optional[Vec] = None  # pivot in y only
    for v in vecs:
        x, y = v
        if x != 0:
            if row1 is None:
                row1 = v
                continue
            # Unimodular merge: keep gcd of x-parts in row1, push the
            # x-free remainder down to row2.
            s, t, g = _xgcd(row1[0], x)
            merged = (g, s * row1[1] + t * y)
            leftover_y = (row1[0] // g) * y - (x // g) * row1[1]
            row1 = merged
            x, y = 0, leftover_y
        if y != 0:
            if row2 is None:
                row2 = (0, y)
            else:
                g = math.gcd(row2[1], y)
                row2 = (0, g)
    if row1 is None and row2 is None:
        return LatticeSpan(0, (), None)
    if row1 is None:
        c = abs(row2[1])
        return LatticeSpan(1, ((0, c),), None)
    if row2 is None:
        a, b = row1
        if a < 0:
            a, b = -a, -b
        return LatticeSpan(1, ((a, b),), None)
    a, b = row1
    if a < 0:
        a, b = -a, -b
    c = abs(row2[1])
    b %= c  # non-negative off-diagonal reduction
    return LatticeSpan(2, ((a, b), (0, c)), a * c)
