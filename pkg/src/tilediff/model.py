"""Core data model: integer vectors, tiling configurations, rational box unions.

A tiling configuration is a grid resolution ``n`` plus one integer translate
per grid cell; it encodes the plane set built by translating each of the n^2
closed squares of side 1/n inside the unit square by its cell's translate.
Everything downstream (difference sets, discretization, the torus complex)
consumes these values.

All types are immutable after construction and safe to share between
concurrent workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Vec = tuple[int, int]


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def on_axes(v: Vec) -> bool:
    """True when the vector lies on a coordinate axis (origin included)."""
    return v[0] == 0 or v[1] == 0


@dataclass(frozen=True)
class TileConfig:
    """Grid resolution ``n`` plus one translate per cell.

    Translates are stored row-major by (i, j) with i the x-index:
    ``translates[i * n + j]`` is the translate of cell (i, j).
    """

    n: int
    translates: tuple[Vec, ...]

    def u(self, i: int, j: int) -> Vec:
        return self.translates[i * self.n + j]

    @property
    def is_normalized(self) -> bool:
        return self.n >= 1 and len(self.translates) > 0 and self.translates[0] == (0, 0)

    def cells(self):
        for i in range(self.n):
            for j in range(self.n):
                yield (i, j)

    @staticmethod
    def from_map(n: int, mapping: dict[tuple[int, int], Vec]) -> "TileConfig":
        return TileConfig(n, tuple(mapping[(i, j)] for i in range(n) for j in range(n)))

    @staticmethod
    def uniform(n: int, u: Vec = (0, 0)) -> "TileConfig":
        return TileConfig(n, (u,) * (n * n))


def validate(config: TileConfig) -> list[str]:
    """Check shape invariants; returns a list of violations, empty when ok."""
    violations = []
    if config.n < 1:
        violations.append("non-positive n")
    if len(config.translates) != config.n * config.n:
        violations.append("wrong cell count")
    return violations


def normalize(config: TileConfig) -> TileConfig:
    """Shift every translate by -u(0,0) so the base cell's translate is zero.

    Difference sets are invariant under this common shift.
    """
    problems = validate(config)
    if problems:
        raise ValueError("invalid config: " + "; ".join(problems))
    base = config.translates[0]
    if base == (0, 0):
        return config
    return TileConfig(config.n, tuple(vsub(u, base) for u in config.translates))


# A closed axis-aligned box with rational corners: (x0, y0, x1, y1), x0<=x1, y0<=y1.
Box = tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class BoxUnion:
    """A compact set given as a finite union of closed rational boxes.

    Degenerate boxes (points, segments) are allowed; the box list must be
    non-empty.
    """

    boxes: tuple[Box, ...]

    def __post_init__(self):
        if not self.boxes:
            raise ValueError("empty box union")
        for (x0, y0, x1, y1) in self.boxes:
            if x0 > x1 or y0 > y1:
                raise ValueError(f"inverted box ({x0},{y0},{x1},{y1})")

    @staticmethod
    def of(*boxes) -> "BoxUnion":
        return BoxUnion(tuple(tuple(Fraction(c) for c in b) for b in boxes))

    def bounding_box(self) -> Box:
        xs0, ys0, xs1, ys1 = zip(*self.boxes)
        return (min(xs0), min(ys0), max(xs1), max(ys1))

    def contains_point(self, x: Fraction, y: Fraction) -> bool:
        return any(x0 <= x <= x1 and y0 <= y <= y1 for (x0, y0, x1, y1) in self.boxes)


class FileFormatError(ValueError):
    """Parse failure in one of the text formats; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.reason = message


def _content_lines(text: str):
    """Yield (line_no, stripped_line) skipping blanks and '#' comments."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line


_INT = re.compile(r"^[+-]?\d+$")


def _parse_int(token: str, line_no: int) -> int:
    if not _INT.match(token):
        raise FileFormatError(line_no, f"expected integer, got {token!r}")
    return int(token)


def _parse_rational(token: str, line_no: int) -> Fraction:
    if "/" in token:
        num, _, den = token.partition("/")
        if not (_INT.match(num) and _INT.match(den)):
            raise FileFormatError(line_no, f"expected rational p/q, got {token!r}")
        if int(den) == 0:
            raise FileFormatError(line_no, "zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(_parse_int(token, line_no))


def parse_config(text: str) -> TileConfig:
    """Parse the config text format.

    Line 1 is ``n <N>``; then exactly N^2 lines ``u <i> <j> <ux> <uy>``,
    one per cell, any order, no duplicates. '#' comments are ignored.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise FileFormatError(1, "empty config file")
    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FileFormatError(line_no, f"expected 'n <N>', got {header!r}")
    n = _parse_int(parts[1], line_no)
    if n < 1:
        raise FileFormatError(line_no, "non-positive n")
    seen: dict[tuple[int, int], Vec] = {}
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 5 or parts[0] != "u":
            raise FileFormatError(line_no, f"expected 'u <i> <j> <ux> <uy>', got {line!r}")
        i, j, ux, uy = (_parse_int(p, line_no) for p in parts[1:])
        if not (0 <= i < n and 0 <= j < n):
            raise FileFormatError(line_no, f"cell ({i},{j}) out of range for n={n}")
        if (i, j) in seen:
            raise FileFormatError(line_no, f"duplicate cell ({i},{j})")
        seen[(i, j)] = (ux, uy)
    if len(seen) != n * n:
        raise FileFormatError(lines[-1][0], f"expected {n * n} cells, got {len(seen)}")
    return TileConfig.from_map(n, seen)


def format_config(config: TileConfig) -> str:
    """Canonical emission: header then cells row-major by (i, j)."""
    out = [f"n {config.n}"]
    for i in range(config.n):
        for j in range(config.n):
            ux, uy = config.u(i, j)
            out.append(f"u {i} {j} {ux} {uy}")
    return "\n".join(out) + "\n"


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_boxes(text: str) -> BoxUnion:
    """Parse the box-union format: lines ``box <x0> <y0> <x1> <y1>`` with rationals."""
    boxes = []
    for line_no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 5 or parts[0] != "box":
            raise FileFormatError(line_no, f"expected 'box <x0> <y0> <x1> <y1>', got {line!r}")
        x0, y0, x1, y1 = (_parse_rational(p, line_no) for p in parts[1:])
        if x0 > x1 or y0 > y1:
            raise FileFormatError(line_no, f"inverted box on line {line_no}")
        boxes.append((x0, y0, x1, y1))
    if not boxes:
        raise FileFormatError(1, "no boxes")
    return BoxUnion(tuple(boxes))


def format_boxes(k: BoxUnion) -> str:
    out = []
    for (x0, y0, x1, y1) in k.boxes:
        out.append("box " + " ".join(_format_rational(c) for c in (x0, y0, x1, y1)))
    return "\n".join(out) + "\n"
