"""The n-torus square complex of a configuration: vertex labels, the edge
cocycle, and the red/blue/white edge coloring.

The unit square subdivided into n^2 squares, with opposite sides identified,
carries one integer-vector label per vertex (extended from the configuration's
translates) and one per directed edge (head label minus tail label). Edges are
directed rightward/upward; horizontal edge (i, j) leaves vertex (i, j)
rightward, vertical edge (i, j) leaves it upward, indices on the torus.

Colors: white for value zero, red for a nonzero value on the x-axis, blue for
a nonzero value on the y-axis. Synthetic colorings (not derived from any
configuration) are first-class and file-loadable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .model import FileFormatError, TileConfig, Vec, validate, vsub, _content_lines
from .diffset import DiffSet

WHITE = "white"
RED = "red"
BLUE = "blue"
COLORS = (WHITE, RED, BLUE)

Grid = tuple[tuple[Vec, ...], ...]


@dataclass(frozen=True)
class VertexLabeling:
    """(n+1) x (n+1) vertex labels; labels[i][j] is the label of vertex (i, j)."""

    n: int
    labels: Grid

    def at(self, i: int, j: int) -> Vec:
        return self.labels[i][j]


@dataclass(frozen=True)
class EdgeLabeling:
    """Cocycle values on the 2n^2 torus edges, n x n arrays per direction."""

    n: int
    h: Grid
    v: Grid

    def h_at(self, i: int, j: int) -> Vec:
        return self.h[i % self.n][j % self.n]

    def v_at(self, i: int, j: int) -> Vec:
        return self.v[i % self.n][j % self.n]


@dataclass(frozen=True)
class EdgeColoring:
    """Per-edge color in {white, red, blue}, same indexing as EdgeLabeling."""

    n: int
    h: tuple[tuple[str, ...], ...]
    v: tuple[tuple[str, ...], ...]

    def h_at(self, i: int, j: int) -> str:
        return self.h[i % self.n][j % self.n]

    def v_at(self, i: int, j: int) -> str:
        return self.v[i % self.n][j % self.n]


def vertex_labels(config: TileConfig) -> VertexLabeling:
    """Extended vertex labels of a normalized configuration.

    Interior vertices carry their cell's translate; the right seam column
    carries column 0's translates shifted by (-1, 0), the top seam row
    carries row 0's shifted by (0, -1), and the far corner is (-1, -1).
    """
    problems = validate(config)
    if problems:
        raise ValueError("invalid config: " + "; ".join(problems))
    if not config.is_normalized:
        raise ValueError("config not normalized")
    n = config.n
    cols = []
    for i in range(n + 1):
        col = []
        for j in range(n + 1):
            if i < n and j < n:
                col.append(config.u(i, j))
            elif i == n and j < n:
                col.append(vsub(config.u(0, j), (1, 0)))
            elif i < n and j == n:
                col.append(vsub(config.u(i, 0), (0, 1)))
            else:
                col.append((-1, -1))
        cols.append(tuple(col))
    return VertexLabeling(n, tuple(cols))


def edge_labels(vl: VertexLabeling) -> EdgeLabeling:
    """Fold the vertex-difference labeling onto the torus.

    Verifies the seam identities first (edge values along the top row and
    right column duplicate row 0 / column 0); they hold automatically for
    labelings built by `vertex_labels` and guard hand-made inputs.
    """
    n = vl.n
    for i in range(n):
        bottom = vsub(vl.at(i + 1, 0), vl.at(i, 0))
        top = vsub(vl.at(i + 1, n), vl.at(i, n))
        if bottom != top:
            raise ValueError(f"seam mismatch: horizontal edge {i}")
    for j in range(n):
        left = vsub(vl.at(0, j + 1), vl.at(0, j))
        right = vsub(vl.at(n, j + 1), vl.at(n, j))
        if left != right:
            raise ValueError(f"seam mismatch: vertical edge {j}")
    h = tuple(
        tuple(vsub(vl.at(i + 1, j), vl.at(i, j)) for j in range(n)) for i in range(n)
    )
    v = tuple(
        tuple(vsub(vl.at(i, j + 1), vl.at(i, j)) for j in range(n)) for i in range(n)
    )
    return EdgeLabeling(n, h, v)


def cocycle_defects(el: EdgeLabeling) -> list[tuple[int, int, Vec]]:
    """Squares whose signed edge sum is nonzero (always empty for labelings
    derived from a configuration)."""
    n = el.n
    bad = []
    for i in range(n):
        for j in range(n):
            s = (
                el.h_at(i, j)[0] + el.v_at(i + 1, j)[0] - el.h_at(i, j + 1)[0] - el.v_at(i, j)[0],
                el.h_at(i, j)[1] + el.v_at(i + 1, j)[1] - el.h_at(i, j + 1)[1] - el.v_at(i, j)[1],
            )
            if s != (0, 0):
                bad.append((i, j, s))
    return bad


def row_gain(el: EdgeLabeling, j: int = 0) -> Vec:
    gx = sum(el.h[i][j][0] for i in range(el.n))
    gy = sum(el.h[i][j][1] for i in range(el.n))
    return (gx, gy)


def column_gain(el: EdgeLabeling, i: int = 0) -> Vec:
    gx = sum(el.v[i][j][0] for j in range(el.n))
    gy = sum(el.v[i][j][1] for j in range(el.n))
    return (gx, gy)


@dataclass(frozen=True)
class OffAxesEdges:
    """Returned by `color_edges` when some edge value is off both axes; the
    three-way coloring is undefined there and the axes condition is already
    violated. Edges are (kind, i, j, value)."""

    n: int
    edges: tuple[tuple[str, int, int, Vec], ...]


def classify_value(value: Vec) -> Optional[str]:
    """Color of an edge value, or None when off both axes."""
    if value == (0, 0):
        return WHITE
    if value[1] == 0:
        return RED
    if value[0] == 0:
        return BLUE
    return None


def color_edges(el: EdgeLabeling) -> Union[EdgeColoring, OffAxesEdges]:
    n = el.n
    off: list[tuple[str, int, int, Vec]] = []
    h_colors = []
    v_colors = []
    for i in range(n):
        h_row = []
        v_row = []
        for j in range(n):
            ch = classify_value(el.h[i][j])
            if ch is None:
                off.append(("h", i, j, el.h[i][j]))
                ch = WHITE
            cv = classify_value(el.v[i][j])
            if cv is None:
                off.append(("v", i, j, el.v[i][j]))
                cv = WHITE
            h_row.append(ch)
            v_row.append(cv)
        h_colors.append(tuple(h_row))
        v_colors.append(tuple(v_row))
    if off:
        return OffAxesEdges(n, tuple(off))
    return EdgeColoring(n, tuple(h_colors), tuple(v_colors))


def square_edge_colors(ec: EdgeColoring, i: int, j: int) -> tuple[str, str, str, str]:
    """Colors of the four edges of torus square (i, j): bottom, top, left,
    right. For n=1 the two slots of each direction name the same edge."""
    return (
        ec.h_at(i, j),
        ec.h_at(i, j + 1),
        ec.v_at(i, j),
        ec.v_at(i + 1, j),
    )


@dataclass(frozen=True)
class SquareViolation:
    square: tuple[int, int]
    reason: str


@dataclass(frozen=True)
class SquareClasses:
    """Per-square class in {red, blue, white}; classes[i][j] for square (i, j).

    A square is white only when all four of its edge slots are white, red when
    it mixes red and white edges, blue when blue and white.
    """

    n: int
    classes: tuple[tuple[str, ...], ...]

    def at(self, i: int, j: int) -> str:
        return self.classes[i % self.n][j % self.n]

    @staticmethod
    def from_map(n: int, mapping: dict[tuple[int, int], str]) -> "SquareClasses":
        return SquareClasses(
            n, tuple(tuple(mapping[(i, j)] for j in range(n)) for i in range(n))
        )

    @staticmethod
    def uniform(n: int, color: str = WHITE) -> "SquareClasses":
        return SquareClasses(n, tuple((color,) * n for _ in range(n)))


def square_colors(ec: EdgeColoring) -> Union[SquareClasses, list[SquareViolation]]:
    """Classify every square, or report the squares breaking the local rules.

    Violations: a square with both red and blue edges, or with exactly one
    red edge, or exactly one blue edge (impossible for colorings derived
    from a cocycle, whose signed sums vanish on every square).
    """
    n = ec.n
    violations: list[SquareViolation] = []
    classes: list[list[str]] = []
    for i in range(n):
        row = []
        for j in range(n):
            edges = square_edge_colors(ec, i, j)
            reds = edges.count(RED)
            blues = edges.count(BLUE)
            if reds and blues:
                violations.append(SquareViolation((i, j), "red and blue edges"))
            if reds == 1:
                violations.append(SquareViolation((i, j), "exactly one red edge"))
            if blues == 1:
                violations.append(SquareViolation((i, j), "exactly one blue edge"))
            row.append(RED if reds else (BLUE if blues else WHITE))
        classes.append(tuple(row))
    if violations:
        return violations
    return SquareClasses(n, tuple(classes))


def edge_values_subset(el: EdgeLabeling, d: DiffSet) -> bool:
    """Every cocycle value belongs to the difference set (membership claim
    for labelings built from a configuration)."""
    n = el.n
    return all(
        el.h[i][j] in d and el.v[i][j] in d for i in range(n) for j in range(n)
    )


def parse_coloring(text: str) -> EdgeColoring:
    """Parse the coloring format: ``n <N>`` then one line per torus edge,
    ``h <i> <j> <color>`` or ``v <i> <j> <color>``, all 2n^2 present."""
    lines = list(_content_lines(text))
    if not lines:
        raise FileFormatError(1, "empty coloring file")
    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FileFormatError(line_no, f"expected 'n <N>', got {header!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise FileFormatError(line_no, f"expected integer, got {parts[1]!r}") from None
    if n < 1:
        raise FileFormatError(line_no, "non-positive n")
    seen: dict[tuple[str, int, int], str] = {}
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] not in ("h", "v"):
            raise FileFormatError(line_no, f"expected 'h|v <i> <j> <color>', got {line!r}")
        kind = parts[0]
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise FileFormatError(line_no, "expected integer indices") from None
        if not (0 <= i < n and 0 <= j < n):
            raise FileFormatError(line_no, f"edge ({i},{j}) out of range for n={n}")
        color = parts[3]
        if color not in COLORS:
            raise FileFormatError(line_no, f"unknown color {color!r}")
        if (kind, i, j) in seen:
            raise FileFormatError(line_no, f"duplicate edge {kind} ({i},{j})")
        seen[(kind, i, j)] = color
    if len(seen) != 2 * n * n:
        raise FileFormatError(lines[-1][0], f"expected {2 * n * n} edges, got {len(seen)}")
    h = tuple(tuple(seen[("h", i, j)] for j in range(n)) for i in range(n))
    v = tuple(tuple(seen[("v", i, j)] for j in range(n)) for i in range(n))
    return EdgeColoring(n, h, v)


def format_coloring(ec: EdgeColoring) -> str:
    out = [f"n {ec.n}"]
    for kind in ("h", "v"):
        grid = ec.h if kind == "h" else ec.v
        for i in range(ec.n):
            for j in range(ec.n):
                out.append(f"{kind} {i} {j} {grid[i][j]}")
    return "\n".join(out) + "\n"
