"""Bounded exhaustive search over tiling configurations.

Enumerates every assignment of translates in [-bound, bound]^2 to the free
cells (the base cell is pinned to (0, 0)) and confirms that no configuration
has its integer difference set confined to the coordinate axes.

Two engines: `plain` enumerates full assignments and evaluates each difference
set from scratch; `pruned` walks the cells in row-major order and cuts a
subtree as soon as a placed pair of torus-adjacent cells forces an off-axes
difference vector. Difference vectors only arise from torus-adjacent cell
pairs, so a leaf the pruned engine reaches is a valid configuration and the
engines agree exactly.

The search tree splits on the first free cell's value range for parallel
runs; partial reports merge in value order, so the final report is
independent of worker count and scheduling.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .model import TileConfig, Vec, normalize, on_axes
from .diffset import admissible_offsets, axes_subset, difference_set, geometric_oracle

PLAIN = "plain"
PRUNED = "pruned"


@dataclass(frozen=True)
class SearchSpec:
    n: int
    bound: int
    engine: str = PRUNED
    symmetry: bool = False
    budget: int = 2_000_000
    jobs: int = 1
    witnesses: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("non-positive n")
        if self.bound < 0:
            raise ValueError("negative bound")
        if self.engine not in (PLAIN, PRUNED):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.budget < 1 or self.jobs < 1:
            raise ValueError("budget and jobs must be positive")


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one bounded search.

    The guarantee stated by a clean report is bounded: no valid configuration
    with translate max-norm <= bound exists at this n. configs_enumerated
    counts full leaves visited; nodes_visited counts all partial placements
    tried (pruned engine). witness_counts aggregates off-axes witness vectors
    (per enumerated config for plain, per cut subtree for pruned);
    witness_records, retained on request, carry replayable (config, vector)
    pairs. wall_time is informational and excluded from structured output.
    """

    spec: SearchSpec
    configs_enumerated: int
    nodes_visited: int
    valid_found: int
    witness_counts: tuple[tuple[Vec, int], ...]
    witness_records: tuple[tuple[TileConfig, Vec], ...]
    valid_configs: tuple[TileConfig, ...]
    wall_time: float


@dataclass
class _Partial:
    configs_enumerated: int = 0
    nodes_visited: int = 0
    valid_found: int = 0
    witness_counts: dict = field(default_factory=dict)
    witness_records: list = field(default_factory=list)
    valid_configs: list = field(default_factory=list)

    def merge(self, other: "_Partial"):
        self.configs_enumerated += other.configs_enumerated
        self.nodes_visited += other.nodes_visited
        self.valid_found += other.valid_found
        for vec, count in other.witness_counts.items():
            self.witness_counts[vec] = self.witness_counts.get(vec, 0) + count
        self.witness_records.extend(other.witness_records)
        self.valid_configs.extend(other.valid_configs)


def _value_range(bound: int) -> list[Vec]:
    return [(ux, uy) for ux in range(-bound, bound + 1) for uy in range(-bound, bound + 1)]


def _swap_position(k: int, n: int) -> int:
    i, j = divmod(k, n)
    return j * n + i


# Lexicographic-leader scan outcomes for the x<->y swap quotient.
_PRUNE, _UNDECIDED, _CANONICAL, _FIXED = range(4)


def _lex_state(values: list, depth: int, n: int) -> int:
    """Compare the partial assignment against its x<->y swap image.

    values[0..depth] are assigned. Returns _PRUNE when every completion is
    lexicographically greater than its swap (subtree safe to drop),
    _CANONICAL when every completion is strictly smaller, _FIXED when the
    full assignment equals its swap, and _UNDECIDED otherwise.
    """
    total = n * n
    for k in range(total):
        sk = _swap_position(k, n)
        if k > depth or sk > depth:
            return _UNDECIDED
        mine = values[k]
        theirs = (values[sk][1], values[sk][0])
        if mine < theirs:
            return _CANONICAL
        if mine > theirs:
            return _PRUNE
    return _FIXED


def _record_witness(part: _Partial, spec: SearchSpec, config: TileConfig, vec: Vec):
    part.witness_counts[vec] = part.witness_counts.get(vec, 0) + 1
    if spec.witnesses:
        part.witness_records.append((config, vec))


def _complete_with_zeros(n: int, values: list, depth: int) -> TileConfig:
    translates = tuple(values[: depth + 1]) + ((0, 0),) * (n * n - depth - 1)
    return TileConfig(n, translates)


def _plain_scan(spec: SearchSpec, first_values: list[Vec]) -> _Partial:
    n = spec.n
    total_cells = n * n
    free = total_cells - 1
    values = _value_range(spec.bound)
    part = _Partial()
    if free == 0:
        rest_iter = [()] if first_values else []
    else:
        rest_iter = (
            (first,) + rest
            for first in first_values
            for rest in itertools.product(values, repeat=free - 1)
        )
    for assignment in rest_iter:
        translates = ((0, 0),) + tuple(assignment)
        orbit = 1
        if spec.symmetry:
            swapped = tuple(
                (translates[_swap_position(k, n)][1], translates[_swap_position(k, n)][0])
                for k in range(total_cells)
            )
            if translates > swapped:
                continue
            orbit = 1 if translates == swapped else 2
        part.configs_enumerated += 1
        part.nodes_visited += 1
        config = TileConfig(n, translates)
        check = axes_subset(difference_set(config))
        if check.on_axes:
            part.valid_found += orbit
            part.valid_configs.append(config)
        else:
            _record_witness(part, spec, config, check.witness)
    return part


def _constraint_table(n: int):
    """For each row-major cell position, the earlier positions it touches on
    the torus and their admissible integer offsets."""
    cells = [(k // n, k % n) for k in range(n * n)]
    table = []
    for k, p in enumerate(cells):
        cons = []
        for k2 in range(k):
            q = cells[k2]
            ms = admissible_offsets((p[0] - q[0], p[1] - q[1]), n)
            if ms:
                cons.append((k2, tuple(ms)))
        table.append(tuple(cons))
    return table


def _pruned_scan(spec: SearchSpec, first_values: list[Vec]) -> _Partial:
    n = spec.n
    total_cells = n * n
    values = _value_range(spec.bound)
    table = _constraint_table(n)
    part = _Partial()
    assigned: list[Vec] = [(0, 0)] * total_cells

    def place(depth: int, candidates: list[Vec], settled: bool):
        is_leaf = depth == total_cells - 1
        for value in candidates:
            part.nodes_visited += 1
            if part.nodes_visited > spec.budget:
                raise ValueError("budget exceeded")
            assigned[depth] = value
            vx, vy = value
            conflict = None
            for q_pos, ms in table[depth]:
                qx, qy = assigned[q_pos]
                bx, by = vx - qx, vy - qy
                for mx, my in ms:
                    wx, wy = bx + mx, by + my
                    if wx != 0 and wy != 0:
                        conflict = (wx, wy)
                        break
                if conflict:
                    break
            if conflict:
                _record_witness(
                    part, spec, _complete_with_zeros(n, assigned, depth), conflict
                )
                continue
            orbit = 2 if spec.symmetry else 1
            sub_settled = settled
            if spec.symmetry and not settled:
                state = _lex_state(assigned, depth, n)
                if state == _PRUNE:
                    continue
                if state == _CANONICAL:
                    sub_settled = True
                elif state == _FIXED:
                    orbit = 1  # self-symmetric leaf; scans always settle at leaves
            if is_leaf:
                config = TileConfig(n, tuple(assigned))
                # Adjacent pairs carry every difference vector, so a reached
                # leaf must be valid; cross-check against the full set.
                if not axes_subset(difference_set(config)).on_axes:
                    raise AssertionError("pruned engine reached an invalid leaf")
                part.configs_enumerated += 1
                part.valid_found += orbit
                part.valid_configs.append(config)
            else:
                place(depth + 1, values, sub_settled)

    if total_cells == 1:
        # No free cells: evaluate the single configuration directly.
        part.nodes_visited += 1
        config = TileConfig(n, ((0, 0),))
        check = axes_subset(difference_set(config))
        part.configs_enumerated += 1
        if check.on_axes:
            part.valid_found += 1
            part.valid_configs.append(config)
        else:
            _record_witness(part, spec, config, check.witness)
        return part
    place(1, first_values, False)
    return part


def _scan_chunk(args) -> _Partial:
    spec, first_values = args
    if spec.engine == PLAIN:
        return _plain_scan(spec, first_values)
    return _pruned_scan(spec, first_values)


def _chunks(values: list[Vec], parts: int) -> list[list[Vec]]:
    size = (len(values) + parts - 1) // parts
    return [values[k : k + size] for k in range(0, len(values), size)]


def run_search(spec: SearchSpec) -> SearchReport:
    """Run the configured engine and assemble the final report."""
    start = time.perf_counter()
    n = spec.n
    free = n * n - 1
    if spec.engine == PLAIN:
        leaves = (2 * spec.bound + 1) ** (2 * free)
        if leaves > spec.budget:
            raise ValueError("budget exceeded")
    values = _value_range(spec.bound)
    if free == 0 or spec.jobs == 1:
        part = _scan_chunk((spec, values))
    else:
        merged = _Partial()
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            chunked = _chunks(values, spec.jobs)
            for result in pool.map(_scan_chunk, [(spec, c) for c in chunked]):
                merged.merge(result)
        part = merged
        if spec.engine == PRUNED and part.nodes_visited > spec.budget:
            raise ValueError("budget exceeded")
    elapsed = time.perf_counter() - start
    return SearchReport(
        spec=spec,
        configs_enumerated=part.configs_enumerated,
        nodes_visited=part.nodes_visited,
        valid_found=part.valid_found,
        witness_counts=tuple(sorted(part.witness_counts.items())),
        witness_records=tuple(part.witness_records),
        valid_configs=tuple(part.valid_configs),
        wall_time=elapsed,
    )


def search_plain(spec: SearchSpec) -> SearchReport:
    if spec.engine != PLAIN:
        spec = replace(spec, engine=PLAIN)
    return run_search(spec)


def search_pruned(spec: SearchSpec) -> SearchReport:
    if spec.engine != PRUNED:
        spec = replace(spec, engine=PRUNED)
    return run_search(spec)


def verify_witnesses(report: SearchReport, records=None) -> bool:
    """Replay recorded witnesses against the geometric oracle.

    Each witness vector must be off-axes and a member of its configuration's
    oracle difference set; anything else is a stale witness.
    """
    if records is None:
        records = report.witness_records
    if not records:
        raise ValueError("stale witness: report retained no witness records")
    for config, vec in records:
        if on_axes(vec):
            raise ValueError(f"stale witness: {vec} lies on the axes")
        if vec not in geometric_oracle(config).vectors:
            raise ValueError(f"stale witness: {vec} not in difference set")
    return True


def swap_xy(config: TileConfig) -> TileConfig:
    """Mirror across the main diagonal: cell (i, j) -> (j, i), translate
    components swapped."""
    n = config.n
    return TileConfig.from_map(
        n,
        {
            (j, i): (config.u(i, j)[1], config.u(i, j)[0])
            for i in range(n)
            for j in range(n)
        },
    )


def reflect_x(config: TileConfig) -> TileConfig:
    """Mirror x -> -x, renormalized. The mirrored box of cell (i, j) is the
    box of cell (n-1-i, j) translated by (-1 - ux, uy)."""
    n = config.n
    return normalize(
        TileConfig.from_map(
            n,
            {
                (n - 1 - i, j): (-1 - config.u(i, j)[0], config.u(i, j)[1])
                for i in range(n)
                for j in range(n)
            },
        )
    )


def reflect_y(config: TileConfig) -> TileConfig:
    n = config.n
    return normalize(
        TileConfig.from_map(
            n,
            {
                (i, n - 1 - j): (config.u(i, j)[0], -1 - config.u(i, j)[1])
                for i in range(n)
                for j in range(n)
            },
        )
    )


def swap_antidiagonal(config: TileConfig) -> TileConfig:
    n = config.n
    return normalize(
        TileConfig.from_map(
            n,
            {
                (n - 1 - j, n - 1 - i): (-1 - config.u(i, j)[1], -1 - config.u(i, j)[0])
                for i in range(n)
                for j in range(n)
            },
        )
    )


# The reflection family of the axes condition: the x<->y swap (used for the
# symmetry quotient; it preserves the bounded search space exactly) and the
# remaining axis reflections (which renormalize and may grow the bound,
# so they are soundness checks rather than quotient maps).
CONFIG_SYMMETRIES = {
    "swap_xy": swap_xy,
    "reflect_x": reflect_x,
    "reflect_y": reflect_y,
    "swap_antidiagonal": swap_antidiagonal,
}
