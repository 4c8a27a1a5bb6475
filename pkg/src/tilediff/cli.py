"""Command-line front end: check, discretize, search, analyze, render.

Human-readable text by default; ``--json`` switches every subcommand to a
structured document with stable field names (sorted keys, no timing fields),
which repeated runs reproduce byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .model import (
    FileFormatError,
    TileConfig,
    format_config,
    normalize,
    parse_boxes,
    parse_config,
    validate,
)
from .diffset import axes_subset, difference_set, lattice_span
from .discretize import cover_cells, epsilon_gap, reduce_to_transversal, discretization_exact
from .torus import parse_coloring
from .topology import (
    AuditReport,
    boundary_curves,
    components,
    homotopy_class,
    interiors_decomposition,
    pi1_image,
    impossibility_audit,
)
from .search import PLAIN, PRUNED, SearchSpec, run_search
from .render import ALL_LAYERS, RenderSpec, render_svg


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def _vec(v):
    return None if v is None else [v[0], v[1]]


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _audit_doc(report: AuditReport) -> dict:
    return {
        "stage": report.stage,
        "witness": _vec(report.witness),
        "witness_pairs": [
            [list(p), list(q), list(m)] for (p, q, m) in report.witness_pairs
        ],
        "component_id": report.component_id,
        "curve": None
        if report.curve is None
        else [[s.kind, s.i, s.j, s.forward] for s in report.curve],
        "gain": _vec(report.gain),
        "class": _vec(report.winding),
        "detail": report.detail,
    }


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc.strerror}")


def _parse_config_file(path: str) -> TileConfig:
    try:
        return parse_config(_read_text(path))
    except FileFormatError as exc:
        raise SystemExit(f"error: {path}: {exc}")


def cmd_check(args) -> int:
    config = _parse_config_file(args.config)
    problems = validate(config)
    ds = difference_set(config, with_provenance=True)
    check = axes_subset(ds)
    span = lattice_span(ds)
    audit = impossibility_audit(normalize(config))
    if args.json:
        _emit_json(
            {
                "command": "check",
                "n": config.n,
                "violations": problems,
                "difference_set_size": len(ds),
                "difference_set": [_vec(v) for v in ds.sorted_vectors()],
                "axes_subset": check.on_axes,
                "axes_witness": _vec(check.witness),
                "span_rank": span.rank,
                "span_index": span.index,
                "span_basis": [_vec(b) for b in span.basis],
                "generates_lattice": span.generates_full_lattice,
                "audit": _audit_doc(audit),
            }
        )
        return 0
    print(f"n: {config.n}")
    print(f"difference set: {len(ds)} vectors")
    if args.vectors:
        for (x, y) in ds.sorted_vectors():
            print(f"({x},{y})")
    if check.on_axes:
        print("axes subset: true")
    else:
        print(f"axes subset: false (witness {check.witness})")
    gen = "true" if span.generates_full_lattice else "false"
    index = "inf" if span.index is None else span.index
    print(f"generates Z^2: {gen} (rank {span.rank}, index {index})")
    print(f"audit stage: {audit.stage}")
    return 0


def cmd_discretize(args) -> int:
    try:
        boxes = parse_boxes(_read_text(args.boxes))
    except FileFormatError as exc:
        raise SystemExit(f"error: {args.boxes}: {exc}")
    gap = epsilon_gap(boxes)
    n = args.n if args.n is not None else gap.n0
    cover = cover_cells(boxes, n)
    equal = discretization_exact(boxes, n)
    transversal = None
    if args.reduce:
        try:
            transversal = reduce_to_transversal(cover)
        except ValueError as exc:
            raise SystemExit(f"error: {exc}")
    if args.json:
        _emit_json(
            {
                "command": "discretize",
                "gap_squared": _frac(gap.gap_squared),
                "n0": gap.n0,
                "n": n,
                "cell_count": len(cover.cells),
                "diff_sets_equal": equal,
                "transversal": None if transversal is None else format_config(transversal),
            }
        )
        return 0
    print(f"gap_squared: {_frac(gap.gap_squared)}")
    print(f"n0: {gap.n0}")
    print(f"n: {n}")
    print(f"cells: {len(cover.cells)}")
    print(f"difference sets equal: {'true' if equal else 'false'}")
    if transversal is not None:
        sys.stdout.write(format_config(transversal))
    return 0


def cmd_search(args) -> int:
    spec = SearchSpec(
        n=args.n,
        bound=args.bound,
        engine=args.engine,
        symmetry=args.symmetry,
        budget=args.budget,
        jobs=args.jobs,
        witnesses=args.witnesses,
    )
    try:
        report = run_search(spec)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    dumped = []
    for k, config in enumerate(report.valid_configs):
        path = Path(f"valid-config-{k:03d}.txt")
        path.write_text(format_config(config), encoding="utf-8")
        dumped.append(str(path))
    if args.json:
        _emit_json(
            {
                "command": "search",
                "n": spec.n,
                "bound": spec.bound,
                "engine": spec.engine,
                "symmetry": spec.symmetry,
                "configs_enumerated": report.configs_enumerated,
                "nodes_visited": report.nodes_visited,
                "valid_found": report.valid_found,
                "witness_counts": [
                    [_vec(v), c] for v, c in report.witness_counts
                ],
                "valid_config_files": dumped,
            }
        )
    else:
        print(f"search n={spec.n} bound={spec.bound} engine={spec.engine}")
        if report.valid_found == 0:
            print(f"guarantee: no valid configuration with max-norm <= {spec.bound}")
        else:
            print("VALID CONFIGURATION FOUND")
        print(f"configs enumerated: {report.configs_enumerated}")
        print(f"nodes visited: {report.nodes_visited}")
        print(f"valid found: {report.valid_found}")
        top = sorted(report.witness_counts, key=lambda vc: (-vc[1], vc[0]))[:5]
        for vec, count in top:
            print(f"witness {vec}: {count}")
        for path in dumped:
            print(f"dumped {path}")
        print(f"wall time: {report.wall_time:.3f}s")
    return 0 if report.valid_found == 0 else 2


def cmd_analyze(args) -> int:
    text = _read_text(args.file)
    tags = set()
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            tags.add(stripped.split()[0])
    try:
        if "u" in tags:
            source = parse_config(text)
        else:
            source = parse_coloring(text)
    except FileFormatError as exc:
        raise SystemExit(f"error: {args.file}: {exc}")
    if isinstance(source, TileConfig):
        report = impossibility_audit(normalize(source))
        if args.json:
            _emit_json({"command": "analyze", "kind": "config", "audit": _audit_doc(report)})
        else:
            print(f"audit stage: {report.stage}")
            print(f"passed: {', '.join(report.passed) if report.passed else '(none)'}")
            if report.witness is not None:
                print(f"witness: {report.witness}")
            if report.detail:
                print(f"detail: {report.detail}")
        return 0
    try:
        comps = components(source, args.mode)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    rows = []
    for idx, comp in enumerate(comps):
        curves = boundary_curves(comp)
        image = pi1_image(comp)
        rows.append(
            {
                "id": idx,
                "color": comp.color,
                "size": len(comp.squares),
                "squares": [list(s) for s in sorted(comp.squares)],
                "boundary_curves": len(curves),
                "boundary_classes": [_vec(homotopy_class(c)) for c in curves],
                "pi1_rank": image.rank,
                "pi1_basis": [_vec(b) for b in image.basis],
                "pi1_index": image.index,
                "pieces": len(interiors_decomposition(comp)),
            }
        )
    if args.json:
        _emit_json(
            {
                "command": "analyze",
                "kind": "coloring",
                "n": source.n,
                "mode": args.mode,
                "components": rows,
            }
        )
    else:
        print(f"n={source.n} mode={args.mode} components={len(rows)}")
        for row in rows:
            classes = " ".join(str(tuple(c)) for c in row["boundary_classes"]) or "-"
            print(
                f"  [{row['id']}] {row['color']:5s} size={row['size']:3d} "
                f"pieces={row['pieces']} pi1_rank={row['pi1_rank']} "
                f"boundary_classes={classes}"
            )
    return 0


def cmd_render(args) -> int:
    text = _read_text(args.file)
    tags = set()
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            tags.add(stripped.split()[0])
    try:
        source = parse_config(text) if "u" in tags else parse_coloring(text)
    except FileFormatError as exc:
        raise SystemExit(f"error: {args.file}: {exc}")
    try:
        spec = RenderSpec(cell_px=args.cell_px, show=frozenset(args.show.split(",")))
        svg = render_svg(source, spec)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilediff",
        description="Difference sets of grid-square tilings: exact checks, "
        "discretization, torus analysis, and bounded exhaustive search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="difference set, axes and generation verdicts")
    p.add_argument("config", help="config file")
    p.add_argument("--vectors", action="store_true", help="list the difference set, one pair per line")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("discretize", help="gap, threshold resolution and covering")
    p.add_argument("boxes", help="box-union file")
    p.add_argument("--n", type=int, default=None, help="resolution (default: n0)")
    p.add_argument("--reduce", action="store_true", help="emit the transversal config")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discretize)

    p = sub.add_parser("search", help="bounded exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--engine", choices=[PLAIN, PRUNED], default=PRUNED)
    p.add_argument("--budget", type=int, default=2_000_000, help="node budget")
    p.add_argument("--witnesses", action="store_true", help="retain witness records")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--symmetry", action="store_true", help="quotient by the x<->y swap")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("analyze", help="component table or config audit")
    p.add_argument("file", help="coloring or config file")
    p.add_argument("--mode", choices=["corner", "edge"], default="corner")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("render", help="render an SVG diagram")
    p.add_argument("file", help="coloring or config file")
    p.add_argument("-o", "--out", required=True, help="output SVG path")
    p.add_argument("--cell-px", type=int, default=24, dest="cell_px")
    p.add_argument(
        "--show",
        default="edges,colors",
        help=f"comma-separated layers from: {','.join(ALL_LAYERS)}",
    )
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
