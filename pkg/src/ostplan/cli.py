"""Command line interface.

    ostplan gen --kind nested --n 30 --out g.tri
    ostplan plan g.tri --out g.plan --validate --render g.svg
    ostplan validate g.plan --graph g.tri
    ostplan render g.plan --out g.svg --grid --scale 32
    ostplan stats --kinds stacked,flipped --n-range 10:100:10 --seeds 3

plan and gen accept '-' for stdin and stdout.  Exit status is 0 on success,
1 when validation finds problems or an input is bad, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import colorsys
import csv
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import engine, formats
from .errors import OstplanError
from .instances import nested_triangle_family, random_triangulation
from .layout import floorplan
from .validator import (
    ValidationReport,
    check_bounds,
    check_partition,
    check_shapes,
    validate_floorplan,
)


def _node_count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 3:
        raise argparse.ArgumentTypeError("node count must be at least 3")
    return value


def _kind_list(text):
    kinds = [k.strip() for k in text.split(",") if k.strip()]
    for k in kinds:
        if k not in ("stacked", "flipped", "nested"):
            raise argparse.ArgumentTypeError(
                f"unknown kind {k!r}, pick from stacked, flipped, nested"
            )
    if not kinds:
        raise argparse.ArgumentTypeError("at least one kind is required")
    return kinds


def _n_range(text):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected start:stop or start:stop:step")
    try:
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if start < 3 or stop < start or step < 1:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return list(range(start, stop + 1, step))


def _n_list(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    if not values or min(values) < 3:
        raise argparse.ArgumentTypeError("node counts must be at least 3")
    return values


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ostplan",
        description="Floor plans for plane triangulations via orderly spanning trees.",
    )
    parser.add_argument(
        "--engine",
        choices=("auto", "py", "c"),
        default=None,
        help="kernel engine: compiled when available (auto), pure Python (py), "
        "or compiled only (c)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a triangulation file")
    p.add_argument("--kind", choices=("random", "nested"), default="random")
    p.add_argument("--n", type=_node_count, required=True, help="number of nodes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flips", type=int, default=0, help="random diagonal flips")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("plan", help="compute a floor plan for a triangulation")
    p.add_argument("graph", help="triangulation file, '-' for stdin")
    p.add_argument("--out", default="-", help="plan output path, '-' for stdout")
    p.add_argument(
        "--validate",
        action="store_true",
        help="rasterize and check the result (slow on very large plans)",
    )
    p.add_argument("--render", metavar="PATH", help="also write an SVG rendering")
    p.add_argument("--grid", action="store_true", help="draw cell grid lines in the SVG")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("validate", help="check a plan file")
    p.add_argument("plan", help="plan file")
    p.add_argument(
        "--graph",
        help="triangulation file; without it adjacency is not checked",
    )
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("render", help="render a plan file to SVG")
    p.add_argument("plan", help="plan file")
    p.add_argument("--out", default="-", help="SVG output path, '-' for stdout")
    p.add_argument("--grid", action="store_true", help="draw cell grid lines")
    p.add_argument("--scale", type=int, default=24, help="pixels per cell")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("stats", help="tabulate plan dimensions over generated instances")
    p.add_argument(
        "--kinds",
        type=_kind_list,
        default=["stacked", "flipped", "nested"],
        help="comma separated subset of stacked, flipped, nested",
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--n-range", type=_n_range, metavar="A:B[:S]", help="node counts A..B step S"
    )
    group.add_argument(
        "--n-list", type=_n_list, metavar="N,N,...", help="explicit node counts"
    )
    p.add_argument(
        "--seeds", type=int, default=3, help="seeds 0..K-1 per size (nested runs once)"
    )
    p.add_argument(
        "--flips",
        type=int,
        default=-1,
        help="flip count for the flipped kind, default n // 2",
    )
    p.add_argument(
        "--workers",
        type=int,
        default=1,
        help="worker threads; pure-Python kernels hold the interpreter lock, "
        "so speedups are modest unless the compiled engine is active",
    )
    p.add_argument("--out", default="-", help="CSV output path, '-' for stdout")
    p.set_defaults(func=_cmd_stats)
    return parser


def _write_out(path, write):
    if path == "-":
        write(sys.stdout)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            write(fh)


def _cmd_gen(args):
    if args.kind == "nested":
        graph = nested_triangle_family(args.n)
    else:
        graph = random_triangulation(args.n, args.seed, args.flips)
    _write_out(args.out, lambda fh: formats.write_graph(graph, fh))
    return 0


def _print_report(report, stream):
    if report.shape_histogram:
        counts = " ".join(
            f"{k}={v}" for k, v in sorted(report.shape_histogram.items())
        )
        print(f"shapes: {counts}", file=stream)
    for f in report.findings:
        where = f" at {f.subject}" if f.subject else ""
        print(f"finding {f.kind}{where}: {f.message}", file=stream)
    for w in report.warnings:
        where = f" at {w.subject}" if w.subject else ""
        print(f"warning {w.kind}{where}: {w.message}", file=stream)
    for note in report.notes:
        print(f"note: {note}", file=stream)


def _cmd_plan(args):
    if args.graph == "-":
        graph = formats.read_graph(sys.stdin)
        name = "stdin"
    else:
        graph = formats.read_graph(args.graph)
        name = os.path.basename(args.graph)
    plan = floorplan(graph)
    meta = {"instance": name}
    _write_out(args.out, lambda fh: formats.write_plan(plan, fh, meta=meta))
    if args.render:
        svg = _render_svg(plan, grid=args.grid)
        with open(args.render, "w", encoding="utf-8") as fh:
            fh.write(svg)
    print(
        f"plan {plan.height} by {plan.width}, {plan.leaf_count} leaves",
        file=sys.stderr,
    )
    if args.validate:
        report = validate_floorplan(graph, plan)
        _print_report(report, sys.stderr)
        if report.findings:
            return 1
    return 0


def _cmd_validate(args):
    plan = formats.read_plan(args.plan)
    if args.graph:
        graph = formats.read_graph(args.graph)
        report = validate_floorplan(graph, plan)
    else:
        parts = [
            check_partition(plan),
            check_shapes(plan),
            check_bounds(plan, node_count=plan.node_count),
        ]
        report = ValidationReport(
            findings=[f for r in parts for f in r.findings],
            warnings=[w for r in parts for w in r.warnings],
            notes=[x for r in parts for x in r.notes]
            + ["no graph given, adjacency not checked"],
            height=plan.height,
            width=plan.width,
            leaf_count=plan.leaf_count,
            shape_histogram=parts[1].shape_histogram,
        )
    _print_report(report, sys.stdout)
    if report.findings:
        return 1
    print(f"ok: {plan.height} by {plan.width}, {plan.node_count} modules")
    return 0


def _cmd_render(args):
    plan = formats.read_plan(args.plan)
    svg = _render_svg(plan, scale=args.scale, grid=args.grid)
    _write_out(args.out, lambda fh: fh.write(svg))
    return 0


def _stats_row(kind, n, seed, flips):
    if kind == "nested":
        graph = nested_triangle_family(n)
    else:
        graph = random_triangulation(n, seed, flips)
    start = time.perf_counter()
    plan = floorplan(graph)
    ms = (time.perf_counter() - start) * 1e3
    leaf_bound = (2 * n + 1) // 3
    return [
        kind,
        n,
        seed,
        flips,
        plan.height,
        plan.width,
        plan.leaf_count,
        leaf_bound,
        (n - 1) - plan.height,
        leaf_bound - plan.width,
        f"{ms:.3f}",
    ]


def _cmd_stats(args):
    ns = args.n_range if args.n_range is not None else args.n_list
    if args.seeds < 1:
        raise OstplanError(f"seeds must be at least 1, got {args.seeds}")
    jobs = []
    for kind in args.kinds:
        for n in ns:
            if kind == "nested":
                jobs.append(("nested", n, 0, 0))
                continue
            flips = 0 if kind == "stacked" else (
                args.flips if args.flips >= 0 else n // 2
            )
            for seed in range(args.seeds):
                jobs.append((kind, n, seed, flips))
    workers = max(1, args.workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_stats_row, *job) for job in jobs]
        rows = [f.result() for f in futures]

    def emit(fh):
        writer = csv.writer(fh)
        writer.writerow(
            [
                "kind",
                "n",
                "seed",
                "flips",
                "height",
                "width",
                "leaves",
                "leaf_bound",
                "height_margin",
                "width_margin",
                "ms",
            ]
        )
        writer.writerows(rows)

    _write_out(args.out, emit)
    return 0


def _module_color(i):
    hue = (i * 0.6180339887498949) % 1.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.72, 0.55)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _outline_points(slabs):
    """Corner walk around a top-to-bottom stack of overlapping slabs.

    Returns None when the slabs do not form one vertically contiguous stack,
    in which case the caller falls back to drawing plain rectangles.
    """
    for k in range(len(slabs) - 1):
        a, b = slabs[k], slabs[k + 1]
        if a[3] != b[1] or min(a[2], b[2]) <= max(a[0], b[0]):
            return None
    pts = [(slabs[0][0], slabs[0][1]), (slabs[0][2], slabs[0][1])]
    for k in range(len(slabs) - 1):
        a, b = slabs[k], slabs[k + 1]
        pts.append((a[2], a[3]))
        pts.append((b[2], a[3]))
    last = slabs[-1]
    pts.append((last[2], last[3]))
    pts.append((last[0], last[3]))
    for k in range(len(slabs) - 1, 0, -1):
        b, a = slabs[k], slabs[k - 1]
        pts.append((b[0], b[1]))
        pts.append((a[0], b[1]))
    cleaned = [pts[0]]
    for p in pts[1:]:
        if p != cleaned[-1]:
            cleaned.append(p)
    if cleaned[-1] == cleaned[0]:
        cleaned.pop()
    return cleaned


def _render_svg(plan, scale=24, grid=False):
    """Render a plan as a deterministic standalone SVG string."""
    if scale < 1:
        raise ValueError(f"scale must be at least 1, got {scale}")
    pad = 1
    total_w = plan.width * scale + 2 * pad
    total_h = plan.height * scale + 2 * pad
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" '
        f'height="{total_h}" viewBox="0 0 {total_w} {total_h}">',
        f'<rect x="0" y="0" width="{total_w}" height="{total_h}" fill="#ffffff"/>',
    ]
    labels = []
    for node, slabs in plan.modules():
        slabs = [s for s in slabs if s[2] > s[0] and s[3] > s[1]]
        if not slabs:
            continue
        fill = _module_color(node)
        pts = _outline_points(slabs)
        if pts is None:
            for x0, y0, x1, y1 in slabs:
                out.append(
                    f'<rect x="{pad + x0 * scale}" y="{pad + y0 * scale}" '
                    f'width="{(x1 - x0) * scale}" height="{(y1 - y0) * scale}" '
                    f'fill="{fill}" stroke="#333333" stroke-width="1"/>'
                )
        else:
            path = " L ".join(f"{pad + x * scale} {pad + y * scale}" for x, y in pts)
            out.append(
                f'<path d="M {path} Z" fill="{fill}" stroke="#333333" '
                'stroke-width="1"/>'
            )
        big = max(slabs, key=lambda s: (s[2] - s[0]) * (s[3] - s[1]))
        cx = pad + (big[0] + big[2]) * scale // 2
        cy = pad + (big[1] + big[3]) * scale // 2
        size = max(8, scale * 2 // 5)
        labels.append(
            f'<text x="{cx}" y="{cy}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="middle" '
            f'dominant-baseline="central" fill="#1a1a1a">{node}</text>'
        )
    if grid:
        for c in range(plan.width + 1):
            x = pad + c * scale
            out.append(
                f'<line x1="{x}" y1="{pad}" x2="{x}" y2="{total_h - pad}" '
                'stroke="#dddddd" stroke-width="1"/>'
            )
        for r in range(plan.height + 1):
            y = pad + r * scale
            out.append(
                f'<line x1="{pad}" y1="{y}" x2="{total_w - pad}" y2="{y}" '
                'stroke="#dddddd" stroke-width="1"/>'
            )
    out.extend(labels)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.engine:
            engine.use(args.engine)
        return args.func(args)
    except (OstplanError, RuntimeError, OSError) as exc:
        print(f"ostplan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
