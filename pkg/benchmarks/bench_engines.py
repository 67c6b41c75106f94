"""Time the pure and compiled kernel engines on the same instances.

Usage:
    python3 benchmarks/bench_engines.py
    python3 benchmarks/bench_engines.py --sizes 1000,10000,100000 --kind flipped
    python3 benchmarks/bench_engines.py --repeats 5 --csv

Each row times the full floorplan() pipeline (instance generation excluded)
under ostplan.engine.use("py") and use("c"), taking the best of --repeats
runs.  The compiled column is skipped when the extension is not built.
"""

from __future__ import annotations

import argparse
import sys
import time

from ostplan import engine, floorplan, nested_triangle_family, random_triangulation


def build_instance(kind, n, seed):
    if kind == "nested":
        return nested_triangle_family(n)
    flips = n // 2 if kind == "flipped" else 0
    return random_triangulation(n, seed, flips=flips)


def time_pipeline(graph, repeats):
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        plan = floorplan(graph)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best, plan


def parse_sizes(text):
    try:
        sizes = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if not sizes or any(n < 3 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be integers of at least 3")
    return sizes


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        type=parse_sizes,
        default=[1000, 10000, 100000],
        help="comma-separated node counts (default 1000,10000,100000)",
    )
    parser.add_argument(
        "--kind",
        choices=("nested", "stacked", "flipped"),
        default="nested",
        help="instance family to plan (default nested)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for the random kinds")
    parser.add_argument(
        "--repeats", type=int, default=3, help="runs per cell, best one is kept (default 3)"
    )
    parser.add_argument("--csv", action="store_true", help="emit csv instead of a table")
    args = parser.parse_args(argv)

    names = ["py"]
    if engine.compiled_available():
        names.append("c")
    else:
        print("compiled kernels not built; timing the pure engine only", file=sys.stderr)

    if args.csv:
        print("kind,n," + ",".join(f"{name}_seconds" for name in names) + ",speedup")
    else:
        header = f"{'kind':>8} {'n':>8}" + "".join(f" {name + ' (s)':>12}" for name in names)
        if len(names) == 2:
            header += f" {'speedup':>9}"
        print(header)

    for n in args.sizes:
        graph = build_instance(args.kind, n, args.seed)
        cells = []
        shape = None
        for name in names:
            engine.use(name)
            best, plan = time_pipeline(graph, args.repeats)
            cells.append(best)
            if shape is None:
                shape = (plan.height, plan.width)
            elif (plan.height, plan.width) != shape:
                raise SystemExit(f"engines disagree on n={n}: {shape} vs {(plan.height, plan.width)}")
        speedup = cells[0] / cells[1] if len(cells) == 2 else None
        if args.csv:
            row = f"{args.kind},{n}," + ",".join(f"{t:.6f}" for t in cells)
            row += f",{speedup:.2f}" if speedup is not None else ","
            print(row)
        else:
            row = f"{args.kind:>8} {n:>8}" + "".join(f" {t:>12.4f}" for t in cells)
            if speedup is not None:
                row += f" {speedup:>8.1f}x"
            print(row)
    engine.use("auto")
    return 0


if __name__ == "__main__":
    sys.exit(main())
