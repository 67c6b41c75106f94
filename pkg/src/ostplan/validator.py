"""Independent checks for finished floor plans.

Everything here treats a plan as a bag of modules, each a list of rectangles,
plus declared height and width; nothing is trusted from the construction
pipeline.  The raster checks paint every cell and compare what actually
touches what against the graph, the shape checks re-derive each module's
slab decomposition, and the bound checks compare the canvas against the
guarantees a minimum-leaf construction promises.

A Finding is a hard failure; reports also carry warnings (suspicious but not
wrong) and notes (skipped checks, truncation).
"""

from __future__ import annotations

import numpy as np


class Finding:
    """One validation failure: a kind tag, the subject ids, and a sentence."""

    def __init__(self, kind, subject, message):
        self.kind = kind
        self.subject = tuple(subject)
        self.message = message

    def __repr__(self):
        return f"Finding({self.kind!r}, subject={self.subject}, message={self.message!r})"


class ValidationReport:
    """Outcome of one or more checks; ok means no findings at all."""

    def __init__(
        self,
        findings=None,
        warnings=None,
        notes=None,
        height=None,
        width=None,
        leaf_count=None,
        shape_histogram=None,
    ):
        self.findings = list(findings or [])
        self.warnings = list(warnings or [])
        self.notes = list(notes or [])
        self.height = height
        self.width = width
        self.leaf_count = leaf_count
        self.shape_histogram = shape_histogram

    @property
    def ok(self):
        return not self.findings

    def __repr__(self):
        return (
            f"ValidationReport(ok={self.ok}, findings={len(self.findings)}, "
            f"warnings={len(self.warnings)})"
        )


def _paint(plan):
    """Paint every module cell; -1 stays for gaps, -2 marks overlaps.

    Returns (grid, findings) where findings cover out-of-canvas rectangles
    and overlapping module pairs, both capped.
    """
    height, width = int(plan.height), int(plan.width)
    if height <= 0 or width <= 0:
        raise ValueError(f"plan has an empty canvas: {height} by {width}")
    if height * width > 2**31:
        raise ValueError("plan canvas is too large to rasterize")
    grid = np.full((height, width), -1, dtype=np.int32)
    findings = []
    pairs = set()
    oob = 0
    for v, rects in plan.modules():
        for x0, y0, x1, y1 in rects:
            if x1 <= x0 or y1 <= y0 or x0 < 0 or y0 < 0 or x1 > width or y1 > height:
                oob += 1
                if oob <= 20:
                    findings.append(
                        Finding(
                            "OutOfBounds",
                            (v,),
                            f"rectangle ({x0}, {y0}, {x1}, {y1}) of module {v} "
                            f"leaves the {width} by {height} canvas",
                        )
                    )
                continue
            sub = grid[y0:y1, x0:x1]
            clash = sub != -1
            if clash.any():
                for other in np.unique(sub[clash]):
                    other = int(other)
                    if other >= 0 and len(pairs) < 40:
                        pairs.add((min(other, v), max(other, v)))
                sub[clash] = -2
                sub[~clash] = v
            else:
                sub[...] = v
    for u, v in sorted(pairs):
        if u == v:
            findings.append(Finding("Overlap", (u, v), f"module {u} overlaps itself"))
        else:
            findings.append(
                Finding("Overlap", (u, v), f"modules {u} and {v} claim the same cells")
            )
    return grid, findings


def rasterize(plan):
    """The plan as an int32 grid: module ids, -1 for gaps, -2 for overlaps."""
    grid, _ = _paint(plan)
    return grid


def _touching(r, s):
    rx0, ry0, rx1, ry1 = r
    sx0, sy0, sx1, sy1 = s
    if (ry1 == sy0 or sy1 == ry0) and min(rx1, sx1) > max(rx0, sx0):
        return True
    if (rx1 == sx0 or sx1 == rx0) and min(ry1, sy1) > max(ry0, sy0):
        return True
    return False


def _connected(rects):
    seen = [False] * len(rects)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in range(len(rects)):
            if not seen[j] and _touching(rects[i], rects[j]):
                seen[j] = True
                stack.append(j)
    return all(seen)


def check_partition(plan):
    """Verify the modules tile the canvas: no gaps, overlaps, or split modules."""
    grid, findings = _paint(plan)
    findings = list(findings)
    gaps = np.argwhere(grid == -1)
    if len(gaps):
        y, x = (int(t) for t in gaps[0])
        findings.append(
            Finding(
                "Gap",
                (x, y),
                f"{len(gaps)} cells belong to no module; first at column {x}, line {y}",
            )
        )
    for v in range(plan.node_count):
        rects = [r for r in plan.module_rects(v) if r[2] > r[0] and r[3] > r[1]]
        if not rects:
            findings.append(Finding("Disconnected", (v,), f"module {v} has no area"))
        elif not _connected(rects):
            findings.append(
                Finding("Disconnected", (v,), f"module {v} splits into separate pieces")
            )
    return ValidationReport(
        findings=findings,
        height=plan.height,
        width=plan.width,
        leaf_count=getattr(plan, "leaf_count", None),
    )


def check_adjacency(plan, graph):
    """Compare raster contacts against the graph's edge set, both directions.

    Two modules are adjacent when some cell of one shares a unit side with a
    cell of the other.  Every graph edge must be realized and no contact may
    lack an edge.
    """
    grid, _ = _paint(plan)
    n = graph.node_count
    keys = []
    for a, b in (
        (grid[:, :-1].ravel(), grid[:, 1:].ravel()),
        (grid[:-1, :].ravel(), grid[1:, :].ravel()),
    ):
        mask = (a >= 0) & (b >= 0) & (a != b)
        if mask.any():
            lo = np.minimum(a[mask], b[mask]).astype(np.int64)
            hi = np.maximum(a[mask], b[mask]).astype(np.int64)
            keys.append(lo * n + hi)
    touched = (
        np.unique(np.concatenate(keys)) if keys else np.empty(0, dtype=np.int64)
    )
    ka = graph._kas
    edge_keys = ka[(ka // n) < (ka % n)]
    missing = np.setdiff1d(edge_keys, touched, assume_unique=True)
    spurious = np.setdiff1d(touched, edge_keys, assume_unique=True)
    findings = []
    notes = []
    for k in missing[:50]:
        u, v = int(k // n), int(k % n)
        findings.append(
            Finding("MissingAdjacency", (u, v), f"edge ({u}, {v}) is not realized by any contact")
        )
    if len(missing) > 50:
        notes.append(f"{len(missing)} missing adjacencies in total; showing 50")
    for k in spurious[:50]:
        u, v = int(k // n), int(k % n)
        findings.append(
            Finding("SpuriousAdjacency", (u, v), f"modules {u} and {v} touch without an edge")
        )
    if len(spurious) > 50:
        notes.append(f"{len(spurious)} spurious adjacencies in total; showing 50")
    return ValidationReport(findings=findings, notes=notes)


def _slab_decomposition(rects):
    """Maximal horizontal slabs of a rect union, or None when a row splits.

    Returns a list of [y0, y1, x0, x1] slabs, or None if some row holds two
    separate intervals (the union is not horizontally convex).
    """
    ys = sorted({r[1] for r in rects} | {r[3] for r in rects})
    slabs = []
    for lo, hi in zip(ys, ys[1:]):
        spans = sorted((r[0], r[2]) for r in rects if r[1] <= lo and r[3] >= hi)
        if not spans:
            continue
        x0, x1 = spans[0]
        for a, b in spans[1:]:
            if a > x1:
                return None
            x1 = max(x1, b)
        if slabs and slabs[-1][1] == lo and (slabs[-1][2], slabs[-1][3]) == (x0, x1):
            slabs[-1][1] = hi
        else:
            slabs.append([lo, hi, x0, x1])
    return slabs


def classify_module(rects):
    """Name the shape of a rectangle union: I, L, T, Z, Empty or Other."""
    rects = [r for r in rects if r[2] > r[0] and r[3] > r[1]]
    if not rects:
        return "Empty"
    slabs = _slab_decomposition(rects)
    if slabs is None:
        return "Other"
    for k in range(len(slabs) - 1):
        if slabs[k][1] != slabs[k + 1][0]:
            return "Other"
    if len(slabs) == 1:
        return "I"
    if len(slabs) > 2:
        return "Other"
    a, b = slabs
    if min(a[3], b[3]) <= max(a[2], b[2]):
        return "Other"
    if a[2] != b[2] and a[3] != b[3]:
        return "T" if (a[2] < b[2]) == (a[3] > b[3]) else "Z"
    return "L"


def _shape_scan(plan):
    findings = []
    histogram = {}
    for v, rects in plan.modules():
        live = [r for r in rects if r[2] > r[0] and r[3] > r[1]]
        tag = classify_module(live)
        histogram[tag] = histogram.get(tag, 0) + 1
        if tag not in ("I", "L", "T"):
            findings.append(Finding("ForbiddenShape", (v,), f"module {v} has shape {tag}"))
            continue
        if tag == "I":
            continue
        slabs = _slab_decomposition(live)
        a, b = slabs
        wide = a if (a[2] <= b[2] and a[3] >= b[3]) else b
        if wide[1] - wide[0] != 1:
            findings.append(
                Finding(
                    "ThickBranch",
                    (v,),
                    f"the protruding slab of module {v} is {wide[1] - wide[0]} rows "
                    "tall instead of 1",
                )
            )
    return findings, histogram


def check_shapes(plan):
    """Require every module to be an I, L or T with unit-height protrusions."""
    findings, histogram = _shape_scan(plan)
    return ValidationReport(findings=findings, shape_histogram=histogram)


def check_bounds(plan, node_count=None, leaf_count=None):
    """Compare the canvas against the guarantees of a minimum-leaf build.

    Height beyond n-1 and a width that contradicts the recorded leaf count
    are failures; a width beyond floor((2n+1)/3) is only a warning, since
    trees other than the minimum-leaf one may legitimately exceed it.
    """
    n = node_count if node_count is not None else plan.node_count
    findings = []
    warnings = []
    notes = []
    if plan.height > n - 1:
        findings.append(
            Finding(
                "HeightBoundViolated",
                (plan.height,),
                f"height {plan.height} exceeds the n-1 bound of {n - 1}",
            )
        )
    lc = leaf_count if leaf_count is not None else getattr(plan, "leaf_count", None)
    if lc is None:
        notes.append("leaf count unknown; width check skipped")
    elif plan.width != lc:
        findings.append(
            Finding(
                "WidthMismatch",
                (plan.width, lc),
                f"width {plan.width} does not equal the leaf count {lc}",
            )
        )
    bound = (2 * n + 1) // 3
    if plan.width > bound:
        warnings.append(
            Finding(
                "LeafBoundExceeded",
                (plan.width, bound),
                f"width {plan.width} exceeds the minimum-leaf bound {bound}",
            )
        )
    return ValidationReport(findings=findings, warnings=warnings, notes=notes)


def validate_floorplan(graph, plan):
    """Run every plan check against one graph and merge the reports."""
    findings = []
    warnings = []
    notes = []
    histogram = None
    reports = []
    if plan.node_count != graph.node_count:
        findings.append(
            Finding(
                "ModuleCountMismatch",
                (graph.node_count, plan.node_count),
                f"plan has {plan.node_count} modules for {graph.node_count} nodes",
            )
        )
        notes.append("module count differs from node count; adjacency check skipped")
        reports = [check_partition(plan), check_shapes(plan), check_bounds(plan)]
    else:
        reports = [
            check_partition(plan),
            check_adjacency(plan, graph),
            check_shapes(plan),
            check_bounds(plan, graph.node_count),
        ]
    for rep in reports:
        findings.extend(rep.findings)
        warnings.extend(rep.warnings)
        notes.extend(rep.notes)
        if rep.shape_histogram is not None:
            histogram = rep.shape_histogram
    return ValidationReport(
        findings=findings,
        warnings=warnings,
        notes=notes,
        height=plan.height,
        width=plan.width,
        leaf_count=getattr(plan, "leaf_count", None),
        shape_histogram=histogram,
    )
