"""Plain-text file formats for triangulations and floor plans.

Graph files look like this:

    tri 1
    n 4
    rot 1 3 2
    rot 2 3 0
    rot 0 3 1
    rot 0 1 2
    ext 0 1 2

One rot line per node in id order, each listing that node's neighbors in
counterclockwise order.  Plan files look like this:

    plan 1
    size 3 3
    meta leaves 3
    mod 0 0 0 3 1
    mod 1 0 1 1 3
    ...

meta lines carry optional key/value pairs; the key is a single token and the
value is the rest of the line.  Each mod line gives one module as slabs of
four integers x0 y0 x1 y1, in node id order.  Blank lines and lines starting
with '#' are skipped on read.  Both writers emit a canonical form (sorted
meta keys, no comments) that round-trips byte for byte.
"""

from __future__ import annotations

import os

from .errors import ParseError
from .plane_graph import PlaneTriangulation

GRAPH_MAGIC = "tri 1"
PLAN_MAGIC = "plan 1"


def _read_text(source):
    if hasattr(source, "read"):
        return source.read()
    with open(os.fspath(source), "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(target, text):
    if hasattr(target, "write"):
        target.write(text)
        return
    with open(os.fspath(target), "w", encoding="utf-8") as fh:
        fh.write(text)


class _Cursor:
    """Content lines of a file, with their original line numbers."""

    def __init__(self, text):
        self.rows = []
        for i, raw in enumerate(text.splitlines(), start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            self.rows.append((i, s))
        self.pos = 0
        self.last = self.rows[-1][0] if self.rows else 1

    def take(self, what):
        if self.pos >= len(self.rows):
            raise ParseError(self.last, f"missing {what}")
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def done(self):
        return self.pos >= len(self.rows)


def _int(token, line_no, what):
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(line_no, f"{what} must be an integer, got {token!r}") from None


def read_graph(source):
    """Parse a triangulation file into a validated PlaneTriangulation.

    source is a path or an open text file.  Format problems raise ParseError
    with the offending line number; a syntactically fine file describing a
    bad graph raises the usual validation errors instead.
    """
    cur = _Cursor(_read_text(source))
    ln, s = cur.take("header")
    if s.split() != ["tri", "1"]:
        raise ParseError(ln, f"expected header {GRAPH_MAGIC!r}")
    ln, s = cur.take("node count line")
    parts = s.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError(ln, "expected 'n <count>'")
    n = _int(parts[1], ln, "node count")
    if n < 3:
        raise ParseError(ln, f"node count must be at least 3, got {n}")
    rotation = []
    for i in range(n):
        ln, s = cur.take(f"rotation line for node {i}")
        parts = s.split()
        if parts[0] != "rot":
            raise ParseError(ln, f"expected a 'rot' line for node {i}")
        try:
            rotation.append(list(map(int, parts[1:])))
        except ValueError:
            raise ParseError(ln, "rotation entries must be integers") from None
    ln, s = cur.take("exterior line")
    parts = s.split()
    if len(parts) != 4 or parts[0] != "ext":
        raise ParseError(ln, "expected 'ext <a> <b> <c>'")
    exterior = tuple(_int(t, ln, "exterior corner") for t in parts[1:])
    if not cur.done():
        ln, s = cur.take("")
        raise ParseError(ln, "unexpected content after the exterior line")
    return PlaneTriangulation(rotation, exterior)


def write_graph(graph, target):
    """Write a triangulation in the canonical graph file form."""
    buf = [GRAPH_MAGIC, f"n {graph.node_count}"]
    for ring in graph.rotation:
        buf.append("rot " + " ".join(map(str, ring)))
    a, b, c = graph.exterior
    buf.append(f"ext {a} {b} {c}")
    _write_text(target, "\n".join(buf) + "\n")


class ParsedPlan:
    """A floor plan loaded from a file; mirrors FloorPlan's reading surface.

    leaf_count and root come from the 'leaves' and 'root' meta entries and
    are None when absent or not integers, so downstream checks can tell
    "unknown" from a real value.
    """

    provenance = "file"

    def __init__(self, height, width, meta, rects):
        self.height = height
        self.width = width
        self.meta = dict(meta)
        self._rects = rects
        self.node_count = len(rects)

    def _meta_int(self, key):
        try:
            return int(self.meta[key], 10)
        except (KeyError, ValueError):
            return None

    @property
    def leaf_count(self):
        return self._meta_int("leaves")

    @property
    def root(self):
        return self._meta_int("root")

    def module_rects(self, node):
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} out of range for {self.node_count} nodes")
        return list(self._rects[node])

    def modules(self):
        for v in range(self.node_count):
            yield v, self.module_rects(v)

    def __repr__(self):
        return (
            f"ParsedPlan(height={self.height}, width={self.width}, "
            f"modules={self.node_count})"
        )


def read_plan(source):
    """Parse a plan file into a ParsedPlan."""
    cur = _Cursor(_read_text(source))
    ln, s = cur.take("header")
    if s.split() != ["plan", "1"]:
        raise ParseError(ln, f"expected header {PLAN_MAGIC!r}")
    ln, s = cur.take("size line")
    parts = s.split()
    if len(parts) != 3 or parts[0] != "size":
        raise ParseError(ln, "expected 'size <height> <width>'")
    height = _int(parts[1], ln, "height")
    width = _int(parts[2], ln, "width")
    if height < 1 or width < 1:
        raise ParseError(ln, f"size must be positive, got {height} by {width}")
    meta = {}
    rects = []
    while not cur.done():
        ln, s = cur.take("")
        parts = s.split()
        tag = parts[0]
        if tag == "meta":
            if rects:
                raise ParseError(ln, "meta lines must come before mod lines")
            if len(parts) < 3:
                raise ParseError(ln, "expected 'meta <key> <value>'")
            key = parts[1]
            if key in meta:
                raise ParseError(ln, f"duplicate meta key {key!r}")
            meta[key] = s.split(None, 2)[2]
        elif tag == "mod":
            if len(parts) < 6:
                raise ParseError(ln, "expected 'mod <node> <x0> <y0> <x1> <y1> ...'")
            node = _int(parts[1], ln, "node id")
            if node != len(rects):
                raise ParseError(
                    ln, f"expected the module line for node {len(rects)}, got {node}"
                )
            if (len(parts) - 2) % 4:
                raise ParseError(ln, "module coordinates must come in groups of four")
            try:
                vals = list(map(int, parts[2:]))
            except ValueError:
                raise ParseError(ln, "module coordinates must be integers") from None
            rects.append([tuple(vals[k : k + 4]) for k in range(0, len(vals), 4)])
        else:
            raise ParseError(ln, f"unknown line tag {tag!r}")
    if not rects:
        raise ParseError(cur.last, "plan has no module lines")
    return ParsedPlan(height, width, meta, rects)


def write_plan(plan, target, meta=None):
    """Write a plan in the canonical plan file form.

    The 'leaves', 'root' and 'tool' meta entries are filled in from the plan
    when available; entries in meta override them and add further keys.
    """
    entries = {"tool": "ostplan"}
    leaves = getattr(plan, "leaf_count", None)
    if leaves is not None:
        entries["leaves"] = str(leaves)
    root = getattr(plan, "root", None)
    if root is not None:
        entries["root"] = str(root)
    if meta:
        for key, value in meta.items():
            key = str(key)
            if not key or any(ch.isspace() for ch in key):
                raise ValueError(f"meta key {key!r} must be a single token")
            value = str(value).strip()
            if not value or "\n" in value:
                raise ValueError(f"meta value for key {key!r} must be one nonempty line")
            entries[key] = value
    buf = [PLAN_MAGIC, f"size {plan.height} {plan.width}"]
    for key in sorted(entries):
        buf.append(f"meta {key} {entries[key]}")
    for node, slabs in plan.modules():
        flat = " ".join(" ".join(map(str, r)) for r in slabs)
        buf.append(f"mod {node} {flat}")
    _write_text(target, "\n".join(buf) + "\n")
