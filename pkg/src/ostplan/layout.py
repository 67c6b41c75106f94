"""From an orderly spanning tree to a rectilinear floor plan.

The pipeline has four geometric stages.  First every node gets a unit-height
bar: its column interval counts the leaves strictly before its subtree versus
inside it, and its row is its tree depth.  Second the rows are stretched so
that every unrelated contact edge gets its own horizontal strip and each node
hangs from its parent's bottom line down to its own placement line.  Third
each node may grow up to two bottom-aligned branches that reach sideways
toward its outermost contacts, widening bodies so the plan becomes a exact
partition of the bounding rectangle.  Fourth every branch is thinned to a
single row: each leaf module rests on exactly one branch, so its body
stretches down to meet that branch's final row and its own branches ride
along at the new bottom line.

Everything after stage one works in label space (1-based preorder labels);
the public objects translate back to node ids.
"""

from __future__ import annotations

import numpy as np

from . import engine
from .errors import InternalError, NonUniqueCoveringNode, NotANeighbor
from .ost import min_leaf_ost


class TwoVisibilityDrawing:
    """Axis-aligned bars for every node, either compact or stretched.

    stage is "visibility" (unit-height bars at tree depth) or "stretch"
    (bars reach from the parent's line to the node's own line and every
    unrelated edge has a strip).  x0/x1/y0/y1 are node-indexed int32 arrays;
    bars span [x0, x1) by [y0, y1).
    """

    def __init__(self, tree, stage, x0, x1, y0, y1, height, width, ynode=None, ystrip=None):
        self.tree = tree
        self.stage = stage
        self.x0 = x0
        self.x1 = x1
        self.y0 = y0
        self.y1 = y1
        self.height = height
        self.width = width
        self._ynode = ynode
        self._ystrip = ystrip
        for a in (x0, x1, y0, y1):
            a.flags.writeable = False

    def strip(self, u, v):
        """The strip line assigned to the unrelated edge (u, v).

        Only the stretched stage has strips.  Raises NotANeighbor when the
        nodes are not adjacent and ValueError when they are related in the
        tree (tree edges carry no strip).
        """
        if self.stage != "stretch":
            raise ValueError("strips exist only in the stretched drawing")
        tree = self.tree
        g = tree.graph
        n = g.node_count
        for x in (u, v):
            if not 0 <= x < n:
                raise ValueError(f"node {x} out of range for {n} nodes")
        s = g._slot(u, v)
        if s < 0:
            raise NotANeighbor(u, v)
        label, size = tree.label, tree.size
        i, j = int(label[u]), int(label[v])
        if i < j < i + int(size[i]) or j < i < j + int(size[j]):
            raise ValueError(
                f"nodes {u} and {v} are related in the tree; only unrelated "
                "edges have strips"
            )
        rot = tree._anchor_pos if u == tree.root else int(tree._posp[u])
        lpos = (int(s - g._off[u]) - rot) % int(g._deg[u])
        ls = int(tree._level1()["loff"][i]) + lpos
        return int(self._ystrip[ls])

    def strips(self):
        """Yield (u, v, line) for every unrelated edge, once each."""
        if self.stage != "stretch":
            raise ValueError("strips exist only in the stretched drawing")
        tree = self.tree
        lv = tree._level1()
        nb2, nb3 = tree._blocks()[0], tree._blocks()[1]
        loff, ladj = lv["loff"], lv["ladj"]
        order = tree.order
        ystrip = self._ystrip
        n = tree.graph.node_count
        for i in range(2, n + 1):
            s0 = int(loff[i]) + 1 + int(nb2[i]) + int(nb3[i])
            for s in range(s0, int(loff[i + 1])):
                yield int(order[i]), int(order[ladj[s]]), int(ystrip[s])

    def __repr__(self):
        return (
            f"TwoVisibilityDrawing(stage={self.stage!r}, height={self.height}, "
            f"width={self.width})"
        )


def visibility_drawing_of_tree(tree):
    """Stage one: unit-height bars over the leaf intervals, rows by depth.

    Any spanning tree can be drawn this way; only the later stretching
    stage demands an orderly one.
    """
    if not tree.spans_all:
        raise ValueError("tree does not span the graph")
    lv = tree._level1()
    g = tree.graph
    n = g.node_count
    nodes = tree.order[1:]
    x0 = np.empty(n, dtype=np.int32)
    x1 = np.empty(n, dtype=np.int32)
    y0 = np.empty(n, dtype=np.int32)
    x0[nodes] = lv["sxl"][1:]
    x1[nodes] = lv["sxr"][1:]
    y0[nodes] = tree.depth[1:]
    y1 = y0 + 1
    height = int(tree.depth[1:].max()) + 1
    return TwoVisibilityDrawing(
        tree, "visibility", x0, x1, y0, y1, height, lv["leaf_count"]
    )


def stretch_to_two_visibility(graph, tree, drawing):
    """Stage two: give every unrelated edge its own strip line.

    Takes the stage-one drawing and returns a new stretched drawing in which
    a node's bar runs from its parent's placement line down to its own.
    """
    if tree.graph is not graph:
        raise ValueError("tree was built on a different graph")
    if drawing.tree is not tree:
        raise ValueError("drawing belongs to a different tree")
    if drawing.stage != "visibility":
        raise ValueError(f"expected a stage-one drawing, got {drawing.stage!r}")
    tree._require_orderly()
    lv = tree._level1()
    nb2, nb3, ell, arr, viol = tree._blocks()
    n = graph.node_count
    ynode, ystrip = engine.solve_strips(
        n,
        lv["loff"],
        lv["ladj"],
        lv["lmirror"],
        lv["lowner"],
        lv["p_lab"],
        nb2,
        nb3,
    )
    height = int(ynode[2])
    if int(ynode[n]) != height or int(ynode[1:].max()) != height:
        raise InternalError("stretched drawing is not flush at the bottom line")
    nodes = tree.order[1:]
    x0 = np.empty(n, dtype=np.int32)
    x1 = np.empty(n, dtype=np.int32)
    y0 = np.empty(n, dtype=np.int32)
    y1 = np.empty(n, dtype=np.int32)
    x0[nodes] = lv["sxl"][1:]
    x1[nodes] = lv["sxr"][1:]
    y0[nodes] = ynode[lv["p_lab"][1:]]
    y1[nodes] = ynode[1:]
    return TwoVisibilityDrawing(
        tree,
        "stretch",
        x0,
        x1,
        y0,
        y1,
        height,
        lv["leaf_count"],
        ynode=ynode,
        ystrip=ystrip,
    )


class FloorPlan:
    """A partition of a height-by-width rectangle into one module per node.

    Every module is one body rectangle plus up to two bottom-aligned branch
    rectangles (left and right).  The public arrays are node-indexed int32:
    body_x0/body_x1/body_y0/body_y1 and the branch twins lb_*/rb_*, where an
    absent branch holds -1 in all four slots.  provenance is "grown" right
    after stage three and "reduced" once branches are thinned.
    """

    def __init__(self, order, label, body, left, right, height, width, leaf_count, root, provenance, tree=None):
        self._order = order
        self._label = label
        self._by = body
        self._lb = left
        self._rb = right
        self._tree = tree
        self.height = height
        self.width = width
        self.leaf_count = leaf_count
        self.root = root
        self.provenance = provenance
        n = int(label.size)
        self.node_count = n
        nodes = order[1:]

        def scatter(lab_arr):
            out = np.empty(n, dtype=np.int32)
            out[nodes] = lab_arr[1 : n + 1]
            return out

        self.body_x0 = scatter(body[0])
        self.body_x1 = scatter(body[1])
        self.body_y0 = scatter(body[2])
        self.body_y1 = scatter(body[3])

        def scatter_branch(fam):
            x0, x1, y0, y1 = fam
            ok = x1 > x0
            outs = []
            for a in (x0, x1, y0, y1):
                masked = np.where(ok, a, -1).astype(np.int32)
                outs.append(scatter(masked))
            return outs

        self.lb_x0, self.lb_x1, self.lb_y0, self.lb_y1 = scatter_branch(left)
        self.rb_x0, self.rb_x1, self.rb_y0, self.rb_y1 = scatter_branch(right)
        for a in (
            self.body_x0, self.body_x1, self.body_y0, self.body_y1,
            self.lb_x0, self.lb_x1, self.lb_y0, self.lb_y1,
            self.rb_x0, self.rb_x1, self.rb_y0, self.rb_y1,
        ):
            a.flags.writeable = False

    def module_rects(self, node):
        """Maximal horizontal slabs of one module, sorted by top line.

        Returns a list of (x0, y0, x1, y1) tuples whose union is the module.
        """
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} out of range for {self.node_count} nodes")
        rects = [
            (
                int(self.body_x0[node]),
                int(self.body_y0[node]),
                int(self.body_x1[node]),
                int(self.body_y1[node]),
            )
        ]
        for fx0, fy0, fx1, fy1 in (
            (self.lb_x0, self.lb_y0, self.lb_x1, self.lb_y1),
            (self.rb_x0, self.rb_y0, self.rb_x1, self.rb_y1),
        ):
            if fx1[node] > fx0[node]:
                rects.append(
                    (int(fx0[node]), int(fy0[node]), int(fx1[node]), int(fy1[node]))
                )
        ys = sorted({r[1] for r in rects} | {r[3] for r in rects})
        bands = []
        for lo, hi in zip(ys, ys[1:]):
            spans = sorted(
                (r[0], r[2]) for r in rects if r[1] <= lo and r[3] >= hi
            )
            if not spans:
                continue
            merged = [list(spans[0])]
            for a, b in spans[1:]:
                if a == merged[-1][1]:
                    merged[-1][1] = b
                else:
                    merged.append([a, b])
            bands.append([lo, hi, tuple(map(tuple, merged))])
        groups = []
        for lo, hi, spans in bands:
            if groups and groups[-1][1] == lo and groups[-1][2] == spans:
                groups[-1][1] = hi
            else:
                groups.append([lo, hi, spans])
        return [
            (a, lo, b, hi) for lo, hi, spans in groups for a, b in spans
        ]

    def modules(self):
        """Yield (node, slabs) for every module."""
        for v in range(self.node_count):
            yield v, self.module_rects(v)

    def __repr__(self):
        return (
            f"FloorPlan(height={self.height}, width={self.width}, "
            f"modules={self.node_count}, provenance={self.provenance!r})"
        )


def grow_branches(graph, tree, drawing):
    """Stage three: widen bodies and emit bottom-aligned contact branches."""
    if tree.graph is not graph:
        raise ValueError("tree was built on a different graph")
    if drawing.tree is not tree:
        raise ValueError("drawing belongs to a different tree")
    if drawing.stage != "stretch":
        raise ValueError(f"expected a stretched drawing, got {drawing.stage!r}")
    lv = tree._level1()
    nb2, nb3, ell, arr, viol = tree._blocks()
    ynode = drawing._ynode
    ystrip = drawing._ystrip
    n = graph.node_count
    width = lv["leaf_count"]
    bxl, bxr = engine.solve_bounds(
        n, lv["p_lab"], tree.size, ell, arr, lv["sxl"], lv["sxr"], width
    )
    ytop = np.zeros(n + 1, dtype=np.int32)
    ytop[1:] = ynode[lv["p_lab"][1:]]
    body = (bxl, bxr, ytop, ynode[: n + 1])

    loff = lv["loff"]
    m2 = int(loff[n + 1])
    labels = np.arange(n + 1, dtype=np.int64)
    row0 = loff[: n + 1]
    ysl = ystrip[np.minimum(row0 + nb2, m2 - 1)]
    ysr = ystrip[np.minimum(row0 + 1 + nb2 + nb3, m2 - 1)]

    lmask = ell >= 2
    left = _branch_family(bxr[ell], bxl, ysl - 1, ynode[: n + 1], lmask)
    rmask = (arr >= 2) & (labels >= 3) & (labels <= n - 1)
    right = _branch_family(bxr, bxl[arr], ysr - 1, ynode[: n + 1], rmask)

    return FloorPlan(
        tree.order,
        tree.label,
        body,
        left,
        right,
        drawing.height,
        width,
        lv["leaf_count"],
        tree.root,
        "grown",
        tree=tree,
    )


def _branch_family(x0, x1, y0, y1, mask):
    ok = mask & (x1 > x0)
    return tuple(
        np.where(ok, a, -1).astype(np.int32) for a in (x0, x1, y0, y1)
    )


def reduce_branch_heights(plan):
    """Stage four: thin every branch down to a single row.

    A branch keeps only its bottom row.  The rows it gives up are taken by
    the modules that rested on it: directly above any branch sits the unique
    module whose outermost left and right contacts are the very pair the
    branch connects, so that module's body stretches down until it meets the
    branch's final row and its own branches ride along at its new bottom.
    Only leaf modules move; internal bodies stay tiled by their children.
    NonUniqueCoveringNode reports a plan whose resting structure is
    inconsistent, which indicates a bug upstream.  Returns a new FloorPlan
    with provenance "reduced".
    """
    if plan.provenance != "grown":
        raise ValueError(
            f"expected a freshly grown plan, got provenance {plan.provenance!r}"
        )
    tree = plan._tree
    if tree is None:
        raise ValueError("plan does not carry the tree it was grown from")
    n = plan.node_count
    bottom = plan.height
    order = plan._order
    ell = tree._blocks()[2].tolist()
    arr = tree._blocks()[3].tolist()
    is_leaf = tree._level1()["leaf"].tolist()
    y = plan._by[3].tolist()

    riders = sorted(
        (k for k in range(1, n + 1) if is_leaf[k] and y[k] < bottom),
        key=y.__getitem__,
    )

    # Every rider rests on the branch spanning the gap between its nearest
    # taller neighbours.  Resolve those neighbours shallowest rider first so
    # the skip pointers only ever jump over modules already known to end
    # higher than the current rest line.
    support = [0] * (n + 1)
    skip_l = ell[:]
    skip_r = arr[:]
    for k in riders:
        line = y[k]
        i = ell[k]
        seen = []
        while y[i] <= line:
            seen.append(i)
            i = skip_l[i]
        for s in seen:
            skip_l[s] = i
        j = arr[k]
        seen = []
        while y[j] <= line:
            seen.append(j)
            j = skip_r[j]
        for s in seen:
            skip_r[s] = j
        if i == 2 and j == n:
            support[k] = n
            continue
        right_claim = arr[i] == j
        left_claim = ell[j] == i
        if right_claim == left_claim:
            side = "both sides" if right_claim else "neither side"
            raise NonUniqueCoveringNode(
                int(order[k]),
                f"module rests between nodes {int(order[i])} and "
                f"{int(order[j])} but {side} of that gap claims the branch",
            )
        support[k] = i if right_claim else j

    # Supports always end strictly below their riders, so sweeping the
    # riders deepest first settles every support before it is consumed.
    final = y[:]
    for k in reversed(riders):
        rest = final[support[k]] - 1
        if rest < y[k]:
            raise InternalError(
                "branch thinning would move a module bottom upward"
            )
        final[k] = rest

    final = np.array(final, dtype=np.int32)
    body = (plan._by[0], plan._by[1], plan._by[2], final)

    def ride(fam):
        x0, x1 = fam[0], fam[1]
        ok = x1 > x0
        y0 = np.where(ok, final - 1, -1).astype(np.int32)
        y1 = np.where(ok, final, -1).astype(np.int32)
        return (x0, x1, y0, y1)

    return FloorPlan(
        order,
        plan._label,
        body,
        ride(plan._lb),
        ride(plan._rb),
        plan.height,
        plan.width,
        plan.leaf_count,
        plan.root,
        "reduced",
        tree=tree,
    )


def floorplan(graph):
    """Run the whole pipeline: tree, drawing, stretch, growth, thinning."""
    tree = min_leaf_ost(graph)
    bars = visibility_drawing_of_tree(tree)
    stretched = stretch_to_two_visibility(graph, tree, bars)
    grown = grow_branches(graph, tree, stretched)
    return reduce_branch_heights(grown)
