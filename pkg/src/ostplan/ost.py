"""Orderly spanning trees of plane triangulations.

A spanning tree rooted on the outer face is orderly when every node, read
counterclockwise from its parent edge, shows its neighbors in four clean
blocks: unrelated nodes with smaller preorder labels, then children, then
unrelated nodes with larger labels.  This module builds such trees the
constructive way (canonical construction order, then a three-tree edge
coloring, then tree extraction), checks arbitrary candidate trees, and
annotates valid ones with the quantities the layout stage consumes.

Label conventions: preorder labels are 1-based, label 0 means unreached, and
arrays named order/depth/size are label-indexed with slot 0 unused.  Node
ids stay 0-based everywhere.
"""

from __future__ import annotations

import numpy as np

from . import engine
from .errors import InternalError, NotANeighbor
from .validator import Finding, ValidationReport


def canonical_order(graph, anchor=None):
    """Compute a canonical construction order of the triangulation.

    The order starts at an outer edge and ends at the remaining outer corner.
    anchor, when given, is that starting pair (v1, v2); it must follow the
    outer face trace.  By default the stored exterior provides the pair.
    Returns an int32 array listing all nodes.
    """
    ext = graph.exterior
    if anchor is None:
        v1, v2 = ext[0], ext[1]
    else:
        try:
            v1, v2 = (int(anchor[0]), int(anchor[1]))
        except (TypeError, IndexError):
            raise ValueError("anchor must be a pair of outer nodes") from None
        trace_pairs = {
            (ext[0], ext[1]),
            (ext[1], ext[2]),
            (ext[2], ext[0]),
        }
        if (v1, v2) not in trace_pairs:
            raise ValueError(
                f"anchor pair ({v1}, {v2}) must be consecutive on the outer "
                f"face trace {ext}"
            )
    vn = next(x for x in ext if x != v1 and x != v2)
    return engine.canonical_peel(
        graph.node_count, graph._off, graph._adj, v1, v2, vn
    )


class Realizer:
    """Parent pointers of three edge-disjoint trees rooted at the outer corners.

    roots lists the three outer nodes (first anchor, second anchor, peak) and
    parents[i] is a node-indexed int32 array giving each node's parent in the
    tree rooted at roots[i], with -1 at all three outer nodes.  Every interior
    edge belongs to exactly one tree.
    """

    def __init__(self, roots, parents):
        self.roots = tuple(int(r) for r in roots)
        self.parents = tuple(parents)
        for p in self.parents:
            p.flags.writeable = False

    def __repr__(self):
        return f"Realizer(roots={self.roots})"


def realizer_from_canonical(graph, order):
    """Replay a canonical order forwards and color the interior edges.

    Raises ValueError if order is not a permutation of the nodes that starts
    with a trace-ordered outer pair, ends at the remaining outer corner, and
    attaches every node along a contiguous contour arc.
    """
    n = graph.node_count
    arr = np.asarray(order, dtype=np.int32)
    if arr.shape != (n,):
        raise ValueError(f"order must list all {n} nodes exactly once")
    if ((arr < 0) | (arr >= n)).any():
        raise ValueError("order contains a node id out of range")
    if not (np.bincount(arr, minlength=n) == 1).all():
        raise ValueError(f"order must be a permutation of 0..{n - 1}")
    ext = graph.exterior
    trace_pairs = {
        (ext[0], ext[1]),
        (ext[1], ext[2]),
        (ext[2], ext[0]),
    }
    v1, v2, vn = int(arr[0]), int(arr[1]), int(arr[n - 1])
    if (v1, v2) not in trace_pairs or vn in (v1, v2) or vn not in ext:
        raise ValueError(
            "order must start with a trace-ordered outer pair and end at "
            "the remaining outer corner"
        )
    try:
        pp, pn, pm = engine.realizer_colors(n, graph._off, graph._adj, arr)
    except InternalError as exc:
        raise ValueError(f"not a canonical construction order: {exc}") from exc
    return Realizer((v1, v2, vn), (pn, pp, pm))


_REALIZER_MESSAGES = {
    "RootHasParent": "root {a} has a parent pointer in tree {b}",
    "MissingParent": "node {a} has no usable parent in tree {b}",
    "ParentNotNeighbor": "node {a} names non-neighbor {b} as a parent",
    "RepeatedParent": "node {a} uses neighbor {b} as parent in two trees",
    "ColoredExteriorEdge": "outer edge ({a}, {b}) carries a color",
    "EdgeColorCount": "interior edge ({a}, {b}) does not carry exactly one color",
    "ChiralityMismatch": "node {a} orders its outgoing colors against the rest",
    "ArcColor": "edge from {b} into {a} has the wrong color for its arc",
    "RootInColor": "root {a} receives a foreign color from {b}",
    "ColorCycle": "parent chain through node {a} in tree {b} never reaches its root",
}


def check_realizer(graph, realizer):
    """Check the local and global laws of a candidate three-tree coloring."""
    p0, p1, p2 = (np.asarray(p, dtype=np.int32) for p in realizer.parents)
    r0, r1, r2 = realizer.roots
    raw = engine.realizer_check(
        graph.node_count,
        graph._off,
        graph._adj,
        graph._mirror,
        p0,
        p1,
        p2,
        r0,
        r1,
        r2,
    )
    findings = [
        Finding(code, (a, b), _REALIZER_MESSAGES[code].format(a=a, b=b))
        for code, a, b in raw
    ]
    return ValidationReport(findings=findings)


class OrderlySpanningTree:
    """A rooted spanning tree of a triangulation, preorder-labeled in place.

    The constructor only rejects malformed input (wrong parent array shape,
    out-of-range entries, an anchor that is not a neighbor of the root);
    whether the tree actually spans the graph and satisfies the block laws is
    the job of check_orderly.

    Attributes: graph, root, anchor, parent (node-indexed, -1 at the root),
    label (node-indexed, 1-based, 0 if unreached), order/depth/size
    (label-indexed, slot 0 unused), spans_all.
    """

    def __init__(self, graph, root, parent, anchor=None):
        n = graph.node_count
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range for {n} nodes")
        par = np.array(parent, dtype=np.int32, copy=True)
        if par.shape != (n,):
            raise ValueError(f"parent array must have one entry per node, got {par.shape}")
        if ((par < -1) | (par >= n)).any():
            bad = int(par[np.argmax((par < -1) | (par >= n))])
            raise ValueError(f"parent entry {bad} out of range")
        if par[root] != -1:
            raise ValueError(f"root {root} must have parent -1, got {int(par[root])}")
        if anchor is None:
            anchor = int(graph._adj[graph._off[root]])
        else:
            anchor = int(anchor)
        slot = graph._slot(root, anchor)
        if slot < 0:
            raise NotANeighbor(root, anchor)
        anchor_pos = slot - int(graph._off[root])

        label, order, posp, depth, size, visited = engine.preorder_tree(
            n, graph._off, graph._adj, graph._mirror, par, root, anchor_pos
        )
        self.graph = graph
        self.root = int(root)
        self.anchor = anchor
        self.parent = par
        self.label = label
        self.order = order
        self.depth = depth
        self.size = size
        self.spans_all = visited == n
        self._visited = visited
        self._posp = posp
        self._anchor_pos = anchor_pos
        self._lvl1 = None
        self._blk = None
        for a in (par, label, order, posp, depth, size):
            a.flags.writeable = False

    @property
    def leaf_count(self):
        return self._level1()["leaf_count"]

    def _level1(self):
        """Label-space adjacency rows plus the leaf-interval quantities.

        Rows are ordered by label, each rotated so position 0 holds the
        parent slot (the anchor slot for the root row).  Cached.
        """
        if self._lvl1 is not None:
            return self._lvl1
        if not self.spans_all:
            raise ValueError("tree does not span the graph")
        g = self.graph
        n = g.node_count
        label, order, size = self.label, self.order, self.size

        nodes = order[1:]
        gdeg = g._deg[nodes].astype(np.int64)
        starts = g._off[nodes]
        rot = self._posp[nodes].astype(np.int64)
        rot[0] = self._anchor_pos

        loff = np.zeros(n + 2, dtype=np.int64)
        np.cumsum(gdeg, out=loff[2:])
        m2 = int(loff[n + 1])

        lowner = np.repeat(np.arange(1, n + 1, dtype=np.int32), gdeg)
        t_local = np.arange(m2, dtype=np.int64) - loff[lowner]
        li = lowner - 1
        src = starts[li] + (rot[li] + t_local) % gdeg[li]
        nb_node = g._adj[src]
        ladj = label[nb_node]

        nb_li = ladj.astype(np.int64) - 1
        local = g._mirror[src] - g._off[nb_node]
        lpos = (local - rot[nb_li]) % gdeg[nb_li]
        lmirror = (loff[ladj] + lpos).astype(np.int32)

        p_lab = np.zeros(n + 1, dtype=np.int32)
        if n >= 2:
            p_lab[2:] = label[self.parent[order[2:]]]

        child_count = np.bincount(p_lab[2:], minlength=n + 1)
        leaf = child_count == 0
        leaf[0] = False

        sx = np.zeros(n + 2, dtype=np.int32)
        np.cumsum(leaf[1 : n + 1].astype(np.int32), out=sx[2:])
        idx = np.arange(n + 1, dtype=np.int64)
        w = sx[idx + size] - sx[idx]
        sxl = sx[: n + 1].copy()
        sxr = sxl + w

        self._lvl1 = {
            "loff": loff,
            "ladj": ladj,
            "lmirror": lmirror,
            "lowner": lowner,
            "p_lab": p_lab,
            "leaf": leaf,
            "sxl": sxl,
            "sxr": sxr,
            "w": w,
            "leaf_count": int(w[1]),
        }
        return self._lvl1

    def _blocks(self):
        """Block counts, contact labels and violations; cached."""
        if self._blk is None:
            lv = self._level1()
            self._blk = engine.annotate_blocks(
                self.graph.node_count, lv["loff"], lv["ladj"], lv["p_lab"], self.size
            )
        return self._blk

    def _require_orderly(self):
        if not self.spans_all:
            raise ValueError("tree does not span the graph")
        viol = self._blocks()[4]
        if viol:
            code, i, j = viol[0]
            raise ValueError(
                f"tree is not orderly (first violation: code {code} at labels {i}, {j})"
            )

    def blocks(self, node):
        """The three non-parent neighbor blocks of node, in ring order.

        Returns (smaller_unrelated, children, larger_unrelated) as tuples of
        node ids.  Only valid orderly trees can be split this way.
        """
        n = self.graph.node_count
        if not 0 <= node < n:
            raise ValueError(f"node {node} out of range for {n} nodes")
        self._require_orderly()
        lv = self._level1()
        nb2, nb3 = self._blk[0], self._blk[1]
        i = int(self.label[node])
        r0, r1 = int(lv["loff"][i]), int(lv["loff"][i + 1])
        row = lv["ladj"][r0:r1]
        seq = row if i == 1 else row[1:]
        k2, k3 = int(nb2[i]), int(nb3[i])
        order = self.order
        to_nodes = lambda labs: tuple(int(order[j]) for j in labs)
        return (
            to_nodes(seq[:k2]),
            to_nodes(seq[k2 : k2 + k3]),
            to_nodes(seq[k2 + k3 :]),
        )

    def __repr__(self):
        return (
            f"OrderlySpanningTree(root={self.root}, anchor={self.anchor}, "
            f"nodes={self.graph.node_count}, spans_all={self.spans_all})"
        )


def _attached_parent(realizer, which, n):
    """The tree rooted at roots[which] with the other two corners attached."""
    root = realizer.roots[which]
    parent = np.array(realizer.parents[which], dtype=np.int32, copy=True)
    for i, r in enumerate(realizer.roots):
        if i != which:
            parent[r] = root
    return root, parent


def ost_from_realizer(graph, realizer, which):
    """Extract the orderly spanning tree rooted at realizer.roots[which].

    The other two outer corners hang off the root, and the child scan starts
    at the root's successor along the outer face trace.
    """
    if which not in (0, 1, 2):
        raise ValueError(f"which must be 0, 1 or 2, got {which}")
    root, parent = _attached_parent(realizer, which, graph.node_count)
    ext = graph.exterior
    if root not in ext:
        raise ValueError(f"realizer root {root} is not an outer node of this graph")
    succ = ext[(ext.index(root) + 1) % 3]
    return OrderlySpanningTree(graph, root, parent, anchor=succ)


def min_leaf_ost(graph):
    """Build the orderly spanning tree with the fewest leaves.

    All three trees of one realizer are counted and the smallest is kept,
    breaking ties toward the smallest root id.
    """
    order = canonical_order(graph)
    realizer = realizer_from_canonical(graph, order)
    n = graph.node_count
    best = None
    for which in (0, 1, 2):
        root, parent = _attached_parent(realizer, which, n)
        child_count = np.bincount(parent[parent >= 0], minlength=n)
        leaves = int((child_count == 0).sum())
        key = (leaves, root, which)
        if best is None or key < best:
            best = key
    return ost_from_realizer(graph, realizer, best[2])


def check_orderly(graph, tree):
    """Validate a candidate spanning tree against the block laws.

    Returns a ValidationReport whose findings use kinds RootNotExterior,
    NotSpanning, BlockOrderViolation and EdgePropertyViolation.
    """
    if tree.graph is not graph:
        raise ValueError("tree was built on a different graph")
    notes = [
        "the two outer corners beside the root are taken as the contact anchors"
    ]
    if tree.root not in graph.exterior:
        return ValidationReport(
            findings=[
                Finding(
                    "RootNotExterior",
                    (tree.root,),
                    f"root {tree.root} is not a corner of the outer face "
                    f"{graph.exterior}",
                )
            ],
            notes=notes,
        )
    if not tree.spans_all:
        unreached = int(np.argmax(tree.label == 0))
        return ValidationReport(
            findings=[
                Finding(
                    "NotSpanning",
                    (unreached,),
                    f"node {unreached} is not reached by the tree "
                    f"({tree._visited} of {graph.node_count} nodes reached)",
                )
            ],
            notes=notes,
        )
    nb2, nb3, ell, arr, viol = tree._blocks()
    order = tree.order
    findings = []
    for code, i, j in viol:
        v = int(order[i])
        u = int(order[j]) if j > 0 else -1
        if code == 0:
            findings.append(
                Finding(
                    "BlockOrderViolation",
                    (v, u),
                    f"ancestor {u} other than the parent sits in the ring of node {v}",
                )
            )
        elif code == 1:
            findings.append(
                Finding(
                    "BlockOrderViolation",
                    (v, u),
                    f"descendant {u} in the ring of node {v} is not a child",
                )
            )
        elif code == 2:
            findings.append(
                Finding(
                    "BlockOrderViolation",
                    (v, u),
                    f"ring of node {v} falls back to an earlier block at neighbor {u}",
                )
            )
        elif code == 3:
            findings.append(
                Finding(
                    "BlockOrderViolation",
                    (v,),
                    f"node {v} has no smaller-labeled unrelated neighbor",
                )
            )
        elif code == 4:
            findings.append(
                Finding(
                    "BlockOrderViolation",
                    (v,),
                    f"node {v} has no larger-labeled unrelated neighbor",
                )
            )
        else:
            findings.append(
                Finding(
                    "EdgePropertyViolation",
                    (v, u),
                    f"unrelated edge ({u}, {v}) breaks the contact rule",
                )
            )
    return ValidationReport(findings=findings, notes=notes)


class TreeAnnotations:
    """Node-indexed facts about a valid orderly spanning tree.

    parent, label, subtree_leaves, left_contact and right_contact are numpy
    arrays indexed by node id; contacts are -1 where a node has none.
    leaf_count and root are plain ints.
    """

    def __init__(self, root, parent, label, subtree_leaves, left_contact, right_contact, leaf_count):
        self.root = root
        self.parent = parent
        self.label = label
        self.subtree_leaves = subtree_leaves
        self.left_contact = left_contact
        self.right_contact = right_contact
        self.leaf_count = leaf_count
        for a in (parent, label, subtree_leaves, left_contact, right_contact):
            a.flags.writeable = False

    def __repr__(self):
        return f"TreeAnnotations(root={self.root}, leaf_count={self.leaf_count})"


def annotate(graph, tree):
    """Annotate an orderly spanning tree with labels, leaf weights and contacts.

    Raises ValueError when the tree fails check_orderly; the message carries
    the first few findings.
    """
    report = check_orderly(graph, tree)
    if report.findings:
        head = "; ".join(f.message for f in report.findings[:4])
        more = len(report.findings) - 4
        if more > 0:
            head += f" (and {more} more)"
        raise ValueError(f"tree is not orderly: {head}")
    lv = tree._level1()
    nb2, nb3, ell, arr, viol = tree._blocks()
    n = graph.node_count
    order = tree.order

    subtree_leaves = np.zeros(n, dtype=np.int32)
    subtree_leaves[order[1:]] = lv["w"][1:]

    left_contact = np.full(n, -1, dtype=np.int32)
    mask = ell[1:] > 0
    left_contact[order[1:][mask]] = order[ell[1:][mask]]

    right_contact = np.full(n, -1, dtype=np.int32)
    mask = arr[1:] > 0
    right_contact[order[1:][mask]] = order[arr[1:][mask]]

    return TreeAnnotations(
        root=tree.root,
        parent=tree.parent.copy(),
        label=tree.label.copy(),
        subtree_leaves=subtree_leaves,
        left_contact=left_contact,
        right_contact=right_contact,
        leaf_count=lv["leaf_count"],
    )
