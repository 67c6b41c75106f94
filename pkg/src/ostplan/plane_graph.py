"""Plane triangulations stored as combinatorial rotation systems.

A graph is described by one adjacency ring per node, listed counterclockwise
in the drawing, plus the three corners of the outer face.  Construction
validates the whole structure eagerly: rings must form a simple symmetric
adjacency, the edge count must match a triangulation, every face walk must
close after three steps, and the declared exterior must be one of the traced
faces.  Faces are walked with the convention that after arriving at v along
u -> v, the walk leaves v toward the counterclockwise successor of u in v's
ring.  Under that convention interior faces come out in clockwise drawing
order and the outer face in counterclockwise order.
"""

from __future__ import annotations

from itertools import chain

import numpy as np

from .errors import (
    AsymmetricEdge,
    ExteriorNotAFace,
    InternalError,
    NotANeighbor,
    NotSimple,
    NotTriangulated,
    WrongEdgeCount,
)


class PlaneTriangulation:
    """An embedded maximal planar graph with a distinguished outer face.

    Nodes are the integers 0 .. node_count-1.  Instances are immutable;
    build one with build_from_rotation.
    """

    def __init__(self, rotation, exterior):
        n = len(rotation)
        if n < 3:
            raise ValueError(f"a triangulation needs at least 3 nodes, got {n}")
        ext = tuple(int(x) for x in exterior)
        if len(ext) != 3:
            raise ValueError(f"exterior must name exactly 3 nodes, got {len(ext)}")
        if len(set(ext)) != 3:
            raise ValueError(f"exterior nodes must be distinct, got {ext}")
        for x in ext:
            if not 0 <= x < n:
                raise ValueError(f"exterior node {x} out of range for {n} nodes")

        deg = np.fromiter((len(row) for row in rotation), dtype=np.int64, count=n)
        total = int(deg.sum())
        flat = np.fromiter(chain.from_iterable(rotation), dtype=np.int64, count=total)
        bad = (flat < 0) | (flat >= n)
        if bad.any():
            raise ValueError(
                f"rotation entry {int(flat[np.argmax(bad)])} out of range for {n} nodes"
            )

        off = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=off[1:])
        owner = np.repeat(np.arange(n, dtype=np.int64), deg)

        ka = owner * n + flat
        kb = flat * n + owner
        sa = np.argsort(ka, kind="stable")
        kas = ka[sa]

        loops = np.nonzero(flat == owner)[0]
        if loops.size:
            v = int(owner[loops[0]])
            raise NotSimple(v, v)
        dup = np.nonzero(kas[1:] == kas[:-1])[0]
        if dup.size:
            k = int(kas[dup[0]])
            raise NotSimple(k // n, k % n)

        sb = np.argsort(kb, kind="stable")
        kbs = kb[sb]
        if not np.array_equal(kas, kbs):
            i = int(np.nonzero(kas != kbs)[0][0])
            if kas[i] < kbs[i]:
                k = int(kas[i])
                raise AsymmetricEdge(k // n, k % n)
            k = int(kbs[i])
            raise AsymmetricEdge(k % n, k // n)

        if total != 2 * (3 * n - 6):
            raise WrongEdgeCount(n, total // 2, 3 * n - 6)

        zero = np.nonzero(deg == 0)[0]
        if zero.size:
            raise NotTriangulated(f"node {int(zero[0])} has no neighbors")

        mirror = np.empty(total, dtype=np.int32)
        mirror[sb] = sa

        cyc = np.arange(1, total + 1, dtype=np.int32)
        cyc[off[1:] - 1] = off[:-1]
        nxt = cyc[mirror]

        ident = np.arange(total, dtype=np.int32)
        n2 = nxt[nxt]
        broken = (nxt[n2] != ident) | (nxt == ident) | (n2 == ident)
        if broken.any():
            s = int(np.argmax(broken))
            raise NotTriangulated(
                f"the face walk from edge ({int(owner[s])}, {int(flat[s])}) "
                "does not close into a triangle"
            )

        self.node_count = n
        self.edge_count = total // 2
        self._deg = deg.astype(np.int32)
        self._off = off
        self._adj = flat.astype(np.int32)
        self._mirror = mirror
        self._nxt = nxt
        self._kas = kas
        self._sa = sa
        self._rot = None

        a, b, c = ext
        s_ab = self._slot(a, b)
        if s_ab < 0 or int(self._adj[nxt[s_ab]]) != c:
            raise ExteriorNotAFace(ext)
        self.exterior = ext

    @classmethod
    def build_from_rotation(cls, rotation, exterior):
        """Validate counterclockwise adjacency rings and wrap them.

        rotation is a sequence of per-node neighbor sequences and exterior
        names the outer triangle in face-walk order (any rotation of it).
        """
        return cls(rotation, exterior)

    def _slot(self, u, v):
        """Index of the directed edge u -> v in the flat ring storage, or -1."""
        key = u * self.node_count + v
        i = int(np.searchsorted(self._kas, key))
        if i < self._kas.size and self._kas[i] == key:
            return int(self._sa[i])
        return -1

    def _check_node(self, node):
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} out of range for {self.node_count} nodes")

    @property
    def rotation(self):
        """The validated rings as a tuple of tuples, built on first access."""
        if self._rot is None:
            off, adj = self._off, self._adj
            self._rot = tuple(
                tuple(int(x) for x in adj[off[i] : off[i + 1]])
                for i in range(self.node_count)
            )
        return self._rot

    def degree(self, node):
        self._check_node(node)
        return int(self._deg[node])

    def neighbors(self, node):
        """Neighbors of node in counterclockwise ring order."""
        self._check_node(node)
        o = int(self._off[node])
        return tuple(int(x) for x in self._adj[o : o + int(self._deg[node])])

    def neighbors_ccw_from(self, node, start):
        """The ring of node rotated to begin at the neighbor start."""
        self._check_node(node)
        self._check_node(start)
        s = self._slot(node, start)
        if s < 0:
            raise NotANeighbor(node, start)
        o = int(self._off[node])
        d = int(self._deg[node])
        ring = self._adj[o : o + d]
        k = s - o
        return tuple(int(x) for x in np.concatenate([ring[k:], ring[:k]]))

    def has_edge(self, u, v):
        self._check_node(u)
        self._check_node(v)
        return self._slot(u, v) >= 0

    def trace_faces(self):
        """Walk every face once and return 2n-4 triangles.

        Each triangle is rotated so its smallest node comes first while
        keeping the traced cyclic order.
        """
        nxt = self._nxt
        ident = np.arange(nxt.size, dtype=np.int32)
        n2 = nxt[nxt]
        reps = np.nonzero((ident <= nxt) & (ident <= n2))[0]
        owner = np.repeat(np.arange(self.node_count, dtype=np.int32), self._deg)
        tri = np.stack([owner[reps], owner[nxt[reps]], owner[n2[reps]]], axis=1)
        if tri.shape[0] != 2 * self.node_count - 4:
            raise InternalError("face trace produced the wrong number of faces")
        k = np.argmin(tri, axis=1)
        cols = (k[:, None] + np.arange(3)) % 3
        tri = np.take_along_axis(tri, cols, axis=1)
        return [tuple(int(x) for x in row) for row in tri]

    def __repr__(self):
        return (
            f"PlaneTriangulation(nodes={self.node_count}, edges={self.edge_count}, "
            f"exterior={self.exterior})"
        )
