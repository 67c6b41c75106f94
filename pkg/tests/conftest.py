"""Shared fixtures: small hand-checked triangulations and their layouts.

Rotation tables below are written 1-based to stay legible next to the hand
drawings they were checked against; _pt shifts them to the package's 0-based
node ids.  Expected layout tables (bar bottoms, sight lines, module
rectangles) were derived once by hand and by the independent simulators in
oracles.py, then frozen here.
"""

from __future__ import annotations

import pytest

from ostplan import OrderlySpanningTree, PlaneTriangulation


def _pt(rotation, exterior):
    rot = [[w - 1 for w in ring] for ring in rotation]
    return PlaneTriangulation(rot, tuple(e - 1 for e in exterior))


def _tree(graph, parent_of, anchor):
    n = graph.node_count
    parent = [parent_of.get(v + 1, 0) - 1 for v in range(n)]
    return OrderlySpanningTree(graph, 0, parent, anchor=anchor - 1)


REF12_ROTATION = [
    (2, 3, 6, 7, 12),
    (1, 12, 10, 5, 4, 3),
    (1, 2, 4, 5, 9, 6),
    (3, 2, 5),
    (3, 4, 2, 10, 9),
    (1, 3, 9, 8, 7),
    (1, 6, 8, 12),
    (7, 6, 9, 10, 11, 12),
    (8, 6, 3, 5, 10),
    (8, 9, 5, 2, 12, 11),
    (8, 10, 12),
    (1, 7, 8, 11, 10, 2),
]
REF12_EXTERIOR = (1, 2, 12)
REF12_PARENTS = {2: 1, 3: 1, 6: 1, 7: 1, 12: 1, 4: 3, 5: 3, 8: 7, 9: 8, 10: 8, 11: 8}

# Bar bottoms of the stretched drawing, indexed by node id + 1.
REF12_BOTTOM = [1, 9, 5, 6, 7, 4, 2, 3, 6, 8, 4, 9]

# Sight lines of the stretched drawing, keyed by 1-based node pairs.
REF12_STRIPS = {
    (2, 3): 2, (3, 6): 2, (6, 7): 2, (7, 12): 2,
    (6, 8): 3, (8, 12): 3,
    (6, 9): 4, (9, 10): 4, (10, 11): 4, (11, 12): 4,
    (3, 9): 5, (10, 12): 5,
    (5, 9): 6, (4, 5): 6, (2, 4): 6,
    (5, 10): 7, (2, 5): 7,
    (2, 10): 8,
    (2, 12): 9,
}

# Final module rectangles of the reduced plan, keyed by node id + 1; each
# rectangle is (x0, y0, x1, y1) and multi-rectangle modules list the body
# slab first.
REF12_RECTS = {
    1: [(0, 0, 8, 1)],
    2: [(0, 1, 1, 9)],
    3: [(1, 1, 3, 4), (1, 4, 4, 5)],
    4: [(1, 5, 2, 6)],
    5: [(2, 5, 4, 6), (1, 6, 5, 7)],
    6: [(3, 1, 4, 4)],
    7: [(4, 1, 7, 2)],
    8: [(4, 2, 7, 3)],
    9: [(4, 3, 5, 6)],
    10: [(5, 3, 6, 7), (1, 7, 7, 8)],
    11: [(6, 3, 7, 7)],
    12: [(7, 1, 8, 8), (1, 8, 8, 9)],
}

N9_ROTATION = [
    (2, 3, 6, 7, 9),
    (1, 9, 8, 5, 4, 3),
    (1, 2, 4, 5, 8, 7, 6),
    (3, 2, 5),
    (3, 4, 2, 8),
    (1, 3, 7),
    (1, 6, 3, 8, 9),
    (7, 3, 5, 2, 9),
    (1, 7, 8, 2),
]
N9_EXTERIOR = (1, 2, 9)
N9_PARENTS = {2: 1, 3: 1, 6: 1, 7: 1, 9: 1, 4: 3, 5: 3, 8: 7}

N8_ROTATION = [
    (2, 3, 6, 8),
    (1, 8, 7, 5, 4, 3),
    (1, 2, 4, 5, 7, 6),
    (3, 2, 5),
    (3, 4, 2, 7),
    (1, 3, 7, 8),
    (6, 3, 5, 2, 8),
    (1, 6, 7, 2),
]
N8_EXTERIOR = (1, 2, 8)
N8_PARENTS = {2: 1, 3: 1, 6: 1, 8: 1, 4: 3, 5: 3, 7: 6}

N8_RECTS = {
    1: [(0, 0, 5, 1)],
    2: [(0, 1, 1, 7)],
    3: [(1, 1, 3, 3)],
    4: [(1, 3, 2, 4)],
    5: [(2, 3, 3, 4), (1, 4, 3, 5)],
    6: [(3, 1, 4, 2)],
    7: [(3, 2, 4, 5), (1, 5, 4, 6)],
    8: [(4, 1, 5, 6), (1, 6, 5, 7)],
}

K3_ROTATION = [(2, 3), (3, 1), (1, 2)]
K3_EXTERIOR = (1, 2, 3)

K4_ROTATION = [(2, 4, 3), (3, 4, 1), (1, 4, 2), (1, 2, 3)]
K4_EXTERIOR = (1, 2, 3)

K4_RECTS = {
    1: [(0, 0, 3, 1)],
    2: [(0, 1, 1, 3)],
    3: [(2, 1, 3, 2), (1, 2, 3, 3)],
    4: [(1, 1, 2, 2)],
}


@pytest.fixture
def g12():
    return _pt(REF12_ROTATION, REF12_EXTERIOR)


@pytest.fixture
def t12(g12):
    return _tree(g12, REF12_PARENTS, anchor=2)


@pytest.fixture
def g9():
    return _pt(N9_ROTATION, N9_EXTERIOR)


@pytest.fixture
def t9(g9):
    return _tree(g9, N9_PARENTS, anchor=2)


@pytest.fixture
def g8():
    return _pt(N8_ROTATION, N8_EXTERIOR)


@pytest.fixture
def t8(g8):
    return _tree(g8, N8_PARENTS, anchor=2)


@pytest.fixture
def k3():
    return _pt(K3_ROTATION, K3_EXTERIOR)


@pytest.fixture
def k4():
    return _pt(K4_ROTATION, K4_EXTERIOR)
