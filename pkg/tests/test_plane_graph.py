"""Construction, queries and rejection behavior of PlaneTriangulation."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostplan import (
    AsymmetricEdge,
    ExteriorNotAFace,
    NotANeighbor,
    NotSimple,
    NotTriangulated,
    PlaneTriangulation,
    WrongEdgeCount,
    random_triangulation,
)

K4_ROT = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
K4_EXT = (0, 1, 2)

instance_params = st.tuples(
    st.integers(min_value=3, max_value=40),
    st.integers(min_value=0, max_value=50),
    st.booleans(),
)


def test_counts_match_a_triangulation(g12):
    assert g12.node_count == 12
    assert g12.edge_count == 3 * 12 - 6
    assert g12.exterior == (0, 1, 11)
    assert len(g12.trace_faces()) == 2 * 12 - 4


def test_rotation_round_trips_the_input(g12, k4):
    rows = g12.rotation
    rebuilt = PlaneTriangulation([list(r) for r in rows], g12.exterior)
    assert rebuilt.rotation == rows
    assert k4.rotation == tuple(tuple(r) for r in K4_ROT)
    assert PlaneTriangulation.build_from_rotation(K4_ROT, K4_EXT).rotation == k4.rotation


def test_neighbor_queries_follow_the_rings(g12):
    assert g12.degree(0) == 5
    assert g12.neighbors(3) == (2, 1, 4)
    assert g12.has_edge(2, 8) and g12.has_edge(8, 2)
    assert not g12.has_edge(3, 6)
    assert g12.neighbors_ccw_from(2, 4) == (4, 8, 5, 0, 1, 3)
    with pytest.raises(NotANeighbor):
        g12.neighbors_ccw_from(3, 6)
    with pytest.raises(ValueError):
        g12.degree(12)


def test_every_traced_face_is_a_triangle_of_edges(g12):
    faces = g12.trace_faces()
    assert len(set(faces)) == len(faces)
    for a, b, c in faces:
        assert a < b and a < c
        assert g12.has_edge(a, b) and g12.has_edge(b, c) and g12.has_edge(c, a)
    corners = {f for f in faces if set(f) == set(g12.exterior)}
    assert len(corners) == 1


def test_every_edge_borders_exactly_two_faces(k4, g9):
    for g in (k4, g9):
        sides = {}
        for a, b, c in g.trace_faces():
            for u, v in ((a, b), (b, c), (c, a)):
                key = (min(u, v), max(u, v))
                sides[key] = sides.get(key, 0) + 1
        assert all(count == 2 for count in sides.values())
        assert len(sides) == g.edge_count


def test_a_self_loop_is_rejected():
    rot = [row[:] for row in K4_ROT]
    rot[0].append(0)
    with pytest.raises(NotSimple):
        PlaneTriangulation(rot, K4_EXT)


def test_a_parallel_edge_is_rejected():
    rot = [row[:] for row in K4_ROT]
    rot[0].append(1)
    rot[1].append(0)
    with pytest.raises(NotSimple):
        PlaneTriangulation(rot, K4_EXT)


def test_a_one_sided_edge_is_rejected():
    rot = [row[:] for row in K4_ROT]
    rot[3] = [0, 1]
    with pytest.raises(AsymmetricEdge):
        PlaneTriangulation(rot, K4_EXT)


def test_a_missing_edge_fails_the_count():
    rot = [[1, 3, 2], [3, 0], [0, 3], [0, 1, 2]]
    with pytest.raises(WrongEdgeCount) as err:
        PlaneTriangulation(rot, K4_EXT)
    assert "5" in str(err.value) and "6" in str(err.value)


def test_a_reflected_node_breaks_the_face_walk():
    rot = [row[:] for row in K4_ROT]
    rot[3] = [0, 2, 1]
    with pytest.raises(NotTriangulated):
        PlaneTriangulation(rot, K4_EXT)


def test_the_exterior_must_trace_a_face():
    with pytest.raises(ExteriorNotAFace):
        PlaneTriangulation(K4_ROT, (0, 2, 1))
    with pytest.raises(ExteriorNotAFace):
        PlaneTriangulation(K4_ROT, (0, 1, 3))


def test_malformed_arguments_are_rejected_early():
    with pytest.raises(ValueError):
        PlaneTriangulation([[1], [0]], (0, 1, 2))
    with pytest.raises(ValueError):
        PlaneTriangulation(K4_ROT, (0, 1))
    with pytest.raises(ValueError):
        PlaneTriangulation(K4_ROT, (0, 1, 1))
    with pytest.raises(ValueError):
        PlaneTriangulation(K4_ROT, (0, 1, 9))
    bad = [row[:] for row in K4_ROT]
    bad[2] = [0, 7, 1]
    with pytest.raises(ValueError):
        PlaneTriangulation(bad, K4_EXT)


@settings(max_examples=25, deadline=None)
@given(instance_params)
def test_generated_instances_expose_consistent_structure(params):
    n, seed, flip = params
    g = random_triangulation(n, seed, n // 2 if flip else 0)
    assert g.node_count == n
    assert g.edge_count == 3 * n - 6
    assert g.exterior == (0, 1, 2)
    rebuilt = PlaneTriangulation([list(r) for r in g.rotation], g.exterior)
    assert rebuilt.rotation == g.rotation
    for v in range(n):
        ring = g.neighbors(v)
        assert len(ring) == g.degree(v) >= 2
        assert g.neighbors_ccw_from(v, ring[1]) == ring[1:] + ring[:1]
