"""Canonical orders, realizers and orderly spanning trees."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostplan import (
    NotANeighbor,
    OrderlySpanningTree,
    annotate,
    canonical_order,
    check_orderly,
    check_realizer,
    min_leaf_ost,
    ost_from_realizer,
    random_triangulation,
    realizer_from_canonical,
)
from conftest import REF12_PARENTS
from oracles import verify_canonical

instance_params = st.tuples(
    st.integers(min_value=3, max_value=40),
    st.integers(min_value=0, max_value=50),
    st.booleans(),
)

# Contacts of the hand-labeled 12-node tree, node-indexed, -1 where absent.
REF12_LEFT_CONTACT = [-1, -1, 1, 1, 1, 2, 5, 5, 4, 1, 9, 1]
REF12_RIGHT_CONTACT = [-1, 11, 8, 4, 9, 8, 11, 11, 9, 11, 11, -1]


def _parents(graph, parent_of):
    return [parent_of.get(v + 1, 0) - 1 for v in range(graph.node_count)]


def test_canonical_order_replays_on_the_contour(g12, g9, g8):
    for g in (g12, g9, g8):
        order = canonical_order(g)
        ok, why = verify_canonical(g, order)
        assert ok, why
        assert order[0] == g.exterior[0] and order[1] == g.exterior[1]


def test_canonical_order_honors_the_anchor_pair(g12):
    e0, e1, e2 = g12.exterior
    order = canonical_order(g12, anchor=(e1, e2))
    assert (order[0], order[1], order[-1]) == (e1, e2, e0)
    ok, why = verify_canonical(g12, order)
    assert ok, why


def test_canonical_order_rejects_bad_anchors(g12):
    e0, e1, e2 = g12.exterior
    with pytest.raises(ValueError):
        canonical_order(g12, anchor=(e1, e0))
    with pytest.raises(ValueError):
        canonical_order(g12, anchor=(e0, 5))
    with pytest.raises(ValueError):
        canonical_order(g12, anchor=(e0,))


def test_k4_gets_the_hand_checked_coloring(k4):
    order = canonical_order(k4)
    assert list(order) == [0, 1, 3, 2]
    r = realizer_from_canonical(k4, order)
    assert r.roots == (0, 1, 2)
    assert r.parents[0][3] == 0
    assert r.parents[1][3] == 1
    assert r.parents[2][3] == 2
    for p in r.parents:
        assert p[0] == p[1] == p[2] == -1
    assert check_realizer(k4, r).ok


def test_realizer_rejects_orders_that_never_happened(g12):
    order = list(canonical_order(g12))
    with pytest.raises(ValueError):
        realizer_from_canonical(g12, order[:-1])
    with pytest.raises(ValueError):
        realizer_from_canonical(g12, order[:-1] + [order[0]])
    swapped = order[:]
    swapped[0], swapped[1] = swapped[1], swapped[0]
    with pytest.raises(ValueError):
        realizer_from_canonical(g12, swapped)
    corrupted = order[:]
    corrupted[3], corrupted[7] = corrupted[7], corrupted[3]
    with pytest.raises(ValueError):
        realizer_from_canonical(g12, corrupted)


def test_check_realizer_catches_a_recolored_edge(g12):
    r = realizer_from_canonical(g12, canonical_order(g12))
    assert check_realizer(g12, r).ok
    from ostplan import Realizer

    broken = [np.array(p) for p in r.parents]
    victim = int(np.nonzero(broken[0] >= 0)[0][0])
    broken[0][victim] = int(broken[1][victim])
    report = check_realizer(g12, Realizer(r.roots, tuple(broken)))
    assert not report.ok
    assert all(f.kind and f.message for f in report.findings)


def test_every_extracted_tree_is_orderly(g12):
    r = realizer_from_canonical(g12, canonical_order(g12))
    for which in (0, 1, 2):
        t = ost_from_realizer(g12, r, which)
        assert t.root == r.roots[which]
        assert t.spans_all
        assert check_orderly(g12, t).ok
    with pytest.raises(ValueError):
        ost_from_realizer(g12, r, 3)


def test_min_leaf_ost_wins_among_the_three_trees(g12, g9):
    for g in (g12, g9):
        r = realizer_from_canonical(g, canonical_order(g))
        candidates = [ost_from_realizer(g, r, w) for w in (0, 1, 2)]
        best = min((t.leaf_count, t.root) for t in candidates)
        chosen = min_leaf_ost(g)
        assert (chosen.leaf_count, chosen.root) == best


def test_min_leaf_ost_on_k4_is_the_star(k4):
    t = min_leaf_ost(k4)
    assert t.root == 0
    assert list(t.parent) == [-1, 0, 0, 0]
    assert t.leaf_count == 3


def test_annotate_reports_the_hand_checked_contacts(g12, t12):
    ann = annotate(g12, t12)
    assert ann.root == 0
    assert ann.leaf_count == 8
    assert list(ann.label) == list(range(1, 13))
    assert ann.parent[2] == 0
    assert ann.subtree_leaves[2] == 2
    assert ann.subtree_leaves[0] == 8
    assert list(ann.left_contact) == REF12_LEFT_CONTACT
    assert list(ann.right_contact) == REF12_RIGHT_CONTACT


def test_annotate_rejects_a_disorderly_tree(g12):
    par = _parents(g12, REF12_PARENTS)
    par[1] = 11
    bent = OrderlySpanningTree(g12, 0, par, anchor=1)
    report = check_orderly(g12, bent)
    assert {f.kind for f in report.findings} == {"BlockOrderViolation"}
    with pytest.raises(ValueError, match="not orderly"):
        annotate(g12, bent)


def test_check_orderly_flags_an_interior_root(g12):
    start = 7
    parent = [-1] * 12
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for w in g12.neighbors(v):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                queue.append(w)
    t = OrderlySpanningTree(g12, start, parent)
    report = check_orderly(g12, t)
    assert [f.kind for f in report.findings] == ["RootNotExterior"]
    assert report.findings[0].subject == (7,)


def test_check_orderly_notes_its_anchor_assumption(g12, t12):
    report = check_orderly(g12, t12)
    assert report.ok
    assert any("anchor" in note for note in report.notes)


def test_check_orderly_flags_an_unreached_node(g12):
    par = _parents(g12, REF12_PARENTS)
    par[4] = -1
    orphan = OrderlySpanningTree(g12, 0, par, anchor=1)
    assert not orphan.spans_all
    report = check_orderly(g12, orphan)
    assert [f.kind for f in report.findings] == ["NotSpanning"]
    assert report.findings[0].subject == (4,)


def test_check_orderly_flags_a_path_tree_on_k4(k4):
    t = OrderlySpanningTree(k4, 0, [-1, 0, 3, 1], anchor=1)
    assert t.spans_all
    report = check_orderly(k4, t)
    assert not report.ok
    assert {f.kind for f in report.findings} <= {
        "BlockOrderViolation",
        "EdgePropertyViolation",
    }


def test_check_orderly_demands_the_matching_graph(g12, g9, t9):
    with pytest.raises(ValueError):
        check_orderly(g12, t9)


def test_tree_constructor_rejects_malformed_input(g12):
    good = _parents(g12, REF12_PARENTS)
    with pytest.raises(ValueError):
        OrderlySpanningTree(g12, 12, good)
    with pytest.raises(ValueError):
        OrderlySpanningTree(g12, 0, good[:-1])
    with pytest.raises(ValueError):
        OrderlySpanningTree(g12, 0, [99] * 12)
    rooted = good[:]
    rooted[0] = 3
    with pytest.raises(ValueError):
        OrderlySpanningTree(g12, 0, rooted)
    with pytest.raises(NotANeighbor):
        OrderlySpanningTree(g12, 0, good, anchor=8)


def test_labels_follow_preorder_and_sizes_add_up(t12):
    t = t12
    assert list(t.label) == list(range(1, 13))
    assert t.order[1] == 0 and t.depth[1] == 0
    n = 12
    for lab in range(2, n + 1):
        v = int(t.order[lab])
        p = int(t.parent[v])
        assert t.label[p] < lab
        assert t.depth[lab] == t.depth[t.label[p]] + 1
    assert int(t.size[1]) == n


@settings(max_examples=25, deadline=None)
@given(instance_params)
def test_the_pipeline_front_half_holds_on_random_instances(params):
    n, seed, flip = params
    g = random_triangulation(n, seed, n // 2 if flip else 0)
    order = canonical_order(g)
    ok, why = verify_canonical(g, order)
    assert ok, why
    r = realizer_from_canonical(g, order)
    assert check_realizer(g, r).ok
    t = min_leaf_ost(g)
    assert t.spans_all
    assert check_orderly(g, t).ok
