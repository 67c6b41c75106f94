"""Rasterization, partition, adjacency, shape and bound checks."""

from __future__ import annotations

import numpy as np
import pytest

from ostplan import (
    ParsedPlan,
    check_adjacency,
    check_bounds,
    check_partition,
    check_shapes,
    classify_module,
    floorplan,
    rasterize,
    validate_floorplan,
)


def _plan(height, width, rects, **meta):
    return ParsedPlan(height, width, {k: str(v) for k, v in meta.items()}, rects)


def _kinds(report):
    return {f.kind for f in report.findings}


def test_rasterize_the_smallest_plan(k3):
    grid = rasterize(floorplan(k3))
    assert grid.dtype == np.int32
    assert grid.tolist() == [[0, 0], [1, 2]]


def test_rasterize_marks_gaps_and_overlaps():
    plan = _plan(2, 2, [[(0, 0, 2, 1)], [(0, 0, 1, 2)]])
    grid = rasterize(plan)
    assert grid[0, 0] == -2
    assert grid[1, 1] == -1


def test_partition_spots_a_gap():
    plan = _plan(2, 2, [[(0, 0, 2, 1)], [(0, 1, 1, 2)]])
    report = check_partition(plan)
    assert _kinds(report) == {"Gap"}
    assert report.findings[0].subject == (1, 1)


def test_partition_spots_an_overlap():
    plan = _plan(2, 2, [[(0, 0, 2, 2)], [(1, 1, 2, 2)]])
    report = check_partition(plan)
    assert "Overlap" in _kinds(report)
    assert any(f.subject == (0, 1) for f in report.findings)


def test_partition_spots_an_escaped_rectangle():
    plan = _plan(2, 2, [[(0, 0, 2, 2)], [(1, 2, 2, 3)]])
    assert "OutOfBounds" in _kinds(check_partition(plan))


def test_partition_spots_a_split_module():
    plan = _plan(1, 3, [[(0, 0, 1, 1), (2, 0, 3, 1)], [(1, 0, 2, 1)]])
    report = check_partition(plan)
    assert _kinds(report) == {"Disconnected"}
    assert report.findings[0].subject == (0,)


def test_partition_spots_an_empty_module():
    plan = _plan(1, 2, [[(0, 0, 2, 1)], [(1, 1, 1, 1)]])
    assert "Disconnected" in _kinds(check_partition(plan))


def test_partition_rejects_an_empty_canvas():
    with pytest.raises(ValueError):
        check_partition(_plan(0, 3, [[(0, 0, 1, 1)]]))


def test_adjacency_on_a_correct_plan(g12):
    assert check_adjacency(floorplan(g12), g12).ok


def test_adjacency_reports_both_directions(g9):
    plan = floorplan(g9)
    rects = [plan.module_rects(v) for v in range(9)]
    u, w = next(
        (a, b)
        for a in range(9)
        for b in range(a + 1, 9)
        if not g9.has_edge(a, b)
    )
    rects[u], rects[w] = rects[w], rects[u]
    report = check_adjacency(_plan(plan.height, plan.width, rects), g9)
    kinds = _kinds(report)
    assert "MissingAdjacency" in kinds and "SpuriousAdjacency" in kinds


def test_classify_module_names_every_shape():
    assert classify_module([(0, 0, 2, 3)]) == "I"
    assert classify_module([(0, 0, 1, 2), (0, 2, 3, 3)]) == "L"
    assert classify_module([(2, 0, 3, 2), (0, 2, 3, 3)]) == "L"
    assert classify_module([(1, 0, 2, 2), (0, 2, 3, 3)]) == "T"
    assert classify_module([(0, 0, 2, 1), (1, 1, 3, 2)]) == "Z"
    assert classify_module([]) == "Empty"
    assert classify_module([(0, 0, 1, 1), (0, 0, 0, 5)]) == "I"
    assert classify_module([(0, 0, 1, 1), (2, 0, 3, 1)]) == "Other"
    assert classify_module([(0, 0, 1, 1), (0, 2, 1, 3)]) == "Other"
    assert (
        classify_module([(0, 0, 3, 1), (1, 1, 2, 2), (0, 2, 3, 3)]) == "Other"
    )


def test_shapes_flag_a_plus_and_a_thick_branch():
    cross = _plan(3, 3, [[(1, 0, 2, 3), (0, 1, 3, 2)]])
    report = check_shapes(cross)
    assert _kinds(report) == {"ForbiddenShape"}
    assert report.shape_histogram == {"Other": 1}
    thick = _plan(3, 3, [[(2, 0, 3, 3), (0, 1, 3, 3)]])
    report = check_shapes(thick)
    assert _kinds(report) == {"ThickBranch"}
    assert report.shape_histogram == {"L": 1}


def test_bounds_accept_the_guaranteed_canvas():
    plan = _plan(11, 8, [[(0, 0, 1, 1)]] * 12, leaves=8)
    report = check_bounds(plan, node_count=12)
    assert report.ok and not report.warnings


def test_bounds_flag_a_tall_canvas():
    plan = _plan(12, 8, [[(0, 0, 1, 1)]] * 12, leaves=8)
    assert _kinds(check_bounds(plan, node_count=12)) == {"HeightBoundViolated"}


def test_bounds_flag_a_width_leaf_mismatch():
    plan = _plan(11, 7, [[(0, 0, 1, 1)]] * 12, leaves=8)
    assert _kinds(check_bounds(plan, node_count=12)) == {"WidthMismatch"}


def test_bounds_only_warn_past_the_minimum_leaf_width():
    plan = _plan(11, 9, [[(0, 0, 1, 1)]] * 12, leaves=9)
    report = check_bounds(plan, node_count=12)
    assert report.ok
    assert [w.kind for w in report.warnings] == ["LeafBoundExceeded"]


def test_bounds_note_an_unknown_leaf_count():
    plan = _plan(11, 8, [[(0, 0, 1, 1)]] * 12)
    report = check_bounds(plan, node_count=12)
    assert report.ok
    assert any("leaf count unknown" in note for note in report.notes)


def test_validate_floorplan_merges_everything(g12, t12):
    from ostplan import grow_branches, reduce_branch_heights
    from ostplan.layout import visibility_drawing_of_tree, stretch_to_two_visibility

    drawing = stretch_to_two_visibility(g12, t12, visibility_drawing_of_tree(t12))
    plan = reduce_branch_heights(grow_branches(g12, t12, drawing))
    report = validate_floorplan(g12, plan)
    assert report.ok
    assert (report.height, report.width) == (9, 8)
    assert report.leaf_count == 8
    assert report.shape_histogram == {"I": 8, "L": 2, "T": 2}


def test_validate_floorplan_collects_failures(g12):
    plan = floorplan(g12)
    rects = [plan.module_rects(v) for v in range(12)]
    rects[5] = [(0, 0, 0, 0)]
    report = validate_floorplan(g12, _plan(plan.height, plan.width, rects))
    kinds = _kinds(report)
    assert "Disconnected" in kinds or "Gap" in kinds
    assert "MissingAdjacency" in kinds
    assert not report.ok
