"""Reading and writing the plain-text graph and plan formats."""

from __future__ import annotations

import io

import pytest

from ostplan import (
    ParseError,
    floorplan,
    read_graph,
    read_plan,
    write_graph,
    write_plan,
)


def _graph_text(graph):
    buf = io.StringIO()
    write_graph(graph, buf)
    return buf.getvalue()


def _plan_text(plan, meta=None):
    buf = io.StringIO()
    write_plan(plan, buf, meta=meta)
    return buf.getvalue()


def test_graph_files_round_trip_byte_for_byte(g12, tmp_path):
    path = tmp_path / "g.tri"
    write_graph(g12, path)
    loaded = read_graph(path)
    assert loaded.rotation == g12.rotation
    assert loaded.exterior == g12.exterior
    assert _graph_text(loaded) == path.read_text(encoding="utf-8")


def test_plan_files_round_trip_byte_for_byte(k4, tmp_path):
    plan = floorplan(k4)
    path = tmp_path / "k4.plan"
    write_plan(plan, path)
    loaded = read_plan(path)
    assert loaded.provenance == "file"
    assert (loaded.height, loaded.width) == (plan.height, plan.width)
    assert loaded.leaf_count == plan.leaf_count
    assert loaded.root == plan.root
    assert loaded.node_count == plan.node_count
    for v in range(plan.node_count):
        assert loaded.module_rects(v) == plan.module_rects(v)
    assert _plan_text(loaded) == path.read_text(encoding="utf-8")


def test_comments_and_blank_lines_are_skipped(k3):
    text = _graph_text(k3)
    noisy = "# a note\n\n" + text.replace("\n", "\n# mid\n\n", 1)
    assert read_graph(io.StringIO(noisy)).rotation == k3.rotation


def test_custom_meta_entries_survive(k4):
    plan = floorplan(k4)
    text = _plan_text(plan, meta={"instance": "k4.tri", "note": "two words"})
    loaded = read_plan(io.StringIO(text))
    assert loaded.meta["instance"] == "k4.tri"
    assert loaded.meta["note"] == "two words"
    assert loaded.meta["tool"] == "ostplan"


def test_meta_arguments_are_validated(k4):
    plan = floorplan(k4)
    with pytest.raises(ValueError):
        _plan_text(plan, meta={"two words": "x"})
    with pytest.raises(ValueError):
        _plan_text(plan, meta={"key": "a\nb"})
    with pytest.raises(ValueError):
        _plan_text(plan, meta={"key": "   "})


def test_non_integer_meta_reads_as_unknown(k4):
    plan = floorplan(k4)
    text = _plan_text(plan, meta={"leaves": "many"})
    loaded = read_plan(io.StringIO(text))
    assert loaded.leaf_count is None


def _line_of(exc):
    return int(str(exc.value).split(":")[0].split()[1])


def test_graph_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO("plan 1\n"))
    assert "line 1" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO("tri 1\nnodes 4\n"))
    assert "line 2" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO("tri 1\nn x\n"))
    assert "integer" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO("tri 1\nn 2\n"))
    assert "at least 3" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO("tri 1\nn 3\nrot 1 2\nrot 2 0\n"))
    assert "rotation line for node 2" in str(err.value)

    text = "tri 1\nn 3\nrot 1 2\nrot 2 0\nrot 0 1\next 0 1\n"
    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO(text))
    assert "ext" in str(err.value)

    text = "tri 1\nn 3\nrot 1 2\nrot 2 0\nrot 0 1\next 0 1 2\nrot 9\n"
    with pytest.raises(ParseError) as err:
        read_graph(io.StringIO(text))
    assert "line 7" in str(err.value)


def test_plan_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("tri 1\n"))
    assert "line 1" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 0 4\n"))
    assert "positive" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\n"))
    assert "no module lines" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\nmod 1 0 0 1 1\n"))
    assert "node 0" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\nmod 0 0 0 1\n"))
    assert "mod <node>" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\nmod 0 0 0 1 1 2\n"))
    assert "groups of four" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\nmod 0 0 0 1 1\nmeta a b\n"))
    assert "before mod" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(
            io.StringIO("plan 1\nsize 2 2\nmeta a 1\nmeta a 2\nmod 0 0 0 1 1\n")
        )
    assert "duplicate meta" in str(err.value)

    with pytest.raises(ParseError) as err:
        read_plan(io.StringIO("plan 1\nsize 2 2\nwall 0\n"))
    assert "unknown line tag" in str(err.value)


def test_parse_error_reports_its_position():
    err = ParseError(7, "something odd")
    assert err.line_no == 7
    assert str(err) == "line 7: something odd"
