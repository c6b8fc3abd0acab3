import csv
import io
import json

import pytest
from hypothesis import given

from ocelkit import Event, EventType, ObjectEntity, ObjectType, UnknownType, build_log
from ocelkit.analysis import (
    CSV_HEADER,
    OcDfg,
    discover_ocdfg,
    flatten,
    render_ocdfg_dot,
    statistics,
    traces_to_csv,
)

from conftest import ts
from oracles import dfg_bruteforce, incidence_pairs
from randlogs import logs

# worked out by hand from the fixture: o1 e1,e2,e4 / o2 e1,e3 / o3 e1
ORDER_MINI_DFG = OcDfg(
    nodes=("confirm", "place_order"),
    arcs={
        ("confirm", "confirm", "order"): 1,
        ("place_order", "confirm", "item"): 1,
        ("place_order", "confirm", "order"): 1,
    },
    start_frequencies={("place_order", "item"): 2, ("place_order", "order"): 1},
    end_frequencies={("confirm", "item"): 1, ("confirm", "order"): 1, ("place_order", "item"): 1},
)


def test_flatten_order(order_mini):
    (trace,) = flatten(order_mini, "order")
    assert trace.case_id == "o1"
    assert [s.event_id for s in trace.steps] == ["e1", "e2", "e4"]


def test_flatten_item_divergence(order_mini):
    traces = flatten(order_mini, "item")
    assert [t.case_id for t in traces] == ["o2", "o3"]
    assert [[s.event_id for s in t.steps] for t in traces] == [["e1", "e3"], ["e1"]]


def test_flatten_type_without_objects():
    log = build_log(object_types=[ObjectType("pallet")])
    assert flatten(log, "pallet") == []


def test_flatten_keeps_empty_traces():
    log = build_log(object_types=[ObjectType("t")], objects=[ObjectEntity("a", "t"), ObjectEntity("b", "t")])
    assert [len(t) for t in flatten(log, "t")] == [0, 0]


def test_flatten_unknown_type(order_mini):
    with pytest.raises(UnknownType):
        flatten(order_mini, "pallet")


def test_csv_export(order_mini):
    text = traces_to_csv(flatten(order_mini, "item"))
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[1:] == [
        ["o2", "e1", "place_order", "2023-10-23T08:15:00.000+00:00"],
        ["o2", "e3", "confirm", "2023-10-23T10:30:00.000+00:00"],
        ["o3", "e1", "place_order", "2023-10-23T08:15:00.000+00:00"],
    ]
    assert text.endswith("\r\n")


def test_csv_quoting():
    log = build_log(
        event_types=[EventType('say "hi", then\nleave')],
        object_types=[ObjectType("t")],
        objects=[ObjectEntity("a,b", "t")],
        events=[Event("e", 'say "hi", then\nleave', ts("2020-01-01T00:00:00"), {}, [("a,b", "q")])],
    )
    text = traces_to_csv(flatten(log, "t"))
    assert '"a,b"' in text and '"say ""hi"", then\nleave"' in text
    assert list(csv.reader(io.StringIO(text)))[1][2] == 'say "hi", then\nleave'


def test_statistics_empty():
    s = statistics(build_log())
    assert (s.event_count, s.object_count, s.e2o_count, s.o2o_count, s.snapshot_count) == (0, 0, 0, 0, 0)
    assert s.time_span is None and s.objects_per_event_mean == 0.0


def test_statistics_order_mini(order_mini):
    s = statistics(order_mini)
    assert (s.event_count, s.object_count, s.e2o_count, s.o2o_count, s.snapshot_count) == (4, 3, 6, 2, 6)
    assert s.objects_per_event_mean == 1.5
    assert s.events_per_type == {"confirm": 3, "place_order": 1}
    assert s.objects_per_type == {"item": 2, "order": 1}
    assert s.time_span == (ts("2023-10-23T08:15:00"), ts("2023-10-23T11:45:00"))


def test_statistics_serializations(order_mini):
    s = statistics(order_mini)
    assert json.loads(s.to_json())["time_span"] == ["2023-10-23T08:15:00.000+00:00", "2023-10-23T11:45:00.000+00:00"]
    assert s.to_text().startswith("events: 4\nobjects: 3\n")


def test_dfg_empty():
    assert discover_ocdfg(build_log()) == OcDfg()


def test_dfg_counting_rule():
    log = build_log(
        event_types=[EventType("A"), EventType("B")],
        object_types=[ObjectType("T")],
        objects=[ObjectEntity("o", "T")],
        events=[
            Event("1", "A", ts("2020-01-01T00:00:00"), {}, [("o", "")]),
            Event("2", "B", ts("2020-01-02T00:00:00"), {}, [("o", "")]),
            Event("3", "B", ts("2020-01-03T00:00:00"), {}, [("o", "")]),
        ],
    )
    g = discover_ocdfg(log)
    assert g.arcs == {("A", "B", "T"): 1, ("B", "B", "T"): 1}
    assert g.start_frequencies == {("A", "T"): 1}
    assert g.end_frequencies == {("B", "T"): 1}


def test_dfg_order_mini(order_mini):
    g = discover_ocdfg(order_mini)
    assert g == ORDER_MINI_DFG
    assert (g.arcs, g.start_frequencies, g.end_frequencies) == dfg_bruteforce(order_mini)


def test_dot_empty():
    assert render_ocdfg_dot(OcDfg()) == "digraph ocdfg {\n  rankdir=LR;\n  node [shape=box];\n}\n"


def test_dot_single_arc():
    dot = render_ocdfg_dot(OcDfg(nodes=("A", "B"), arcs={("A", "B", "T"): 3}))
    edges = [line for line in dot.splitlines() if "->" in line]
    assert len(edges) == 1 and "T" in edges[0] and "3" in edges[0]


def test_dot_order_mini(order_mini):
    dot = render_ocdfg_dot(discover_ocdfg(order_mini))
    node_lines = [line for line in dot.splitlines() if line.strip().startswith('"') and "->" not in line]
    assert len(node_lines) == 2
    colors = {line.split("color=")[1] for line in dot.splitlines() if "->" in line}
    assert len(colors) == 2  # one per object type
    assert dot == render_ocdfg_dot(discover_ocdfg(order_mini))


def test_dot_escapes_quotes():
    dot = render_ocdfg_dot(OcDfg(nodes=('say "x"',), arcs={('say "x"', 'say "x"', "t\\"): 1}))
    assert '"say \\"x\\""' in dot and "t\\\\ × 1" in dot


@given(logs())
def test_flatten_conservation(log):
    for t in log.object_types:
        traces = flatten(log, t.name)
        assert len(traces) == sum(o.type_name == t.name for o in log.objects)
        assert sum(len(tr) for tr in traces) == incidence_pairs(log, t.name)
        for tr in traces:
            keys = [(s.time, s.event_id) for s in tr.steps]
            assert keys == sorted(keys)


@given(logs())
def test_dfg_matches_bruteforce(log):
    g = discover_ocdfg(log)
    assert (g.arcs, g.start_frequencies, g.end_frequencies) == dfg_bruteforce(log)


@given(logs())
def test_statistics_invariants(log):
    s = statistics(log)
    assert s.event_count == len(log.events)
    assert sum(s.events_per_type.values()) == s.event_count
    assert sum(s.objects_per_type.values()) == s.object_count
    assert (s.time_span is None) == (s.event_count == 0)
