"""Flattening, statistics and object-centric directly-follows discovery.

The discovery here is the plain directly-follows construction: each object's
events are ordered canonically and every consecutive pair counts once towards
the arc ``(activity, next activity, object type)``.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from .model import OcelLog, events_of_object
from .timestamps import format_timestamp


@dataclass(frozen=True)
class FlatStep:
    event_id: str
    activity: str
    time: datetime


@dataclass(frozen=True)
class FlatTrace:
    case_id: str
    steps: tuple[FlatStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)


def flatten(log: OcelLog, object_type: str) -> list[FlatTrace]:
    """One trace per object of ``object_type``, ordered by object id.

    Events shared by several objects of the type are repeated in each of their
    traces; objects without events give empty traces.
    """
    log.object_type(object_type)
    return [
        FlatTrace(o.id, tuple(FlatStep(e.id, e.type_name, e.time) for e in events_of_object(log, o.id)))
        for o in log.objects
        if o.type_name == object_type
    ]


CSV_HEADER = ("case_id", "event_id", "activity", "timestamp")


def traces_to_csv(traces: list[FlatTrace], sink: Optional[io.TextIOBase] = None) -> str:
    """Write traces as CSV (one row per step, RFC 4180 quoting and CRLF line ends)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for trace in traces:
        for step in trace.steps:
            writer.writerow((trace.case_id, step.event_id, step.activity, format_timestamp(step.time)))
    text = buf.getvalue()
    if sink is not None:
        sink.write(text)
    return text


@dataclass(frozen=True)
class LogStatistics:
    event_count: int
    object_count: int
    e2o_count: int
    o2o_count: int
    snapshot_count: int
    events_per_type: dict[str, int] = field(default_factory=dict)
    objects_per_type: dict[str, int] = field(default_factory=dict)
    time_span: Optional[tuple[datetime, datetime]] = None
    objects_per_event_mean: float = 0.0

    def to_dict(self) -> dict:
        return {
            "event_count": self.event_count,
            "object_count": self.object_count,
            "e2o_count": self.e2o_count,
            "o2o_count": self.o2o_count,
            "snapshot_count": self.snapshot_count,
            "events_per_type": dict(self.events_per_type),
            "objects_per_type": dict(self.objects_per_type),
            "time_span": None if self.time_span is None else [format_timestamp(t) for t in self.time_span],
            "objects_per_event_mean": self.objects_per_event_mean,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [
            f"events: {self.event_count}",
            f"objects: {self.object_count}",
            f"e2o relations: {self.e2o_count}",
            f"o2o relations: {self.o2o_count}",
            f"attribute snapshots: {self.snapshot_count}",
            f"objects per event (mean): {self.objects_per_event_mean:.4f}",
        ]
        if self.time_span is None:
            lines.append("time span: -")
        else:
            lines.append(f"time span: {format_timestamp(self.time_span[0])} .. {format_timestamp(self.time_span[1])}")
        lines.append("events per type:")
        lines.extend(f"  {name}: {n}" for name, n in self.events_per_type.items())
        lines.append("objects per type:")
        lines.extend(f"  {name}: {n}" for name, n in self.objects_per_type.items())
        return "\n".join(lines) + "\n"


def statistics(log: OcelLog) -> LogStatistics:
    events_per_type = Counter({t.name: 0 for t in log.event_types})
    events_per_type.update(e.type_name for e in log.events)
    objects_per_type = Counter({t.name: 0 for t in log.object_types})
    objects_per_type.update(o.type_name for o in log.objects)
    n_events = len(log.events)
    e2o = log.e2o_count
    return LogStatistics(
        event_count=n_events,
        object_count=len(log.objects),
        e2o_count=e2o,
        o2o_count=log.o2o_count,
        snapshot_count=log.snapshot_count,
        events_per_type=dict(sorted(events_per_type.items())),
        objects_per_type=dict(sorted(objects_per_type.items())),
        # events are canonically ordered, so the ends bound the span
        time_span=(log.events[0].time, log.events[-1].time) if n_events else None,
        objects_per_event_mean=e2o / n_events if n_events else 0.0,
    )


@dataclass(frozen=True)
class OcDfg:
    nodes: tuple[str, ...] = ()
    arcs: dict[tuple[str, str, str], int] = field(default_factory=dict)
    start_frequencies: dict[tuple[str, str], int] = field(default_factory=dict)
    end_frequencies: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def object_types(self) -> tuple[str, ...]:
        names = {k[2] for k in self.arcs} | {k[1] for k in self.start_frequencies}
        return tuple(sorted(names))


def discover_ocdfg(log: OcelLog) -> OcDfg:
    """Directly-follows counts per object, aggregated per object type.

    Nodes are the activities that occur in the log.
    """
    arcs: Counter = Counter()
    starts: Counter = Counter()
    ends: Counter = Counter()
    for obj in log.objects:
        activities = [e.type_name for e in events_of_object(log, obj.id)]
        if not activities:
            continue
        starts[(activities[0], obj.type_name)] += 1
        ends[(activities[-1], obj.type_name)] += 1
        for a, b in zip(activities, activities[1:]):
            arcs[(a, b, obj.type_name)] += 1
    return OcDfg(
        nodes=tuple(sorted({e.type_name for e in log.events})),
        arcs=dict(sorted(arcs.items())),
        start_frequencies=dict(sorted(starts.items())),
        end_frequencies=dict(sorted(ends.items())),
    )


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def render_ocdfg_dot(g: OcDfg) -> str:
    """Graphviz DOT text: one box per activity, one edge per arc labelled ``type × count``.

    Each object type gets its own color from the ``set19`` scheme (cycling
    after nine types).
    """
    color = {t: i % 9 + 1 for i, t in enumerate(g.object_types)}
    lines = ["digraph ocdfg {", "  rankdir=LR;", "  node [shape=box];"]
    for node in g.nodes:
        lines.append(f"  {_dot_id(node)};")
    for (a, b, t), n in g.arcs.items():
        label = _dot_id(f"{t} × {n}")
        lines.append(f'  {_dot_id(a)} -> {_dot_id(b)} [label={label}, color="/set19/{color[t]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
