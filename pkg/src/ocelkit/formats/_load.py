"""Shared last step of every reader: validate, repair, build."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from ..errors import SemanticError
from ..model import (
    AttributeDeclaration,
    AttributeSnapshot,
    E2ORelation,
    Event,
    EventType,
    O2ORelation,
    ObjectEntity,
    ObjectType,
    OcelLog,
    build_log,
)
from ..timestamps import coerce_timestamp
from ..validation import RawLog, ValidationReport, decode_value, validate


class ReadResult(NamedTuple):
    log: OcelLog
    report: ValidationReport


def _unique(relations):
    seen = set()
    out = []
    for r in relations:
        key = (r.target, r.qualifier)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def load_raw(raw: RawLog, *, suppress: Iterable[str] = ()) -> ReadResult:
    """Validate ``raw``; on success deduplicate relations and build the log.

    Raises :class:`SemanticError` carrying the report if any error-severity
    diagnostic was found.
    """
    report = validate(raw, suppress=suppress)
    if report.error_count:
        raise SemanticError(report)

    def kinds(t):
        return {a.name: a.kind for a in t.attributes}

    otypes = {t.name: kinds(t) for t in raw.object_types}
    etypes = {t.name: kinds(t) for t in raw.event_types}

    objects = []
    for o in raw.objects:
        decl = otypes[o.type]
        objects.append(
            ObjectEntity(
                o.id,
                o.type,
                tuple(
                    AttributeSnapshot(s.name, coerce_timestamp(s.time), decode_value(s.value, decl[s.name]))
                    for s in o.attributes
                ),
                tuple(O2ORelation(r.target, r.qualifier) for r in _unique(o.relations)),
            )
        )
    events = []
    for e in raw.events:
        decl = etypes[e.type]
        events.append(
            Event(
                e.id,
                e.type,
                coerce_timestamp(e.time),
                {a.name: decode_value(a.value, decl[a.name]) for a in e.attributes},
                tuple(E2ORelation(r.target, r.qualifier) for r in _unique(e.relations)),
            )
        )
    log = build_log(
        event_types=[
            EventType(t.name, tuple(AttributeDeclaration(a.name, a.kind) for a in t.attributes))
            for t in raw.event_types
        ],
        object_types=[
            ObjectType(t.name, tuple(AttributeDeclaration(a.name, a.kind) for a in t.attributes))
            for t in raw.object_types
        ],
        objects=objects,
        events=events,
    )
    return ReadResult(log, report)
