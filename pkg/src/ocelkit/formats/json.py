"""OCEL 2.0 JSON variant.

Top-level keys ``objectTypes``, ``eventTypes``, ``objects``, ``events``, written
in that order with two-space indentation.
"""

from __future__ import annotations

import json
import logging
from typing import Any

from ..errors import JsonSyntaxError, OcelWriteError
from ..model import OcelLog, ValueKind
from ..timestamps import format_timestamp
from ..validation import RawAttribute, RawEvent, RawLog, RawObject, RawRelation, RawType, RawValue
from ._io import read_source, write_sink
from ._load import ReadResult, load_raw

log = logging.getLogger(__name__)

TOP_KEYS = ("objectTypes", "eventTypes", "objects", "events")


def _obj(value, where) -> dict:
    if not isinstance(value, dict):
        raise JsonSyntaxError(f"{where}: expected an object, got {type(value).__name__}")
    return value


def _arr(value, where) -> list:
    if not isinstance(value, list):
        raise JsonSyntaxError(f"{where}: expected an array, got {type(value).__name__}")
    return value


def _str(d: dict, key: str, where: str) -> str:
    if key not in d:
        raise JsonSyntaxError(f"{where}: missing {key!r}")
    if not isinstance(d[key], str):
        raise JsonSyntaxError(f"{where}: {key!r} must be a string")
    return d[key]


def _extra(d: dict, allowed, where) -> None:
    for key in d:
        if key not in allowed:
            log.warning("ignoring unknown JSON key %r at %s", key, where)


def _types(doc, key) -> list[RawType]:
    out = []
    for i, t in enumerate(_arr(doc.get(key, []), key)):
        where = f"{key}[{i}]"
        t = _obj(t, where)
        _extra(t, ("name", "attributes"), where)
        attrs = []
        for j, a in enumerate(_arr(t.get("attributes", []), where)):
            a = _obj(a, f"{where}.attributes[{j}]")
            attrs.append(RawAttribute(_str(a, "name", where), _str(a, "type", where)))
        out.append(RawType(_str(t, "name", where), attrs))
    return out


def _relations(d, where) -> list[RawRelation]:
    out = []
    for k, r in enumerate(_arr(d.get("relationships", []), where)):
        r = _obj(r, f"{where}.relationships[{k}]")
        q = r.get("qualifier", "")
        if not isinstance(q, str):
            raise JsonSyntaxError(f"{where}: qualifier must be a string")
        out.append(RawRelation(_str(r, "objectId", where), q))
    return out


def _values(d, where, timed) -> list[RawValue]:
    out = []
    for j, a in enumerate(_arr(d.get("attributes", []), where)):
        a = _obj(a, f"{where}.attributes[{j}]")
        out.append(RawValue(_str(a, "name", where), a.get("value"), a.get("time") if timed else None))
    return out


def parse_json_document(doc: Any) -> RawLog:
    doc = _obj(doc, "document")
    _extra(doc, TOP_KEYS, "document")
    raw = RawLog(object_types=_types(doc, "objectTypes"), event_types=_types(doc, "eventTypes"))
    for i, o in enumerate(_arr(doc.get("objects", []), "objects")):
        where = f"objects[{i}]"
        o = _obj(o, where)
        _extra(o, ("id", "type", "attributes", "relationships"), where)
        raw.objects.append(RawObject(_str(o, "id", where), _str(o, "type", where), _values(o, where, True), _relations(o, where)))
    for i, e in enumerate(_arr(doc.get("events", []), "events")):
        where = f"events[{i}]"
        e = _obj(e, where)
        _extra(e, ("id", "type", "time", "attributes", "relationships"), where)
        raw.events.append(RawEvent(_str(e, "id", where), _str(e, "type", where), e.get("time"), _values(e, where, False), _relations(e, where)))
    return raw


def parse_json(source) -> RawLog:
    try:
        doc = json.loads(read_source(source))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise JsonSyntaxError(str(exc)) from None
    return parse_json_document(doc)


def read_json(source) -> ReadResult:
    return load_raw(parse_json(source))


def json_value(value, kind: ValueKind):
    if kind is ValueKind.TIMESTAMP:
        return format_timestamp(value)
    return value


def to_document(log: OcelLog) -> dict:
    def types(ts):
        return [
            {"name": t.name, "attributes": [{"name": a.name, "type": a.kind.value} for a in t.attributes]}
            for t in ts
        ]

    objects = []
    for o in log.objects:
        kinds = {a.name: a.kind for a in log.object_type(o.type_name).attributes}
        objects.append(
            {
                "id": o.id,
                "type": o.type_name,
                "attributes": [
                    {"name": s.name, "time": format_timestamp(s.time), "value": json_value(s.value, kinds[s.name])}
                    for s in o.attribute_history
                ],
                "relationships": [{"objectId": r.target_object_id, "qualifier": r.qualifier} for r in o.relations],
            }
        )
    events = []
    for e in log.events:
        kinds = {a.name: a.kind for a in log.event_type(e.type_name).attributes}
        events.append(
            {
                "id": e.id,
                "type": e.type_name,
                "time": format_timestamp(e.time),
                "attributes": [{"name": k, "value": json_value(v, kinds[k])} for k, v in e.attributes.items()],
                "relationships": [{"objectId": r.object_id, "qualifier": r.qualifier} for r in e.relations],
            }
        )
    return {
        "objectTypes": types(log.object_types),
        "eventTypes": types(log.event_types),
        "objects": objects,
        "events": events,
    }


def dumps_json(log: OcelLog) -> bytes:
    text = json.dumps(to_document(log), indent=2, ensure_ascii=False) + "\n"
    try:
        return text.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise OcelWriteError(f"log contains text that is not valid UTF-8: {exc}") from None


def write_json(log: OcelLog, sink) -> None:
    write_sink(sink, dumps_json(log))
