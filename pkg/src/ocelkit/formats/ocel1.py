"""Import of OCEL 1.0 logs (JSON and XML).

Every ``omap`` entry becomes an event-to-object relation with the empty
qualifier; every ``ovmap`` value becomes one snapshot at the epoch sentinel.
Types are synthesized from what is observed: attribute kinds are inferred from
the values, with integer widening to float and any other mix falling back to
string.
"""

from __future__ import annotations

import json
import logging
import xml.etree.ElementTree as ET
from datetime import datetime

from ..errors import Ocel1SyntaxError
from ..model import ValueKind
from ..timestamps import EPOCH, parse_timestamp
from ..validation import RawAttribute, RawEvent, RawLog, RawObject, RawRelation, RawType, RawValue
from ._io import read_source
from ._load import ReadResult, load_raw
from .xml import value_text

log = logging.getLogger(__name__)

IMPORT_SUPPRESSED = ("W001", "W004")


def _kind_of(value) -> ValueKind:
    if isinstance(value, bool):
        return ValueKind.BOOLEAN
    if isinstance(value, int):
        return ValueKind.INTEGER
    if isinstance(value, float):
        return ValueKind.FLOAT
    if isinstance(value, datetime):
        return ValueKind.TIMESTAMP
    return ValueKind.STRING


def infer_kind(values) -> ValueKind:
    """Common kind for observed values: integer widens to float, other mixes become string."""
    kinds = {_kind_of(v) for v in values}
    if len(kinds) == 1:
        return kinds.pop()
    if kinds == {ValueKind.INTEGER, ValueKind.FLOAT}:
        return ValueKind.FLOAT
    return ValueKind.STRING


def _widen(value, kind: ValueKind):
    if kind is ValueKind.STRING and not isinstance(value, str):
        return value_text(value, _kind_of(value))
    return value


def _synthesize(items) -> tuple[list[RawType], dict[str, dict[str, ValueKind]]]:
    """``items`` is ``[(type name, {attr: value})]``; returns types and their kinds."""
    observed: dict[str, dict[str, list]] = {}
    for type_name, values in items:
        per_type = observed.setdefault(type_name, {})
        for name, value in values.items():
            per_type.setdefault(name, []).append(value)
    kinds = {
        t: {name: infer_kind(vals) for name, vals in sorted(attrs.items())}
        for t, attrs in observed.items()
    }
    types = [
        RawType(t, [RawAttribute(name, kind.value) for name, kind in attrs.items()])
        for t, attrs in sorted(kinds.items())
    ]
    return types, kinds


def _assemble(events, objects, extra_object_types=()) -> RawLog:
    """``events``: ``[(id, activity, time, omap, vmap)]``; ``objects``: ``[(id, type, ovmap)]``."""
    event_types, ekinds = _synthesize((activity, vmap) for _, activity, _, _, vmap in events)
    object_types, okinds = _synthesize((otype, ovmap) for _, otype, ovmap in objects)
    known = {t.name for t in object_types}
    for name in sorted(set(extra_object_types) - known):
        object_types.append(RawType(name, []))
    object_types.sort(key=lambda t: t.name)

    raw = RawLog(object_types=object_types, event_types=event_types)
    for oid, otype, ovmap in objects:
        kinds = okinds[otype]
        snaps = [RawValue(n, _widen(v, kinds[n]), EPOCH) for n, v in ovmap.items()]
        raw.objects.append(RawObject(oid, otype, snaps, []))
    for eid, activity, time, omap, vmap in events:
        kinds = ekinds[activity]
        values = [RawValue(n, _widen(v, kinds[n])) for n, v in vmap.items()]
        raw.events.append(RawEvent(eid, activity, time, values, [RawRelation(o, "") for o in omap]))
    return raw


def _drop_nulls(values: dict, where: str) -> dict:
    out = {}
    for k, v in values.items():
        if v is None:
            log.warning("ignoring null value of %r at %s", k, where)
        elif isinstance(v, (dict, list)):
            raise Ocel1SyntaxError(f"{where}: nested value for {k!r} is not supported")
        else:
            out[k] = v
    return out


def parse_ocel1_json(source) -> RawLog:
    try:
        doc = json.loads(read_source(source))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise Ocel1SyntaxError(str(exc)) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("ocel:events", {}), dict):
        raise Ocel1SyntaxError("expected an object with an 'ocel:events' map")
    objects_doc = doc.get("ocel:objects", {})
    if not isinstance(objects_doc, dict):
        raise Ocel1SyntaxError("'ocel:objects' must be a map")

    events = []
    for eid, ev in doc.get("ocel:events", {}).items():
        where = f"ocel:events/{eid}"
        if not isinstance(ev, dict) or not isinstance(ev.get("ocel:activity"), str):
            raise Ocel1SyntaxError(f"{where}: missing 'ocel:activity'")
        omap = ev.get("ocel:omap", [])
        vmap = ev.get("ocel:vmap", {})
        if not isinstance(omap, list) or not all(isinstance(o, str) for o in omap):
            raise Ocel1SyntaxError(f"{where}: 'ocel:omap' must be a list of ids")
        if not isinstance(vmap, dict):
            raise Ocel1SyntaxError(f"{where}: 'ocel:vmap' must be a map")
        events.append((eid, ev["ocel:activity"], ev.get("ocel:timestamp"), omap, _drop_nulls(vmap, where)))

    objects = []
    for oid, ob in objects_doc.items():
        where = f"ocel:objects/{oid}"
        if not isinstance(ob, dict) or not isinstance(ob.get("ocel:type"), str):
            raise Ocel1SyntaxError(f"{where}: missing 'ocel:type'")
        ovmap = ob.get("ocel:ovmap", {})
        if not isinstance(ovmap, dict):
            raise Ocel1SyntaxError(f"{where}: 'ocel:ovmap' must be a map")
        objects.append((oid, ob["ocel:type"], _drop_nulls(ovmap, where)))

    declared = doc.get("ocel:global-log", {}).get("ocel:object-types", [])
    return _assemble(events, objects, declared if isinstance(declared, list) else ())


def _xml_value(el: ET.Element):
    text = el.get("value")
    if text is None:
        raise Ocel1SyntaxError(f"<{el.tag} key={el.get('key')!r}> lacks a value")
    try:
        if el.tag == "int":
            return int(text)
        if el.tag == "float":
            return float(text)
        if el.tag == "boolean":
            return text.strip().lower() == "true"
    except ValueError:
        raise Ocel1SyntaxError(f"bad {el.tag} value {text!r}") from None
    if el.tag == "date":
        try:
            return parse_timestamp(text)
        except ValueError:
            return text
    return text


def _xml_fields(el: ET.Element) -> dict:
    out = {}
    for child in el:
        key = child.get("key")
        if child.tag == "list":
            out[key] = list(child)
        else:
            out[key] = child
    return out


def parse_ocel1_xml(source) -> RawLog:
    try:
        root = ET.fromstring(read_source(source))
    except ET.ParseError as exc:
        raise Ocel1SyntaxError(str(exc)) from None
    if root.tag != "log":
        raise Ocel1SyntaxError(f"root element is <{root.tag}>, expected <log>")

    declared = []
    for g in root.findall("global"):
        if g.get("scope") == "log":
            for child in g:
                if child.tag == "list" and child.get("key") == "object-types":
                    declared = [x.get("value") for x in child]

    events = []
    for i, ev in enumerate(root.iterfind("events/event")):
        f = _xml_fields(ev)
        if "id" not in f or "activity" not in f:
            raise Ocel1SyntaxError(f"event #{i} lacks id or activity")
        eid = f["id"].get("value")
        time = f["timestamp"].get("value") if "timestamp" in f else None
        omap = [x.get("value") for x in f.get("omap", [])]
        vmap = {x.get("key"): _xml_value(x) for x in f.get("vmap", [])}
        events.append((eid, f["activity"].get("value"), time, omap, vmap))

    objects = []
    for i, ob in enumerate(root.iterfind("objects/object")):
        f = _xml_fields(ob)
        if "id" not in f or "type" not in f:
            raise Ocel1SyntaxError(f"object #{i} lacks id or type")
        ovmap = {x.get("key"): _xml_value(x) for x in f.get("ovmap", [])}
        objects.append((f["id"].get("value"), f["type"].get("value"), ovmap))
    return _assemble(events, objects, declared)


def import_ocel1(source, kind="ocel1-json") -> ReadResult:
    """Import an OCEL 1.0 document; ``kind`` selects JSON or XML."""
    from .detect import FormatKind

    kind = FormatKind(kind)
    if kind is FormatKind.OCEL1_JSON:
        raw = parse_ocel1_json(source)
    elif kind is FormatKind.OCEL1_XML:
        raw = parse_ocel1_xml(source)
    else:
        raise ValueError(f"{kind.value} is not an OCEL 1.0 format")
    return load_raw(raw, suppress=IMPORT_SUPPRESSED)
