"""OCEL 2.0 XML variant.

Layout::

    <log>
      <object-types>  <object-type name=".."><attributes><attribute name=".." type=".."/>
      <event-types>   (same shape as object-types)
      <objects>       <object id=".." type="..">
                        <attributes><attribute name=".." time="..">value</attribute>
                        <objects><relationship object-id=".." qualifier=".."/>
      <events>        <event id=".." type=".." time="..">
                        <attributes><attribute name="..">value</attribute>
                        <objects><relationship object-id=".." qualifier=".."/>
"""

from __future__ import annotations

import logging
import re
import xml.etree.ElementTree as ET

from ..errors import OcelWriteError, XmlSyntaxError
from ..model import OcelLog, ValueKind
from ..timestamps import format_timestamp
from ..validation import RawAttribute, RawEvent, RawLog, RawObject, RawRelation, RawType, RawValue
from ._io import read_source, write_sink
from ._load import ReadResult, load_raw

log = logging.getLogger(__name__)

_SECTIONS = ("object-types", "event-types", "objects", "events")


def _known_attrs(el: ET.Element, allowed: tuple[str, ...], where: str) -> None:
    for key in el.attrib:
        if key not in allowed:
            log.warning("ignoring unknown XML attribute %r on <%s> (%s)", key, el.tag, where)


def _require(el: ET.Element, key: str, where: str) -> str:
    value = el.get(key)
    if value is None:
        raise XmlSyntaxError(f"<{el.tag}> at {where} lacks the {key!r} attribute")
    return value


def _children(el: ET.Element, tag: str, where: str) -> list[ET.Element]:
    out = []
    for child in el:
        if child.tag == tag:
            out.append(child)
        else:
            log.warning("ignoring unexpected element <%s> in %s", child.tag, where)
    return out


def _types(root: ET.Element, section: str, tag: str) -> list[RawType]:
    container = root.find(section)
    if container is None:
        return []
    out = []
    for t in _children(container, tag, section):
        name = _require(t, "name", section)
        _known_attrs(t, ("name",), section)
        attrs = []
        holder = t.find("attributes")
        if holder is not None:
            for a in _children(holder, "attribute", f"{section}/{name}"):
                attrs.append(RawAttribute(_require(a, "name", name), _require(a, "type", name)))
        out.append(RawType(name, attrs))
    return out


def _relations(el: ET.Element, where: str) -> list[RawRelation]:
    holder = el.find("objects")
    if holder is None:
        return []
    return [
        RawRelation(_require(r, "object-id", where), r.get("qualifier", ""))
        for r in _children(holder, "relationship", where)
    ]


def _values(el: ET.Element, where: str, timed: bool) -> list[RawValue]:
    holder = el.find("attributes")
    if holder is None:
        return []
    return [
        RawValue(_require(a, "name", where), a.text or "", a.get("time") if timed else None)
        for a in _children(holder, "attribute", where)
    ]


def parse_xml(source) -> RawLog:
    """Parse XML into an unchecked :class:`RawLog`."""
    try:
        root = ET.fromstring(read_source(source))
    except ET.ParseError as exc:
        raise XmlSyntaxError(str(exc)) from None
    if root.tag != "log":
        raise XmlSyntaxError(f"root element is <{root.tag}>, expected <log>")
    for child in root:
        if child.tag not in _SECTIONS:
            log.warning("ignoring unexpected element <%s> in <log>", child.tag)
    raw = RawLog(
        object_types=_types(root, "object-types", "object-type"),
        event_types=_types(root, "event-types", "event-type"),
    )
    objects = root.find("objects")
    for o in [] if objects is None else _children(objects, "object", "objects"):
        oid = _require(o, "id", "objects")
        where = f"objects/{oid}"
        _known_attrs(o, ("id", "type"), where)
        raw.objects.append(
            RawObject(oid, _require(o, "type", where), _values(o, where, True), _relations(o, where))
        )
    events = root.find("events")
    for e in [] if events is None else _children(events, "event", "events"):
        eid = _require(e, "id", "events")
        where = f"events/{eid}"
        _known_attrs(e, ("id", "type", "time"), where)
        raw.events.append(
            RawEvent(eid, _require(e, "type", where), e.get("time"), _values(e, where, False), _relations(e, where))
        )
    return raw


def read_xml(source) -> ReadResult:
    return load_raw(parse_xml(source))


# -- writer ------------------------------------------------------------------


_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")


def _check_chars(s: str) -> str:
    if _XML_ILLEGAL.search(s):
        raise OcelWriteError(f"{s!r} contains characters that XML 1.0 cannot represent")
    return s


def _esc_attr(s: str) -> str:
    return (
        _check_chars(s)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("\t", "&#9;")
        .replace("\n", "&#10;")
        .replace("\r", "&#13;")
    )


def _esc_text(s: str) -> str:
    return _check_chars(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace("\r", "&#13;")


def value_text(value, kind: ValueKind) -> str:
    """Text form of an attribute value as stored in XML."""
    if kind is ValueKind.BOOLEAN:
        return "true" if value else "false"
    if kind is ValueKind.FLOAT:
        return repr(float(value))
    if kind is ValueKind.TIMESTAMP:
        return format_timestamp(value)
    return str(value)


def _tag(name: str, attrs: list[tuple[str, str]]) -> str:
    parts = "".join(f' {k}="{_esc_attr(v)}"' for k, v in attrs)
    return f"<{name}{parts}"


def _container(lines, indent, tag, items):
    """Emit ``<tag>`` holding pre-rendered child line groups, or ``<tag/>`` if empty."""
    pad = "  " * indent
    if not items:
        lines.append(f"{pad}<{tag}/>")
        return
    lines.append(f"{pad}<{tag}>")
    for item in items:
        item(lines, indent + 1)
    lines.append(f"{pad}</{tag}>")


def _type_item(tag, t):
    def emit(lines, indent):
        pad = "  " * indent
        lines.append(f"{pad}{_tag(tag, [('name', t.name)])}>")
        _container(
            lines,
            indent + 1,
            "attributes",
            [_leaf("attribute", [("name", a.name), ("type", a.kind.value)]) for a in t.attributes],
        )
        lines.append(f"{pad}</{tag}>")

    return emit


def _leaf(tag, attrs, text=None):
    def emit(lines, indent):
        pad = "  " * indent
        if text is None:
            lines.append(f"{pad}{_tag(tag, attrs)}/>")
        else:
            lines.append(f"{pad}{_tag(tag, attrs)}>{_esc_text(text)}</{tag}>")

    return emit


def _entity_item(tag, attrs, values, relations):
    def emit(lines, indent):
        pad = "  " * indent
        lines.append(f"{pad}{_tag(tag, attrs)}>")
        _container(lines, indent + 1, "attributes", values)
        _container(lines, indent + 1, "objects", relations)
        lines.append(f"{pad}</{tag}>")

    return emit


def dumps_xml(log: OcelLog) -> bytes:
    """Canonical XML encoding of ``log`` (UTF-8, two-space indentation)."""
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', "<log>"]
    _container(lines, 1, "object-types", [_type_item("object-type", t) for t in log.object_types])
    _container(lines, 1, "event-types", [_type_item("event-type", t) for t in log.event_types])

    objects = []
    for o in log.objects:
        kinds = {a.name: a.kind for a in log.object_type(o.type_name).attributes}
        values = [
            _leaf("attribute", [("name", s.name), ("time", format_timestamp(s.time))], value_text(s.value, kinds[s.name]))
            for s in o.attribute_history
        ]
        rels = [_leaf("relationship", [("object-id", r.target_object_id), ("qualifier", r.qualifier)]) for r in o.relations]
        objects.append(_entity_item("object", [("id", o.id), ("type", o.type_name)], values, rels))
    _container(lines, 1, "objects", objects)

    events = []
    for e in log.events:
        kinds = {a.name: a.kind for a in log.event_type(e.type_name).attributes}
        values = [
            _leaf("attribute", [("name", name)], value_text(value, kinds[name]))
            for name, value in e.attributes.items()
        ]
        rels = [_leaf("relationship", [("object-id", r.object_id), ("qualifier", r.qualifier)]) for r in e.relations]
        events.append(
            _entity_item("event", [("id", e.id), ("type", e.type_name), ("time", format_timestamp(e.time))], values, rels)
        )
    _container(lines, 1, "events", events)
    lines.append("</log>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_xml(log: OcelLog, sink) -> None:
    write_sink(sink, dumps_xml(log))
