"""In-memory OCEL 2.0 metamodel.

A log is built once with :func:`build_log`, which checks every referential
and typing invariant and puts the log into canonical order. The resulting
:class:`OcelLog` is immutable.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Iterable, Mapping, Optional, Union

from .errors import (
    AttributeKindMismatch,
    DanglingObjectRef,
    DuplicateId,
    UndeclaredAttribute,
    UnknownObject,
    UnknownType,
)
from .timestamps import coerce_timestamp, normalize

log = logging.getLogger(__name__)

AttributeValue = Union[str, int, float, bool, datetime]

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1


class ValueKind(str, Enum):
    """Attribute value domains. The enum values are the storage type strings."""

    STRING = "string"
    INTEGER = "integer"
    FLOAT = "float"
    BOOLEAN = "boolean"
    TIMESTAMP = "time"

    def __str__(self) -> str:
        return self.value


def check_value(value: Any, kind: ValueKind) -> AttributeValue:
    """Return ``value`` normalized for ``kind`` or raise :class:`AttributeKindMismatch`.

    Only native Python values are accepted; text decoding is the job of the
    format readers. Integers widen to float.
    """
    kind = ValueKind(kind)
    ok = False
    if kind is ValueKind.STRING:
        ok = isinstance(value, str)
    elif kind is ValueKind.INTEGER:
        ok = isinstance(value, int) and not isinstance(value, bool) and INT64_MIN <= value <= INT64_MAX
    elif kind is ValueKind.FLOAT:
        if isinstance(value, int) and not isinstance(value, bool):
            return float(value)
        ok = isinstance(value, float)
    elif kind is ValueKind.BOOLEAN:
        ok = isinstance(value, bool)
    elif kind is ValueKind.TIMESTAMP:
        if isinstance(value, datetime):
            return normalize(value)
    if not ok:
        raise AttributeKindMismatch(f"{value!r} is not a valid {kind.value} value")
    return value


@dataclass(frozen=True)
class AttributeDeclaration:
    name: str
    kind: ValueKind = ValueKind.STRING

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be non-empty")
        object.__setattr__(self, "kind", ValueKind(self.kind))


def _declarations(attrs) -> tuple[AttributeDeclaration, ...]:
    out = []
    for a in attrs:
        if not isinstance(a, AttributeDeclaration):
            a = AttributeDeclaration(*a)
        out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class _TypeDeclaration:
    name: str
    attributes: tuple[AttributeDeclaration, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("type name must be non-empty")
        attrs = _declarations(self.attributes)
        names = [a.name for a in attrs]
        if len(set(names)) != len(names):
            raise DuplicateId(f"duplicate attribute declaration in type {self.name!r}")
        object.__setattr__(self, "attributes", attrs)

    def declaration(self, name: str) -> AttributeDeclaration:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UndeclaredAttribute(f"attribute {name!r} is not declared for type {self.name!r}")


@dataclass(frozen=True)
class EventType(_TypeDeclaration):
    pass


@dataclass(frozen=True)
class ObjectType(_TypeDeclaration):
    pass


@dataclass(frozen=True)
class E2ORelation:
    object_id: str
    qualifier: str = ""


@dataclass(frozen=True)
class O2ORelation:
    target_object_id: str
    qualifier: str = ""


@dataclass(frozen=True)
class AttributeSnapshot:
    name: str
    time: datetime
    value: AttributeValue


def _relations(items, cls):
    return tuple(r if isinstance(r, cls) else cls(*r) for r in items)


@dataclass(frozen=True)
class Event:
    id: str
    type_name: str
    time: datetime
    attributes: Mapping[str, AttributeValue] = field(default_factory=dict)
    relations: tuple[E2ORelation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", _relations(self.relations, E2ORelation))
        object.__setattr__(self, "attributes", dict(self.attributes))


@dataclass(frozen=True)
class ObjectEntity:
    id: str
    type_name: str
    attribute_history: tuple[AttributeSnapshot, ...] = ()
    relations: tuple[O2ORelation, ...] = ()

    def __post_init__(self):
        history = tuple(
            s if isinstance(s, AttributeSnapshot) else AttributeSnapshot(*s)
            for s in self.attribute_history
        )
        object.__setattr__(self, "attribute_history", history)
        object.__setattr__(self, "relations", _relations(self.relations, O2ORelation))

    def snapshots(self, name: str) -> tuple[AttributeSnapshot, ...]:
        return tuple(s for s in self.attribute_history if s.name == name)


@dataclass(frozen=True)
class OcelLog:
    """A complete, canonically ordered OCEL 2.0 log. Construct with :func:`build_log`."""

    event_types: tuple[EventType, ...] = ()
    object_types: tuple[ObjectType, ...] = ()
    events: tuple[Event, ...] = ()
    objects: tuple[ObjectEntity, ...] = ()
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        by_object: dict[str, list[Event]] = {o.id: [] for o in self.objects}
        for ev in self.events:
            seen = set()
            for rel in ev.relations:
                if rel.object_id in by_object and rel.object_id not in seen:
                    seen.add(rel.object_id)
                    by_object[rel.object_id].append(ev)
        self._index.update(
            events={e.id: e for e in self.events},
            objects={o.id: o for o in self.objects},
            event_types={t.name: t for t in self.event_types},
            object_types={t.name: t for t in self.object_types},
            by_object={k: tuple(v) for k, v in by_object.items()},
        )

    def event(self, event_id: str) -> Event:
        try:
            return self._index["events"][event_id]
        except KeyError:
            raise KeyError(f"unknown event {event_id!r}") from None

    def object(self, object_id: str) -> ObjectEntity:
        try:
            return self._index["objects"][object_id]
        except KeyError:
            raise UnknownObject(f"unknown object {object_id!r}") from None

    def event_type(self, name: str) -> EventType:
        try:
            return self._index["event_types"][name]
        except KeyError:
            raise UnknownType(f"unknown event type {name!r}") from None

    def object_type(self, name: str) -> ObjectType:
        try:
            return self._index["object_types"][name]
        except KeyError:
            raise UnknownType(f"unknown object type {name!r}") from None

    @property
    def e2o_count(self) -> int:
        return sum(len(e.relations) for e in self.events)

    @property
    def o2o_count(self) -> int:
        return sum(len(o.relations) for o in self.objects)

    @property
    def snapshot_count(self) -> int:
        return sum(len(o.attribute_history) for o in self.objects)

    def attribute_value_at(self, object_id: str, name: str, t: datetime) -> Optional[AttributeValue]:
        obj = self.object(object_id)
        return attribute_value_at(obj, name, t, self.object_type(obj.type_name))


def _unique_types(types, cls, label):
    out = {}
    for t in types:
        if not isinstance(t, cls):
            t = cls(*t)
        if t.name in out:
            raise DuplicateId(f"duplicate {label} type {t.name!r}")
        out[t.name] = t
    return out


def _dedupe(relations, key, where):
    seen = set()
    out = []
    for rel in relations:
        k = key(rel)
        if k in seen:
            log.warning("dropping duplicate relation %r in %s", k, where)
            continue
        seen.add(k)
        out.append(rel)
    return tuple(out)


def build_log(
    event_types: Iterable[EventType] = (),
    object_types: Iterable[ObjectType] = (),
    objects: Iterable[ObjectEntity] = (),
    events: Iterable[Event] = (),
) -> OcelLog:
    """Check all integrity invariants and return the log in canonical order.

    Types are sorted by name, objects by id, events by ``(time, id)`` and each
    object's attribute history by ``(name, time)``. Duplicate relation pairs are
    dropped with a logged warning. The first violation found is raised as one
    of the :class:`~ocelkit.errors.IntegrityError` subclasses.
    """
    etypes = _unique_types(event_types, EventType, "event")
    otypes = _unique_types(object_types, ObjectType, "object")

    objs: dict[str, ObjectEntity] = {}
    for o in objects:
        if not o.id:
            raise ValueError("object id must be non-empty")
        if o.id in objs:
            raise DuplicateId(f"duplicate object id {o.id!r}")
        objs[o.id] = o

    canonical_objects = []
    for oid in sorted(objs):
        o = objs[oid]
        otype = otypes.get(o.type_name)
        if otype is None:
            raise UnknownType(f"object {oid!r} has unknown type {o.type_name!r}")
        history = []
        seen_keys = set()
        for snap in o.attribute_history:
            decl = otype.declaration(snap.name)
            value = check_value(snap.value, decl.kind)
            time = coerce_timestamp(snap.time)
            if (snap.name, time) in seen_keys:
                raise DuplicateId(f"object {oid!r} has two {snap.name!r} snapshots at {time}")
            seen_keys.add((snap.name, time))
            history.append(AttributeSnapshot(snap.name, time, value))
        history.sort(key=lambda s: (s.name, s.time))
        for rel in o.relations:
            if rel.target_object_id not in objs:
                raise DanglingObjectRef(
                    f"object {oid!r} relates to unknown object {rel.target_object_id!r}"
                )
        relations = _dedupe(o.relations, lambda r: (r.target_object_id, r.qualifier), f"object {oid!r}")
        canonical_objects.append(ObjectEntity(oid, o.type_name, tuple(history), relations))

    canonical_events = []
    seen_events = set()
    for e in events:
        if not e.id:
            raise ValueError("event id must be non-empty")
        if e.id in seen_events:
            raise DuplicateId(f"duplicate event id {e.id!r}")
        seen_events.add(e.id)
        etype = etypes.get(e.type_name)
        if etype is None:
            raise UnknownType(f"event {e.id!r} has unknown type {e.type_name!r}")
        attrs = {}
        for name in sorted(e.attributes):
            attrs[name] = check_value(e.attributes[name], etype.declaration(name).kind)
        for rel in e.relations:
            if rel.object_id not in objs:
                raise DanglingObjectRef(f"event {e.id!r} relates to unknown object {rel.object_id!r}")
        relations = _dedupe(e.relations, lambda r: (r.object_id, r.qualifier), f"event {e.id!r}")
        canonical_events.append(Event(e.id, e.type_name, coerce_timestamp(e.time), attrs, relations))
    canonical_events.sort(key=lambda e: (e.time, e.id))

    return OcelLog(
        event_types=tuple(etypes[k] for k in sorted(etypes)),
        object_types=tuple(otypes[k] for k in sorted(otypes)),
        events=tuple(canonical_events),
        objects=tuple(canonical_objects),
    )


def attribute_value_at(
    obj: ObjectEntity,
    name: str,
    t: datetime,
    object_type: Optional[ObjectType] = None,
) -> Optional[AttributeValue]:
    """Value of the latest ``name`` snapshot at or before ``t``, or ``None``.

    When ``object_type`` is given the attribute must be declared on it.
    """
    if object_type is not None:
        object_type.declaration(name)
    t = normalize(t)
    history = obj.snapshots(name)
    pos = bisect.bisect_right(history, t, key=lambda s: s.time)
    if pos == 0:
        return None
    return history[pos - 1].value


def events_of_object(log: OcelLog, object_id: str) -> list[Event]:
    """Events related to ``object_id``, in canonical order."""
    log.object(object_id)
    return list(log._index["by_object"][object_id])


def o2o_neighbors(
    log: OcelLog, object_id: str, qualifier_filter: Optional[str] = None
) -> list[tuple[str, str]]:
    obj = log.object(object_id)
    pairs = [
        (r.target_object_id, r.qualifier)
        for r in obj.relations
        if qualifier_filter is None or r.qualifier == qualifier_filter
    ]
    return sorted(pairs)
