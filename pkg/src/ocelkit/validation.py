"""Diagnostics for parsed-but-unchecked logs.

Readers first decode a file into a :class:`RawLog`, a loosely typed mirror of
the metamodel that can hold anything a file may contain (dangling ids, bad
timestamps, mistyped values). :func:`validate` inspects it without modifying
it and returns a :class:`ValidationReport`.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import Any, Iterable, Optional

from .model import INT64_MAX, INT64_MIN, OcelLog, ValueKind
from .timestamps import EPOCH, coerce_timestamp, format_timestamp

ERROR, WARNING = "error", "warning"

CATALOG = {
    "E001": (ERROR, "dangling event-to-object reference"),
    "E002": (ERROR, "dangling object-to-object reference"),
    "E003": (ERROR, "unknown event type"),
    "E004": (ERROR, "unknown object type"),
    "E005": (ERROR, "undeclared attribute"),
    "E006": (ERROR, "attribute kind mismatch"),
    "E007": (ERROR, "duplicate identifier"),
    "E008": (ERROR, "unparseable timestamp"),
    "W001": (WARNING, "empty qualifier"),
    "W002": (WARNING, "object participates in no event"),
    "W003": (WARNING, "duplicate relation pair (deduplicated)"),
    "W004": (WARNING, "attribute snapshot at epoch sentinel"),
}


@dataclass(frozen=True, order=True)
class Diagnostic:
    location: str
    code: str
    severity: str = field(compare=False)
    message: str = field(compare=False)

    def __str__(self) -> str:
        return f"{self.severity} {self.code} {self.location}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def error_count(self) -> int:
        return sum(d.severity == ERROR for d in self.diagnostics)

    @property
    def warning_count(self) -> int:
        return sum(d.severity == WARNING for d in self.diagnostics)

    @property
    def is_valid(self) -> bool:
        return self.error_count == 0

    def codes(self) -> Counter:
        return Counter(d.code for d in self.diagnostics)

    def summary(self) -> str:
        e, w = self.error_count, self.warning_count
        return f"{e} error{'' if e == 1 else 's'}, {w} warning{'' if w == 1 else 's'}"

    def to_text(self) -> str:
        lines = [str(d) for d in self.diagnostics]
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "error_count": self.error_count,
            "warning_count": self.warning_count,
            "diagnostics": [
                {k: v for k, v in asdict(d).items()} for d in self.diagnostics
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


# -- raw structures ----------------------------------------------------------


@dataclass
class RawAttribute:
    """An attribute declaration; ``kind`` is the storage type string."""

    name: str
    kind: str


@dataclass
class RawType:
    name: str
    attributes: list[RawAttribute] = field(default_factory=list)


@dataclass
class RawRelation:
    target: str
    qualifier: str = ""


@dataclass
class RawValue:
    """An event attribute value (``time`` unused) or an object attribute snapshot."""

    name: str
    value: Any
    time: Any = None


@dataclass
class RawEvent:
    id: str
    type: str
    time: Any
    attributes: list[RawValue] = field(default_factory=list)
    relations: list[RawRelation] = field(default_factory=list)


@dataclass
class RawObject:
    id: str
    type: str
    attributes: list[RawValue] = field(default_factory=list)
    relations: list[RawRelation] = field(default_factory=list)


@dataclass
class RawLog:
    object_types: list[RawType] = field(default_factory=list)
    event_types: list[RawType] = field(default_factory=list)
    objects: list[RawObject] = field(default_factory=list)
    events: list[RawEvent] = field(default_factory=list)

    @classmethod
    def from_log(cls, log: OcelLog) -> "RawLog":
        def rtype(t):
            return RawType(t.name, [RawAttribute(a.name, a.kind.value) for a in t.attributes])

        return cls(
            object_types=[rtype(t) for t in log.object_types],
            event_types=[rtype(t) for t in log.event_types],
            objects=[
                RawObject(
                    o.id,
                    o.type_name,
                    [RawValue(s.name, s.value, s.time) for s in o.attribute_history],
                    [RawRelation(r.target_object_id, r.qualifier) for r in o.relations],
                )
                for o in log.objects
            ],
            events=[
                RawEvent(
                    e.id,
                    e.type_name,
                    e.time,
                    [RawValue(k, v) for k, v in e.attributes.items()],
                    [RawRelation(r.object_id, r.qualifier) for r in e.relations],
                )
                for e in log.events
            ],
        )


# -- value decoding ------------------------------------------------------------

_INT_RE = re.compile(r"[+-]?\d+")
_FLOAT_RE = re.compile(
    r"[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf|infinity|nan)", re.IGNORECASE
)
_BOOL_TEXT = {"true": True, "false": False, "1": True, "0": False}


def decode_value(value: Any, kind: str):
    """Decode a stored value for the declared ``kind``.

    Native values of the right type pass through; text is parsed (this is how
    XML values arrive). Booleans also accept 0/1 integers as stored by SQLite.
    Raises ``ValueError`` on mismatch.
    """
    kind = ValueKind(kind)
    if kind is ValueKind.STRING:
        if isinstance(value, str):
            return value
    elif kind is ValueKind.INTEGER:
        if isinstance(value, str) and _INT_RE.fullmatch(value.strip()):
            value = int(value)
        if isinstance(value, int) and not isinstance(value, bool) and INT64_MIN <= value <= INT64_MAX:
            return value
    elif kind is ValueKind.FLOAT:
        if isinstance(value, str) and _FLOAT_RE.fullmatch(value.strip()):
            return float(value)
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif kind is ValueKind.BOOLEAN:
        if isinstance(value, bool):
            return value
        if isinstance(value, int) and value in (0, 1):
            return bool(value)
        if isinstance(value, str) and value.strip().lower() in _BOOL_TEXT:
            return _BOOL_TEXT[value.strip().lower()]
    elif kind is ValueKind.TIMESTAMP:
        if isinstance(value, (str, datetime)):
            return coerce_timestamp(value)
    raise ValueError(f"{value!r} is not a valid {kind.value} value")


def try_timestamp(value) -> Optional[datetime]:
    if value is None:
        return None
    try:
        return coerce_timestamp(value)
    except (ValueError, TypeError, OverflowError):
        return None


def _valid_kind(kind) -> bool:
    try:
        ValueKind(kind)
    except ValueError:
        return False
    return True


# -- the checker -----------------------------------------------------------------


class _Collector:
    def __init__(self, suppress):
        self.items: list[Diagnostic] = []
        self.suppress = frozenset(suppress)

    def add(self, code: str, location: str, message: str) -> None:
        if code in self.suppress:
            return
        severity = CATALOG[code][0]
        self.items.append(Diagnostic(location, code, severity, message))


def _check_types(types: list[RawType], prefix: str, out: _Collector) -> dict[str, dict[str, str]]:
    """Return ``{type name: {attribute: kind}}``; invalid kinds map to None."""
    declared: dict[str, dict[str, str]] = {}
    for t in types:
        loc = f"{prefix}/{t.name}"
        if t.name in declared:
            out.add("E007", loc, f"type {t.name!r} declared twice")
            continue
        attrs: dict[str, Optional[str]] = {}
        for j, a in enumerate(t.attributes):
            aloc = f"{loc}/attributes/{j}"
            if a.name in attrs:
                out.add("E007", aloc, f"attribute {a.name!r} declared twice")
                continue
            if not _valid_kind(a.kind):
                out.add("E006", aloc, f"attribute {a.name!r} has unknown kind {a.kind!r}")
                attrs[a.name] = None
            else:
                attrs[a.name] = a.kind
        declared[t.name] = attrs
    return declared


def _check_value(name, value, decl, loc, out: _Collector) -> None:
    if decl is None:
        return
    if name not in decl:
        out.add("E005", loc, f"attribute {name!r} is not declared")
        return
    kind = decl[name]
    if kind is None:
        return
    try:
        decode_value(value, kind)
    except ValueError:
        out.add("E006", loc, f"value {value!r} of {name!r} is not a valid {kind}")


def _check_relations(relations, prefix, object_ids, dangling_code, out: _Collector) -> None:
    seen = set()
    for k, rel in enumerate(relations):
        loc = f"{prefix}/relations/{k}"
        if rel.target not in object_ids:
            out.add(dangling_code, loc, f"reference to unknown object {rel.target!r}")
        if rel.qualifier == "":
            out.add("W001", loc, "relation has an empty qualifier")
        key = (rel.target, rel.qualifier)
        if key in seen:
            out.add("W003", loc, f"duplicate relation to {rel.target!r} with qualifier {rel.qualifier!r}")
        seen.add(key)


def validate(raw: RawLog | OcelLog, *, suppress: Iterable[str] = ()) -> ValidationReport:
    """Check ``raw`` against the metamodel and return every finding.

    Codes listed in ``suppress`` are not reported. The result is sorted by
    location, then code.
    """
    if isinstance(raw, OcelLog):
        raw = RawLog.from_log(raw)
    out = _Collector(suppress)
    otypes = _check_types(raw.object_types, "object-types", out)
    etypes = _check_types(raw.event_types, "event-types", out)
    object_ids = {o.id for o in raw.objects}

    seen_objects: set[str] = set()
    for o in raw.objects:
        loc = f"objects/{o.id}"
        if o.id in seen_objects:
            out.add("E007", loc, f"object id {o.id!r} used twice")
        seen_objects.add(o.id)
        decl = otypes.get(o.type)
        if decl is None:
            out.add("E004", f"{loc}/type", f"unknown object type {o.type!r}")
        seen_snapshots = set()
        for j, snap in enumerate(o.attributes):
            sloc = f"{loc}/attributes/{j}"
            _check_value(snap.name, snap.value, decl, sloc, out)
            t = try_timestamp(snap.time)
            if t is None:
                out.add("E008", f"{sloc}/time", f"unparseable timestamp {snap.time!r}")
                continue
            if t == EPOCH:
                out.add("W004", sloc, f"snapshot of {snap.name!r} at the epoch sentinel")
            if (snap.name, t) in seen_snapshots:
                out.add("E007", sloc, f"two snapshots of {snap.name!r} at {format_timestamp(t)}")
            seen_snapshots.add((snap.name, t))
        _check_relations(o.relations, loc, object_ids, "E002", out)

    seen_events: set[str] = set()
    related: set[str] = set()
    for e in raw.events:
        loc = f"events/{e.id}"
        if e.id in seen_events:
            out.add("E007", loc, f"event id {e.id!r} used twice")
        seen_events.add(e.id)
        decl = etypes.get(e.type)
        if decl is None:
            out.add("E003", f"{loc}/type", f"unknown event type {e.type!r}")
        if try_timestamp(e.time) is None:
            out.add("E008", f"{loc}/time", f"unparseable timestamp {e.time!r}")
        names = set()
        for j, attr in enumerate(e.attributes):
            aloc = f"{loc}/attributes/{j}"
            if attr.name in names:
                out.add("E007", aloc, f"attribute {attr.name!r} given twice")
            names.add(attr.name)
            _check_value(attr.name, attr.value, decl, aloc, out)
        _check_relations(e.relations, loc, object_ids, "E001", out)
        related.update(r.target for r in e.relations)

    for o in raw.objects:
        if o.id not in related:
            out.add("W002", f"objects/{o.id}", f"object {o.id!r} is not related to any event")

    return ValidationReport(tuple(sorted(out.items)))
