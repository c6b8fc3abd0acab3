"""Brute-force reference implementations used to check the library.

Nothing here imports ocelkit's readers, validator or analysis code.
"""

from __future__ import annotations

import json
import re
import sqlite3
import xml.etree.ElementTree as ET
from collections import Counter
from datetime import datetime, timezone
from pathlib import Path

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


# -- fixture enumeration ---------------------------------------------------------


def enumerate_counts(path) -> dict:
    """Count events, objects, E2O, O2O and snapshots directly from a file."""
    path = Path(path)
    if path.suffix == ".xmlocel":
        root = ET.parse(path).getroot()
        return {
            "events": len(root.findall("./events/event")),
            "objects": len(root.findall("./objects/object")),
            "e2o": len(root.findall("./events/event/objects/relationship")),
            "o2o": len(root.findall("./objects/object/objects/relationship")),
            "snapshots": len(root.findall("./objects/object/attributes/attribute")),
        }
    if path.suffix == ".jsonocel":
        doc = json.loads(path.read_text(encoding="utf-8"))
        if "ocel:events" in doc:
            return {
                "events": len(doc["ocel:events"]),
                "objects": len(doc["ocel:objects"]),
                "e2o": sum(len(e["ocel:omap"]) for e in doc["ocel:events"].values()),
                "o2o": 0,
                "snapshots": sum(len(o.get("ocel:ovmap", {})) for o in doc["ocel:objects"].values()),
            }
        return {
            "events": len(doc["events"]),
            "objects": len(doc["objects"]),
            "e2o": sum(len(e["relationships"]) for e in doc["events"]),
            "o2o": sum(len(o["relationships"]) for o in doc["objects"]),
            "snapshots": sum(len(o["attributes"]) for o in doc["objects"]),
        }
    con = sqlite3.connect(path)
    try:
        one = lambda q: con.execute(q).fetchone()[0]  # noqa: E731
        snapshots = 0
        for (mapped,) in con.execute("SELECT ocel_type_map FROM object_map_type"):
            snapshots += one(f'SELECT COUNT(*) FROM "object_{mapped}"')
        return {
            "events": one("SELECT COUNT(*) FROM event"),
            "objects": one("SELECT COUNT(*) FROM object"),
            "e2o": one("SELECT COUNT(*) FROM event_object"),
            "o2o": one("SELECT COUNT(*) FROM object_object"),
            "snapshots": snapshots,
        }
    finally:
        con.close()


# -- evolving attributes -------------------------------------------------------------


def value_at_scan(history, name, t):
    """``history`` is an iterable of (name, time, value); plain linear scan."""
    best = None
    for n, time, value in history:
        if n == name and time <= t and (best is None or time >= best[0]):
            best = (time, value)
    return None if best is None else best[1]


# -- analysis ----------------------------------------------------------------------


def incidence_pairs(log, object_type) -> int:
    ids = {o.id for o in log.objects if o.type_name == object_type}
    return sum(1 for e in log.events for oid in {r.object_id for r in e.relations} if oid in ids)


def dfg_bruteforce(log):
    """Directly-follows counts by sorting each object's events from scratch."""
    arcs, starts, ends = Counter(), Counter(), Counter()
    for o in log.objects:
        evs = [e for e in log.events if any(r.object_id == o.id for r in e.relations)]
        evs = sorted(evs, key=lambda e: (e.time, e.id))
        for i in range(len(evs) - 1):
            arcs[(evs[i].type_name, evs[i + 1].type_name, o.type_name)] += 1
        if evs:
            starts[(evs[0].type_name, o.type_name)] += 1
            ends[(evs[-1].type_name, o.type_name)] += 1
    return dict(arcs), dict(starts), dict(ends)


# -- validation ------------------------------------------------------------------

_TS = re.compile(
    r"^\d{4}-\d{2}-\d{2}(?:[T ]\d{2}:\d{2}(?::\d{2}(?:[.,]\d+)?)?(?:Z|z|[+-]\d{2}(?::?\d{2})?)?)?$"
)


def _parse_time(v):
    if isinstance(v, datetime):
        return v if v.tzinfo else v.replace(tzinfo=timezone.utc)
    if not isinstance(v, str) or not _TS.match(v.strip()):
        return None
    s = v.strip().replace(" ", "T").replace("z", "Z").replace(",", ".")
    if s.endswith("Z"):
        s = s[:-1] + "+00:00"
    if "T" not in s:
        s += "T00:00:00"
    m = re.match(r"^(.*T\d{2}:\d{2})((?::\d{2})?)(?:\.(\d+))?(.*)$", s)
    base, sec, frac, off = m.groups()
    sec = sec or ":00"
    frac = ((frac or "")[:6]).ljust(6, "0")
    if off and re.fullmatch(r"[+-]\d{2}", off):
        off += ":00"
    elif off and re.fullmatch(r"[+-]\d{4}", off):
        off = off[:3] + ":" + off[3:]
    try:
        dt = datetime.fromisoformat(f"{base}{sec}.{frac}{off}")
    except ValueError:
        return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    try:
        dt = dt.astimezone(timezone.utc)
    except OverflowError:
        return None
    return dt.replace(microsecond=dt.microsecond // 1000 * 1000)


def _fits(value, kind) -> bool:
    if kind == "string":
        return type(value) is str
    if kind == "integer":
        if type(value) is str and re.fullmatch(r"\s*[+-]?\d+\s*", value):
            value = int(value)
        return type(value) is int and -(2**63) <= value < 2**63
    if kind == "float":
        if type(value) in (int, float):
            return True
        return type(value) is str and re.fullmatch(
            r"\s*[+-]?((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?|inf|infinity|nan)\s*", value, re.I
        ) is not None
    if kind == "boolean":
        return type(value) is bool or (type(value) is int and value in (0, 1)) or (
            type(value) is str and value.strip().lower() in ("true", "false", "0", "1")
        )
    if kind == "time":
        return _parse_time(value) is not None
    raise AssertionError(kind)


def check_bruteforce(raw, suppress=()) -> Counter:
    """Multiset of (code, location) findings for a RawLog."""
    found = []
    kinds = ("string", "integer", "float", "boolean", "time")

    def decls(types, prefix):
        table = {}
        for t in types:
            if t.name in table:
                found.append(("E007", f"{prefix}/{t.name}"))
                continue
            table[t.name] = {}
            for j, a in enumerate(t.attributes):
                if a.name in table[t.name]:
                    found.append(("E007", f"{prefix}/{t.name}/attributes/{j}"))
                elif a.kind not in kinds:
                    found.append(("E006", f"{prefix}/{t.name}/attributes/{j}"))
                    table[t.name][a.name] = None
                else:
                    table[t.name][a.name] = a.kind
        return table

    otypes = decls(raw.object_types, "object-types")
    etypes = decls(raw.event_types, "event-types")
    oids = [o.id for o in raw.objects]

    def value(decl, name, v, loc):
        if decl is None:
            return
        if name not in decl:
            found.append(("E005", loc))
        elif decl[name] is not None and not _fits(v, decl[name]):
            found.append(("E006", loc))

    def rels(relations, prefix, code):
        for k, r in enumerate(relations):
            loc = f"{prefix}/relations/{k}"
            if r.target not in oids:
                found.append((code, loc))
            if r.qualifier == "":
                found.append(("W001", loc))
            if any((p.target, p.qualifier) == (r.target, r.qualifier) for p in relations[:k]):
                found.append(("W003", loc))

    for i, o in enumerate(raw.objects):
        loc = f"objects/{o.id}"
        if o.id in oids[:i]:
            found.append(("E007", loc))
        decl = otypes.get(o.type)
        if decl is None:
            found.append(("E004", loc + "/type"))
        times = []
        for j, s in enumerate(o.attributes):
            sloc = f"{loc}/attributes/{j}"
            value(decl, s.name, s.value, sloc)
            t = _parse_time(s.time) if s.time is not None else None
            if t is None:
                found.append(("E008", sloc + "/time"))
                continue
            if t == EPOCH:
                found.append(("W004", sloc))
            if (s.name, t) in times:
                found.append(("E007", sloc))
            times.append((s.name, t))
        rels(o.relations, loc, "E002")

    eids = [e.id for e in raw.events]
    for i, e in enumerate(raw.events):
        loc = f"events/{e.id}"
        if e.id in eids[:i]:
            found.append(("E007", loc))
        decl = etypes.get(e.type)
        if decl is None:
            found.append(("E003", loc + "/type"))
        if e.time is None or _parse_time(e.time) is None:
            found.append(("E008", loc + "/time"))
        for j, a in enumerate(e.attributes):
            aloc = f"{loc}/attributes/{j}"
            if a.name in [b.name for b in e.attributes[:j]]:
                found.append(("E007", aloc))
            value(decl, a.name, a.value, aloc)
        rels(e.relations, loc, "E001")

    used = {r.target for e in raw.events for r in e.relations}
    found.extend(("W002", f"objects/{o.id}") for o in raw.objects if o.id not in used)
    return Counter(f for f in found if f[0] not in suppress)
