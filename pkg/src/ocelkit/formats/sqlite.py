"""OCEL 2.0 SQLite variant.

Mandatory tables::

    event(ocel_id, ocel_type)            object(ocel_id, ocel_type)
    event_object(ocel_event_id, ocel_object_id, ocel_qualifier)
    object_object(ocel_source_id, ocel_target_id, ocel_qualifier)
    event_map_type(ocel_type, ocel_type_map)
    object_map_type(ocel_type, ocel_type_map)

plus one ``event_<T>`` table per event type (``ocel_id, ocel_time`` and one
column per attribute) and one ``object_<T>`` table per object type whose rows
each record a single attribute change named by ``ocel_changed_field``. ``<T>``
is the type name reduced to ``[A-Za-z0-9_]``, disambiguated with a numeric
suffix when needed.
"""

from __future__ import annotations

import logging
import os
import re
import sqlite3
import tempfile
from pathlib import Path

from ..errors import OcelWriteError, SqliteSchemaError
from ..model import OcelLog, ValueKind
from ..timestamps import format_timestamp
from ..validation import RawAttribute, RawEvent, RawLog, RawObject, RawRelation, RawType, RawValue
from ._load import ReadResult, load_raw

log = logging.getLogger(__name__)

MANDATORY_TABLES = {
    "event": ("ocel_id", "ocel_type"),
    "object": ("ocel_id", "ocel_type"),
    "event_object": ("ocel_event_id", "ocel_object_id", "ocel_qualifier"),
    "object_object": ("ocel_source_id", "ocel_target_id", "ocel_qualifier"),
    "event_map_type": ("ocel_type", "ocel_type_map"),
    "object_map_type": ("ocel_type", "ocel_type_map"),
}

SQL_TYPES = {
    ValueKind.STRING: "TEXT",
    ValueKind.INTEGER: "INTEGER",
    ValueKind.FLOAT: "REAL",
    ValueKind.BOOLEAN: "BOOLEAN",
    ValueKind.TIMESTAMP: "TIMESTAMP",
}

_SCHEMA = """
CREATE TABLE event (ocel_id TEXT PRIMARY KEY, ocel_type TEXT);
CREATE TABLE object (ocel_id TEXT PRIMARY KEY, ocel_type TEXT);
CREATE TABLE event_object (ocel_event_id TEXT, ocel_object_id TEXT, ocel_qualifier TEXT);
CREATE TABLE object_object (ocel_source_id TEXT, ocel_target_id TEXT, ocel_qualifier TEXT);
CREATE TABLE event_map_type (ocel_type TEXT PRIMARY KEY, ocel_type_map TEXT);
CREATE TABLE object_map_type (ocel_type TEXT PRIMARY KEY, ocel_type_map TEXT);
CREATE INDEX idx_event_type ON event (ocel_type);
CREATE INDEX idx_object_type ON object (ocel_type);
CREATE INDEX idx_event_object_event ON event_object (ocel_event_id);
CREATE INDEX idx_event_object_object ON event_object (ocel_object_id);
CREATE INDEX idx_object_object_source ON object_object (ocel_source_id);
CREATE INDEX idx_object_object_target ON object_object (ocel_target_id);
"""

_RESERVED_COLUMNS = ("ocel_id", "ocel_time", "ocel_changed_field")


def quote(identifier: str) -> str:
    return '"' + identifier.replace('"', '""') + '"'


def _fold(name: str) -> str:
    # SQLite identifiers compare case-insensitively for ASCII letters only
    return "".join(c.lower() if "A" <= c <= "Z" else c for c in name)


def kind_for_sql_type(decl: str) -> ValueKind:
    decl = (decl or "").upper()
    if "BOOL" in decl:
        return ValueKind.BOOLEAN
    if "TIME" in decl or "DATE" in decl:
        return ValueKind.TIMESTAMP
    if "INT" in decl:
        return ValueKind.INTEGER
    if any(k in decl for k in ("REAL", "FLOA", "DOUB", "NUMERIC", "DECIMAL")):
        return ValueKind.FLOAT
    return ValueKind.STRING


def table_names(event_types, object_types) -> tuple[dict[str, str], dict[str, str]]:
    """Sanitized per-type table suffixes, ``({event type: T}, {object type: T})``."""
    taken = set(MANDATORY_TABLES)

    def assign(names, prefix):
        mapping = {}
        for name in sorted(names):
            base = re.sub(r"[^A-Za-z0-9_]", "_", name)
            candidate, n = base, 2
            while _fold(f"{prefix}_{candidate}") in taken:
                candidate, n = f"{base}_{n}", n + 1
            taken.add(_fold(f"{prefix}_{candidate}"))
            mapping[name] = candidate
        return mapping

    return assign(event_types, "event"), assign(object_types, "object")


def _check_columns(t, reserved) -> None:
    seen = {_fold(c) for c in reserved}
    for a in t.attributes:
        folded = _fold(a.name)
        if folded in seen or "\x00" in a.name:
            raise OcelWriteError(
                f"attribute {a.name!r} of type {t.name!r} cannot be stored as a distinct SQLite column"
            )
        seen.add(folded)


def _sql_value(value, kind: ValueKind):
    if kind is ValueKind.BOOLEAN:
        return int(value)
    if kind is ValueKind.TIMESTAMP:
        return format_timestamp(value)
    return value


def _populate(conn: sqlite3.Connection, log: OcelLog) -> None:
    conn.executescript(_SCHEMA)
    emap, omap = table_names([t.name for t in log.event_types], [t.name for t in log.object_types])
    conn.executemany("INSERT INTO event_map_type VALUES (?, ?)", sorted(emap.items()))
    conn.executemany("INSERT INTO object_map_type VALUES (?, ?)", sorted(omap.items()))

    for t in log.event_types:
        _check_columns(t, _RESERVED_COLUMNS[:2])
        table = f"event_{emap[t.name]}"
        cols = "".join(f", {quote(a.name)} {SQL_TYPES[a.kind]}" for a in t.attributes)
        conn.execute(f"CREATE TABLE {quote(table)} (ocel_id TEXT, ocel_time TIMESTAMP{cols})")
        conn.execute(f"CREATE INDEX {quote('idx_' + table)} ON {quote(table)} (ocel_id)")
    for t in log.object_types:
        _check_columns(t, _RESERVED_COLUMNS)
        table = f"object_{omap[t.name]}"
        cols = "".join(f", {quote(a.name)} {SQL_TYPES[a.kind]}" for a in t.attributes)
        conn.execute(
            f"CREATE TABLE {quote(table)} (ocel_id TEXT, ocel_time TIMESTAMP, ocel_changed_field TEXT{cols})"
        )
        conn.execute(f"CREATE INDEX {quote('idx_' + table)} ON {quote(table)} (ocel_id)")

    conn.executemany("INSERT INTO object VALUES (?, ?)", [(o.id, o.type_name) for o in log.objects])
    conn.executemany(
        "INSERT INTO object_object VALUES (?, ?, ?)",
        [(o.id, r.target_object_id, r.qualifier) for o in log.objects for r in o.relations],
    )
    for o in log.objects:
        otype = log.object_type(o.type_name)
        kinds = {a.name: a.kind for a in otype.attributes}
        table = quote(f"object_{omap[o.type_name]}")
        for s in o.attribute_history:
            conn.execute(
                f"INSERT INTO {table} (ocel_id, ocel_time, ocel_changed_field, {quote(s.name)}) VALUES (?, ?, ?, ?)",
                (o.id, format_timestamp(s.time), s.name, _sql_value(s.value, kinds[s.name])),
            )

    conn.executemany("INSERT INTO event VALUES (?, ?)", [(e.id, e.type_name) for e in log.events])
    conn.executemany(
        "INSERT INTO event_object VALUES (?, ?, ?)",
        [(e.id, r.object_id, r.qualifier) for e in log.events for r in e.relations],
    )
    for e in log.events:
        etype = log.event_type(e.type_name)
        names = [a.name for a in etype.attributes if a.name in e.attributes]
        cols = "".join(f", {quote(n)}" for n in names)
        marks = ", ?" * len(names)
        values = [_sql_value(e.attributes[n], etype.declaration(n).kind) for n in names]
        conn.execute(
            f"INSERT INTO {quote('event_' + emap[e.type_name])} (ocel_id, ocel_time{cols}) VALUES (?, ?{marks})",
            (e.id, format_timestamp(e.time), *values),
        )


def write_sqlite(log: OcelLog, path) -> None:
    """Write ``log`` to a fresh SQLite database at ``path``, replacing any existing file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=".ocel-", suffix=".sqlite", dir=path.parent)
    os.close(fd)
    os.unlink(tmp)
    try:
        conn = sqlite3.connect(tmp)
        try:
            with conn:
                _populate(conn, log)
        finally:
            conn.close()
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_sqlite(log: OcelLog) -> bytes:
    with tempfile.TemporaryDirectory() as d:
        target = Path(d) / "log.sqlite"
        write_sqlite(log, target)
        return target.read_bytes()


# -- reader --------------------------------------------------------------------


def _columns(conn, table) -> list[tuple[str, str]]:
    return [(row[1], row[2]) for row in conn.execute(f"PRAGMA table_info({quote(table)})")]


def _tables(conn) -> dict[str, str]:
    return {_fold(r[0]): r[0] for r in conn.execute("SELECT name FROM sqlite_master WHERE type = 'table'")}


def _type_tables(conn, tables, prefix, reserved):
    """Return ``{type name: (table name, [RawAttribute])}`` from the map table."""
    out = {}
    for name, mapped in conn.execute(f"SELECT ocel_type, ocel_type_map FROM {prefix}_map_type ORDER BY rowid"):
        table = tables.get(_fold(f"{prefix}_{mapped}"))
        if table is None:
            raise SqliteSchemaError(f"type {name!r} maps to missing table {prefix}_{mapped}")
        cols = _columns(conn, table)
        present = {_fold(c) for c, _ in cols}
        for required in reserved:
            if required not in present:
                raise SqliteSchemaError(f"table {table} lacks column {required}")
        attrs = [
            RawAttribute(c, kind_for_sql_type(t).value) for c, t in cols if _fold(c) not in reserved
        ]
        out[name] = (table, attrs)
    return out


def _read(conn: sqlite3.Connection) -> RawLog:
    tables = _tables(conn)
    for table, cols in MANDATORY_TABLES.items():
        if table not in tables:
            raise SqliteSchemaError(f"missing mandatory table {table!r}")
        present = {_fold(c) for c, _ in _columns(conn, tables[table])}
        for col in cols:
            if col not in present:
                raise SqliteSchemaError(f"table {table!r} lacks column {col!r}")

    etables = _type_tables(conn, tables, "event", _RESERVED_COLUMNS[:2])
    otables = _type_tables(conn, tables, "object", _RESERVED_COLUMNS)
    raw = RawLog(
        object_types=[RawType(n, attrs) for n, (_, attrs) in otables.items()],
        event_types=[RawType(n, attrs) for n, (_, attrs) in etables.items()],
    )

    o2o: dict[str, list[RawRelation]] = {}
    for src, tgt, q in conn.execute("SELECT ocel_source_id, ocel_target_id, ocel_qualifier FROM object_object ORDER BY rowid"):
        o2o.setdefault(src, []).append(RawRelation(tgt, q or ""))
    snapshots: dict[str, list[RawValue]] = {}
    for table, attrs in otables.values():
        names = [a.name for a in attrs]
        select = ", ".join(["ocel_id", "ocel_time", "ocel_changed_field"] + [quote(n) for n in names])
        for row in conn.execute(f"SELECT {select} FROM {quote(table)} ORDER BY rowid"):
            oid, time, changed = row[:3]
            values = dict(zip(names, row[3:]))
            bucket = snapshots.setdefault(oid, [])
            if changed is not None:
                bucket.append(RawValue(changed, values.get(changed), time))
            else:
                bucket.extend(RawValue(n, v, time) for n, v in values.items() if v is not None)
    for oid, otype in conn.execute("SELECT ocel_id, ocel_type FROM object ORDER BY rowid"):
        raw.objects.append(RawObject(oid, otype, snapshots.pop(oid, []), o2o.pop(oid, [])))
    for oid in snapshots:
        log.warning("ignoring attribute rows of unknown object %r", oid)
    for oid in o2o:
        raise SqliteSchemaError(f"object_object references unknown source object {oid!r}")

    e2o: dict[str, list[RawRelation]] = {}
    for eid, oid, q in conn.execute("SELECT ocel_event_id, ocel_object_id, ocel_qualifier FROM event_object ORDER BY rowid"):
        e2o.setdefault(eid, []).append(RawRelation(oid, q or ""))
    rows: dict[str, tuple] = {}
    for table, attrs in etables.values():
        names = [a.name for a in attrs]
        select = ", ".join(["ocel_id", "ocel_time"] + [quote(n) for n in names])
        for row in conn.execute(f"SELECT {select} FROM {quote(table)} ORDER BY rowid"):
            rows[row[0]] = (row[1], [RawValue(n, v) for n, v in zip(names, row[2:]) if v is not None])
    for eid, etype in conn.execute("SELECT ocel_id, ocel_type FROM event ORDER BY rowid"):
        time, values = rows.pop(eid, (None, []))
        raw.events.append(RawEvent(eid, etype, time, values, e2o.pop(eid, [])))
    for eid in rows:
        log.warning("ignoring per-type row of unknown event %r", eid)
    for eid in e2o:
        raise SqliteSchemaError(f"event_object references unknown event {eid!r}")
    return raw


def parse_sqlite(source) -> RawLog:
    """Read a database file (path or raw bytes) into an unchecked :class:`RawLog`."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        with tempfile.TemporaryDirectory() as d:
            p = Path(d) / "in.sqlite"
            p.write_bytes(bytes(source))
            return parse_sqlite(p)
    path = Path(source)
    if not path.is_file():
        raise FileNotFoundError(f"no such database: {path}")
    try:
        conn = sqlite3.connect(f"{path.resolve().as_uri()}?mode=ro", uri=True)
    except sqlite3.Error as exc:
        raise SqliteSchemaError(str(exc)) from None
    try:
        return _read(conn)
    except sqlite3.DatabaseError as exc:
        raise SqliteSchemaError(str(exc)) from None
    finally:
        conn.close()


def read_sqlite(source) -> ReadResult:
    return load_raw(parse_sqlite(source))
