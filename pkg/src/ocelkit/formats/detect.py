"""Format detection by extension and content sniffing."""

from __future__ import annotations

import json
import os
import xml.etree.ElementTree as ET
from enum import Enum
from pathlib import Path

from ..errors import UnknownFormat
from .json import TOP_KEYS

SQLITE_MAGIC = b"SQLite format 3\x00"


class FormatKind(str, Enum):
    XML = "xml"
    JSON = "json"
    SQLITE = "sqlite"
    OCEL1_JSON = "ocel1-json"
    OCEL1_XML = "ocel1-xml"

    def __str__(self) -> str:
        return self.value


XML_EXTENSIONS = (".xmlocel", ".xml")
JSON_EXTENSIONS = (".jsonocel", ".json")
SQLITE_EXTENSIONS = (".sqlite", ".sqlite3", ".db")

_XML_SECTIONS = {"object-types", "event-types", "objects", "events"}


def kind_for_extension(name) -> FormatKind | None:
    """Writable kind implied by a file name, or ``None``."""
    ext = Path(name).suffix.lower()
    if ext in XML_EXTENSIONS:
        return FormatKind.XML
    if ext in JSON_EXTENSIONS:
        return FormatKind.JSON
    if ext in SQLITE_EXTENSIONS:
        return FormatKind.SQLITE
    return None


def _sniff_xml(data: bytes) -> FormatKind:
    try:
        root = ET.fromstring(data)
    except ET.ParseError:
        raise UnknownFormat("content is not well-formed XML") from None
    if root.tag != "log":
        raise UnknownFormat(f"XML root <{root.tag}> is not an OCEL log")
    tags = {child.tag for child in root}
    if "global" in tags or any(k.startswith("ocel.") for k in root.attrib):
        return FormatKind.OCEL1_XML
    for ev in root.iterfind("events/event"):
        if any(child.get("key") is not None for child in ev):
            return FormatKind.OCEL1_XML
        break
    if tags <= _XML_SECTIONS:
        return FormatKind.XML
    raise UnknownFormat("XML document matches neither OCEL 2.0 nor OCEL 1.0")


def _sniff_json(data: bytes) -> FormatKind:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise UnknownFormat("content is not valid JSON") from None
    if isinstance(doc, dict):
        if any(k in doc for k in ("ocel:events", "ocel:objects", "ocel:global-log")):
            return FormatKind.OCEL1_JSON
        if any(k in doc for k in TOP_KEYS):
            return FormatKind.JSON
    raise UnknownFormat("JSON document matches neither OCEL 2.0 nor OCEL 1.0")


def detect_format(source, name=None) -> FormatKind:
    """Classify ``source`` (a path, or raw bytes with an optional file ``name``).

    SQLite is recognized by extension or magic header; XML and JSON need their
    content inspected to tell OCEL 1.0 from OCEL 2.0.
    """
    if isinstance(source, (str, os.PathLike)):
        name = source if name is None else name
        path = Path(source)
        ext = path.suffix.lower()
        if ext in SQLITE_EXTENSIONS:
            return FormatKind.SQLITE
        data = path.read_bytes()
    else:
        data = bytes(source)
        ext = Path(name).suffix.lower() if name else ""
        if ext in SQLITE_EXTENSIONS:
            return FormatKind.SQLITE
    if data.startswith(SQLITE_MAGIC):
        return FormatKind.SQLITE
    head = data.lstrip(b"\xef\xbb\xbf \t\r\n")[:1]
    if ext in XML_EXTENSIONS or head == b"<":
        return _sniff_xml(data)
    if ext in JSON_EXTENSIONS or head == b"{":
        return _sniff_json(data)
    raise UnknownFormat(f"cannot determine the format of {name or 'input'}")
