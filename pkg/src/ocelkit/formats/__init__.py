"""Readers and writers for the OCEL 2.0 XML, JSON and SQLite variants, plus OCEL 1.0 import."""

from ._load import ReadResult, load_raw
from .convert import ConversionSummary, convert, parse_raw, read_log, write_log
from .detect import FormatKind, detect_format, kind_for_extension
from .json import dumps_json, parse_json, read_json, write_json
from .ocel1 import import_ocel1, infer_kind, parse_ocel1_json, parse_ocel1_xml
from .sqlite import dumps_sqlite, parse_sqlite, read_sqlite, write_sqlite
from .xml import dumps_xml, parse_xml, read_xml, write_xml

__all__ = [
    "ConversionSummary",
    "FormatKind",
    "ReadResult",
    "convert",
    "detect_format",
    "dumps_json",
    "dumps_sqlite",
    "dumps_xml",
    "import_ocel1",
    "infer_kind",
    "kind_for_extension",
    "load_raw",
    "parse_json",
    "parse_ocel1_json",
    "parse_ocel1_xml",
    "parse_raw",
    "parse_sqlite",
    "parse_xml",
    "read_json",
    "read_log",
    "read_sqlite",
    "read_xml",
    "write_json",
    "write_log",
    "write_sqlite",
    "write_xml",
]
