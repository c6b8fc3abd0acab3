"""ocelkit: the OCEL 2.0 object-centric event log standard in Python.

The in-memory model lives in :mod:`ocelkit.model`, diagnostics in
:mod:`ocelkit.validation`, file formats in :mod:`ocelkit.formats` and the
analysis primitives in :mod:`ocelkit.analysis`.
"""

from .analysis import (
    FlatStep,
    FlatTrace,
    LogStatistics,
    OcDfg,
    discover_ocdfg,
    flatten,
    render_ocdfg_dot,
    statistics,
    traces_to_csv,
)
from .errors import (
    OcelError,
    IntegrityError,
    DanglingObjectRef,
    UnknownType,
    DuplicateId,
    UndeclaredAttribute,
    AttributeKindMismatch,
    UnknownObject,
    FormatError,
    UnknownFormat,
    ParseError,
    XmlSyntaxError,
    JsonSyntaxError,
    Ocel1SyntaxError,
    SqliteSchemaError,
    OcelWriteError,
    SemanticError,
    ValidationFailed,
)
from .formats import (
    ConversionSummary,
    FormatKind,
    convert,
    detect_format,
    import_ocel1,
    read_json,
    read_log,
    read_sqlite,
    read_xml,
    write_json,
    write_log,
    write_sqlite,
    write_xml,
)
from .model import (
    AttributeDeclaration,
    AttributeSnapshot,
    E2ORelation,
    Event,
    EventType,
    O2ORelation,
    ObjectEntity,
    ObjectType,
    OcelLog,
    ValueKind,
    attribute_value_at,
    build_log,
    events_of_object,
    o2o_neighbors,
)
from .timestamps import EPOCH, format_timestamp, parse_timestamp
from .validation import Diagnostic, RawLog, ValidationReport, validate

__version__ = "0.1.0"

__all__ = [
    "attribute_value_at",
    "AttributeDeclaration",
    "AttributeKindMismatch",
    "AttributeSnapshot",
    "build_log",
    "ConversionSummary",
    "convert",
    "DanglingObjectRef",
    "detect_format",
    "Diagnostic",
    "discover_ocdfg",
    "DuplicateId",
    "E2ORelation",
    "EPOCH",
    "Event",
    "events_of_object",
    "EventType",
    "FlatStep",
    "flatten",
    "FlatTrace",
    "format_timestamp",
    "FormatError",
    "FormatKind",
    "import_ocel1",
    "IntegrityError",
    "JsonSyntaxError",
    "LogStatistics",
    "o2o_neighbors",
    "O2ORelation",
    "ObjectEntity",
    "ObjectType",
    "OcDfg",
    "Ocel1SyntaxError",
    "OcelError",
    "OcelLog",
    "OcelWriteError",
    "parse_timestamp",
    "ParseError",
    "RawLog",
    "read_json",
    "read_log",
    "read_sqlite",
    "read_xml",
    "render_ocdfg_dot",
    "SemanticError",
    "SqliteSchemaError",
    "statistics",
    "traces_to_csv",
    "UndeclaredAttribute",
    "UnknownFormat",
    "UnknownObject",
    "UnknownType",
    "validate",
    "ValidationFailed",
    "ValidationReport",
    "ValueKind",
    "write_json",
    "write_log",
    "write_sqlite",
    "write_xml",
    "XmlSyntaxError",
]
