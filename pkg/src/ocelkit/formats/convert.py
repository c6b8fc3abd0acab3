"""Format-independent reading, writing and conversion."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..errors import FormatError, SemanticError, UnknownFormat, ValidationFailed
from ..model import OcelLog
from ..validation import RawLog
from ._load import ReadResult, load_raw
from .detect import FormatKind, detect_format, kind_for_extension
from .json import parse_json, write_json
from .ocel1 import IMPORT_SUPPRESSED, parse_ocel1_json, parse_ocel1_xml
from .sqlite import parse_sqlite, write_sqlite
from .xml import parse_xml, write_xml

_PARSERS = {
    FormatKind.XML: parse_xml,
    FormatKind.JSON: parse_json,
    FormatKind.SQLITE: parse_sqlite,
    FormatKind.OCEL1_JSON: parse_ocel1_json,
    FormatKind.OCEL1_XML: parse_ocel1_xml,
}

_WRITERS = {
    FormatKind.XML: write_xml,
    FormatKind.JSON: write_json,
    FormatKind.SQLITE: write_sqlite,
}


def parse_raw(path, kind=None) -> tuple[RawLog, tuple[str, ...]]:
    """Parse without validating. Returns the raw log and the codes to suppress for it."""
    kind = FormatKind(kind) if kind is not None else detect_format(path)
    raw = _PARSERS[kind](path)
    suppress = IMPORT_SUPPRESSED if kind in (FormatKind.OCEL1_JSON, FormatKind.OCEL1_XML) else ()
    return raw, suppress


def read_log(path, kind=None) -> ReadResult:
    raw, suppress = parse_raw(path, kind)
    return load_raw(raw, suppress=suppress)


def write_log(log: OcelLog, path, kind=None) -> FormatKind:
    kind = FormatKind(kind) if kind is not None else kind_for_extension(path)
    if kind is None:
        raise UnknownFormat(f"cannot infer an output format from {path}")
    if kind not in _WRITERS:
        raise UnknownFormat(f"writing {kind.value} is not supported")
    _WRITERS[kind](log, path)
    return kind


@dataclass(frozen=True)
class ConversionSummary:
    source_kind: FormatKind
    target_kind: FormatKind
    events: int
    objects: int
    e2o: int
    o2o: int
    snapshots: int

    @classmethod
    def counts_of(cls, log: OcelLog) -> tuple[int, ...]:
        return (len(log.events), len(log.objects), log.e2o_count, log.o2o_count, log.snapshot_count)

    def __str__(self) -> str:
        return (
            f"{self.events} events, {self.objects} objects, {self.e2o} E2O, "
            f"{self.o2o} O2O, {self.snapshots} snapshots"
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["source_kind"] = self.source_kind.value
        d["target_kind"] = self.target_kind.value
        return d


def convert(input_path, output_path, from_kind=None, to_kind=None) -> ConversionSummary:
    """Read, validate and re-encode a log.

    Nothing is written when the input has validation errors
    (:class:`ValidationFailed`). The written file is read back and its counts
    compared with the input's.
    """
    source_kind = FormatKind(from_kind) if from_kind is not None else detect_format(input_path)
    target_kind = FormatKind(to_kind) if to_kind is not None else kind_for_extension(output_path)
    if target_kind is None:
        raise UnknownFormat(f"cannot infer an output format from {output_path}")
    if target_kind not in _WRITERS:
        raise UnknownFormat(f"writing {target_kind.value} is not supported")
    try:
        log = read_log(input_path, source_kind).log
    except ValidationFailed:
        raise
    except SemanticError as exc:
        raise ValidationFailed(exc.report) from None
    write_log(log, output_path, target_kind)
    written = read_log(output_path, target_kind).log
    before, after = ConversionSummary.counts_of(log), ConversionSummary.counts_of(written)
    if before != after or written != log:
        raise FormatError(f"conversion changed the log: {before} -> {after}")
    return ConversionSummary(source_kind, target_kind, *before)
