"""``ocelkit`` command-line interface.

Exit codes: 0 success, 1 validation errors, 2 I/O or parse failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from enum import IntEnum
from pathlib import Path

from . import analysis
from .errors import ParseError, SemanticError, UnknownFormat, UnknownType
from .formats import FormatKind, convert, parse_raw, read_log
from .validation import validate

KINDS = [k.value for k in FormatKind]


class ExitCode(IntEnum):
    OK = 0
    INVALID = 1
    IO_ERROR = 2
    USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def _color(text: str, code: str) -> str:
    if os.environ.get("OCEL_NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _err(message: str) -> None:
    sys.stderr.write(message.rstrip("\n") + "\n")


def _load(args):
    return read_log(args.path, args.format).log


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def cmd_validate(args) -> int:
    raw, suppress = parse_raw(args.path, args.format)
    report = validate(raw, suppress=suppress)
    if args.json:
        sys.stdout.write(report.to_json())
    elif not args.quiet:
        for d in report.diagnostics:
            sev = _color(d.severity, "31" if d.severity == "error" else "33")
            sys.stdout.write(f"{sev} {d.code} {d.location}: {d.message}\n")
        sys.stdout.write(report.summary() + "\n")
    return ExitCode.OK if report.is_valid else ExitCode.INVALID


def cmd_convert(args) -> int:
    summary = convert(args.input, args.output, args.from_kind, args.to_kind)
    sys.stdout.write(f"{summary}\n")
    return ExitCode.OK


def cmd_stats(args) -> int:
    stats = analysis.statistics(_load(args))
    sys.stdout.write(stats.to_json() if args.json else stats.to_text())
    return ExitCode.OK


def cmd_flatten(args) -> int:
    log = _load(args)
    try:
        traces = analysis.flatten(log, args.object_type)
    except UnknownType:
        available = ", ".join(t.name for t in log.object_types) or "(none)"
        raise UsageError(f"unknown object type {args.object_type!r}; available: {available}") from None
    _emit(analysis.traces_to_csv(traces), args.out)
    note = f"{len(traces)} traces"
    if args.out is None:
        _err(note)
    else:
        sys.stdout.write(note + "\n")
    return ExitCode.OK


def cmd_discover(args) -> int:
    g = analysis.discover_ocdfg(_load(args))
    _emit(analysis.render_ocdfg_dot(g), args.out)
    note = f"{len(g.nodes)} nodes, {len(g.arcs)} arcs"
    if args.out is None:
        _err(note)
    else:
        sys.stdout.write(note + "\n")
    return ExitCode.OK


def cmd_import_ocel1(args) -> int:
    source = args.from_kind or None
    if source is None:
        from .formats import detect_format

        source = detect_format(args.input)
        if source not in (FormatKind.OCEL1_JSON, FormatKind.OCEL1_XML):
            raise UsageError(f"{args.input} is not an OCEL 1.0 file (detected {source.value})")
    summary = convert(args.input, args.output, source, args.to_kind)
    sys.stdout.write(f"{summary}\n")
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ocelkit", description="Validate, convert and analyse OCEL 2.0 event logs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(p):
        p.add_argument("path")
        p.add_argument("--format", choices=KINDS, help="input format (default: detect)")
        return p

    p = with_format(sub.add_parser("validate", help="report metamodel violations"))
    p.add_argument("--quiet", action="store_true", help="print nothing, only set the exit code")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="convert between OCEL formats")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--from", dest="from_kind", choices=KINDS)
    p.add_argument("--to", dest="to_kind", choices=KINDS[:3])
    p.set_defaults(func=cmd_convert)

    p = with_format(sub.add_parser("stats", help="print log statistics"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = with_format(sub.add_parser("flatten", help="flatten onto one object type as CSV"))
    p.add_argument("--object-type", required=True)
    p.add_argument("--out", help="CSV file (default: standard output)")
    p.set_defaults(func=cmd_flatten)

    p = with_format(sub.add_parser("discover", help="discover an object-centric directly-follows graph"))
    p.add_argument("--out", help="DOT file (default: standard output)")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("import-ocel1", help="import an OCEL 1.0 log into an OCEL 2.0 format")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--from", dest="from_kind", choices=KINDS[3:])
    p.add_argument("--to", dest="to_kind", choices=KINDS[:3])
    p.set_defaults(func=cmd_import_ocel1)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    try:
        return int(args.func(args))
    except UsageError as exc:
        _err(f"ocelkit: {exc}")
        return ExitCode.USAGE
    except SemanticError as exc:
        _err(f"ocelkit: {exc}")
        for d in exc.report.diagnostics:
            if d.severity == "error":
                _err(str(d))
        return ExitCode.INVALID
    except (OSError, ParseError, UnknownFormat) as exc:
        _err(f"ocelkit: {exc}")
        return ExitCode.IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
