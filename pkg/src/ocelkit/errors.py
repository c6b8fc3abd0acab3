"""Exception hierarchy shared by all ocelkit modules."""

from __future__ import annotations


class OcelError(Exception):
    """Base class for every error raised by ocelkit."""


class IntegrityError(OcelError):
    """A log violates a referential or typing invariant of the metamodel."""


class DanglingObjectRef(IntegrityError):
    pass


class UnknownType(IntegrityError):
    pass


class DuplicateId(IntegrityError):
    pass


class UndeclaredAttribute(IntegrityError):
    pass


class AttributeKindMismatch(IntegrityError):
    pass


class UnknownObject(IntegrityError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class FormatError(OcelError):
    pass


class UnknownFormat(FormatError):
    pass


class ParseError(FormatError):
    """The input could not be parsed structurally."""


class XmlSyntaxError(ParseError):
    pass


class JsonSyntaxError(ParseError):
    pass


class Ocel1SyntaxError(ParseError):
    pass


class SqliteSchemaError(ParseError):
    pass


class OcelWriteError(FormatError):
    """The log cannot be represented in the requested format."""


class SemanticError(FormatError):
    """Parsing succeeded but the log has error-severity diagnostics."""

    def __init__(self, report):
        self.report = report
        codes = sorted({d.code for d in report.diagnostics if d.severity == "error"})
        super().__init__(
            f"log is not valid OCEL 2.0: {report.error_count} error(s) ({', '.join(codes)})"
        )


class ValidationFailed(SemanticError):
    """Raised by :func:`ocelkit.formats.convert` when the input is invalid."""
