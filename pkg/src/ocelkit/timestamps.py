"""Parsing and canonical formatting of OCEL timestamps.

All timestamps are held as timezone-aware :class:`datetime.datetime` values
normalized to UTC and truncated to millisecond precision.
"""

from __future__ import annotations

import re
from datetime import datetime, timedelta, timezone

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)

_ISO_RE = re.compile(
    r"""
    ^(?P<year>\d{4})-(?P<month>\d{2})-(?P<day>\d{2})
    (?:[T ](?P<hour>\d{2}):(?P<minute>\d{2})
        (?::(?P<second>\d{2})(?:[.,](?P<fraction>\d+))?)?
        (?P<offset>Z|z|[+-]\d{2}(?::?\d{2})?)?
    )?$
    """,
    re.VERBOSE,
)


def normalize(dt: datetime) -> datetime:
    """Convert to UTC (naive values are taken as UTC) and drop sub-millisecond digits."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    else:
        dt = dt.astimezone(timezone.utc)
    return dt.replace(microsecond=dt.microsecond - dt.microsecond % 1000)


def parse_timestamp(text: str) -> datetime:
    """Parse an ISO-8601 timestamp.

    Accepts second or fractional precision, ``Z`` or numeric offsets, and a
    bare date. Offset-less values are interpreted as UTC.

    >>> format_timestamp(parse_timestamp("2023-10-23T10:15:00+02:00"))
    '2023-10-23T08:15:00.000+00:00'
    """
    if not isinstance(text, str):
        raise ValueError(f"timestamp must be text, got {type(text).__name__}")
    m = _ISO_RE.match(text.strip())
    if m is None:
        raise ValueError(f"unparseable timestamp: {text!r}")
    fraction = m.group("fraction") or "0"
    micro = int(fraction[:6].ljust(6, "0"))
    tz = timezone.utc
    offset = m.group("offset")
    if offset and offset not in ("Z", "z"):
        sign = -1 if offset[0] == "-" else 1
        digits = offset[1:].replace(":", "")
        hours, minutes = int(digits[:2]), int(digits[2:] or 0)
        if hours > 23 or minutes > 59:
            raise ValueError(f"bad UTC offset in {text!r}")
        tz = timezone(sign * timedelta(hours=hours, minutes=minutes))
    try:
        dt = datetime(
            int(m.group("year")),
            int(m.group("month")),
            int(m.group("day")),
            int(m.group("hour") or 0),
            int(m.group("minute") or 0),
            int(m.group("second") or 0),
            micro,
            tzinfo=tz,
        )
    except ValueError as exc:
        raise ValueError(f"unparseable timestamp: {text!r} ({exc})") from None
    return normalize(dt)


def format_timestamp(dt: datetime) -> str:
    """Canonical text: UTC, milliseconds always printed, explicit ``+00:00``."""
    return normalize(dt).isoformat(timespec="milliseconds")


def coerce_timestamp(value) -> datetime:
    if isinstance(value, datetime):
        return normalize(value)
    return parse_timestamp(value)
