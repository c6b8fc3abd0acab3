"""Move one log through the XML, JSON and SQLite encodings.

Run with ``python3 demos/02_formats.py``.
"""

# %% Load the bundled fixture from each encoding
import tempfile
from pathlib import Path

from ocelkit.data import fixture_path
from ocelkit.formats import convert, read_log, write_log

logs = {name: read_log(fixture_path(f"order-mini.{name}")).log for name in ("xmlocel", "jsonocel", "sqlite")}
print("all encodings agree:", logs["xmlocel"] == logs["jsonocel"] == logs["sqlite"])

# %% Write it back out; the XML and JSON writers are byte-stable
log = logs["xmlocel"]
work = Path(tempfile.mkdtemp())
write_log(log, work / "copy.xmlocel")
same = (work / "copy.xmlocel").read_bytes() == fixture_path("order-mini.xmlocel").read_bytes()
print("XML output identical to the fixture:", same)

# %% Convert file to file; the output is re-read and checked before returning
summary = convert(fixture_path("order-mini.jsonocel"), work / "order-mini.sqlite")
print("converted:", summary)
print("round-trip equal:", read_log(work / "order-mini.sqlite").log == log)
