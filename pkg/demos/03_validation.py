"""Find problems in a log file without building it.

Run with ``python3 demos/03_validation.py``.
"""

# %% A clean file produces an empty report
from ocelkit.data import fixture_path
from ocelkit.formats import parse_json
from ocelkit.validation import validate

text = fixture_path("order-mini.jsonocel").read_text(encoding="utf-8")
print(validate(parse_json(text.encode())).summary())

# %% Break it in two places: a relation to a missing object and an empty qualifier
broken = text.replace('"objectId": "o2"', '"objectId": "ghost"', 1)
broken = broken.replace('"qualifier": "order"', '"qualifier": ""', 1)
report = validate(parse_json(broken.encode()))
print(report.to_text())

# %% Reports are plain data and serialize to JSON
print(report.codes(), report.is_valid)
print(report.to_json())

# %% Readers refuse files with errors
from ocelkit.errors import SemanticError
from ocelkit.formats import read_json

try:
    read_json(broken.encode())
except SemanticError as exc:
    print("read failed:", exc)
