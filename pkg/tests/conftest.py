from __future__ import annotations

from datetime import datetime, timezone

import pytest
from hypothesis import settings

from ocelkit import AttributeSnapshot, Event, EventType, ObjectEntity, ObjectType, build_log
from ocelkit.data import fixture_path

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def ts(text: str) -> datetime:
    return datetime.fromisoformat(text).replace(tzinfo=timezone.utc)


def make_order_mini():
    """The order-mini log assembled directly in Python, independent of any reader."""
    return build_log(
        event_types=[
            EventType("place_order", [("channel", "string"), ("deliver_by", "time")]),
            EventType("confirm", [("approved", "boolean")]),
        ],
        object_types=[
            ObjectType("order", [("price", "float")]),
            ObjectType("item", [("sku", "string"), ("quantity", "integer")]),
        ],
        objects=[
            ObjectEntity(
                "o1",
                "order",
                [
                    AttributeSnapshot("price", ts("2023-10-23T08:15:00"), 100.0),
                    AttributeSnapshot("price", ts("2023-10-23T11:45:00"), 95.0),
                ],
                [("o2", "contains"), ("o3", "contains")],
            ),
            ObjectEntity(
                "o2",
                "item",
                [
                    AttributeSnapshot("sku", ts("2023-10-23T08:15:00"), "SKU-A"),
                    AttributeSnapshot("quantity", ts("2023-10-23T08:15:00"), 2),
                ],
            ),
            ObjectEntity(
                "o3",
                "item",
                [
                    AttributeSnapshot("sku", ts("2023-10-23T08:15:00"), "SKU-B"),
                    AttributeSnapshot("quantity", ts("2023-10-23T08:15:00"), 1),
                ],
            ),
        ],
        events=[
            Event(
                "e1",
                "place_order",
                ts("2023-10-23T08:15:00"),
                {"channel": "web", "deliver_by": ts("2023-10-30T00:00:00")},
                [("o1", "order"), ("o2", "item"), ("o3", "item")],
            ),
            Event("e2", "confirm", ts("2023-10-23T09:00:00"), {"approved": True}, [("o1", "order")]),
            Event("e3", "confirm", ts("2023-10-23T10:30:00"), {}, [("o2", "item")]),
            Event("e4", "confirm", ts("2023-10-23T11:45:00"), {"approved": False}, [("o1", "order")]),
        ],
    )


@pytest.fixture
def order_mini():
    return make_order_mini()


@pytest.fixture
def fixture_file():
    return fixture_path


# -- acceptance reporting ----------------------------------------------------------

_ACCEPTANCE: list[tuple[str, bool]] = []


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance test under its criterion name."""
    name = request.node.get_closest_marker("criterion").args[0]
    yield name
    failed = getattr(request.node, "_rep_call_failed", True)
    _ACCEPTANCE.append((name, not failed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item._rep_call_failed = rep.failed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by the test")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
