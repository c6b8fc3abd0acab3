"""Build a small order log in memory and ask it questions.

Run with ``python3 demos/01_build_and_query.py``.
"""

# %% Declare types, objects and events
from datetime import datetime, timezone

from ocelkit import (
    Event,
    EventType,
    ObjectEntity,
    ObjectType,
    build_log,
    events_of_object,
    o2o_neighbors,
)
from ocelkit.model import AttributeSnapshot, O2ORelation


def at(hour, minute=0):
    return datetime(2023, 10, 23, hour, minute, tzinfo=timezone.utc)


order = ObjectType("order", [("price", "float")])
item = ObjectType("item", [("sku", "string")])
place = EventType("place_order", [("channel", "string")])
pay = EventType("pay")

objects = [
    ObjectEntity(
        "o1",
        "order",
        [AttributeSnapshot("price", at(8), 100.0), AttributeSnapshot("price", at(12), 95.0)],
        [O2ORelation("i1", "contains"), O2ORelation("i2", "contains")],
    ),
    ObjectEntity("i1", "item", [AttributeSnapshot("sku", at(8), "A-1")]),
    ObjectEntity("i2", "item", [AttributeSnapshot("sku", at(8), "B-7")]),
]
# events may arrive in any order; the log sorts them by (time, id)
events = [
    Event("e2", "pay", at(13), {}, [("o1", "order")]),
    Event("e1", "place_order", at(8), {"channel": "web"}, [("o1", "order"), ("i1", "item"), ("i2", "item")]),
]

log = build_log([place, pay], [order, item], objects, events)
print([e.id for e in log.events])

# %% Evolving attributes: the price is read as of a point in time
for hour in (7, 9, 12, 15):
    print(f"price at {hour:02d}:00 ->", log.attribute_value_at("o1", "price", at(hour)))

# %% Navigating relations
print("events of i1:", [e.id for e in events_of_object(log, "i1")])
print("o1 contains:", o2o_neighbors(log, "o1", qualifier_filter="contains"))

# %% Integrity is enforced at construction time
from ocelkit import DanglingObjectRef

try:
    build_log([pay], [order], [ObjectEntity("o1", "order")], [Event("e9", "pay", at(9), {}, [("nobody", "order")])])
except DanglingObjectRef as exc:
    print("rejected:", exc)
