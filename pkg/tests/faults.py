"""Hand-placed faults on order-mini, one per diagnostic code."""

from ocelkit import EPOCH
from ocelkit.validation import RawLog, RawObject, RawRelation, RawValue

from conftest import make_order_mini


def raw_mini() -> RawLog:
    return RawLog.from_log(make_order_mini())


def by_id(items, ident):
    return next(x for x in items if x.id == ident)


def seed_fault(code):
    """Apply one hand-placed fault for ``code`` to order-mini; return (raw, location)."""
    raw = raw_mini()
    e1, e2, o1 = by_id(raw.events, "e1"), by_id(raw.events, "e2"), by_id(raw.objects, "o1")
    if code == "E001":
        e1.relations[0].target = "ghost"
        return raw, "events/e1/relations/0"
    if code == "E002":
        o1.relations[1].target = "ghost"
        return raw, "objects/o1/relations/1"
    if code == "E003":
        e2.type = "cancel"
        return raw, "events/e2/type"
    if code == "E004":
        by_id(raw.objects, "o3").type = "pallet"
        return raw, "objects/o3/type"
    if code == "E005":
        e2.attributes.append(RawValue("reason", "late"))
        return raw, "events/e2/attributes/1"
    if code == "E006":
        o1.attributes[1].value = "cheap"
        return raw, "objects/o1/attributes/1"
    if code == "E007":
        by_id(raw.events, "e3").id = "e2"
        return raw, "events/e2"
    if code == "E008":
        e1.time = "not-a-date"
        return raw, "events/e1/time"
    if code == "W001":
        e2.relations[0].qualifier = ""
        return raw, "events/e2/relations/0"
    if code == "W002":
        raw.objects.append(RawObject("o4", "item"))
        return raw, "objects/o4"
    if code == "W003":
        e2.relations.append(RawRelation("o1", "order"))
        return raw, "events/e2/relations/1"
    if code == "W004":
        o1.attributes[0].time = EPOCH
        return raw, "objects/o1/attributes/0"
    raise AssertionError(code)
