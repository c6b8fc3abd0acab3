import io

import pytest
from hypothesis import given

from ocelkit import EventType, ObjectEntity, ObjectType, SemanticError, build_log
from ocelkit.errors import OcelWriteError, XmlSyntaxError
from ocelkit.formats import dumps_xml, parse_xml, read_xml, write_xml

from oracles import enumerate_counts
from randlogs import logs


def test_golden_counts(fixture_file):
    log = read_xml(fixture_file("order-mini.xmlocel")).log
    counts = enumerate_counts(fixture_file("order-mini.xmlocel"))
    assert counts == {"events": 4, "objects": 3, "e2o": 6, "o2o": 2, "snapshots": 6}
    assert (len(log.events), len(log.objects), log.e2o_count, log.o2o_count) == (4, 3, 6, 2)


def test_golden_equals_fixture(fixture_file, order_mini):
    assert read_xml(fixture_file("order-mini.xmlocel")).log == order_mini


def test_writer_reproduces_golden_bytes(fixture_file, order_mini):
    assert dumps_xml(order_mini) == fixture_file("order-mini.xmlocel").read_bytes()


def test_empty_document():
    doc = b"<log><object-types/><event-types/><objects/><events/></log>"
    log = read_xml(doc).log
    assert log == build_log()


def test_empty_log_written():
    assert dumps_xml(build_log()).decode() == (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        "<log>\n  <object-types/>\n  <event-types/>\n  <objects/>\n  <events/>\n</log>\n"
    )


def test_bad_time_is_semantic_error():
    doc = b"""<log><object-types><object-type name="t"><attributes><attribute name="a" type="string"/></attributes></object-type></object-types>
    <objects><object id="o1" type="t"><attributes><attribute name="a" time="not-a-date">x</attribute></attributes></object></objects>
    <events/></log>"""
    with pytest.raises(SemanticError) as info:
        read_xml(doc)
    assert "E008" in info.value.report.codes()


@pytest.mark.parametrize("doc", [b"<log><events>", b"", b"<log><events><event type='a'/></events></log>", b"<other/>"])
def test_syntax_errors(doc):
    with pytest.raises(XmlSyntaxError):
        read_xml(doc)


def test_unknown_markup_is_ignored_with_warning(caplog, fixture_file):
    text = fixture_file("order-mini.xmlocel").read_text(encoding="utf-8")
    text = text.replace('<event id="e2" type="confirm"', '<event id="e2" color="red" type="confirm"')
    text = text.replace("<events>", "<events>\n    <comment-block/>", 1)
    log = read_xml(text.encode()).log
    assert len(log.events) == 4
    assert "color" in caplog.text and "comment-block" in caplog.text


def test_missing_qualifier_defaults_to_empty():
    doc = b"""<log><object-types><object-type name="t"/></object-types><event-types><event-type name="a"/></event-types>
    <objects><object id="o1" type="t"/></objects>
    <events><event id="e1" type="a" time="2020-01-01T00:00:00Z"><objects><relationship object-id="o1"/></objects></event></events></log>"""
    result = read_xml(doc)
    assert result.log.events[0].relations[0].qualifier == ""
    assert result.report.codes()["W001"] == 1


def test_duplicate_relations_repaired():
    doc = b"""<log><object-types><object-type name="t"/></object-types><event-types><event-type name="a"/></event-types>
    <objects><object id="o1" type="t"/></objects>
    <events><event id="e1" type="a" time="2020-01-01T00:00:00Z"><objects>
      <relationship object-id="o1" qualifier="q"/><relationship object-id="o1" qualifier="q"/>
    </objects></event></events></log>"""
    result = read_xml(doc)
    assert result.report.codes()["W003"] == 1
    assert len(result.log.events[0].relations) == 1


def test_escaping_round_trip():
    weird = 'a&b<c>"d"\te\nf\rg ü 😀'
    log = build_log(object_types=[ObjectType(weird, [(weird, "string")])], objects=[ObjectEntity(weird, weird, [(weird, "2020-01-01T00:00:00Z", weird)])])
    assert read_xml(dumps_xml(log)).log == log


def test_unrepresentable_characters():
    log = build_log(event_types=[EventType("bell\x07")])
    with pytest.raises(OcelWriteError):
        dumps_xml(log)


def test_write_to_path_and_file(tmp_path, order_mini):
    p = tmp_path / "x.xmlocel"
    write_xml(order_mini, p)
    buf = io.BytesIO()
    write_xml(order_mini, buf)
    assert p.read_bytes() == buf.getvalue()
    assert read_xml(str(p)).log == order_mini


def test_parse_keeps_raw_values(fixture_file):
    raw = parse_xml(fixture_file("order-mini.xmlocel"))
    assert raw.objects[0].attributes[0].value == "100.0"


@given(logs())
def test_round_trip(log):
    data = dumps_xml(log)
    assert read_xml(data).log == log
    assert dumps_xml(log) == data
