"""Wire-format parsing: total, typed errors on any input."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planrank.errors import MalformedFrame, NonFiniteValue, UnknownCriterion
from planrank.model import Direction
from planrank.telemetry import CellUpdate, TelemetryFrame, parse_frame

from conftest import make_criteria

CRITERIA = make_criteria([
    ("ebl", Direction.COST, 0.5),
    ("vc", Direction.BENEFIT, 0.5),
])


def test_parses_canonical_wire_example():
    line = '{"session":"s1","ts":1000,"updates":[{"alt":1,"crit":"ebl","value":0.03}]}'
    frame = parse_frame(line, CRITERIA)
    assert frame.session_id == "s1"
    assert frame.ts == 1000
    assert frame.updates == (CellUpdate(1, "ebl", 0.03),)
    assert frame.revision_hint is None


def test_round_trip_is_canonical():
    frame = TelemetryFrame("s1", 1000, (CellUpdate(1, "ebl", 0.03),), revision_hint=4)
    assert parse_frame(frame.to_line()) == frame
    assert parse_frame(frame.to_line()).to_line() == frame.to_line()


def test_empty_updates_rejected():
    with pytest.raises(MalformedFrame):
        parse_frame('{"session":"s1","ts":1,"updates":[]}')


@pytest.mark.parametrize("raw", ['"NaN"', '"inf"', '"-Infinity"', "NaN", "Infinity"])
def test_non_finite_values_rejected(raw):
    line = '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"ebl","value":%s}]}' % raw
    with pytest.raises(NonFiniteValue):
        parse_frame(line, CRITERIA)


def test_numeric_string_value_accepted():
    line = '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"ebl","value":"0.5"}]}'
    assert parse_frame(line, CRITERIA).updates[0].value == 0.5


def test_unknown_criterion_when_criteria_given():
    line = '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"bogus","value":0.1}]}'
    with pytest.raises(UnknownCriterion):
        parse_frame(line, CRITERIA)
    # without a criteria set the frame parses structurally
    assert parse_frame(line).updates[0].criterion_id == "bogus"


@pytest.mark.parametrize("line", [
    "",
    "not json",
    "[1,2,3]",
    '{"ts":1,"updates":[{"alt":1,"crit":"ebl","value":1}]}',          # no session
    '{"session":"","ts":1,"updates":[{"alt":1,"crit":"ebl","value":1}]}',
    '{"session":"s1","updates":[{"alt":1,"crit":"ebl","value":1}]}',  # no ts
    '{"session":"s1","ts":1.5,"updates":[{"alt":1,"crit":"ebl","value":1}]}',
    '{"session":"s1","ts":1,"updates":"nope"}',
    '{"session":"s1","ts":1,"updates":[{"alt":0,"crit":"ebl","value":1}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":1.5,"crit":"ebl","value":1}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":true,"crit":"ebl","value":1}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"","value":1}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"ebl","value":true}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"ebl","value":"abc"}]}',
    '{"session":"s1","ts":1,"updates":[{"alt":1,"crit":"ebl"}]}',
    '{"session":"s1","ts":1,"updates":[[1,"ebl",0.5]]}',
    '{"session":"s1","ts":1,"rev":"x","updates":[{"alt":1,"crit":"ebl","value":1}]}',
])
def test_malformed_lines_rejected(line):
    with pytest.raises(MalformedFrame):
        parse_frame(line)


def test_invalid_utf8_rejected():
    with pytest.raises(MalformedFrame):
        parse_frame(b"\xff\xfe{}")


@given(st.binary(max_size=200))
def test_parsing_is_total_on_arbitrary_bytes(blob):
    try:
        parse_frame(blob, CRITERIA)
    except (MalformedFrame, UnknownCriterion, NonFiniteValue):
        pass


@given(st.text(max_size=200))
def test_parsing_is_total_on_arbitrary_text(text):
    try:
        parse_frame(text, CRITERIA)
    except (MalformedFrame, UnknownCriterion, NonFiniteValue):
        pass
