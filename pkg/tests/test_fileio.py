"""Instance document parsing, serialization, and report formatting."""

import json
import random

import pytest

from conftest import random_ring
from ringload.errors import InstanceSyntaxError, NodeOutOfRange, SchemaError
from ringload.fileio import parse_instance, routing_report, write_instance
from ringload.instances import builtin
from ringload.model import UnsplitRouting
from ringload.scaled import from_int


def test_parse_fig1_document():
    doc = b'{"n": 4, "demands": [{"i":1,"j":3,"d":2,"cw":1},{"i":2,"j":4,"d":2,"cw":1}]}'
    inst, split = parse_instance(doc)
    assert inst.n == 4
    assert [dem.d for dem in inst.demands] == [from_int(2), from_int(2)]
    assert split is not None and split.cw == (from_int(1), from_int(1))
    assert (inst, split) == builtin("fig1")


def test_round_trip_random_instances():
    rng = random.Random(21)
    for _ in range(100):
        inst, split = random_ring(rng)
        # An empty demand list cannot carry a split section at all.
        expected = split if inst.demands else None
        assert parse_instance(write_instance(inst, split)) == (inst, expected)
        assert parse_instance(write_instance(inst)) == (inst, None)


def test_half_integer_cw_round_trips():
    doc = b'{"n": 4, "demands": [{"i":1,"j":3,"d":3,"cw":1.5}]}'
    inst, split = parse_instance(doc)
    assert split is not None and split.cw == (42,)  # 1.5 * 28
    assert parse_instance(write_instance(inst, split)) == (inst, split)


def test_cw_absent_gives_instance_without_split():
    doc = b'{"n": 4, "demands": [{"i":1,"j":3,"d":2}]}'
    inst, split = parse_instance(doc)
    assert split is None


def test_malformed_json_is_a_syntax_error():
    with pytest.raises(InstanceSyntaxError):
        parse_instance(b'{"n": 4, "demands": [')


@pytest.mark.parametrize(
    "doc",
    [
        b'{"demands": []}',
        b'{"n": "4", "demands": []}',
        b'{"n": 4}',
        b'{"n": 4, "demands": [{"i":1,"j":3}]}',
        b'{"n": 4, "demands": [{"i":1,"j":3,"d":2.5}]}',
        b'{"n": 4, "demands": [{"i":1,"j":3,"d":2,"cw":0.1}]}',
        b'{"n": 4, "demands": [{"i":1,"j":3,"d":2,"cw":true}]}',
        b'{"n": 4, "demands": [{"i":1,"j":3,"d":2,"cw":1},{"i":1,"j":4,"d":2}]}',
        b'[1, 2]',
    ],
)
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        parse_instance(doc)


def test_validation_errors_surface_from_parse():
    with pytest.raises(NodeOutOfRange):
        parse_instance(b'{"n": 4, "demands": [{"i":1,"j":5,"d":2}]}')


def test_routing_report_is_exact_rational_only():
    report = routing_report(
        UnsplitRouting(("cw", "ccw")), 14, (from_int(3), 42, 0, from_int(2))
    )
    assert report == {
        "dirs": ["cw", "ccw"],
        "max_increase": "1/2",
        "loads": ["3", "3/2", "0", "2"],
    }
    # JSON round-trip keeps everything int-or-string; no floats anywhere.
    decoded = json.loads(json.dumps(report))

    def no_floats(value):
        if isinstance(value, float):
            return False
        if isinstance(value, dict):
            return all(no_floats(v) for v in value.values())
        if isinstance(value, list):
            return all(no_floats(v) for v in value)
        return True

    assert no_floats(decoded)
