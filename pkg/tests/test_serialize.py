"""Deterministic serialization: 17-digit round trips, JSON validity."""

import json
import math

import numpy as np
import pytest

from incevolkov.serialize import dumps_json, format_number, render_csv


class TestFormatNumber:
    def test_round_trip_random_doubles(self):
        rng = np.random.default_rng(42)
        values = np.concatenate([
            rng.normal(scale=1e-300, size=50),
            rng.normal(scale=1.0, size=50),
            rng.normal(scale=1e300, size=50),
        ])
        for x in values:
            assert float(format_number(float(x))) == float(x)

    def test_ints_stay_ints(self):
        assert format_number(7) == "7"
        assert format_number(np.int64(-3)) == "-3"

    def test_bools(self):
        assert format_number(True) == "true"
        assert format_number(np.False_) == "false"

    def test_non_finite_to_null(self):
        assert format_number(math.inf) == "null"
        assert format_number(math.nan) == "null"


class TestJson:
    def test_parseable_and_lossless(self):
        payload = {
            "name": 'quote " and \\ backslash\nnewline',
            "values": [1.0 / 3.0, 2.0 ** -1074, -0.0, 1e308],
            "nested": {"empty_list": [], "empty_dict": {}, "none": None},
            "array": np.array([1.5, 2.5]),
            "flag": True,
        }
        parsed = json.loads(dumps_json(payload))
        assert parsed["values"] == payload["values"]
        assert parsed["name"] == payload["name"]
        assert parsed["array"] == [1.5, 2.5]
        assert parsed["nested"]["none"] is None

    def test_determinism(self):
        payload = {"b": [1.0, 2.0], "a": {"x": 3.0}}
        assert dumps_json(payload) == dumps_json(payload)

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            dumps_json({"bad": object()})


class TestCsv:
    def test_comments_and_blanks(self):
        text = render_csv(["a", "b"], [(1.0, None), ("x", 2.5)],
                          header_comments=["units: none"])
        lines = text.splitlines()
        assert lines[0] == "# units: none"
        assert lines[1] == "a,b"
        assert lines[2] == "1,"
        assert lines[3] == "x,2.5"
        assert text.endswith("\n")
