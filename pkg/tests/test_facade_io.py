"""Tests for the matrix file formats."""

import numpy as np
import pytest

from cop_ahp.errors import ParseError, ReciprocityBroken
from cop_ahp.facade.io import (
    format_value,
    parse_csv_document,
    parse_document,
    parse_json_document,
    parse_value,
    serialize_csv_document,
    serialize_json_document,
)
from cop_ahp.pcm import SAATY_SCALE_FLOATS
from fixtures import CYCLIC_8, EXCHANGEABLE_4, VIOLATING_4


class TestValues:
    def test_fraction_strings(self):
        assert parse_value("1/7") == 1.0 / 7.0
        assert parse_value("1/9") == 1.0 / 9.0
        assert parse_value(" 3 ") == 3.0
        assert parse_value("2.5") == 2.5
        assert parse_value(5) == 5.0

    def test_bad_values_raise(self):
        for bad in ("abc", "1/0", "", True):
            with pytest.raises(ParseError):
                parse_value(bad)

    def test_every_scale_value_round_trips(self):
        for v in SAATY_SCALE_FLOATS:
            assert parse_value(format_value(v)) == v


class TestJson:
    def test_round_trip(self):
        for pcm in (EXCHANGEABLE_4, VIOLATING_4, CYCLIC_8):
            text = serialize_json_document(pcm)
            parsed, labels = parse_json_document(text)
            assert labels is None
            assert np.array_equal(parsed.a, pcm.a)

    def test_labels_round_trip(self):
        names = ("north", "south", "east", "west")
        text = serialize_json_document(EXCHANGEABLE_4, labels=names)
        _, labels = parse_json_document(text)
        assert labels == names

    def test_rows_form(self):
        doc = '{"n": 3, "rows": [[1, 2, 4], ["1/2", 1, 2], ["1/4", "1/2", 1]]}'
        pcm, _ = parse_json_document(doc)
        assert pcm.a[0, 1] == 2.0
        assert pcm.a[2, 0] == 0.25

    def test_rows_form_checks_reciprocity(self):
        doc = '{"n": 3, "rows": [[1, 2, 4], [3, 1, 2], ["1/4", "1/2", 1]]}'
        with pytest.raises(ReciprocityBroken):
            parse_json_document(doc)

    def test_malformed_documents(self):
        bad = [
            "not json",
            "[1, 2]",
            '{"n": 3}',
            '{"n": "3", "upper": []}',
            '{"n": 3, "upper": [[1, 2, 2]]}',                    # missing entry
            '{"n": 3, "upper": [[2, 1, 2], [1, 3, 1], [2, 3, 1]]}',  # i >= j
            '{"n": 3, "upper": [[1, 2, 2], [1, 2, 3], [2, 3, 1], [1, 3, 1]]}',
            '{"n": 3, "labels": ["a"], "upper": [[1, 2, 1], [1, 3, 1], [2, 3, 1]]}',
        ]
        for text in bad:
            with pytest.raises(ParseError):
                parse_json_document(text)


class TestCsv:
    def test_round_trip(self):
        for pcm in (EXCHANGEABLE_4, VIOLATING_4, CYCLIC_8):
            parsed, _ = parse_csv_document(serialize_csv_document(pcm))
            assert np.array_equal(parsed.a, pcm.a)

    def test_malformed_documents(self):
        bad = [
            "",
            "x\n1,2\n1/2,1",
            "3\n1,2\n1/2,1",            # wrong row count
            "2\n1,2,3\n1/2,1",          # wrong row length
        ]
        for text in bad:
            with pytest.raises(ParseError):
                parse_csv_document(text)


class TestDispatch:
    def test_json_and_csv_are_distinguished(self):
        as_json = serialize_json_document(EXCHANGEABLE_4)
        as_csv = serialize_csv_document(EXCHANGEABLE_4)
        for text in (as_json, as_csv):
            parsed, _ = parse_document(text)
            assert np.array_equal(parsed.a, EXCHANGEABLE_4.a)
