from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from esskit.errors import ValidationError
from esskit.rational import format_rational, parse_rational


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/2", Fraction(3, 2)),
        ("-1", Fraction(-1)),
        ("0", Fraction(0)),
        ("+2/4", Fraction(1, 2)),
        (7, Fraction(7)),
        ("  5/3 ", Fraction(5, 3)),
    ],
)
def test_parse_accepts_exact_literals(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["1.5", "2e3", ".5", "1/0", "nan", "", "1/2/3", 1.5, True, None])
def test_parse_rejects_inexact_or_malformed(bad):
    with pytest.raises(ValidationError):
        parse_rational(bad)


@given(st.fractions())
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_is_canonical():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"
