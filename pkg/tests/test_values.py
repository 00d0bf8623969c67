from fractions import Fraction

import pytest

from sylrank import INF, SylrankError, fmt_value, parse_value
from sylrank.values import ext_add, ext_sub, is_finite


def test_formatting_always_fraction_text():
    assert fmt_value(Fraction(0)) == "0/1"
    assert fmt_value(Fraction(3, 6)) == "1/2"
    assert fmt_value(INF) == "inf"


def test_parse_roundtrip():
    for text in ("0/1", "7/3", "inf"):
        assert fmt_value(parse_value(text)) == text


def test_infinity_ordering_and_addition():
    assert INF > Fraction(10**9)
    assert not (INF < INF)
    assert INF == INF
    assert ext_add(INF, Fraction(1)) is INF
    assert ext_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert is_finite(Fraction(1)) and not is_finite(INF)


def test_guarded_subtraction():
    assert ext_sub(INF, Fraction(5)) is INF
    assert ext_sub(Fraction(5), Fraction(2)) == 3
    with pytest.raises(SylrankError):
        ext_sub(INF, INF)
    with pytest.raises(SylrankError):
        ext_sub(Fraction(1), INF)
