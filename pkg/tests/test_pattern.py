import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorsat.pattern import (
    MAX_FREE_DIGITS,
    BitPattern,
    Digit,
    EmptyPatternError,
    InvalidCharacterError,
    TooManyFreeDigitsError,
    completions,
    matches,
    parse_pattern,
    pattern_from_vector,
    pattern_of_int,
    render_pattern,
)


def test_parse_basic():
    p = parse_pattern("101-1-00-1")
    assert len(p) == 10
    assert p.digits[0] is Digit.ONE
    assert p.digits[3] is Digit.FREE
    assert p.free_count == 3
    assert p.free_positions() == (4, 6, 9)
    assert render_pattern(p) == "101-1-00-1"
    assert str(p) == "101-1-00-1"


def test_parse_empty():
    with pytest.raises(EmptyPatternError):
        parse_pattern("")
    with pytest.raises(EmptyPatternError):
        BitPattern(())


def test_parse_invalid_character_reports_position():
    with pytest.raises(InvalidCharacterError) as info:
        parse_pattern("10x1")
    assert info.value.char == "x"
    assert info.value.position == 3


def test_pattern_from_vector():
    assert render_pattern(pattern_from_vector(["1", "0", "-", "1"])) == "10-1"
    assert pattern_from_vector(("0",)).digits == (Digit.ZERO,)


def test_pattern_of_int():
    assert render_pattern(pattern_of_int(1)) == "1"
    assert render_pattern(pattern_of_int(6)) == "110"
    assert render_pattern(pattern_of_int(3127)) == "110000110111"
    with pytest.raises(ValueError):
        pattern_of_int(0)


def test_matches_fixed():
    p = parse_pattern("110")
    assert matches(p, 6)
    assert not matches(p, 7)
    assert not matches(p, 2)


def test_matches_width_overflow():
    # 8 needs four bits, so it never matches a 3-digit pattern.
    assert not matches(parse_pattern("---"), 8)
    assert not matches(parse_pattern("---"), -1)
    assert matches(parse_pattern("---"), 7)


def test_completions_order_and_membership():
    p = parse_pattern("1-0-")
    assert list(completions(p)) == [8, 9, 12, 13]


def test_completions_all_free():
    assert list(completions(parse_pattern("--"))) == [0, 1, 2, 3]


def test_completions_agree_with_matches():
    # Every pattern of length <= 5: completions are exactly the matching values.
    import itertools

    for n in range(1, 6):
        for chars in itertools.product("01-", repeat=n):
            p = parse_pattern("".join(chars))
            expected = [v for v in range(1 << n) if matches(p, v)]
            assert list(completions(p)) == expected


def test_completions_free_digit_cap():
    p = parse_pattern("-" * (MAX_FREE_DIGITS + 1))
    with pytest.raises(TooManyFreeDigitsError) as info:
        list(completions(p))
    assert info.value.count == MAX_FREE_DIGITS + 1


@st.composite
def patterns(draw, max_len=12):
    text = draw(
        st.text(alphabet="01-", min_size=1, max_size=max_len)
    )
    return parse_pattern(text)


@given(patterns())
@settings(max_examples=200)
def test_render_parse_roundtrip(p):
    assert parse_pattern(render_pattern(p)) == p


@given(patterns(max_len=10), st.integers(min_value=0, max_value=2047))
@settings(max_examples=200)
def test_matches_iff_in_completions(p, value):
    assert matches(p, value) == (value in set(completions(p)))


@given(st.integers(min_value=1, max_value=10**9))
@settings(max_examples=200)
def test_pattern_of_int_roundtrip(value):
    p = pattern_of_int(value)
    assert p.free_count == 0
    assert list(completions(p)) == [value]
