"""Word core: packing, factor scans, and the mirror/flip maps."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tildeiso.word import (
    Word,
    complement,
    is_free,
    occurrences,
    parse_word,
    prefix,
    reverse,
    suffix,
)

from oracles import naive_occurrences

words = st.text(alphabet="01", min_size=0, max_size=14)
nonempty_words = st.text(alphabet="01", min_size=1, max_size=14)


def test_parse_round_trip():
    for text in ["", "0", "1", "0110", "111000", "1010011"]:
        assert parse_word(text).text == text


def test_parse_rejects_foreign_symbols():
    with pytest.raises(ValueError):
        parse_word("01201")
    with pytest.raises(ValueError):
        parse_word("a")


def test_length_distinguishes_leading_zeros():
    assert parse_word("001") != parse_word("01")
    assert parse_word("001") != parse_word("0010")


def test_positions_are_one_based():
    w = parse_word("0110")
    assert [w.symbol(i) for i in range(1, 5)] == ["0", "1", "1", "0"]
    with pytest.raises(IndexError):
        w.bit(0)
    with pytest.raises(IndexError):
        w.bit(5)


def test_factor_and_concat():
    w = parse_word("110100")
    assert w.factor(2, 4).text == "101"
    assert w.factor(3, 2).text == ""
    assert (parse_word("11") + parse_word("0100")).text == "110100"


def test_reverse_known():
    assert reverse(parse_word("100")).text == "001"
    assert reverse(parse_word("1101")).text == "1011"


def test_complement_known():
    assert complement(parse_word("100")).text == "011"
    assert complement(parse_word("0000")).text == "1111"


def test_prefix_suffix_known():
    w = parse_word("110100")
    assert prefix(w, 0).text == ""
    assert prefix(w, 4).text == "1101"
    assert suffix(w, 2).text == "00"
    assert suffix(w, 6).text == "110100"
    with pytest.raises(ValueError):
        prefix(w, 7)


def test_occurrences_known_values():
    assert occurrences(parse_word("111000"), parse_word("1100")) == [2]
    assert occurrences(parse_word("10101"), parse_word("101")) == [1, 3]
    assert occurrences(parse_word("0000"), parse_word("00")) == [1, 2, 3]
    assert occurrences(parse_word("0110"), parse_word("111")) == []


def test_is_free_known_values():
    assert is_free(parse_word("110011"), parse_word("1010"))
    assert not is_free(parse_word("110100"), parse_word("1010"))
    with pytest.raises(ValueError):
        is_free(parse_word("01"), parse_word(""))


def test_ordering_is_textual():
    assert parse_word("01") < parse_word("10")
    assert sorted([parse_word("10"), parse_word("01")])[0].text == "01"


@pytest.mark.property_based
@settings(max_examples=150)
@given(words)
def test_reverse_and_complement_are_involutions(text):
    """Applying either map twice gives the word back."""
    w = parse_word(text)
    assert reverse(reverse(w)) == w
    assert complement(complement(w)) == w
    assert reverse(complement(w)) == complement(reverse(w))


@pytest.mark.property_based
@settings(max_examples=150)
@given(words, st.data())
def test_prefix_suffix_agree_with_slicing(text, data):
    w = parse_word(text)
    k = data.draw(st.integers(min_value=0, max_value=w.n))
    assert prefix(w, k).text == text[:k]
    assert suffix(w, k).text == text[w.n - k :]


@pytest.mark.property_based
@settings(max_examples=200)
@given(words, nonempty_words)
def test_occurrences_match_string_oracle(haystack, needle):
    """The packed scan agrees with plain string slicing."""
    got = occurrences(parse_word(haystack), parse_word(needle))
    assert got == naive_occurrences(haystack, needle)
    assert is_free(parse_word(haystack), parse_word(needle)) == (got == [])


@pytest.mark.property_based
@settings(max_examples=100)
@given(words)
def test_iteration_matches_text(text):
    w = parse_word(text)
    assert "".join(str(b) for b in w) == text
    assert len(w) == len(text)
