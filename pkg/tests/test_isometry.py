"""Tests for case classification, witness recipes, and verdicts."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tildeiso.editops import tilde_distance
from tildeiso.isometry import (
    ALPHA_BETA,
    ALPHA_BETA_SWAP,
    ALPHA_DELTA,
    ALPHA_PSI,
    CONFIRMED,
    ETA_GAMMA,
    REFUTED,
    build_witness,
    classify,
    is_ham_isometric,
    is_tilde_isometric,
    symmetry_closure,
    verify_witness,
)
from tildeiso.word import complement, is_free, parse_word, reverse

from oracles import bfs_distance, bfs_restricted_distance

words = st.text(alphabet="01", min_size=2, max_size=12).map(parse_word)


def profile(f):
    return [
        (m.case_id, m.overlap.length, m.overlap.shift, m.symmetry, m.block_position)
        for m in classify(f)
    ]


def test_classify_needs_two_letters():
    with pytest.raises(ValueError):
        classify(parse_word("1"))


def test_classify_known_shapes():
    assert profile(parse_word("1010")) == [("C3", 3, 1, "row-exchange", 1)]
    assert profile(parse_word("1100")) == [("C5", 2, 2, "complement", 1)]
    assert profile(parse_word("111000")) == []
    assert profile(parse_word("101")) == [("C0", 2, 1, "identity", 1)]
    assert profile(parse_word("100011")) == [("C1", 5, 1, "identity", 1)]
    assert profile(parse_word("1011000")) == [
        ("C1", 6, 1, "identity", 1),
        ("C1", 3, 4, "identity", 1),
    ]
    assert profile(parse_word("10010110")) == [
        ("C1", 6, 2, "identity", 1),
        ("C2", 4, 4, "row-exchange", 1),
    ]
    assert profile(parse_word("0110100")) == [
        ("C1", 5, 2, "identity", 1),
        ("C4", 3, 4, "identity", 1),
    ]
    assert profile(parse_word("01011010")) == [
        ("C0", 6, 2, "identity", 3),
        ("C1", 5, 3, "identity", 1),
        ("C2", 4, 4, "identity", 1),
        ("C0", 2, 6, "identity", 1),
    ]
    assert profile(parse_word("10001")) == [
        ("C1", 4, 1, "identity", 1),
        ("C1", 3, 2, "identity", 1),
        ("C0", 2, 3, "identity", 1),
    ]


def test_matches_sorted_by_shift():
    for text in ("01011010", "1011000", "10010110"):
        ms = classify(parse_word(text))
        shifts = [m.overlap.shift for m in ms]
        assert shifts == sorted(shifts)


def test_level_block_rule_variants():
    f = parse_word("010110000")
    assert profile(f) == [("C1", 4, 5, "identity", 2)]
    assert classify(f, level_block_rule="interior") == classify(f)
    assert classify(f, level_block_rule="unless-whole") == ()
    assert classify(f, level_block_rule="always") == ()

    g = parse_word("1011000")
    assert len(classify(g, level_block_rule="interior")) == 2
    assert len(classify(g, level_block_rule="unless-whole")) == 2
    only = classify(g, level_block_rule="always")
    assert [(m.overlap.length, m.overlap.shift) for m in only] == [(6, 1)]

    with pytest.raises(ValueError):
        classify(f, level_block_rule="sometimes")


def pair_for(text, case_id):
    f = parse_word(text)
    for m in classify(f):
        if m.case_id == case_id:
            return f, m, build_witness(f, m)
    raise AssertionError(f"no {case_id} match for {text}")


def test_witness_recipes():
    expected = {
        ("1010", "C3"): ("10110", "11000", ALPHA_BETA_SWAP),
        ("1100", "C5"): ("110100", "101010", ALPHA_PSI),
        ("101", "C0"): ("1001", "1111", ALPHA_BETA),
        ("100011", "C1"): ("1000011", "1100111", ALPHA_BETA),
        ("10010110", "C2"): ("100101010110", "100110100110", ALPHA_BETA),
        ("01011010", "C2"): ("01011001101010", "01010110011010", ETA_GAMMA),
        ("0110100", "C4"): ("01101010100", "01100101100", ALPHA_DELTA),
    }
    for (text, case_id), (u, v, construction) in expected.items():
        _, _, w = pair_for(text, case_id)
        assert (w.u.text, w.v.text, w.construction) == (u, v, construction)
        assert w.verified == "unchecked"


def test_stepped_block_takes_the_flip_pair():
    f = parse_word("10001")
    match = next(m for m in classify(f) if m.overlap.length == 3)
    assert [str(op) for op in match.transformation.ops] == ["R1", "R3"]
    w = build_witness(f, match)
    assert (w.u.text, w.v.text, w.construction) == ("1000001", "1010101", ALPHA_BETA)


def test_verify_confirms_known_pairs():
    blocked = [
        ("1010", "11000", "10110"),
        ("1100", "110100", "101010"),
        ("1011000", "10110011000", "10101001000"),
        ("10010110", "100101010110", "100110100110"),
        ("01011010", "01011001101010", "01010110011010"),
        ("0110100", "01101010100", "01100101100"),
        ("10001", "1000001", "1010101"),
        ("100011", "1000011", "1100111"),
    ]
    for f, u, v in blocked:
        res = verify_witness(parse_word(f), parse_word(u), parse_word(v))
        assert res.status == CONFIRMED, (f, u, v, res.reason)
        assert res.certificate is None


def test_verify_refutes_with_certificate():
    res = verify_witness(
        parse_word("100011"), parse_word("100101011"), parse_word("100010011")
    )
    assert res.status == REFUTED
    assert res.reason == "factor-avoiding transformation exists"
    assert str(res.certificate) == "R4,S5"
    assert all(is_free(w, parse_word("100011")) for w in res.certificate.words)


def test_verify_refutes_close_or_tainted_pairs():
    f = parse_word("1010")
    u = parse_word("11000")
    res = verify_witness(f, u, u)
    assert res.status == REFUTED
    assert res.reason == "distance below 2"

    res = verify_witness(f, parse_word("11000"), parse_word("11001"))
    assert res.status == REFUTED
    assert res.reason == "distance below 2"

    res = verify_witness(f, parse_word("11010"), parse_word("00010"))
    assert res.status == REFUTED
    assert res.reason == "an endpoint contains the factor"


def test_verify_rejects_unequal_lengths():
    with pytest.raises(ValueError):
        verify_witness(parse_word("1010"), parse_word("110"), parse_word("1100"))


def test_negative_verdicts_need_no_oracle():
    for text in ("1010", "101", "1100", "1011000", "10010110", "100011"):
        report = is_tilde_isometric(parse_word(text))
        assert not report.isometric, text
        assert not report.oracle_used
        assert report.witness is not None
        assert report.witness.verified == CONFIRMED
        assert is_free(report.witness.u, report.word)
        assert is_free(report.witness.v, report.word)


def test_positive_verdicts_without_matches():
    for text in ("111000", "1110000", "1111000"):
        report = is_tilde_isometric(parse_word(text))
        assert report.isometric, text
        assert report.reason == "no case matched"
        assert report.matches == ()


def test_single_letter_word():
    report = is_tilde_isometric(parse_word("0"))
    assert report.isometric
    assert report.reason == "no overlap lengths"
    assert report.matches == ()


def test_first_confirmed_match_wins():
    report = is_tilde_isometric(parse_word("1011000"))
    assert not report.isometric
    assert report.confirming_index == 0
    assert report.matches[0].overlap.length == 6
    assert len(report.anomalies) == 1
    assert "C1 at (length 3, shift 4)" in report.anomalies[0]
    assert "refuted" in report.anomalies[0]


def test_unconfirmed_matches_with_fallback_disabled():
    report = is_tilde_isometric(parse_word("010110000"), oracle_fallback=False)
    assert report.isometric
    assert not report.oracle_used
    assert report.reason == "no witness confirmed; oracle fallback disabled"
    assert len(report.anomalies) == 1

    clean = is_tilde_isometric(parse_word("010110000"), level_block_rule="always")
    assert clean.isometric
    assert clean.reason == "no case matched"
    assert clean.anomalies == ()


def test_hamming_verdicts():
    assert is_ham_isometric(parse_word("1010"))
    assert is_ham_isometric(parse_word("10010110"))
    assert not is_ham_isometric(parse_word("111000"))
    assert not is_ham_isometric(parse_word("1100"))
    assert not is_ham_isometric(parse_word("100011"))
    with pytest.raises(ValueError):
        is_ham_isometric(parse_word("1"))


def test_symmetry_closure_members():
    texts = lambda ws: [w.text for w in ws]
    assert texts(symmetry_closure(parse_word("1010"))) == ["1010", "0101"]
    assert texts(symmetry_closure(parse_word("0"))) == ["0", "1"]
    assert texts(symmetry_closure(parse_word("0110"))) == ["0110", "1001"]
    assert texts(symmetry_closure(parse_word("100011"))) == [
        "100011",
        "011100",
        "110001",
        "001110",
    ]


def test_verdict_constant_on_closure_samples():
    for text in ("1010", "1011000", "111000", "100011", "010110000", "0110100"):
        verdicts = {
            is_tilde_isometric(g, oracle_fallback=False).isometric
            for g in symmetry_closure(parse_word(text))
        }
        assert len(verdicts) == 1, text


@pytest.mark.property_based
@given(f=words)
@settings(max_examples=150, deadline=None)
def test_match_profile_constant_on_closure(f):
    shape = {(m.case_id, m.overlap.length, m.overlap.shift) for m in classify(f)}
    for g in symmetry_closure(f):
        assert {
            (m.case_id, m.overlap.length, m.overlap.shift) for m in classify(g)
        } == shape


@pytest.mark.property_based
@given(f=st.text(alphabet="01", min_size=2, max_size=6).map(parse_word))
@settings(max_examples=30, deadline=None)
def test_confirmed_pairs_are_blocked_in_the_cube(f):
    for match in classify(f):
        pair = build_witness(f, match)
        res = verify_witness(f, pair.u, pair.v)
        if res.status != CONFIRMED:
            continue
        assert is_free(pair.u, f) and is_free(pair.v, f)
        d = tilde_distance(pair.u, pair.v)
        assert d >= 2
        assert bfs_distance(pair.u.text, pair.v.text) == d
        assert bfs_restricted_distance(pair.u.text, pair.v.text, f.text) != d
