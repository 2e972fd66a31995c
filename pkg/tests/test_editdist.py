import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ged_forge.editdist import length_difference, levenshtein, normalized_levenshtein
from ged_forge.errors import ValidationError
from oracles import levenshtein_matrix


class TestLevenshtein:
    def test_identity(self):
        assert levenshtein("abc", "abc").distance == 0

    def test_insertions_only(self):
        assert levenshtein("", "abc").distance == 3

    def test_kitten_sitting(self):
        # Frozen from the full-matrix oracle.
        assert levenshtein_matrix("kitten", "sitting") == 3
        assert levenshtein("kitten", "sitting").distance == 3

    def test_bound_exceeded(self):
        result = levenshtein("kitten", "sitting", bound=2)
        assert result.exceeded
        assert result.distance is None
        assert result.bound == 2

    def test_bound_met_is_exact(self):
        result = levenshtein("kitten", "sitting", bound=3)
        assert result.distance == 3

    def test_bound_zero(self):
        assert levenshtein("a", "a", bound=0).distance == 0
        assert levenshtein("a", "b", bound=0).exceeded

    def test_negative_bound_rejected(self):
        with pytest.raises(ValidationError):
            levenshtein("a", "b", bound=-1)

    def test_banded_matches_oracle_small_exhaustive(self):
        # Subset of the acceptance sweep: all strings of length <= 3 on {a,b}.
        from itertools import product

        strings = [
            "".join(chars) for n in range(4) for chars in product("ab", repeat=n)
        ]
        for a in strings:
            for b in strings:
                expected = levenshtein_matrix(a, b)
                assert levenshtein(a, b).distance == expected
                for bound in range(4):
                    result = levenshtein(a, b, bound=bound)
                    if expected > bound:
                        assert result.exceeded
                    else:
                        assert result.distance == expected

    def test_band_prunes_work(self):
        # 200k-char strings at distance 1: only a banded scan finishes fast.
        a = "x" * 200_000 + "a"
        b = "x" * 200_000 + "b"
        start = time.perf_counter()
        assert levenshtein(a, b, bound=3).distance == 1
        assert time.perf_counter() - start < 5.0


class TestNormalized:
    def test_zero_distance(self):
        assert normalized_levenshtein("abc", "abc") == 0.0

    def test_empty_against_full(self):
        assert normalized_levenshtein("", "abcd") == 1.0

    def test_quarter(self):
        # Oracle distance 1 over max length 4.
        assert levenshtein_matrix("abcd", "abce") == 1
        assert normalized_levenshtein("abcd", "abce") == 0.25

    def test_both_empty_rejected(self):
        with pytest.raises(ValidationError):
            normalized_levenshtein("", "")


class TestLengthDifference:
    def test_equal(self):
        assert length_difference("abc", "abc") == 0

    def test_unequal(self):
        assert length_difference("abc", "a") == 2


short_text = st.text(max_size=12)


@given(a=short_text, b=short_text)
@settings(max_examples=400, deadline=None)
def test_matches_oracle_on_random_strings(a, b):
    assert levenshtein(a, b).distance == levenshtein_matrix(a, b)


@given(a=short_text, b=short_text, bound=st.integers(0, 8))
@settings(max_examples=400, deadline=None)
def test_banded_semantics_on_random_strings(a, b, bound):
    expected = levenshtein_matrix(a, b)
    result = levenshtein(a, b, bound=bound)
    if expected > bound:
        assert result.exceeded
    else:
        assert result.distance == expected


@given(a=short_text, b=short_text, c=short_text)
@settings(max_examples=200, deadline=None)
def test_metric_axioms(a, b, c):
    d_ab = levenshtein(a, b).distance
    assert levenshtein(a, a).distance == 0
    assert levenshtein(b, a).distance == d_ab
    assert levenshtein(a, c).distance <= d_ab + levenshtein(b, c).distance


@given(a=short_text, b=short_text)
@settings(max_examples=300, deadline=None)
def test_length_difference_is_lower_bound(a, b):
    assert length_difference(a, b) <= levenshtein(a, b).distance


@given(a=short_text, b=short_text)
@settings(max_examples=300, deadline=None)
def test_normalized_in_unit_interval(a, b):
    if not a and not b:
        return
    assert 0.0 <= normalized_levenshtein(a, b) <= 1.0


def test_normalized_is_one_without_any_alignment():
    # No characters shared: cost equals replacing the longer string outright.
    assert normalized_levenshtein("aaaa", "bb") == 1.0
