import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ged_forge.errors import ValidationError
from ged_forge.normalize import (
    ContractionTable,
    collapse_spaces,
    expand_contractions,
    fold_ascii,
    load_contractions,
    lowercase,
    strip_punctuation,
)

TRANSFORMS = [fold_ascii, collapse_spaces, lowercase, strip_punctuation]


class TestFoldAscii:
    def test_combining_mark_strip(self):
        assert fold_ascii("café") == "cafe"

    def test_punctuation_variant(self):
        assert fold_ascii("don’t") == "don't"

    def test_identity_on_ascii(self):
        assert fold_ascii("abc") == "abc"

    def test_dashes_quotes_ellipsis(self):
        assert fold_ascii("“x” – y…") == '"x" - y...'

    def test_unmappable_dropped(self):
        assert fold_ascii("a中b") == "ab"


class TestCollapseSpaces:
    def test_basic(self):
        assert collapse_spaces("  a  b ") == "a b"

    def test_idempotent_input(self):
        assert collapse_spaces("a b") == "a b"

    def test_all_whitespace_classes(self):
        assert collapse_spaces("\t a\n") == "a"


class TestLowercase:
    def test_basic(self):
        assert lowercase("I Am") == "i am"

    def test_non_letters_unchanged(self):
        assert lowercase("abc1!") == "abc1!"


class TestStripPunctuation:
    def test_basic(self):
        assert strip_punctuation("hello, world!") == "hello world"

    def test_identity(self):
        assert strip_punctuation("a b") == "a b"

    def test_punctuation_run_collapses(self):
        assert strip_punctuation("a...b") == "a b"


class TestExpandContractions:
    def test_published_example(self, table):
        assert expand_contractions("i can't swim", table) == "i cannot swim"

    def test_identity_without_contraction(self, table):
        assert expand_contractions("i have a cat", table) == "i have a cat"

    def test_whole_token_boundary(self, table):
        assert expand_contractions("scan't", table) == "scan't"

    def test_adjacent_punctuation_still_matches(self, table):
        assert expand_contractions("i can't, go", table) == "i cannot, go"

    def test_unknown_apostrophe_word_untouched(self, table):
        assert expand_contractions("the cat's", table) == "the cat's"

    def test_idempotent_on_shipped_table(self, table):
        s = "i can't say he's won't'll y'all"
        assert expand_contractions(expand_contractions(s, table), table) == expand_contractions(
            s, table
        )


class TestContractionTable:
    def test_duplicate_keys_up_to_case_rejected(self):
        with pytest.raises(ValidationError):
            ContractionTable({"can't": "cannot", "CAN'T": "cannot"})

    def test_apostrophe_in_expansion_rejected(self):
        with pytest.raises(ValidationError):
            ContractionTable({"can't": "can't really"})

    def test_shipped_table_loads(self, table):
        assert len(table.entries) > 100
        assert table.entries["can't"] == "cannot"
        assert all("'" not in expansion for expansion in table.entries.values())

    def test_custom_file(self, tmp_path):
        path = tmp_path / "c.tsv"
        path.write_text("# comment\nfoo't\tfoo not\n", encoding="utf-8")
        t = load_contractions(path)
        assert expand_contractions("x foo't y", t) == "x foo not y"

    def test_bad_file_rejected(self, tmp_path):
        path = tmp_path / "c.tsv"
        path.write_text("justonefield\n", encoding="utf-8")
        with pytest.raises(ValidationError, match=":1"):
            load_contractions(path)


any_text = st.text(
    alphabet=st.characters(codec="utf-8"), max_size=60
)


@pytest.mark.parametrize("fn", TRANSFORMS, ids=lambda f: f.__name__)
@given(s=any_text)
@settings(max_examples=300, deadline=None)
def test_idempotence(fn, s):
    assert fn(fn(s)) == fn(s)


@given(s=any_text)
@settings(max_examples=300, deadline=None)
def test_fold_output_is_ascii(s):
    assert fold_ascii(s).isascii()


@given(s=any_text)
@settings(max_examples=300, deadline=None)
def test_strip_output_has_no_punctuation_or_double_space(s):
    import string

    out = strip_punctuation(s)
    assert not any(c in string.punctuation for c in out)
    assert "  " not in out
