from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from benchcurator.text import jaccard, ngrams, tokenize


def test_tokenize_basic():
    assert tokenize("A man smiles") == ["a", "man", "smiles"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_punctuation_split():
    assert tokenize("don't stop-now") == ["don", "t", "stop", "now"]


def test_tokenize_keeps_digit_tokens():
    assert tokenize("room 101!") == ["room", "101"]


@given(st.text(max_size=80))
def test_tokenize_idempotent_through_join(text):
    once = tokenize(text)
    assert tokenize(" ".join(once)) == once


def test_bigrams():
    assert ngrams(["a", "man", "smiles"], 2) == Counter(
        {("a", "man"): 1, ("man", "smiles"): 1}
    )


def test_ngrams_short_input():
    assert ngrams(["a"], 3) == Counter()


def test_unigram_multiset_counts():
    assert ngrams(["a", "a", "a"], 1) == Counter({("a",): 3})


def test_jaccard_identical():
    assert jaccard({"a", "b"}, {"a", "b"}) == 1.0


def test_jaccard_disjoint():
    assert jaccard({"a"}, {"b"}) == 0.0


def test_jaccard_partial():
    assert jaccard({"a", "b"}, {"b", "c"}) == 1 / 3


def test_jaccard_both_empty():
    assert jaccard(set(), set()) == 0.0
