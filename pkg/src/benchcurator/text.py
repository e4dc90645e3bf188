"""Tokenization and token-level statistics shared by every scoring component."""

from __future__ import annotations

import re
from collections import Counter

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split on maximal runs of non-alphanumerics.

    Total function: any input (including empty) yields a possibly-empty
    list of non-empty lowercase tokens. Deterministic.
    """
    return _TOKEN_RE.findall(text.lower())


def ngrams(tokens: list[str], n: int) -> Counter:
    """Multiset of contiguous n-grams (n in {1,2,3}) as tuples."""
    if n not in (1, 2, 3):
        raise ValueError(f"n must be 1, 2 or 3, got {n}")
    if len(tokens) < n:
        return Counter()
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def jaccard(a: set, b: set) -> float:
    """|a ∩ b| / |a ∪ b|; both empty -> 0 by convention."""
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)
