"""Incremental corpus caches over accepted samples.

Every cache is maintained so that a from-scratch rebuild (re-accepting the
same samples in the same order with the same recorded scores) reproduces it
exactly; the scoring layer relies on that for simulate/undo and the service
relies on it for event-log replay.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .embeddings import EmbeddingStore, sentence_vector
from .samples import Sample
from .text import ngrams, tokenize


class CorpusState:
    def __init__(self, store: EmbeddingStore):
        self.store = store
        self.order: list[str] = []
        self.samples: dict[str, Sample] = {}
        self.vocab_counts: Counter = Counter()
        self.ngram_counts: dict[int, Counter] = {1: Counter(), 2: Counter(), 3: Counter()}
        self.label_unigrams: dict[str, Counter] = {}
        self.label_totals: dict[str, int] = {}
        self.prem_vecs: dict[str, np.ndarray] = {}
        self.hyp_vecs: dict[str, np.ndarray] = {}
        self.hyp_lengths: dict[str, int] = {}
        self.artifacts: dict[str, np.ndarray] = {}
        self.raws: dict[str, np.ndarray] = {}
        self.overall_at_accept: dict[str, float] = {}
        self._dense_version = 0
        self._dense_cache: dict = {}
        self._pending_snapshot: "CorpusState | None" = None

    def __len__(self) -> int:
        return len(self.order)

    # -- mutation ---------------------------------------------------------

    def accept(
        self,
        sample: Sample,
        artifacts: np.ndarray,
        raws: np.ndarray,
        overall: float,
    ) -> None:
        """Merge an accepted sample and its acceptance-time scores."""
        if sample.id in self.samples:
            raise ValueError(f"sample {sample.id} already accepted")
        prem_toks = tokenize(sample.premise)
        hyp_toks = tokenize(sample.hypothesis)
        self.order.append(sample.id)
        self.samples[sample.id] = sample
        self.vocab_counts.update(prem_toks)
        self.vocab_counts.update(hyp_toks)
        for g in (1, 2, 3):
            self.ngram_counts[g].update(ngrams(prem_toks, g))
            self.ngram_counts[g].update(ngrams(hyp_toks, g))
        lab = sample.label
        if lab not in self.label_unigrams:
            self.label_unigrams[lab] = Counter()
            self.label_totals[lab] = 0
        self.label_unigrams[lab].update(hyp_toks)
        self.label_totals[lab] += len(hyp_toks)
        self.prem_vecs[sample.id] = sentence_vector(prem_toks, self.store).vec
        self.hyp_vecs[sample.id] = sentence_vector(hyp_toks, self.store).vec
        self.hyp_lengths[sample.id] = len(hyp_toks)
        self.artifacts[sample.id] = np.asarray(artifacts, dtype=np.float64)
        self.raws[sample.id] = np.asarray(raws, dtype=np.float64)
        self.overall_at_accept[sample.id] = float(overall)
        self._dense_version += 1

    def set_split(self, sample_id: str, split: str) -> None:
        s = self.samples[sample_id]
        if s.split != split:
            s.split = split
            self._dense_version += 1

    def clone(self) -> "CorpusState":
        """Independent copy sharing only the (immutable) embedding store."""
        c = CorpusState(self.store)
        c.order = list(self.order)
        c.samples = {
            k: Sample.from_dict(v.to_dict()) for k, v in self.samples.items()
        }
        c.vocab_counts = Counter(self.vocab_counts)
        c.ngram_counts = {g: Counter(t) for g, t in self.ngram_counts.items()}
        c.label_unigrams = {l: Counter(t) for l, t in self.label_unigrams.items()}
        c.label_totals = dict(self.label_totals)
        c.prem_vecs = dict(self.prem_vecs)
        c.hyp_vecs = dict(self.hyp_vecs)
        c.hyp_lengths = dict(self.hyp_lengths)
        c.artifacts = dict(self.artifacts)
        c.raws = dict(self.raws)
        c.overall_at_accept = dict(self.overall_at_accept)
        return c

    def equals(self, other: "CorpusState", tol: float = 0.0) -> bool:
        if self.order != other.order:
            return False
        if self.vocab_counts != other.vocab_counts:
            return False
        if self.ngram_counts != other.ngram_counts:
            return False
        if self.label_unigrams != other.label_unigrams:
            return False
        if self.label_totals != other.label_totals:
            return False
        if self.hyp_lengths != other.hyp_lengths:
            return False
        for name in ("prem_vecs", "hyp_vecs", "artifacts", "raws"):
            a, b = getattr(self, name), getattr(other, name)
            if a.keys() != b.keys():
                return False
            for k in a:
                if tol == 0.0:
                    if not np.array_equal(a[k], b[k]):
                        return False
                elif not np.allclose(a[k], b[k], atol=tol, rtol=0):
                    return False
        for k in self.overall_at_accept:
            if abs(self.overall_at_accept[k] - other.overall_at_accept.get(k, np.nan)) > tol:
                return False
        if {s: self.samples[s].split for s in self.samples} != {
            s: other.samples[s].split for s in other.samples
        }:
            return False
        return True

    # -- similarity scans -------------------------------------------------

    def _dense(self, key: str, splits: tuple[str, ...] | None):
        if self._dense_cache.get("version") != self._dense_version:
            self._dense_cache = {"version": self._dense_version}
        cache_key = (key, splits)
        if cache_key not in self._dense_cache:
            refs: list[tuple[str, str]] = []
            rows: list[np.ndarray] = []
            for sid in self.order:
                if splits is not None and self.samples[sid].split not in splits:
                    continue
                refs.append((sid, "premise"))
                rows.append(self.prem_vecs[sid])
                refs.append((sid, "hypothesis"))
                rows.append(self.hyp_vecs[sid])
            matrix = np.vstack(rows) if rows else np.zeros((0, self.store.dim))
            self._dense_cache[cache_key] = (refs, matrix)
        return self._dense_cache[cache_key]

    def max_cosine(
        self,
        vec: np.ndarray,
        splits: tuple[str, ...] | None = None,
        exclude_id: str | None = None,
    ) -> tuple[float, tuple[str, str] | None]:
        """Max cosine of ``vec`` against accepted premise+hypothesis vectors.

        Returns (0.0, None) when the scan set is empty. Stored vectors are
        unit (or zero) so the scan is a single mat-vec.
        """
        refs, matrix = self._dense("all", splits)
        if matrix.shape[0] == 0:
            return 0.0, None
        sims = matrix @ vec
        if exclude_id is not None:
            for i, (sid, _) in enumerate(refs):
                if sid == exclude_id:
                    sims[i] = -np.inf
        idx = int(np.argmax(sims))
        best = float(sims[idx])
        if best == -np.inf:
            return 0.0, None
        return best, refs[idx]

    # -- aggregate statistics --------------------------------------------

    def length_stats(self) -> tuple[float, float]:
        """(mean, population std) of accepted hypothesis lengths."""
        if not self.hyp_lengths:
            return 0.0, 0.0
        arr = np.array(list(self.hyp_lengths.values()), dtype=np.float64)
        return float(arr.mean()), float(arr.std())

    def gram_sigma(self, g: int, extra: Counter | None = None) -> float:
        """Population std of g-gram frequencies, optionally with ``extra`` added."""
        table = self.ngram_counts[g]
        if extra:
            table = Counter(table)
            table.update(extra)
        if not table:
            return 0.0
        return float(np.std(np.array(list(table.values()), dtype=np.float64)))

    def component_aggregates(self) -> np.ndarray:
        """Mean artifact level per component over accepted samples (7-vector)."""
        if not self.artifacts:
            return np.zeros(7)
        return np.mean(np.vstack([self.artifacts[s] for s in self.order]), axis=0)
