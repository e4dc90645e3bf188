"""Greedy one-word-per-iteration hypothesis repair guided by the quality metric.

Each iteration masks every hypothesis word, ranks positions by how much
their removal would raise overall quality, and replaces the most promising
word with its best embedding neighbor (similarity >= tau). Replacements
never duplicate a token already in the hypothesis, so the repair cannot
introduce new repetition artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import ThresholdConfig
from .corpus import CorpusState
from .metrics import FLAG_ORDER, QualityReport, evaluate, overall_flag
from .samples import Sample
from .text import tokenize

DEFAULT_K = 20
DEFAULT_TAU = 0.5


@dataclass
class FixIteration:
    ranking: list[tuple[int, float]]
    chosen_index: int
    replaced_word: str
    replacement: str
    hypothesis: str  # text after the replacement
    before: QualityReport
    after: QualityReport

    def to_dict(self) -> dict:
        return {
            "ranking": [[i, imp] for i, imp in self.ranking],
            "hypothesis": self.hypothesis,
            "chosen_index": self.chosen_index,
            "replaced_word": self.replaced_word,
            "replacement": self.replacement,
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
        }


@dataclass
class FixTrace:
    sample: Sample  # final version; original is never mutated
    iterations: list[FixIteration] = field(default_factory=list)
    status: str = "reached_target"  # reached_target | max_iter | stuck

    def to_dict(self) -> dict:
        return {
            "sample": self.sample.to_dict(),
            "iterations": [it.to_dict() for it in self.iterations],
            "status": self.status,
        }


def rank_importance(
    sample: Sample, corpus: CorpusState, config: ThresholdConfig
) -> list[tuple[int, float]]:
    """Mask-one-word importance of every hypothesis position.

    importance(i) = overall(sample without word i) - overall(sample);
    sorted descending, ties broken by lower index.
    """
    tokens = tokenize(sample.hypothesis)
    if len(tokens) == 1:
        return [(0, 0.0)]
    base = evaluate(sample, corpus, config).overall
    scored = []
    for i in range(len(tokens)):
        masked = tokens[:i] + tokens[i + 1 :]
        variant = sample.with_hypothesis(" ".join(masked), "autofix")
        scored.append((i, evaluate(variant, corpus, config).overall - base))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored


def candidates(word: str, store, k: int = DEFAULT_K, tau: float = DEFAULT_TAU) -> list[str]:
    """k nearest vocabulary words with cosine >= tau; empty when OOV."""
    return [w for w, _ in store.neighbors(word, k, tau)]


def autofix_step(
    sample: Sample,
    corpus: CorpusState,
    config: ThresholdConfig,
    k: int = DEFAULT_K,
    tau: float = DEFAULT_TAU,
) -> tuple[Sample, FixIteration] | None:
    """One replacement, or None (stuck) when no word/candidate pair improves quality."""
    before = evaluate(sample, corpus, config)
    ranking = rank_importance(sample, corpus, config)
    tokens = tokenize(sample.hypothesis)
    for i, _ in ranking:
        word = tokens[i]
        best: tuple[float, Sample, QualityReport] | None = None
        for cand in candidates(word, corpus.store, k, tau):
            if cand in tokens:
                continue  # no new repetition artifacts
            edited = tokens[:i] + [cand] + tokens[i + 1 :]
            variant = sample.with_hypothesis(" ".join(edited), "autofix")
            report = evaluate(variant, corpus, config)
            if report.overall > before.overall and (
                best is None or report.overall > best[0]
            ):
                best = (report.overall, variant, report)
        if best is not None:
            _, variant, report = best
            return variant, FixIteration(
                ranking=ranking,
                chosen_index=i,
                replaced_word=word,
                replacement=tokenize(variant.hypothesis)[i],
                hypothesis=variant.hypothesis,
                before=before,
                after=report,
            )
    return None


def autofix(
    sample: Sample,
    corpus: CorpusState,
    config: ThresholdConfig,
    target: str = "yellow",
    max_iter: int = 10,
    k: int = DEFAULT_K,
    tau: float = DEFAULT_TAU,
) -> FixTrace:
    """Repeat autofix_step until the overall flag reaches ``target``, the
    search is stuck, or ``max_iter`` iterations were spent."""
    current = sample
    iterations: list[FixIteration] = []
    while True:
        report = evaluate(current, corpus, config)
        if FLAG_ORDER[overall_flag(report.overall, config)] <= FLAG_ORDER[target]:
            return FixTrace(current, iterations, "reached_target")
        if len(iterations) >= max_iter:
            return FixTrace(current, iterations, "max_iter")
        step = autofix_step(current, corpus, config, k, tau)
        if step is None:
            return FixTrace(current, iterations, "stuck")
        current, iteration = step
        iterations.append(iteration)
