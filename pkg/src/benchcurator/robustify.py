"""Predictability-based binning and adversarial synonym repair.

Binning repeatedly trains linear proxies on random partitions and moves
samples whose held-out label is predicted too reliably into the bad bin
(they are solvable from spurious signal). Bad samples can then be repaired
by substituting embedding neighbors (similarity >= tau) until the proxy's
predicted label flips, while the gold label is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embeddings import EmbeddingStore
from .proxy import ProxyModel, TrainingError, featurize, train_proxy
from .samples import Sample
from .text import tokenize


class BinningError(ValueError):
    pass


@dataclass
class BinReport:
    scores: dict[str, float]  # sample id -> predictability in [0, 1]
    bins: dict[str, str]  # sample id -> good | bad
    partitions: int

    @property
    def good(self) -> list[str]:
        return [sid for sid, b in self.bins.items() if b == "good"]

    @property
    def bad(self) -> list[str]:
        return [sid for sid, b in self.bins.items() if b == "bad"]

    def to_dict(self) -> dict:
        return {"scores": dict(self.scores), "bins": dict(self.bins), "partitions": self.partitions}


def aflite_bin(
    samples: list[Sample],
    store: EmbeddingStore,
    m: int = 16,
    train_frac: float = 0.8,
    tau_pred: float = 0.75,
    max_removed_frac: float = 0.5,
    seed: int = 0,
    epochs: int = 150,
    lr: float = 0.5,
) -> BinReport:
    """Iterative predictability filtering into good/bad bins."""
    if len(samples) < 20:
        raise BinningError(f"need at least 20 samples, got {len(samples)}")
    rng = np.random.default_rng(seed)
    remaining = list(samples)
    scores: dict[str, float] = {s.id: 0.0 for s in samples}
    bins: dict[str, str] = {s.id: "good" for s in samples}
    max_removed = int(max_removed_frac * len(samples))
    removed = 0

    while remaining and removed < max_removed:
        n = len(remaining)
        n_train = max(2, int(round(train_frac * n)))
        if n_train >= n:
            break
        correct = np.zeros(n)
        held = np.zeros(n)
        for _ in range(m):
            perm = rng.permutation(n)
            train_idx = perm[:n_train]
            hold_idx = perm[n_train:]
            train_set = [remaining[i] for i in train_idx]
            if len({s.label for s in train_set}) < 2:
                continue
            model = train_proxy(
                train_set, store, epochs=epochs, lr=lr, seed=int(rng.integers(2**31))
            )
            for i in hold_idx:
                held[i] += 1
                if model.predict(featurize(remaining[i], store)) == remaining[i].label:
                    correct[i] += 1
        with np.errstate(invalid="ignore"):
            pred = np.where(held > 0, correct / np.maximum(held, 1), 0.0)
        for i, s in enumerate(remaining):
            scores[s.id] = float(pred[i])
        over = [i for i in range(n) if pred[i] >= tau_pred]
        if not over:
            break
        over.sort(key=lambda i: -pred[i])
        newly = over[: max_removed - removed]
        for i in newly:
            bins[remaining[i].id] = "bad"
        removed += len(newly)
        drop = {remaining[i].id for i in newly}
        remaining = [s for s in remaining if s.id not in drop]

    return BinReport(scores=scores, bins=bins, partitions=m)


def tf_rank(sample: Sample, model: ProxyModel, store: EmbeddingStore) -> list[tuple[int, float]]:
    """Rank hypothesis positions by drop in gold-label probability on deletion."""
    tokens = tokenize(sample.hypothesis)
    base = model.prob_of(featurize(sample, store), sample.label)
    scored = []
    for i in range(len(tokens)):
        masked = " ".join(tokens[:i] + tokens[i + 1 :])
        variant = Sample(
            id=sample.id,
            premise=sample.premise,
            hypothesis=masked if masked else sample.hypothesis,
            label=sample.label,
            split=sample.split,
        )
        if masked:
            drop = base - model.prob_of(featurize(variant, store), sample.label)
        else:  # single-word hypothesis: deletion leaves nothing to score
            drop = base
        scored.append((i, float(drop)))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored


@dataclass
class RepairResult:
    success: bool
    sample: Sample | None  # repaired sample (gold label unchanged) on success
    substitutions: list[dict] = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "sample": self.sample.to_dict() if self.sample else None,
            "substitutions": list(self.substitutions),
            "reason": self.reason,
        }


def tf_repair(
    sample: Sample,
    model: ProxyModel,
    store: EmbeddingStore,
    tau_sem: float = 0.5,
    k: int = 50,
    max_subs: int = 3,
) -> RepairResult:
    """Flip the proxy's predicted label with <= max_subs synonym swaps.

    Every committed swap has cosine >= tau_sem with the word it replaces.
    No-op failure when the model already disagrees with the gold label.
    """
    gold = sample.label
    if model.predict(featurize(sample, store)) != gold:
        return RepairResult(False, None, [], "model does not predict the gold label")
    tokens = tokenize(sample.hypothesis)
    ranking = tf_rank(sample, model, store)
    subs: list[dict] = []
    current = list(tokens)

    def probe(toks: list[str]) -> tuple[str, float]:
        variant = Sample(
            id=sample.id,
            premise=sample.premise,
            hypothesis=" ".join(toks),
            label=gold,
            split=sample.split,
        )
        feats = featurize(variant, store)
        return model.predict(feats), model.prob_of(feats, gold)

    _, p_gold = probe(current)
    for i, _ in ranking:
        if len(subs) >= max_subs:
            break
        word = current[i]
        best: tuple[float, str, float] | None = None  # (p_gold, candidate, sim)
        for cand, sim in store.neighbors(word, k, tau_sem):
            trial = current[:i] + [cand] + current[i + 1 :]
            pred, p = probe(trial)
            if pred != gold:
                current[i] = cand
                subs.append({"index": i, "from": word, "to": cand, "similarity": sim})
                repaired = sample.with_hypothesis(" ".join(current), "textfooler")
                return RepairResult(True, repaired, subs)
            if p < p_gold and (best is None or p < best[0]):
                best = (p, cand, sim)
        if best is not None:
            p_gold, cand, sim = best
            current[i] = cand
            subs.append({"index": i, "from": word, "to": cand, "similarity": sim})
    return RepairResult(False, None, subs, "no label flip within the substitution budget")
