"""Seven-component artifact scoring, traffic-signal flags, and impact simulation.

Each component maps a candidate sample to a raw value, a normalized artifact
level in [0,1] (0 = no artifact evidence), a percentile against accepted
samples (higher = better), and a green/yellow/red flag. Overall quality is
the mean of the seven percentiles; the acceptance probability is the
empirical CDF position of overall quality among accepted samples'
acceptance-time scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import BILINEAR_COMPONENTS, COMPONENTS, ThresholdConfig
from .corpus import CorpusState
from .embeddings import sentence_vector
from .samples import LABELS, Sample, ValidationError
from .text import jaccard, ngrams, tokenize

FLAG_ORDER = {"green": 0, "yellow": 1, "red": 2}
EPS = 1e-9
# Give-away tokens are unambiguous above twice the uniform-odds ceiling.
PMI_CAP = 2.0 * math.log(len(LABELS))


class StateError(RuntimeError):
    """Operation invoked in a state that does not allow it."""


class TuningError(ValueError):
    pass


@dataclass
class ComponentScore:
    component: str
    raw: float
    artifact: float
    percentile: float = 0.5
    flag: str = "yellow"
    highlights: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "component": self.component,
            "raw": self.raw,
            "artifact": self.artifact,
            "percentile": self.percentile,
            "flag": self.flag,
            "highlights": list(self.highlights),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ComponentScore":
        return cls(
            component=d["component"],
            raw=d["raw"],
            artifact=d["artifact"],
            percentile=d["percentile"],
            flag=d["flag"],
            highlights=list(d.get("highlights", [])),
        )


@dataclass
class QualityReport:
    sample_id: str
    scores: list[ComponentScore]
    overall: float
    accept_prob: float
    corpus_size_at_eval: int

    def artifact_vector(self) -> np.ndarray:
        return np.array([s.artifact for s in self.scores], dtype=np.float64)

    def raw_vector(self) -> np.ndarray:
        return np.array([s.raw for s in self.scores], dtype=np.float64)

    def score(self, component: str) -> ComponentScore:
        return self.scores[COMPONENTS.index(component)]

    def to_dict(self) -> dict:
        return {
            "sample_id": self.sample_id,
            "scores": [s.to_dict() for s in self.scores],
            "overall": self.overall,
            "accept_prob": self.accept_prob,
            "corpus_size_at_eval": self.corpus_size_at_eval,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QualityReport":
        return cls(
            sample_id=d["sample_id"],
            scores=[ComponentScore.from_dict(s) for s in d["scores"]],
            overall=d["overall"],
            accept_prob=d["accept_prob"],
            corpus_size_at_eval=d["corpus_size_at_eval"],
        )


@dataclass
class ImpactReport:
    """Corpus-level aggregates before/after a hypothetical acceptance."""

    before: np.ndarray
    after: np.ndarray
    before_flags: list[str]
    after_flags: list[str]

    @property
    def deltas(self) -> np.ndarray:
        return self.after - self.before

    def to_dict(self) -> dict:
        return {
            "components": [
                {
                    "component": COMPONENTS[i],
                    "before": float(self.before[i]),
                    "after": float(self.after[i]),
                    "delta": float(self.after[i] - self.before[i]),
                    "before_flag": self.before_flags[i],
                    "after_flag": self.after_flags[i],
                }
                for i in range(len(COMPONENTS))
            ]
        }


def flag(artifact: float, component: str, config: ThresholdConfig) -> str:
    """Traffic-signal mapping; boundaries inclusive on the low side."""
    if artifact <= config.green_max[component]:
        return "green"
    if artifact <= config.yellow_max[component]:
        return "yellow"
    return "red"


def overall_flag(overall: float, config: ThresholdConfig) -> str:
    """Flag for overall quality, mapped through artifact = 1 - overall."""
    a = 1.0 - overall
    if a <= config.overall_green_max:
        return "green"
    if a <= config.overall_yellow_max:
        return "yellow"
    return "red"


def bilinear_artifact(raw: float, lo: float, hi: float) -> float:
    """0 inside the optimum band, rising linearly to 1 at raw = 0 and raw = 1."""
    if lo <= raw <= hi:
        return 0.0
    if raw > hi:
        return min(1.0, (raw - hi) / max(1.0 - hi, EPS))
    return min(1.0, (lo - raw) / max(lo, EPS))


def percentile_against(values: np.ndarray, x: float) -> float:
    """Fraction of baseline ``values`` at least as bad (>=) as ``x``."""
    if values.size == 0:
        return 0.5
    return float(np.count_nonzero(values >= x) / values.size)


# ---------------------------------------------------------------------------
# component scores


def _finish(
    component: str,
    raw: float,
    artifact: float,
    highlights: list[dict],
    corpus: CorpusState,
    config: ThresholdConfig,
    cold: bool = False,
) -> ComponentScore:
    artifact = float(min(1.0, max(0.0, artifact)))
    if cold or len(corpus) == 0:
        return ComponentScore(component, float(raw), artifact, 0.5, "yellow", highlights)
    idx = COMPONENTS.index(component)
    baseline = np.array([corpus.artifacts[s][idx] for s in corpus.order])
    return ComponentScore(
        component,
        float(raw),
        artifact,
        percentile_against(baseline, artifact),
        flag(artifact, component, config),
        highlights,
    )


def score_c1(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Vocabulary novelty and hypothesis-length typicality."""
    hyp_toks = tokenize(sample.hypothesis)
    if not hyp_toks:
        raise ValidationError([{"field": "hypothesis", "message": "empty after tokenization"}])
    types = set(tokenize(sample.premise)) | set(hyp_toks)
    novel = sorted(t for t in types if t not in corpus.vocab_counts)
    novelty = len(novel) / len(types) if types else 0.0
    mu, sigma = corpus.length_stats()
    if len(corpus) < 2:
        length_dev = 0.0
    else:
        length_dev = min(1.0, abs(len(hyp_toks) - mu) / (3.0 * sigma + EPS))
    artifact = 0.5 * (1.0 - novelty) + 0.5 * length_dev
    highlights = [{"span": w, "reason": "novel word"} for w in novel[:10]]
    lo, hi = config.length_band
    if len(corpus) >= 2 and not (lo <= len(hyp_toks) <= hi):
        highlights.append(
            {
                "span": sample.hypothesis,
                "reason": f"hypothesis length {len(hyp_toks)} outside typical band [{lo:g}, {hi:g}]",
            }
        )
    return _finish("c1", novelty, artifact, highlights, corpus, config)


def score_c2(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Inter-sample n-gram repetition and frequency-spread distortion."""
    prem_toks = tokenize(sample.premise)
    hyp_toks = tokenize(sample.hypothesis)
    reps = []
    devs = []
    frequent: list[tuple[int, str]] = []
    for g in (1, 2, 3):
        grams = ngrams(prem_toks, g) + ngrams(hyp_toks, g)
        table = corpus.ngram_counts[g]
        fmax = max(table.values()) if table else 0
        if grams and fmax > 0:
            total = sum(grams.values())
            rep = sum(table.get(gram, 0) * m for gram, m in grams.items()) / (fmax * total)
            for gram, _ in grams.items():
                if table.get(gram, 0) > 0:
                    frequent.append((table[gram], " ".join(gram)))
        else:
            rep = 0.0
        sigma_after = corpus.gram_sigma(g, extra=grams)
        star = config.sigma_star[g]
        devs.append(min(1.0, abs(sigma_after - star) / star))
        reps.append(rep)
    artifact = float(np.mean([0.5 * r + 0.5 * d for r, d in zip(reps, devs)]))
    frequent.sort(reverse=True)
    highlights = [
        {"span": gram, "reason": f"seen {count}x in corpus"}
        for count, gram in frequent[:5]
    ]
    raw = float(np.mean(reps))
    return _finish("c2", raw, artifact, highlights, corpus, config)


def score_c3(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Similarity of the hypothesis to every accepted premise and hypothesis."""
    hyp_vec = sentence_vector(tokenize(sample.hypothesis), corpus.store).vec
    s_max, ref = corpus.max_cosine(hyp_vec)
    lo, hi = config.bands["c3"]
    artifact = bilinear_artifact(s_max, lo, hi)
    highlights = []
    if ref is not None:
        highlights.append(
            {
                "span": sample.hypothesis,
                "reason": f"nearest accepted sample {ref[0]} ({ref[1]}), similarity {s_max:.3f}",
            }
        )
    return _finish("c3", s_max, artifact, highlights, corpus, config)


def _c4_pairs(tokens: list[str], store) -> tuple[list[tuple[str, str, float]], bool]:
    """Non-adjacent word-type pairs with their similarity; verbatim repeats
    count as similarity-1 self pairs. Second value flags the degenerate case."""
    positions: dict[str, list[int]] = {}
    for i, t in enumerate(tokens):
        positions.setdefault(t, []).append(i)
    adjacent = set()
    for i in range(len(tokens) - 1):
        adjacent.add((tokens[i], tokens[i + 1]))
        adjacent.add((tokens[i + 1], tokens[i]))
    in_vocab = sorted(t for t in positions if t in store)
    if len(in_vocab) < 2:
        return [], True
    pairs: list[tuple[str, str, float]] = []
    for i, u in enumerate(in_vocab):
        for v in in_vocab[i + 1 :]:
            if (u, v) in adjacent:
                continue
            pairs.append((u, v, float(np.dot(store[u], store[v]))))
    for t, pos in positions.items():
        if len(pos) >= 2 and any(
            pos[j] - pos[i] > 1 for i in range(len(pos)) for j in range(i + 1, len(pos))
        ):
            pairs.append((t, t, 1.0))
    return pairs, not pairs


def score_c4(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Mean pairwise word similarity within the sample (intra-sample)."""
    tokens = tokenize(sample.premise) + tokenize(sample.hypothesis)
    pairs, degenerate = _c4_pairs(tokens, corpus.store)
    raw = float(np.mean([s for _, _, s in pairs])) if pairs else 0.0
    lo, hi = config.bands["c4"]
    artifact = bilinear_artifact(raw, lo, hi)
    highlights = [
        {"span": f"{u} ~ {v}", "reason": f"word-pair similarity {s:.3f}"}
        for u, v, s in sorted(pairs, key=lambda p: -p[2])
        if s >= 0.6
    ][:10]
    if degenerate:
        highlights.append({"span": "", "reason": "fewer than 2 eligible word types"})
    return _finish("c4", raw, artifact, highlights, corpus, config)


def score_c5(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Premise-hypothesis sentence similarity with token-overlap context."""
    prem_toks = tokenize(sample.premise)
    hyp_toks = tokenize(sample.hypothesis)
    pv = sentence_vector(prem_toks, corpus.store).vec
    hv = sentence_vector(hyp_toks, corpus.store).vec
    raw = float(np.dot(pv, hv))
    lo, hi = config.bands["c5"]
    artifact = bilinear_artifact(raw, lo, hi)
    shared = sorted(set(prem_toks) & set(hyp_toks))
    overlap = jaccard(set(prem_toks), set(hyp_toks))
    highlights = [
        {
            "span": " ".join(shared),
            "reason": f"token overlap (jaccard {overlap:.3f})",
        }
    ] if shared else []
    highlights.append({"span": "", "reason": f"jaccard overlap {overlap:.3f}"})
    return _finish("c5", raw, artifact, highlights, corpus, config)


def pmi(word: str, label: str, corpus: CorpusState) -> float:
    """Add-one smoothed pointwise mutual information of a hypothesis word
    with a label, over accepted hypothesis unigrams."""
    vocab = set()
    for table in corpus.label_unigrams.values():
        vocab.update(table)
    v = len(vocab)
    n_total = sum(corpus.label_totals.values())
    n_label = corpus.label_totals.get(label, 0)
    c_total = sum(t.get(word, 0) for t in corpus.label_unigrams.values())
    c_label = corpus.label_unigrams.get(label, {}).get(word, 0)
    p_w_l = (c_label + 1) / (n_label + v)
    p_w = (c_total + 1) / (n_total + v)
    return math.log(p_w_l / p_w)


def score_c6(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Give-away token detection: max word-label PMI in the hypothesis."""
    cold = any(corpus.label_totals.get(l, 0) == 0 for l in LABELS)
    if cold:
        return _finish("c6", 0.0, 0.0, [], corpus, config, cold=True)
    types = sorted(set(tokenize(sample.hypothesis)))
    scored = sorted(
        ((pmi(w, sample.label, corpus), w) for w in types), reverse=True
    )
    raw = scored[0][0] if scored else 0.0
    artifact = min(1.0, max(0.0, raw / PMI_CAP))
    highlights = [
        {"span": w, "reason": f"PMI with label {sample.label}: {p:.3f}"}
        for p, w in scored[:5]
        if p > 0
    ]
    return _finish("c6", raw, artifact, highlights, corpus, config)


def score_c7(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> ComponentScore:
    """Cross-split leakage: similarity to the opposing split's sentences."""
    if sample.split in ("dev", "test"):
        scope = ("train",)
    else:
        scope = ("dev", "test")
    hyp_vec = sentence_vector(tokenize(sample.hypothesis), corpus.store).vec
    raw, ref = corpus.max_cosine(hyp_vec, splits=scope)
    artifact = min(1.0, max(0.0, raw))
    highlights = []
    if ref is not None:
        highlights.append(
            {
                "span": sample.hypothesis,
                "reason": f"nearest {'/'.join(scope)} sample {ref[0]} ({ref[1]}), similarity {raw:.3f}",
            }
        )
    return _finish("c7", raw, artifact, highlights, corpus, config)


_SCORERS = {
    "c1": score_c1,
    "c2": score_c2,
    "c3": score_c3,
    "c4": score_c4,
    "c5": score_c5,
    "c6": score_c6,
    "c7": score_c7,
}


def evaluate(sample: Sample, corpus: CorpusState, config: ThresholdConfig) -> QualityReport:
    """Full seven-component quality report for a candidate sample."""
    errors = sample.validate()
    if errors:
        raise ValidationError(errors)
    scores = [_SCORERS[c](sample, corpus, config) for c in COMPONENTS]
    overall = float(np.mean([s.percentile for s in scores]))
    if len(corpus) == 0:
        accept_prob = 0.5
    else:
        baseline = np.array([corpus.overall_at_accept[s] for s in corpus.order])
        accept_prob = float(np.count_nonzero(baseline <= overall) / baseline.size)
    return QualityReport(
        sample_id=sample.id,
        scores=scores,
        overall=overall,
        accept_prob=accept_prob,
        corpus_size_at_eval=len(corpus),
    )


# ---------------------------------------------------------------------------
# impact simulation


def simulate_add(
    sample: Sample, corpus: CorpusState, config: ThresholdConfig
) -> ImpactReport:
    """Overlay the sample on the corpus caches and report per-component
    aggregate movement; reversible with undo()."""
    report = evaluate(sample, corpus, config)
    before = corpus.component_aggregates()
    snapshot = corpus.clone()
    snapshot._pending_snapshot = None
    corpus._pending_snapshot = snapshot
    corpus.accept(sample, report.artifact_vector(), report.raw_vector(), report.overall)
    after = corpus.component_aggregates()
    return ImpactReport(
        before=before,
        after=after,
        before_flags=[flag(before[i], c, config) for i, c in enumerate(COMPONENTS)],
        after_flags=[flag(after[i], c, config) for i, c in enumerate(COMPONENTS)],
    )


def undo(corpus: CorpusState) -> None:
    """Restore the state prior to the last simulate_add."""
    snap = corpus._pending_snapshot
    if snap is None:
        raise StateError("no pending simulation to undo")
    for name in (
        "order",
        "samples",
        "vocab_counts",
        "ngram_counts",
        "label_unigrams",
        "label_totals",
        "prem_vecs",
        "hyp_vecs",
        "hyp_lengths",
        "artifacts",
        "raws",
        "overall_at_accept",
    ):
        setattr(corpus, name, getattr(snap, name))
    corpus._dense_version += 1
    corpus._pending_snapshot = None


def build_corpus(
    samples: list[Sample], store, config: ThresholdConfig
) -> tuple[CorpusState, list[QualityReport]]:
    """Accept ``samples`` in order, evaluating each against the corpus so far."""
    corpus = CorpusState(store)
    reports = []
    for s in samples:
        report = evaluate(s, corpus, config)
        reports.append(report)
        corpus.accept(s, report.artifact_vector(), report.raw_vector(), report.overall)
    return corpus, reports


# ---------------------------------------------------------------------------
# threshold tuning


def _nearest_rank(values: np.ndarray, q: float) -> float:
    s = np.sort(values)
    idx = max(0, math.ceil(q * s.size) - 1)
    return float(s[idx])


def tune_thresholds(
    seed: list[Sample],
    store,
    defaults: ThresholdConfig | None = None,
    min_seed: int = 20,
) -> ThresholdConfig:
    """Derive flag boundaries, bilinear bands, and spread targets from a
    trusted high-quality seed corpus (accepted incrementally in order)."""
    if len(seed) < min_seed:
        raise TuningError(f"need at least {min_seed} seed samples, got {len(seed)}")
    defaults = defaults or ThresholdConfig()
    corpus = CorpusState(store)
    arts = []
    raws = []
    for s in seed:
        report = evaluate(s, corpus, defaults)
        arts.append(report.artifact_vector())
        raws.append(report.raw_vector())
        corpus.accept(s, arts[-1], raws[-1], report.overall)
    arts_m = np.vstack(arts)
    raws_m = np.vstack(raws)

    cfg = ThresholdConfig()
    for i, c in enumerate(COMPONENTS):
        gm = _nearest_rank(arts_m[:, i], 0.67)
        ym = _nearest_rank(arts_m[:, i], 0.90)
        if ym <= gm:  # degenerate distribution: widen
            ym = gm + 0.05
        if ym > 1.0:
            ym = 1.0
            gm = min(gm, ym - 0.05)
        gm = max(0.0, min(gm, ym - 1e-6))
        cfg.green_max[c] = gm
        cfg.yellow_max[c] = ym
    for c in BILINEAR_COMPONENTS:
        i = COMPONENTS.index(c)
        lo = _nearest_rank(raws_m[:, i], 0.10)
        hi = _nearest_rank(raws_m[:, i], 0.90)
        lo = max(0.0, lo)
        hi = min(1.0, hi)
        if hi <= lo:
            hi = min(1.0, lo + 0.05)
            lo = max(0.0, hi - 0.05)
        cfg.bands[c] = (lo, hi)
    for g in (1, 2, 3):
        sigma = corpus.gram_sigma(g)
        cfg.sigma_star[g] = sigma if sigma > 0 else defaults.sigma_star[g]
    lengths = np.array([corpus.hyp_lengths[s] for s in corpus.order], dtype=np.float64)
    lo_len = _nearest_rank(lengths, 0.10)
    hi_len = max(_nearest_rank(lengths, 0.90), lo_len + 1.0)
    cfg.length_band = (lo_len, hi_len)
    cfg.tau_link = defaults.tau_link
    cfg.overall_green_max = defaults.overall_green_max
    cfg.overall_yellow_max = defaults.overall_yellow_max
    cfg.validate()
    return cfg
