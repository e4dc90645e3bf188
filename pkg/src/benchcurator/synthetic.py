"""Deterministic synthetic fixtures: clustered embeddings and NLI corpora.

Used by the test suite and the demo CLI paths. Cluster structure guarantees
every word has in-vocabulary neighbors above the 0.5 similarity threshold,
so replacement-based repair has somewhere to go.
"""

from __future__ import annotations

import numpy as np

from .embeddings import EmbeddingStore
from .samples import LABELS, Sample

_SYLLABLES = (
    "ba be bi bo bu da de di do du ka ke ki ko ku la le li lo lu "
    "ma me mi mo mu na ne ni no nu ra re ri ro ru sa se si so su "
    "ta te ti to tu va ve vi vo vu za ze zi zo zu"
).split()


def cluster_word(cluster: int, member: int) -> str:
    return _SYLLABLES[cluster % len(_SYLLABLES)] + _SYLLABLES[
        (cluster // len(_SYLLABLES) + member * 7) % len(_SYLLABLES)
    ] + str(member)


def build_store(
    dim: int = 16,
    clusters: int = 40,
    words_per_cluster: int = 6,
    noise: float = 0.25,
    seed: int = 0,
) -> EmbeddingStore:
    """Clustered unit vectors: tight within a cluster, spread across clusters."""
    rng = np.random.default_rng(seed)
    store = EmbeddingStore(dim)
    for c in range(clusters):
        center = rng.normal(size=dim)
        center /= np.linalg.norm(center)
        for k in range(words_per_cluster):
            vec = center + noise * rng.normal(size=dim)
            store.add(cluster_word(c, k), vec)
    return store


def sample_words(rng, clusters: list[int], count: int, words_per_cluster: int = 6) -> list[str]:
    return [
        cluster_word(int(rng.choice(clusters)), int(rng.integers(words_per_cluster)))
        for _ in range(count)
    ]


def build_samples(
    n: int,
    clusters: int = 40,
    words_per_cluster: int = 6,
    seed: int = 0,
    split_ratios: tuple[float, float, float] = (0.7, 0.1, 0.2),
    prefix: str = "seed",
    balanced_labels: bool = False,
) -> list[Sample]:
    """Moderate-quality samples: premise and hypothesis share a topic cluster
    but use mostly different words.

    With ``balanced_labels`` each topic cluster cycles through the three
    labels, so topic carries no label signal (useful when planting a
    giveaway that should be the only predictable structure).
    """
    rng = np.random.default_rng(seed)
    per_topic: dict[int, int] = {}
    samples = []
    for i in range(n):
        topic = int(rng.integers(clusters))
        side = int(rng.integers(clusters))
        prem = sample_words(rng, [topic, side], int(rng.integers(5, 9)), words_per_cluster)
        hyp = sample_words(rng, [topic], int(rng.integers(3, 7)), words_per_cluster)
        u = rng.random()
        if u < split_ratios[0]:
            split = "train"
        elif u < split_ratios[0] + split_ratios[1]:
            split = "dev"
        else:
            split = "test"
        if balanced_labels:
            label = LABELS[per_topic.get(topic, 0) % len(LABELS)]
            per_topic[topic] = per_topic.get(topic, 0) + 1
        else:
            label = LABELS[int(rng.integers(len(LABELS)))]
        samples.append(
            Sample(
                id=f"{prefix}{i:04d}",
                premise=" ".join(prem),
                hypothesis=" ".join(hyp),
                label=label,
                split=split,
                author=f"worker{i % 5}",
            )
        )
    return samples


def planted_corpus(
    n: int = 300,
    planted_frac: float = 0.3,
    giveaway: str = "zyxgive",
    giveaway_label: str = "contradiction",
    clusters: int = 40,
    pool_clusters: int = 10,
    seed: int = 7,
    store: EmbeddingStore | None = None,
) -> tuple[list[Sample], set[str], EmbeddingStore]:
    """Corpus where ``giveaway`` perfectly predicts its label in a fraction
    of samples; the rest of the corpus carries no usable label signal.

    Clean samples come in contrastive groups: the same premise/hypothesis
    text repeated under different labels, so no classifier can beat chance
    on them. Group sizes are chosen so the three label priors come out
    equal despite every planted sample carrying ``giveaway_label``.
    Hypotheses draw words from a small common pool, keeping word-label
    statistics dense and balanced. The giveaway word occupies a reserved
    embedding dimension that every other word is orthogonal to, so a
    linear model can key on it.
    """
    if store is None:
        store = build_store(clusters=clusters, seed=seed)
        reserved = EmbeddingStore(store.dim)
        for word, vec in store.table.items():
            flat = vec.copy()
            flat[0] = 0.0
            reserved.add(word, flat)
        store = reserved
    if giveaway not in store:
        vec = np.zeros(store.dim)
        vec[0] = 1.0
        store.add(giveaway, vec)

    rng = np.random.default_rng(seed)
    n_planted = int(round(planted_frac * n))
    other = [l for l in LABELS if l != giveaway_label]
    # pairs over the two non-giveaway labels offset the planted samples,
    # triples fill the rest: priors come out equal when n_pairs = n_planted
    n_pairs = min(n_planted, (n - n_planted) // 2)
    n_triples = (n - n_planted - 2 * n_pairs) // 3
    n_rest = n - n_planted - 2 * n_pairs - 3 * n_triples
    pool = list(range(min(pool_clusters, clusters)))

    def draft_text():
        topic = int(rng.choice(pool))
        side = int(rng.integers(clusters))
        prem = " ".join(sample_words(rng, [topic, side], int(rng.integers(5, 9))))
        hyp = " ".join(sample_words(rng, pool, int(rng.integers(3, 7))))
        return prem, hyp

    drafts: list[tuple[str, str, str, bool]] = []  # premise, hypothesis, label, planted
    for _ in range(n_triples):
        prem, hyp = draft_text()
        for label in LABELS:
            drafts.append((prem, hyp, label, False))
    for _ in range(n_pairs):
        prem, hyp = draft_text()
        for label in other:
            drafts.append((prem, hyp, label, False))
    for i in range(n_rest):
        prem, hyp = draft_text()
        drafts.append((prem, hyp, other[i % 2], False))
    for _ in range(n_planted):
        topic = int(rng.choice(pool))
        side = int(rng.integers(clusters))
        prem = " ".join(sample_words(rng, [topic, side], int(rng.integers(5, 9))))
        toks = sample_words(rng, pool, int(rng.integers(3, 7)))
        toks.insert(int(rng.integers(len(toks) + 1)), giveaway)
        drafts.append((prem, " ".join(toks), giveaway_label, True))

    order = rng.permutation(len(drafts))
    samples: list[Sample] = []
    planted_ids: set[str] = set()
    for i, j in enumerate(order):
        prem, hyp, label, is_planted = drafts[j]
        u = rng.random()
        split = "train" if u < 0.7 else ("dev" if u < 0.8 else "test")
        sid = f"pl{i:04d}"
        samples.append(
            Sample(
                id=sid, premise=prem, hypothesis=hyp, label=label,
                split=split, author=f"worker{i % 5}",
            )
        )
        if is_planted:
            planted_ids.add(sid)
    return samples, planted_ids, store
