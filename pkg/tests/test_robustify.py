import numpy as np
import pytest

from benchcurator.embeddings import EmbeddingStore
from benchcurator.proxy import ProxyModel, featurize, train_proxy
from benchcurator.robustify import BinningError, aflite_bin, tf_rank, tf_repair
from benchcurator.samples import Sample
from benchcurator.synthetic import build_samples, planted_corpus


def mk(premise, hypothesis, label, sid="r1"):
    return Sample(id=sid, premise=premise, hypothesis=hypothesis, label=label, split="train")


@pytest.fixture()
def flip_store():
    """Geometry where exactly one synonym swap flips a linear model."""
    s = EmbeddingStore(4)
    s.add("aa", np.array([1.0, 0.0, 0.0, 0.0]))
    s.add("ab", np.array([0.6, 0.8, 0.0, 0.0]))  # cos(aa, ab) = 0.6
    s.add("pp", np.array([0.0, 0.0, 1.0, 0.0]))
    return s


@pytest.fixture()
def flip_model():
    # features are [p, h, p - h, p * h]; key contradiction on h_y and
    # entailment on h_x so "aa" -> "ab" moves the argmax
    weights = np.zeros((2, 16))
    weights[0, 5] = 10.0  # contradiction reads h_y
    weights[1, 4] = 10.0  # entailment reads h_x
    return ProxyModel(weights=weights, bias=np.zeros(2), labels=("contradiction", "entailment"))


# ---------------------------------------------------------------------------
# aflite_bin


def test_aflite_minimum_size(store):
    with pytest.raises(BinningError, match="20"):
        aflite_bin(build_samples(10, seed=40), store)


def test_aflite_partition_properties(store):
    samples = build_samples(40, seed=41)
    report = aflite_bin(samples, store, m=4, seed=0)
    assert set(report.good) | set(report.bad) == {s.id for s in samples}
    assert set(report.good) & set(report.bad) == set()
    assert report.partitions == 4
    assert all(0.0 <= v <= 1.0 for v in report.scores.values())


def test_aflite_deterministic(store):
    samples = build_samples(30, seed=42)
    a = aflite_bin(samples, store, m=4, seed=3)
    b = aflite_bin(samples, store, m=4, seed=3)
    assert a.to_dict() == b.to_dict()


def test_aflite_single_partition_scores_are_zero_or_one(store):
    samples = build_samples(30, seed=43)
    report = aflite_bin(samples, store, m=1, seed=0)
    # each sample is held out at most once, so predictability is 0 or 1
    assert set(report.scores.values()) <= {0.0, 1.0}


def test_aflite_respects_removal_cap():
    samples, planted, store = planted_corpus(n=60, seed=9)
    report = aflite_bin(samples, store, m=8, seed=0, max_removed_frac=0.1)
    assert len(report.bad) <= 6


def test_aflite_flags_planted_artifacts():
    samples, planted, store = planted_corpus(n=150, seed=7)
    report = aflite_bin(samples, store, m=16, seed=0, max_removed_frac=0.33)
    bad = set(report.bad)
    recall = len(bad & planted) / len(planted)
    fpr = len(bad - planted) / (len(samples) - len(planted))
    assert recall >= 0.85
    assert fpr <= 0.15


# ---------------------------------------------------------------------------
# tf_rank


def test_tf_rank_matches_deletion_oracle(flip_store, flip_model):
    sample = mk("pp", "aa ab pp", "entailment")
    ranking = tf_rank(sample, flip_model, flip_store)
    base = flip_model.prob_of(featurize(sample, flip_store), "entailment")
    tokens = ["aa", "ab", "pp"]
    expected = {}
    for i in range(3):
        masked = mk("pp", " ".join(tokens[:i] + tokens[i + 1 :]), "entailment")
        expected[i] = base - flip_model.prob_of(featurize(masked, flip_store), "entailment")
    assert dict(ranking) == pytest.approx(expected)
    drops = [d for _, d in ranking]
    assert drops == sorted(drops, reverse=True)


def test_tf_rank_single_word(flip_store, flip_model):
    sample = mk("pp", "aa", "entailment")
    ranking = tf_rank(sample, flip_model, flip_store)
    base = flip_model.prob_of(featurize(sample, flip_store), "entailment")
    assert ranking == [(0, pytest.approx(base))]


# ---------------------------------------------------------------------------
# tf_repair


def test_tf_repair_analytic_single_swap(flip_store, flip_model):
    sample = mk("pp", "aa", "entailment")
    result = tf_repair(sample, flip_model, flip_store)
    assert result.success
    assert result.sample.hypothesis == "ab"
    assert result.sample.label == "entailment"  # gold label kept
    assert len(result.substitutions) == 1
    sub = result.substitutions[0]
    assert sub["from"] == "aa" and sub["to"] == "ab"
    assert sub["similarity"] == pytest.approx(0.6, abs=1e-9)
    assert result.sample.history[-1].provenance == "textfooler"
    # flipped for the model
    assert flip_model.predict(featurize(result.sample, flip_store)) == "contradiction"


def test_tf_repair_noop_when_model_disagrees(flip_store, flip_model):
    sample = mk("pp", "aa", "contradiction")  # model says entailment
    result = tf_repair(sample, flip_model, flip_store)
    assert not result.success
    assert result.sample is None
    assert result.substitutions == []
    assert "gold" in result.reason


def test_tf_repair_budget_failure(flip_model):
    lonely = EmbeddingStore(4)
    lonely.add("aa", np.array([1.0, 0.0, 0.0, 0.0]))
    lonely.add("pp", np.array([0.0, 0.0, 1.0, 0.0]))
    sample = mk("pp", "aa", "entailment")
    result = tf_repair(sample, flip_model, lonely)  # no neighbor above tau
    assert not result.success
    assert "budget" in result.reason


def test_tf_repair_constraints_on_synthetic_corpus():
    samples, planted, store = planted_corpus(n=150, seed=7)
    model = train_proxy(samples, store, epochs=300, seed=0)
    attempted = repaired = 0
    for s in samples[:40]:
        result = tf_repair(s, model, store)
        attempted += 1
        assert len(result.substitutions) <= 3
        for sub in result.substitutions:
            assert sub["similarity"] >= 0.5
        if result.success:
            repaired += 1
            assert result.sample.label == s.label
            assert model.predict(featurize(result.sample, store)) != s.label
            assert len(result.sample.history) == 2
    assert attempted == 40
    assert repaired >= 1
