import numpy as np
import pytest

from benchcurator.proxy import (
    TrainingError,
    featurize,
    loss_and_grad,
    softmax,
    train_proxy,
)
from benchcurator.samples import Sample
from benchcurator.synthetic import planted_corpus


def mk(premise, hypothesis, label, sid):
    return Sample(id=sid, premise=premise, hypothesis=hypothesis, label=label, split="train")


def test_softmax_rows_sum_to_one():
    rng = np.random.default_rng(0)
    z = rng.normal(size=(6, 3)) * 50  # large logits: needs the max-shift trick
    p = softmax(z)
    assert np.allclose(p.sum(axis=1), 1.0)
    assert np.all(p > 0)


def test_featurize_blocks(tiny_store):
    s = mk("e1", "e2", "neutral", "f1")
    f = featurize(s, tiny_store)
    assert f.shape == (16,)
    p, h = tiny_store["e1"], tiny_store["e2"]
    assert np.allclose(f, np.concatenate([p, h, p - h, p * h]))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    feats = rng.normal(size=(12, 7))
    y = rng.integers(0, 3, size=12)
    weights = rng.normal(size=(3, 7)) * 0.3
    bias = rng.normal(size=3) * 0.3
    _, d_weights, d_bias = loss_and_grad(weights, bias, feats, y)
    eps = 1e-6
    for idx in [(0, 0), (1, 3), (2, 6)]:
        w_plus = weights.copy()
        w_plus[idx] += eps
        w_minus = weights.copy()
        w_minus[idx] -= eps
        lp, _, _ = loss_and_grad(w_plus, bias, feats, y)
        lm, _, _ = loss_and_grad(w_minus, bias, feats, y)
        assert d_weights[idx] == pytest.approx((lp - lm) / (2 * eps), abs=1e-5)
    for j in range(3):
        b_plus = bias.copy()
        b_plus[j] += eps
        b_minus = bias.copy()
        b_minus[j] -= eps
        lp, _, _ = loss_and_grad(weights, b_plus, feats, y)
        lm, _, _ = loss_and_grad(weights, b_minus, feats, y)
        assert d_bias[j] == pytest.approx((lp - lm) / (2 * eps), abs=1e-5)


def test_train_separable_set_perfect_accuracy(tiny_store):
    samples = []
    for i in range(10):
        samples.append(mk("e1 near1", "e1", "entailment", f"a{i}"))
        samples.append(mk("e1 near1", "e2", "contradiction", f"b{i}"))
    model = train_proxy(samples, tiny_store, epochs=300, lr=0.5, seed=0)
    assert model.train_accuracy == 1.0
    assert model.predict(featurize(samples[0], tiny_store)) == "entailment"
    assert model.prob_of(featurize(samples[1], tiny_store), "contradiction") > 0.5


def test_train_single_label_raises(tiny_store):
    samples = [mk("e1", "e2", "neutral", f"x{i}") for i in range(5)]
    with pytest.raises(TrainingError):
        train_proxy(samples, tiny_store)


def test_train_deterministic(tiny_store):
    samples = [
        mk("e1", "e2", "neutral", "d1"),
        mk("e3", "e4", "entailment", "d2"),
        mk("e1 e3", "mix12", "contradiction", "d3"),
    ]
    m1 = train_proxy(samples, tiny_store, seed=5)
    m2 = train_proxy(samples, tiny_store, seed=5)
    assert np.array_equal(m1.weights, m2.weights)
    assert np.array_equal(m1.bias, m2.bias)


def test_all_oov_features_give_learned_priors(tiny_store):
    samples = [
        mk("e1", "e2", "neutral", "p1"),
        mk("e3", "e4", "entailment", "p2"),
    ]
    model = train_proxy(samples, tiny_store, seed=0)
    probs = model.predict_proba(np.zeros(16))
    assert np.allclose(probs, softmax(model.bias))


def test_proxy_learns_planted_giveaway():
    samples, planted_ids, store = planted_corpus(n=150, seed=7)
    model = train_proxy(samples, store, epochs=800, seed=0)
    hits = 0
    planted = [s for s in samples if s.id in planted_ids]
    for s in planted:
        hits += model.predict(featurize(s, store)) == "contradiction"
    assert hits / len(planted) > 0.9
