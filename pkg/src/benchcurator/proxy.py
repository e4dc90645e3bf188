"""Linear softmax stand-in classifier over sentence-pair features.

Trained with full-batch gradient descent; deterministic given the seed.
The feature map is the standard sentence-pair concatenation
[p, h, p - h, p * h] (dimension 4 * embedding dim).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingStore, sentence_vector
from .samples import Sample
from .text import tokenize


class TrainingError(ValueError):
    pass


def featurize(sample: Sample, store: EmbeddingStore) -> np.ndarray:
    p = sentence_vector(tokenize(sample.premise), store).vec
    h = sentence_vector(tokenize(sample.hypothesis), store).vec
    return np.concatenate([p, h, p - h, p * h])


def featurize_text(premise: str, hypothesis: str, store: EmbeddingStore) -> np.ndarray:
    p = sentence_vector(tokenize(premise), store).vec
    h = sentence_vector(tokenize(hypothesis), store).vec
    return np.concatenate([p, h, p - h, p * h])


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=-1, keepdims=True)


def loss_and_grad(
    weights: np.ndarray, bias: np.ndarray, feats: np.ndarray, y_idx: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy and its analytic gradient for a full batch."""
    n = feats.shape[0]
    probs = softmax(feats @ weights.T + bias)
    loss = float(-np.mean(np.log(probs[np.arange(n), y_idx] + 1e-300)))
    delta = probs.copy()
    delta[np.arange(n), y_idx] -= 1.0
    d_weights = delta.T @ feats / n
    d_bias = delta.mean(axis=0)
    return loss, d_weights, d_bias


@dataclass
class ProxyModel:
    weights: np.ndarray  # (labels, feature dim)
    bias: np.ndarray  # (labels,)
    labels: tuple[str, ...]
    train_accuracy: float = 0.0

    def predict_proba(self, feats: np.ndarray) -> np.ndarray:
        """Probabilities summing to 1 for one feature vector or a batch."""
        return softmax(feats @ self.weights.T + self.bias)

    def predict(self, feats: np.ndarray) -> str:
        return self.labels[int(np.argmax(self.predict_proba(feats)))]

    def prob_of(self, feats: np.ndarray, label: str) -> float:
        return float(self.predict_proba(feats)[self.labels.index(label)])


def train_proxy(
    samples: list[Sample],
    store: EmbeddingStore,
    epochs: int = 200,
    lr: float = 0.5,
    seed: int = 0,
) -> ProxyModel:
    """Full-batch gradient descent on softmax cross-entropy."""
    labels = tuple(sorted({s.label for s in samples}))
    if len(labels) < 2:
        raise TrainingError(f"need at least 2 labels, got {labels}")
    feats = np.vstack([featurize(s, store) for s in samples])
    y_idx = np.array([labels.index(s.label) for s in samples])
    rng = np.random.default_rng(seed)
    weights = rng.normal(0.0, 0.01, size=(len(labels), feats.shape[1]))
    bias = np.zeros(len(labels))
    for _ in range(epochs):
        _, d_weights, d_bias = loss_and_grad(weights, bias, feats, y_idx)
        weights -= lr * d_weights
        bias -= lr * d_bias
    preds = np.argmax(feats @ weights.T + bias, axis=1)
    acc = float(np.mean(preds == y_idx))
    return ProxyModel(weights=weights, bias=bias, labels=labels, train_accuracy=acc)
