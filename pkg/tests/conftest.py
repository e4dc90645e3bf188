import numpy as np
import pytest

from benchcurator import ThresholdConfig, build_corpus
from benchcurator.corpus import CorpusState
from benchcurator.embeddings import EmbeddingStore
from benchcurator.synthetic import build_samples, build_store


@pytest.fixture(scope="session")
def store():
    return build_store(dim=16, clusters=40, words_per_cluster=6, seed=0)


@pytest.fixture()
def config():
    return ThresholdConfig()


@pytest.fixture(scope="session")
def seed_samples():
    return build_samples(40, seed=1)


@pytest.fixture()
def seeded_corpus(store, seed_samples):
    corpus, reports = build_corpus(seed_samples, store, ThresholdConfig())
    return corpus, reports


@pytest.fixture()
def empty_corpus(store):
    return CorpusState(store)


@pytest.fixture()
def tiny_store():
    """4-d store with hand-chosen geometry for exact oracles."""
    s = EmbeddingStore(4)
    s.add("e1", np.array([1.0, 0, 0, 0]))
    s.add("e2", np.array([0, 1.0, 0, 0]))
    s.add("e3", np.array([0, 0, 1.0, 0]))
    s.add("e4", np.array([0, 0, 0, 1.0]))
    s.add("mix12", np.array([1.0, 1.0, 0, 0]))  # cos 0.707 with e1 and e2
    s.add("near1", np.array([0.9, 0.1, 0, 0]))
    return s
