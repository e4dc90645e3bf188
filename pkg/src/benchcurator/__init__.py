"""Benchmark curation toolkit: artifact scoring, repair, and review workflow."""

from .config import COMPONENTS, ThresholdConfig
from .corpus import CorpusState
from .embeddings import EmbeddingStore, cosine, load_embeddings, sentence_vector
from .metrics import (
    ComponentScore,
    ImpactReport,
    QualityReport,
    build_corpus,
    evaluate,
    flag,
    simulate_add,
    tune_thresholds,
    undo,
)
from .samples import Sample, State, read_jsonl, write_jsonl
from .text import jaccard, ngrams, tokenize

__all__ = [
    "COMPONENTS",
    "ComponentScore",
    "CorpusState",
    "EmbeddingStore",
    "ImpactReport",
    "QualityReport",
    "Sample",
    "State",
    "ThresholdConfig",
    "build_corpus",
    "cosine",
    "evaluate",
    "flag",
    "jaccard",
    "load_embeddings",
    "ngrams",
    "read_jsonl",
    "sentence_vector",
    "simulate_add",
    "tokenize",
    "tune_thresholds",
    "undo",
    "write_jsonl",
]

__version__ = "0.1.0"
