"""Static word-vector store, sentence vectors, and cosine similarity.

The store reads the common whitespace text format (optional ``count dim``
header line). Vectors are unit-normalized on load; sentence vectors are the
unit-normalized mean of in-vocabulary word vectors. The sentence-similarity
function is deliberately a thin, replaceable seam: anything producing unit
vectors per sentence can stand in without touching the scoring code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_EPS = 1e-12


class EmbeddingFormatError(ValueError):
    """Malformed embedding file (inconsistent dimension, bad float, ...)."""


@dataclass
class SentenceVec:
    """Unit vector for a sentence; zero vector with flags for degenerate cases."""

    vec: np.ndarray
    oov: bool = False
    degenerate: bool = False  # in-vocab tokens whose mean cancelled to zero


class EmbeddingStore:
    """word -> unit vector table with nearest-neighbor lookup."""

    def __init__(self, dim: int):
        self.dim = dim
        self.table: dict[str, np.ndarray] = {}
        self.dropped_zero_norm = 0
        self._words: list[str] | None = None
        self._matrix: np.ndarray | None = None

    def __contains__(self, word: str) -> bool:
        return word in self.table

    def __getitem__(self, word: str) -> np.ndarray:
        return self.table[word]

    def __len__(self) -> int:
        return len(self.table)

    def add(self, word: str, vec: np.ndarray) -> bool:
        """Insert ``word`` (first occurrence wins). Returns False if dropped."""
        if word in self.table:
            return False
        v = np.asarray(vec, dtype=np.float64)
        if v.shape != (self.dim,):
            raise EmbeddingFormatError(
                f"vector for {word!r} has dimension {v.shape[0] if v.ndim == 1 else v.shape}, expected {self.dim}"
            )
        norm = float(np.linalg.norm(v))
        if norm < NORM_EPS:
            self.dropped_zero_norm += 1
            return False
        self.table[word] = v / norm
        self._matrix = None
        return True

    def _dense(self) -> tuple[list[str], np.ndarray]:
        if self._matrix is None:
            self._words = list(self.table)
            self._matrix = (
                np.vstack([self.table[w] for w in self._words])
                if self._words
                else np.zeros((0, self.dim))
            )
        return self._words, self._matrix

    def neighbors(self, word: str, k: int, tau: float) -> list[tuple[str, float]]:
        """k nearest vocabulary words with cosine >= tau, excluding ``word``.

        Empty list when ``word`` is out of vocabulary.
        """
        if word not in self.table:
            return []
        words, matrix = self._dense()
        sims = matrix @ self.table[word]
        order = np.argsort(-sims, kind="stable")
        out: list[tuple[str, float]] = []
        for idx in order:
            w = words[idx]
            if w == word:
                continue
            s = float(sims[idx])
            if s < tau:
                break
            out.append((w, s))
            if len(out) == k:
                break
        return out

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{len(self.table)} {self.dim}\n")
            for word, vec in self.table.items():
                fh.write(word + " " + " ".join(f"{x:.8f}" for x in vec) + "\n")


def load_embeddings(path) -> EmbeddingStore:
    """Parse a whitespace text embedding file into a unit-normalized store.

    Duplicates keep the first occurrence; zero-norm vectors are dropped and
    counted. Raises EmbeddingFormatError naming the line on inconsistent
    dimensions; OSError propagates for unreadable files.
    """
    store: EmbeddingStore | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # header line
                except ValueError:
                    pass
            word, rest = parts[0], parts[1:]
            try:
                vec = np.array([float(x) for x in rest], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"line {lineno}: bad float ({exc})") from None
            if store is None:
                if vec.size == 0:
                    raise EmbeddingFormatError(f"line {lineno}: no vector components")
                store = EmbeddingStore(dim=vec.size)
            if vec.size != store.dim:
                raise EmbeddingFormatError(
                    f"line {lineno}: dimension {vec.size} != {store.dim}"
                )
            store.add(word, vec)
    if store is None:
        raise EmbeddingFormatError("empty embedding file")
    return store


def sentence_vector(tokens: list[str], store: EmbeddingStore) -> SentenceVec:
    """Unit-normalized mean of in-vocabulary token vectors.

    All tokens OOV (or no tokens) -> zero vector with oov=True. An exact
    cancellation of in-vocabulary vectors yields the zero vector with
    degenerate=True; downstream cosine treats it as similarity 0.
    """
    vecs = [store.table[t] for t in tokens if t in store.table]
    if not vecs:
        return SentenceVec(np.zeros(store.dim), oov=True)
    mean = np.mean(vecs, axis=0)
    norm = float(np.linalg.norm(mean))
    if norm < NORM_EPS:
        return SentenceVec(np.zeros(store.dim), oov=False, degenerate=True)
    return SentenceVec(mean / norm)


def cosine(a, b) -> float:
    """Cosine similarity; 0 when either operand has norm < 1e-12."""
    va = a.vec if isinstance(a, SentenceVec) else np.asarray(a, dtype=np.float64)
    vb = b.vec if isinstance(b, SentenceVec) else np.asarray(b, dtype=np.float64)
    if va.shape != vb.shape:
        raise ValueError(f"dimension mismatch: {va.shape} vs {vb.shape}")
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na < NORM_EPS or nb < NORM_EPS:
        return 0.0
    return float(np.dot(va, vb) / (na * nb))
