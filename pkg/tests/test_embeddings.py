import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from benchcurator.embeddings import (
    EmbeddingFormatError,
    EmbeddingStore,
    SentenceVec,
    cosine,
    load_embeddings,
    sentence_vector,
)


def _write(tmp_path, lines):
    path = tmp_path / "vecs.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_load_dedup_keeps_first(tmp_path):
    path = _write(
        tmp_path,
        ["cat 1 0 0 0", "dog 0 1 0 0", "cat 0 0 1 0"],
    )
    store = load_embeddings(path)
    assert len(store) == 2
    assert store.dim == 4
    assert np.allclose(store["cat"], [1, 0, 0, 0])


def test_load_header_skipped(tmp_path):
    path = _write(tmp_path, ["2 4", "cat 1 0 0 0", "dog 0 1 0 0"])
    assert len(load_embeddings(path)) == 2


def test_load_dimension_error_names_line(tmp_path):
    path = _write(tmp_path, ["cat 1 0 0 0", "dog 0 1 0"])
    with pytest.raises(EmbeddingFormatError, match="line 2"):
        load_embeddings(path)


def test_load_drops_zero_norm_with_count(tmp_path):
    path = _write(tmp_path, ["cat 0 0 0 0", "dog 0 1 0 0"])
    store = load_embeddings(path)
    assert "cat" not in store
    assert store.dropped_zero_norm == 1


def test_load_unreadable_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_embeddings(tmp_path / "missing.txt")


def test_vectors_unit_normalized(tmp_path):
    path = _write(tmp_path, ["cat 3 4 0 0"])
    store = load_embeddings(path)
    assert np.linalg.norm(store["cat"]) == pytest.approx(1.0, abs=1e-6)


def test_save_roundtrip(tmp_path, store):
    out = tmp_path / "roundtrip.txt"
    store.save(out)
    reloaded = load_embeddings(out)
    assert len(reloaded) == len(store)
    for w in list(store.table)[:20]:
        assert np.allclose(reloaded[w], store[w], atol=1e-6)


def test_sentence_vector_all_oov(tiny_store):
    sv = sentence_vector(["zzz", "qqq"], tiny_store)
    assert sv.oov
    assert np.all(sv.vec == 0)


def test_sentence_vector_single_word_is_stored_vector(tiny_store):
    sv = sentence_vector(["near1"], tiny_store)
    assert np.allclose(sv.vec, tiny_store["near1"])
    sv2 = sentence_vector(["near1", "near1"], tiny_store)
    assert np.allclose(sv2.vec, tiny_store["near1"])


def test_sentence_vector_antipodal_cancellation():
    s = EmbeddingStore(2)
    s.add("up", np.array([0.0, 1.0]))
    s.add("down", np.array([0.0, -1.0]))
    sv = sentence_vector(["up", "down"], s)
    assert not sv.oov
    assert sv.degenerate
    assert np.all(sv.vec == 0)
    assert cosine(sv, SentenceVec(np.array([1.0, 0.0]))) == 0.0


def test_cosine_identity_and_antipodal(tiny_store):
    v = tiny_store["e1"]
    assert cosine(v, v) == pytest.approx(1.0)
    assert cosine(v, -v) == pytest.approx(-1.0)


def test_cosine_zero_convention():
    assert cosine(np.array([1.0, 0.0]), np.zeros(2)) == 0.0


def test_cosine_dimension_mismatch():
    with pytest.raises(ValueError):
        cosine(np.zeros(2), np.zeros(3))


@given(st.integers(0, 2**32 - 1))
def test_cosine_symmetric_and_bounded(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=5), rng.normal(size=5)
    assert cosine(a, b) == pytest.approx(cosine(b, a))
    assert -1.0 - 1e-12 <= cosine(a, b) <= 1.0 + 1e-12


def test_neighbors_threshold_and_truncation(tiny_store):
    got = tiny_store.neighbors("e1", k=5, tau=0.5)
    names = [w for w, _ in got]
    assert "near1" in names and "mix12" in names
    assert "e2" not in names  # cosine 0 < tau
    assert tiny_store.neighbors("e1", k=1, tau=0.5)[0][0] == "near1"
    assert tiny_store.neighbors("zzz", k=5, tau=0.5) == []


def test_neighbors_none_above_threshold(tiny_store):
    assert tiny_store.neighbors("e4", k=5, tau=0.9) == []
