"""Text embedding backends and cosine similarity.

The reference backend is fully deterministic and dependency-free: hashed
character 3-gram counts projected through a fixed seeded random matrix,
then L2-normalized. An optional sentence-encoder backend can be loaded
for deployments with a real model; tests never rely on it.
"""

from __future__ import annotations

import hashlib
import math
import re
import unicodedata

import numpy as np

from .errors import DimensionMismatch, EmbedderUnavailable

_WHITESPACE_RUN = re.compile(r"\s+")


def normalize_for_embedding(text: str) -> str:
    return _WHITESPACE_RUN.sub(" ", unicodedata.normalize("NFC", text).casefold()).strip()


class HashedNgramEmbedder:
    """Hashed character-3-gram counts, fixed random projection, unit norm."""

    embedder_id = "hashed-ngram-64"
    dim = 64
    buckets = 1024
    seed = 1902

    def __init__(self):
        rng = np.random.default_rng(self.seed)
        self._projection = rng.standard_normal((self.buckets, self.dim))

    def bucket(self, gram: str) -> int:
        digest = hashlib.blake2b(gram.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "little") % self.buckets

    def embed(self, text: str) -> np.ndarray:
        normalized = normalize_for_embedding(text)
        if not normalized:
            return np.zeros(self.dim, dtype=np.float32)
        if len(normalized) < 3:
            grams = [normalized]
        else:
            grams = [normalized[i : i + 3] for i in range(len(normalized) - 2)]
        counts: dict[int, float] = {}
        for gram in grams:
            b = self.bucket(gram)
            counts[b] = counts.get(b, 0.0) + 1.0
        # Sparse accumulation in bucket order keeps the arithmetic order
        # fixed, so the result is reproducible operation for operation.
        projected = np.zeros(self.dim, dtype=np.float64)
        for b in sorted(counts):
            projected += counts[b] * self._projection[b]
        norm = math.sqrt(sum(float(x) * float(x) for x in projected))
        if norm == 0.0:
            return np.zeros(self.dim, dtype=np.float32)
        return (projected / norm).astype(np.float32)


class SentenceEncoderEmbedder:
    """Optional backend over a sentence-transformers model directory or name."""

    def __init__(self, model_ref: str):
        self.embedder_id = f"st:{model_ref}"
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise EmbedderUnavailable("sentence-transformers is not installed") from exc
        try:
            self._model = SentenceTransformer(model_ref)
        except Exception as exc:
            raise EmbedderUnavailable(f"cannot load model {model_ref!r}: {exc}") from exc
        self.dim = int(self._model.get_sentence_embedding_dimension())

    def embed(self, text: str) -> np.ndarray:
        if not text.strip():
            return np.zeros(self.dim, dtype=np.float32)
        vector = np.asarray(self._model.encode([text])[0], dtype=np.float64)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            return np.zeros(self.dim, dtype=np.float32)
        return (vector / norm).astype(np.float32)


def get_embedder(embedder_id: str):
    if embedder_id == HashedNgramEmbedder.embedder_id:
        return HashedNgramEmbedder()
    if embedder_id.startswith("st:"):
        return SentenceEncoderEmbedder(embedder_id[3:])
    raise EmbedderUnavailable(f"unknown embedder {embedder_id!r}")


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a,b)/(|a||b|); -1.0 when either vector has zero norm."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    a64 = a.astype(np.float64)
    b64 = b.astype(np.float64)
    na = float(np.linalg.norm(a64))
    nb = float(np.linalg.norm(b64))
    if na == 0.0 or nb == 0.0:
        return -1.0
    return float(np.clip(np.dot(a64, b64) / (na * nb), -1.0, 1.0))
