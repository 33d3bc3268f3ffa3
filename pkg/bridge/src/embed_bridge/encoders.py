"""Sentence encoders behind one interface.

The default ``tfidf`` encoder is a deterministic corpus-relative bag-of-words
model (idf = ln((N+1)/df), always positive), so the bridge works fully
offline. Any other model id is resolved through sentence-transformers when
that package and the model weights are available locally.
"""

from __future__ import annotations

import re
from typing import Protocol, Sequence

import numpy as np

TFIDF_MODEL = "tfidf"

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class ModelUnavailableError(Exception):
    """The requested encoder model cannot be loaded."""


class Encoder(Protocol):
    def encode_batch(self, texts: Sequence[str], batch_size: int) -> np.ndarray:
        """Encode texts into a (len(texts), dim) float array."""


def _tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class TfidfEncoder:
    """Corpus-relative TF-IDF vectors over a shared sorted vocabulary.

    The vector space is fitted on the batch itself: arity equals the corpus
    vocabulary size and is uniform across records. Identical texts yield
    identical vectors.
    """

    def encode_batch(self, texts: Sequence[str], batch_size: int) -> np.ndarray:
        documents = [_tokenize(t) for t in texts]
        vocabulary = sorted({token for doc in documents for token in doc})
        if not vocabulary:
            raise ModelUnavailableError("corpus has no tokens to fit on")
        index = {token: i for i, token in enumerate(vocabulary)}
        n_docs = len(documents)
        doc_freq = np.zeros(len(vocabulary))
        for doc in documents:
            for token in set(doc):
                doc_freq[index[token]] += 1
        idf = np.log((n_docs + 1) / doc_freq)
        vectors = np.zeros((n_docs, len(vocabulary)))
        for row, doc in enumerate(documents):
            for token in doc:
                vectors[row, index[token]] += 1.0
        return vectors * idf


class SentenceTransformerEncoder:
    """Thin wrapper over a pretrained sentence-transformers model."""

    def __init__(self, model_id: str):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise ModelUnavailableError(
                f"sentence-transformers is not installed; cannot load {model_id!r}"
            ) from exc
        try:
            self._model = SentenceTransformer(model_id)
        except Exception as exc:
            raise ModelUnavailableError(
                f"cannot load encoder model {model_id!r}: {exc}") from exc

    def encode_batch(self, texts: Sequence[str], batch_size: int) -> np.ndarray:
        return np.asarray(
            self._model.encode(list(texts), batch_size=batch_size,
                               convert_to_numpy=True, show_progress_bar=False),
            dtype=np.float64)


def load_encoder(model_id: str) -> Encoder:
    if model_id == TFIDF_MODEL:
        return TfidfEncoder()
    return SentenceTransformerEncoder(model_id)
