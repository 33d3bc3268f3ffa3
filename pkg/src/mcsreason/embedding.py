"""Axiom embeddings and semantic similarity.

Three interchangeable backends produce an :class:`AxiomEmbedding`: a seeded
feature-hashing embedder over sentence tokens (fully offline, deterministic),
an in-repo translation-based knowledge-graph-embedding trainer over axiom
triples, and an importer for externally produced vectors in JSONL form
(one ``{"id": ..., "vector": [...]}`` record per line).

Similarities: ``sim_cos = (1 + cos angle) / 2`` and
``sim_euc = 1 / (1 + sqrt(||v1 - v2||))`` — the square root applies to the
norm itself. Both map into [0, 1] with 1 for identical vectors.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    EmptySentenceError,
    ImportFormatError,
    MissingAxiomError,
    NoTriplesError,
    VectorError,
)
from .verbalize import Sentence, Triple

METRIC_COS = "cos"
METRIC_EUC = "euc"
METRICS = (METRIC_COS, METRIC_EUC)

#: Similarity assigned to pairs where a zero placeholder vector is involved
#: and the cosine metric is requested: maximum ignorance.
ZERO_PAIR_SIMILARITY = 0.5


def as_vector(values: Sequence[float]) -> np.ndarray:
    vec = np.asarray(values, dtype=np.float64)
    if vec.ndim != 1 or vec.size < 1:
        raise VectorError("vector must be one-dimensional and non-empty")
    if not np.all(np.isfinite(vec)):
        raise VectorError("vector has non-finite components")
    return vec


def _check_pair(v1: Sequence[float], v2: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_vector(v1), as_vector(v2)
    if a.size != b.size:
        raise VectorError(f"arity mismatch: {a.size} vs {b.size}")
    return a, b


def sim_cos(v1: Sequence[float], v2: Sequence[float]) -> float:
    """Cosine similarity rescaled to [0, 1]; raises on zero vectors."""
    a, b = _check_pair(v1, v2)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise VectorError("zero vector has no direction")
    cosine = float(np.dot(a, b)) / (na * nb)
    cosine = max(-1.0, min(1.0, cosine))
    return 0.5 * (1.0 + cosine)


def sim_euc(v1: Sequence[float], v2: Sequence[float]) -> float:
    """1 / (1 + sqrt of the euclidean distance); always in (0, 1]."""
    a, b = _check_pair(v1, v2)
    return 1.0 / (1.0 + math.sqrt(float(np.linalg.norm(a - b))))


@dataclass(frozen=True, eq=False)
class AxiomEmbedding:
    """Vector per axiom id, uniform arity, tagged with its backend."""

    vectors: dict[str, np.ndarray]
    arity: int
    backend: str
    placeholder_ids: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise VectorError("embedding arity must be at least 1")
        for axiom_id, vec in self.vectors.items():
            if vec.size != self.arity:
                raise VectorError(
                    f"vector for {axiom_id} has arity {vec.size}, expected {self.arity}")

    def ids(self) -> tuple[str, ...]:
        return tuple(self.vectors)

    def vector(self, axiom_id: str) -> np.ndarray:
        try:
            return self.vectors[axiom_id]
        except KeyError:
            raise MissingAxiomError(axiom_id) from None

    def covers(self, ids: Iterable[str]) -> bool:
        return all(i in self.vectors for i in ids)


# ---------------------------------------------------------------------------
# Hash embedder
# ---------------------------------------------------------------------------


def _token_hash(token: str, seed: int) -> int:
    key = seed.to_bytes(8, "little", signed=False)
    digest = hashlib.blake2b(token.encode("utf-8"), key=key, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def hash_embed(sentences: Iterable[Sentence], dim: int = 256, seed: int = 0) -> AxiomEmbedding:
    """Seeded signed bag-of-tokens embedding, L2-normalized per sentence."""
    if dim < 8:
        raise VectorError(f"hash embedding needs dim >= 8, got {dim}")
    vectors: dict[str, np.ndarray] = {}
    for sentence in sentences:
        tokens = sentence.text.lower().split()
        if not tokens:
            raise EmptySentenceError(sentence.axiom_id)
        vec = np.zeros(dim, dtype=np.float64)
        for token in tokens:
            h = _token_hash(token, seed)
            bucket = (h >> 1) % dim
            sign = 1.0 if h & 1 else -1.0
            vec[bucket] += sign
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        vectors[sentence.axiom_id] = vec
    return AxiomEmbedding(vectors, dim, "hash")


# ---------------------------------------------------------------------------
# Translation-based KG embedding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransEConfig:
    dimension: int = 50
    epochs: int = 200
    learning_rate: float = 0.01
    margin: float = 1.0
    negatives: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.dimension, self.epochs, self.negatives) < 1:
            raise VectorError("dimension, epochs and negatives must be positive")
        if self.learning_rate <= 0 or self.margin <= 0:
            raise VectorError("learning rate and margin must be positive")


@dataclass(eq=False)
class TransEModel:
    """Entity/relation vectors trained so subject + relation lands near object."""

    config: TransEConfig
    entity_index: dict[str, int]
    relation_index: dict[str, int]
    entity_vectors: np.ndarray
    relation_vectors: np.ndarray
    epoch_losses: list[float] = field(default_factory=list)

    def distance(self, subject: str, relation: str, obj: str) -> float:
        s = self.entity_vectors[self.entity_index[subject]]
        r = self.relation_vectors[self.relation_index[relation]]
        o = self.entity_vectors[self.entity_index[obj]]
        diff = s + r - o
        return float(np.dot(diff, diff))

    def triple_embedding(self, triple: Triple) -> np.ndarray:
        s = self.entity_vectors[self.entity_index[triple.subject]]
        r = self.relation_vectors[self.relation_index[triple.relation]]
        o = self.entity_vectors[self.entity_index[triple.object]]
        return np.concatenate([s, r, o])


def train_transe_model(triples: Sequence[Triple], config: TransEConfig) -> TransEModel:
    """Margin-ranking SGD with uniform subject/object corruption.

    Entity vectors are renormalized to unit length after every update, as in
    the original translation-embedding recipe. Fully deterministic under the
    config seed. Distances are squared euclidean.
    """
    if not triples:
        raise NoTriplesError("no triples to train on")
    entities = sorted({t.subject for t in triples} | {t.object for t in triples})
    relations = sorted({t.relation for t in triples})
    ent_index = {name: i for i, name in enumerate(entities)}
    rel_index = {name: i for i, name in enumerate(relations)}
    rng = np.random.default_rng(config.seed)
    bound = 6.0 / math.sqrt(config.dimension)
    ent_vecs = rng.uniform(-bound, bound, size=(len(entities), config.dimension))
    rel_vecs = rng.uniform(-bound, bound, size=(len(relations), config.dimension))
    ent_vecs /= np.linalg.norm(ent_vecs, axis=1, keepdims=True)

    triple_ids = [(ent_index[t.subject], rel_index[t.relation], ent_index[t.object])
                  for t in triples]
    existing = set(triple_ids)
    lr, margin = config.learning_rate, config.margin
    model = TransEModel(config, ent_index, rel_index, ent_vecs, rel_vecs)

    for _epoch in range(config.epochs):
        losses: list[float] = []
        for idx in rng.permutation(len(triple_ids)):
            s_i, r_i, o_i = triple_ids[idx]
            for _neg in range(config.negatives):
                cs_i, co_i = _corrupt(rng, s_i, o_i, r_i, len(entities), existing)
                pos = ent_vecs[s_i] + rel_vecs[r_i] - ent_vecs[o_i]
                neg = ent_vecs[cs_i] + rel_vecs[r_i] - ent_vecs[co_i]
                loss = margin + float(np.dot(pos, pos)) - float(np.dot(neg, neg))
                if loss <= 0.0:
                    losses.append(0.0)
                    continue
                losses.append(loss)
                grad_pos = 2.0 * pos
                grad_neg = 2.0 * neg
                ent_vecs[s_i] -= lr * grad_pos
                ent_vecs[o_i] += lr * grad_pos
                rel_vecs[r_i] -= lr * (grad_pos - grad_neg)
                ent_vecs[cs_i] += lr * grad_neg
                ent_vecs[co_i] -= lr * grad_neg
                for e_i in {s_i, o_i, cs_i, co_i}:
                    norm = float(np.linalg.norm(ent_vecs[e_i]))
                    if norm > 0.0:
                        ent_vecs[e_i] /= norm
        model.epoch_losses.append(float(np.mean(losses)))
    return model


def _corrupt(rng: np.random.Generator, s_i: int, o_i: int, r_i: int,
             n_entities: int, existing: set) -> tuple[int, int]:
    """Corrupt subject or object uniformly; avoid reproducing a known triple."""
    for _attempt in range(32):
        corrupt_subject = bool(rng.integers(2))
        replacement = int(rng.integers(n_entities))
        cs_i, co_i = (replacement, o_i) if corrupt_subject else (s_i, replacement)
        if (cs_i, r_i, co_i) not in existing:
            return cs_i, co_i
    return cs_i, co_i  # tiny graphs may leave no clean corruption


def train_transe(triples_by_id: Mapping[str, Optional[Triple]],
                 config: TransEConfig = TransEConfig()) -> AxiomEmbedding:
    """Axiom embedding = concatenated subject/relation/object vectors.

    Axioms without a triple form get an all-zero placeholder of the same
    arity and are flagged in ``placeholder_ids``.
    """
    real = [t for t in triples_by_id.values() if t is not None]
    if not real:
        raise NoTriplesError("every axiom is unrepresentable as a triple")
    model = train_transe_model(real, config)
    arity = 3 * config.dimension
    vectors: dict[str, np.ndarray] = {}
    placeholders: set[str] = set()
    for axiom_id, triple in triples_by_id.items():
        if triple is None:
            vectors[axiom_id] = np.zeros(arity, dtype=np.float64)
            placeholders.add(axiom_id)
        else:
            vectors[axiom_id] = model.triple_embedding(triple)
    return AxiomEmbedding(vectors, arity, "transe", frozenset(placeholders))


# ---------------------------------------------------------------------------
# Vector import / export
# ---------------------------------------------------------------------------


def import_vectors(path, expected_ids: Iterable[str]) -> AxiomEmbedding:
    """Load vectors JSONL; every expected axiom id must be covered."""
    vectors: dict[str, np.ndarray] = {}
    arity: Optional[int] = None
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ImportFormatError(f"invalid JSON: {exc.msg}", line_no) from None
            if not isinstance(record, dict) or set(record) != {"id", "vector"}:
                raise ImportFormatError('record must be {"id": ..., "vector": [...]}', line_no)
            axiom_id = record["id"]
            if not isinstance(axiom_id, str) or not axiom_id:
                raise ImportFormatError("id must be a non-empty string", line_no)
            if axiom_id in vectors:
                raise ImportFormatError(f"duplicate id {axiom_id!r}", line_no)
            raw = record["vector"]
            if (not isinstance(raw, list) or not raw
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)):
                raise ImportFormatError("vector must be a non-empty list of numbers", line_no)
            try:
                vec = as_vector(raw)
            except VectorError as exc:
                raise ImportFormatError(str(exc), line_no) from None
            if arity is None:
                arity = vec.size
            elif vec.size != arity:
                raise VectorError(
                    f"arity mismatch at line {line_no}: {vec.size} vs {arity}")
            vectors[axiom_id] = vec
    if arity is None:
        raise ImportFormatError("no records in vectors file")
    for axiom_id in expected_ids:
        if axiom_id not in vectors:
            raise MissingAxiomError(axiom_id)
    return AxiomEmbedding(vectors, arity, "import")


def write_vectors_jsonl(embedding: AxiomEmbedding, handle) -> None:
    for axiom_id, vec in embedding.vectors.items():
        handle.write(json.dumps({"id": axiom_id, "vector": [float(x) for x in vec]}))
        handle.write("\n")


# ---------------------------------------------------------------------------
# Similarity matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Symmetric axiom-to-axiom similarity with unit diagonal."""

    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.ids)
        if self.values.shape != (n, n):
            raise VectorError("similarity matrix shape does not match ids")
        if not np.all(np.isfinite(self.values)):
            raise VectorError("similarity matrix has non-finite entries")
        if np.any(self.values < 0.0) or np.any(self.values > 1.0):
            raise VectorError("similarities must lie in [0, 1]")
        if not np.array_equal(self.values, self.values.T):
            raise VectorError("similarity matrix must be symmetric")
        if n and not np.all(self.values.diagonal() == 1.0):
            raise VectorError("similarity diagonal must be 1")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.ids)})

    def sim(self, first: str, second: str) -> float:
        index = self._index  # type: ignore[attr-defined]
        try:
            return float(self.values[index[first], index[second]])
        except KeyError as exc:
            raise MissingAxiomError(str(exc.args[0])) from None

    @classmethod
    def all_ones(cls, ids: Iterable[str]) -> "SimilarityMatrix":
        ids = tuple(ids)
        return cls(ids, np.ones((len(ids), len(ids)), dtype=np.float64))


def similarity_matrix(embedding: AxiomEmbedding, metric: str = METRIC_COS) -> SimilarityMatrix:
    """Pairwise similarities over all embedded axioms.

    With the cosine metric, pairs involving a zero placeholder vector get the
    maximum-ignorance value 0.5; the diagonal is pinned to 1 regardless.
    """
    if metric not in METRICS:
        raise VectorError(f"unknown metric {metric!r}")
    ids = embedding.ids()
    n = len(ids)
    arr = np.stack([embedding.vectors[i] for i in ids]) if n else np.zeros((0, 0))
    values = np.ones((n, n), dtype=np.float64)
    if metric == METRIC_COS:
        norms = np.linalg.norm(arr, axis=1)
        zero = norms == 0.0
        safe = np.where(zero, 1.0, norms)
        unit = arr / safe[:, None]
        cos = np.clip(unit @ unit.T, -1.0, 1.0)
        values = 0.5 * (1.0 + cos)
        if np.any(zero):
            values[zero, :] = ZERO_PAIR_SIMILARITY
            values[:, zero] = ZERO_PAIR_SIMILARITY
    else:
        for i in range(n):
            for j in range(i + 1, n):
                values[i, j] = sim_euc(arr[i], arr[j])
        values = np.triu(values, 1) + np.triu(values, 1).T + np.eye(n)
    values = np.clip((values + values.T) / 2.0, 0.0, 1.0)
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(ids, values)
