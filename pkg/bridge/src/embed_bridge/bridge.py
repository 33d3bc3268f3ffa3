"""File-based encoding: Sentences JSONL in, Vectors JSONL out.

Input records are ``{"id": ..., "text": ...}``, one per line; output records
are ``{"id": ..., "vector": [...]}`` with ids and order preserved, one output
record per input record, uniform arity, finite components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .encoders import TFIDF_MODEL, load_encoder


class MalformedInputError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class BridgeConfig:
    input_path: Path
    output_path: Path
    model: str = TFIDF_MODEL
    batch_size: int = 32
    normalize: bool = False


def read_sentences(path: Path) -> list[tuple[str, str]]:
    """(id, text) pairs in file order; ids must be unique non-empty strings."""
    pairs: list[tuple[str, str]] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedInputError(f"invalid JSON: {exc.msg}", line_no) from None
            if not isinstance(record, dict) or "id" not in record or "text" not in record:
                raise MalformedInputError('record must carry "id" and "text"', line_no)
            sentence_id, text = record["id"], record["text"]
            if not isinstance(sentence_id, str) or not sentence_id:
                raise MalformedInputError("id must be a non-empty string", line_no)
            if not isinstance(text, str):
                raise MalformedInputError("text must be a string", line_no)
            if sentence_id in seen:
                raise MalformedInputError(f"duplicate id {sentence_id!r}", line_no)
            seen.add(sentence_id)
            pairs.append((sentence_id, text))
    return pairs


def encode_file(config: BridgeConfig) -> int:
    """Encode every input record; returns the number of records written."""
    pairs = read_sentences(config.input_path)
    encoder = load_encoder(config.model)
    texts = [text for _id, text in pairs]
    if pairs:
        vectors = encoder.encode_batch(texts, config.batch_size)
        if vectors.shape[0] != len(pairs):
            raise RuntimeError("encoder returned a different number of vectors")
        if not np.all(np.isfinite(vectors)):
            raise RuntimeError("encoder produced non-finite components")
        if config.normalize:
            norms = np.linalg.norm(vectors, axis=1, keepdims=True)
            vectors = vectors / np.where(norms == 0.0, 1.0, norms)
    with open(config.output_path, "w", encoding="utf-8") as handle:
        for row, (sentence_id, _text) in enumerate(pairs):
            record = {"id": sentence_id, "vector": [float(x) for x in vectors[row]]}
            handle.write(json.dumps(record))
            handle.write("\n")
    return len(pairs)
