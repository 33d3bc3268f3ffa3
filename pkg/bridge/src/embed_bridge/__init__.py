"""Batch sentence encoder bridging verbalized axioms to vector files."""

from .bridge import BridgeConfig, MalformedInputError, encode_file, read_sentences
from .encoders import ModelUnavailableError, TfidfEncoder, load_encoder

__all__ = [
    "BridgeConfig", "MalformedInputError", "ModelUnavailableError",
    "TfidfEncoder", "encode_file", "load_encoder", "read_sentences",
]

__version__ = "0.1.0"
