"""Command-line entry point: embed-bridge --in sentences.jsonl --out vectors.jsonl."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .bridge import BridgeConfig, MalformedInputError, encode_file
from .encoders import TFIDF_MODEL, ModelUnavailableError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-bridge",
        description="Encode Sentences JSONL into Vectors JSONL with a "
                    "pretrained or built-in sentence encoder.")
    parser.add_argument("--in", dest="input_path", required=True,
                        help="Sentences JSONL ({\"id\", \"text\"} per line)")
    parser.add_argument("--out", dest="output_path", required=True,
                        help="Vectors JSONL to write")
    parser.add_argument("--model", default=TFIDF_MODEL,
                        help=f"encoder model id (default: {TFIDF_MODEL}, built in; "
                             "other ids resolve via sentence-transformers)")
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--normalize", action="store_true",
                        help="L2-normalize output vectors")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = BridgeConfig(
        input_path=Path(args.input_path),
        output_path=Path(args.output_path),
        model=args.model,
        batch_size=args.batch_size,
        normalize=args.normalize,
    )
    try:
        count = encode_file(config)
    except (MalformedInputError, ModelUnavailableError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"encoded {count} sentences with {config.model}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
