"""Command-line pipeline: parse, check, mcs, verbalize, embed, score, select,
query, infer, inject, eval.

Data goes to stdout (or ``--out``); diagnostics go to stderr. Exit codes:
0 success, 1 domain error, 2 usage error. All stages are deterministic under
their flags, so identical invocations produce byte-identical output.

The ``select`` stage caches the preferred-MCS choice in a sidecar JSON file
next to the input (``<input>.select.json``); ``query`` reuses the cache when
the ontology digest and selection flags match, mirroring the offline/online
split of the pipeline.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from . import harness
from .embedding import (
    AxiomEmbedding,
    METRIC_COS,
    METRICS,
    TransEConfig,
    hash_embed,
    import_vectors,
    similarity_matrix,
    train_transe,
    write_vectors_jsonl,
)
from .errors import DomainError, MalformedQueryError, ParseError
from .inference import Method, answer_with_preferred, infers, preferred_mcs_plain
from .mcs import DEFAULT_MAX_MCS, DEFAULT_MAX_ORACLE_CALLS, Mcs, enumerate_mcs
from .ontology import Ontology
from .reasoning import check_consistency
from .scoring import embedding_scorer
from .syntax import parse_axiom, parse_ontology, render_axiom
from .verbalize import to_sentences, to_triples

HASH_DEFAULT_DIM = 256
TRANSE_DEFAULT_DIM = 50

BACKENDS = ("hash", "transe", "import")
METHODS = ("skeptical", "cmcs", "sharpmc", "embedding")


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_ontology(path: str) -> Ontology:
    return parse_ontology(_read_text(path))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _build_embedding(ontology: Ontology, args: argparse.Namespace) -> AxiomEmbedding:
    if args.backend == "hash":
        dim = args.dim if args.dim else HASH_DEFAULT_DIM
        return hash_embed(to_sentences(ontology), dim=dim, seed=args.seed)
    if args.backend == "transe":
        dim = args.dim if args.dim else TRANSE_DEFAULT_DIM
        config = TransEConfig(dimension=dim, seed=args.seed)
        return train_transe(to_triples(ontology), config)
    if not args.vectors:
        raise DomainError("--backend import requires --vectors")
    return import_vectors(args.vectors, ontology.ids())


def _method_from_args(ontology: Ontology, args: argparse.Namespace) -> Method:
    if args.method == "skeptical":
        return Method.skeptical()
    if args.method == "cmcs":
        return Method.cmcs()
    if args.method == "sharpmc":
        return Method.sharp_mc()
    return Method.embedding_based(_build_embedding(ontology, args), args.metric)


def _parse_query(text: str) -> "Axiom":  # noqa: F821 - forward name for docs
    try:
        return parse_axiom(text)
    except ParseError as exc:
        raise MalformedQueryError(f"cannot parse query {text!r}: {exc}") from None


def _mcs_lists(mcs_list: list[Mcs]) -> list[list[str]]:
    return [list(m.ids) for m in mcs_list]


def _source_digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _selection_signature(args: argparse.Namespace) -> dict:
    signature = {"method": args.method}
    if args.method == "embedding":
        signature.update({
            "backend": args.backend,
            "metric": args.metric,
            "seed": args.seed,
            "dim": args.dim,
        })
        if args.backend == "import":
            signature["vectors"] = str(args.vectors)
    return signature


def _cache_path(args: argparse.Namespace) -> Path:
    return Path(args.cache) if args.cache else Path(args.input + ".select.json")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_parse(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    lines = [json.dumps({"id": a.id, "text": render_axiom(a)}) for a in ontology]
    _emit("".join(line + "\n" for line in lines), args.out)
    print(f"parsed {len(ontology)} axioms", file=sys.stderr)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    clash = check_consistency(ontology.axioms)
    payload: dict = {"consistent": clash is None, "clash": None}
    if clash is not None:
        payload["clash"] = {
            "kind": clash.kind,
            "axiom_ids": list(clash.axiom_ids),
            "individuals": list(clash.individuals),
            "literals": list(clash.literals),
            "detail": clash.detail,
        }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_mcs(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    mcs_list = enumerate_mcs(ontology, args.budget_mcs, args.budget_oracle)
    _emit(json.dumps(_mcs_lists(mcs_list)) + "\n", args.out)
    print(f"{len(mcs_list)} maximal consistent subsets", file=sys.stderr)
    return 0


def _cmd_verbalize(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    if args.mode == "sentences":
        lines = [json.dumps({"id": s.axiom_id, "text": s.text})
                 for s in to_sentences(ontology)]
        _emit("".join(line + "\n" for line in lines), args.out)
    else:
        triples = to_triples(ontology)
        rows = [f"{axiom_id}\t{t.subject}\t{t.relation}\t{t.object}"
                for axiom_id, t in triples.items() if t is not None]
        omitted = sum(1 for t in triples.values() if t is None)
        _emit("".join(row + "\n" for row in rows), args.out)
        if omitted:
            print(f"omitted {omitted} axioms with no triple form", file=sys.stderr)
    return 0


def _cmd_embed(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    if args.backend == "import":
        raise DomainError("embed produces vectors; --backend must be hash or transe")
    embedding = _build_embedding(ontology, args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            write_vectors_jsonl(embedding, handle)
    else:
        write_vectors_jsonl(embedding, sys.stdout)
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    mcs_list = enumerate_mcs(ontology, args.budget_mcs, args.budget_oracle)
    embedding = _build_embedding(ontology, args)
    matrix = similarity_matrix(embedding, args.metric)
    scorer = embedding_scorer(ontology, mcs_list, matrix)
    scored = [(m, scorer(m.ids)) for m in mcs_list]
    scored.sort(key=lambda pair: (-pair[1], pair[0].ids))
    payload = [{"mcs": list(m.ids), "score": score} for m, score in scored]
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_select(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    method = _method_from_args(ontology, args)
    preferred = preferred_mcs_plain(ontology, method, args.budget_mcs, args.budget_oracle)
    payload = {
        "source_digest": _source_digest(args.input),
        "selection": _selection_signature(args),
        "preferred": _mcs_lists(preferred),
    }
    cache_path = _cache_path(args)
    cache_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    _emit(json.dumps(payload["preferred"]) + "\n", args.out)
    print(f"cached selection in {cache_path}", file=sys.stderr)
    return 0


def _load_cached_selection(ontology: Ontology, args: argparse.Namespace) -> Optional[list[Mcs]]:
    cache_path = _cache_path(args)
    if not cache_path.exists():
        return None
    try:
        payload = json.loads(cache_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        return None
    if payload.get("source_digest") != _source_digest(args.input):
        return None
    if payload.get("selection") != _selection_signature(args):
        return None
    try:
        return [Mcs(ontology.sort_ids(ids), ontology) for ids in payload["preferred"]]
    except (KeyError, TypeError):
        return None


def _cmd_query(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    texts: list[str] = list(args.query or [])
    if args.queries:
        texts.extend(line.strip() for line in _read_text(args.queries).splitlines()
                     if line.strip() and not line.strip().startswith("#"))
    if not texts:
        raise DomainError("no queries given; use --query or --queries")
    cached = _load_cached_selection(ontology, args)
    if cached is not None:
        preferred = cached
        print(f"reusing cached selection from {_cache_path(args)}", file=sys.stderr)
    else:
        method = _method_from_args(ontology, args)
        preferred = preferred_mcs_plain(ontology, method, args.budget_mcs, args.budget_oracle)
    lines = []
    for text in texts:
        answer = answer_with_preferred(preferred, _parse_query(text))
        lines.append(json.dumps({
            "query": text,
            "verdict": answer.verdict,
            "preferred_mcs": _mcs_lists(preferred),
        }))
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def _cmd_infer(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    method = _method_from_args(ontology, args)
    alpha = _parse_query(args.alpha)
    beta = _parse_query(args.beta)
    result = infers(ontology, alpha, beta, method, args.budget_mcs, args.budget_oracle)
    payload = {"alpha": args.alpha, "beta": args.beta, "infers": result}
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def _cmd_inject(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args.input)
    injected = harness.inject_conflicts(ontology, args.conflicts, args.seed)
    lines = []
    for axiom in injected:
        suffix = "  # injected" if axiom.injected else ""
        lines.append(render_axiom(axiom) + suffix)
    _emit("".join(line + "\n" for line in lines), args.out)
    print(f"injected {args.conflicts} conflicts", file=sys.stderr)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    gold = harness.read_gold_csv(args.gold)
    answers: list[tuple[str, str]] = []
    for line_no, line in enumerate(_read_text(args.answers).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            answers.append((record["id"], record["verdict"]))
        except (json.JSONDecodeError, KeyError, TypeError):
            raise DomainError(
                f'answers line {line_no} must be {{"id": ..., "verdict": ...}}') from None
    report = harness.evaluate(answers, gold)
    _emit(json.dumps(report.to_json_dict()) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        parser.add_argument("input", help="ontology document")
    parser.add_argument("--out", help="write data output to this file instead of stdout")


def _add_budgets(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget-mcs", type=int, default=DEFAULT_MAX_MCS,
                        help="maximum number of MCSs to enumerate")
    parser.add_argument("--budget-oracle", type=int, default=DEFAULT_MAX_ORACLE_CALLS,
                        help="maximum number of consistency probes")


def _add_embedding_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--backend", choices=BACKENDS, default="hash")
    parser.add_argument("--metric", choices=METRICS, default=METRIC_COS)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dim", type=int, default=0,
                        help="embedding dimension (0 = backend default)")
    parser.add_argument("--vectors", help="vectors JSONL for --backend import")


def _add_method_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=METHODS, default="skeptical")
    _add_embedding_flags(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcsreason",
        description="Reason with inconsistent ontologies via scored maximal "
                    "consistent sub-ontologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and echo canonical axioms")
    _add_common(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("check", help="decide consistency")
    _add_common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("mcs", help="enumerate maximal consistent subsets")
    _add_common(p)
    _add_budgets(p)
    p.set_defaults(func=_cmd_mcs)

    p = sub.add_parser("verbalize", help="emit sentences or triples")
    _add_common(p)
    p.add_argument("--mode", choices=("sentences", "triples"), default="sentences")
    p.set_defaults(func=_cmd_verbalize)

    p = sub.add_parser("embed", help="produce axiom vectors")
    _add_common(p)
    _add_embedding_flags(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("score", help="score all MCSs with the embedding method")
    _add_common(p)
    _add_embedding_flags(p)
    _add_budgets(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("select", help="select and cache the preferred MCSs")
    _add_common(p)
    _add_method_flags(p)
    _add_budgets(p)
    p.add_argument("--cache", help="sidecar path (default: <input>.select.json)")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("query", help="answer queries over the preferred MCSs")
    _add_common(p)
    _add_method_flags(p)
    _add_budgets(p)
    p.add_argument("--query", action="append", help="query axiom text (repeatable)")
    p.add_argument("--queries", help="file with one query statement per line")
    p.add_argument("--cache", help="sidecar path (default: <input>.select.json)")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("infer", help="two-place inference: alpha |~ beta")
    _add_common(p)
    _add_method_flags(p)
    _add_budgets(p)
    p.add_argument("--alpha", required=True, help="conditioning axiom text")
    p.add_argument("--beta", required=True, help="conclusion axiom text")
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("inject", help="insert conflicts into a consistent ontology")
    _add_common(p)
    p.add_argument("--conflicts", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_inject)

    p = sub.add_parser("eval", help="score answers against a gold standard")
    _add_common(p, with_input=False)
    p.add_argument("--answers", required=True, help="JSONL with id/verdict records")
    p.add_argument("--gold", required=True, help="gold CSV (id,query,gold)")
    p.set_defaults(func=_cmd_eval)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
