"""Preferred-MCS selection and three-valued query answering.

Four methods share one selection mechanism: enumerate the candidate family,
score each candidate subset, keep the maximal ones (ties kept). Skeptical
keeps everything, CMCS scores by cardinality, SharpMC by MCS-occurrence
counts, and the embedding method by similarity-weighted reliability. A query
is accepted when every preferred MCS entails it, rejected when every
preferred MCS is inconsistent with it, and undetermined otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .embedding import AxiomEmbedding, METRIC_COS, METRICS, SimilarityMatrix, similarity_matrix
from .errors import DomainError, MissingAxiomError, TrivialAxiomError, VectorError
from .mcs import (
    DEFAULT_MAX_MCS,
    DEFAULT_MAX_ORACLE_CALLS,
    Mcs,
    enumerate_mcs,
    enumerate_mcs_with,
)
from .ontology import Axiom, Ontology, with_id
from .reasoning import check_consistency, entails, is_trivial
from .scoring import (
    SubsetScorer,
    cardinality_scorer,
    embedding_scorer,
    maximal_subsets,
    sharp_mc_scorer,
)
from .syntax import render_axiom

SKEPTICAL = "skeptical"
CMCS = "cmcs"
SHARP_MC = "sharpmc"
EMBEDDING = "embedding"
METHOD_KINDS = (SKEPTICAL, CMCS, SHARP_MC, EMBEDDING)

ACCEPTED = "accepted"
REJECTED = "rejected"
UNDETERMINED = "undetermined"
VERDICTS = (ACCEPTED, REJECTED, UNDETERMINED)


@dataclass(frozen=True, eq=False)
class Method:
    """Which MCS-selection policy answers queries."""

    kind: str
    embedding: Optional[AxiomEmbedding] = None
    metric: str = METRIC_COS

    def __post_init__(self) -> None:
        if self.kind not in METHOD_KINDS:
            raise DomainError(f"unknown method {self.kind!r}")
        if self.metric not in METRICS:
            raise VectorError(f"unknown metric {self.metric!r}")
        if self.kind == EMBEDDING and self.embedding is None:
            raise DomainError("embedding method needs an AxiomEmbedding")

    @staticmethod
    def skeptical() -> "Method":
        return Method(SKEPTICAL)

    @staticmethod
    def cmcs() -> "Method":
        return Method(CMCS)

    @staticmethod
    def sharp_mc() -> "Method":
        return Method(SHARP_MC)

    @staticmethod
    def embedding_based(embedding: AxiomEmbedding, metric: str = METRIC_COS) -> "Method":
        return Method(EMBEDDING, embedding, metric)


@dataclass(frozen=True)
class McsVerdict:
    """How one preferred MCS judged the query."""

    ids: tuple[str, ...]
    entailed: bool
    contradicted: bool


@dataclass(frozen=True, eq=False)
class QueryAnswer:
    verdict: str
    preferred: tuple[Mcs, ...]
    records: tuple[McsVerdict, ...]


def _similarity_for(method: Method, ontology: Ontology) -> SimilarityMatrix:
    assert method.embedding is not None
    for axiom in ontology:
        if axiom.id not in method.embedding.vectors:
            raise MissingAxiomError(axiom.id)
    matrix = similarity_matrix(method.embedding, method.metric)
    if matrix.ids != ontology.ids():
        # Restrict/reorder to the ontology's axioms.
        index = {a: i for i, a in enumerate(matrix.ids)}
        order = [index[i] for i in ontology.ids()]
        matrix = SimilarityMatrix(ontology.ids(), matrix.values[np.ix_(order, order)])
    return matrix


def _scorer_for(method: Method, ontology: Ontology,
                mcs_list: Callable[[], Sequence[Mcs]]) -> Optional[SubsetScorer]:
    if method.kind == SKEPTICAL:
        return None
    if method.kind == CMCS:
        return cardinality_scorer()
    if method.kind == SHARP_MC:
        return sharp_mc_scorer(ontology, mcs_list())
    return embedding_scorer(ontology, mcs_list(), _similarity_for(method, ontology))


def _select(candidates: list[Mcs], scorer: Optional[SubsetScorer]) -> list[Mcs]:
    return list(candidates) if scorer is None else maximal_subsets(candidates, scorer)


def preferred_mcs(ontology: Ontology, alpha: Axiom, method: Method,
                  max_mcs: int = DEFAULT_MAX_MCS,
                  max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> list[Mcs]:
    """Score-maximal members of the family conditioned on ``alpha``.

    Candidate subsets come from the ontology extended with ``alpha``; their
    scores are computed against the ontology's own MCS family.
    """
    _require_non_trivial(alpha, "conditioning axiom")
    candidates = enumerate_mcs_with(ontology, alpha, max_mcs, max_oracle_calls)
    scorer = _scorer_for(
        method, ontology, lambda: enumerate_mcs(ontology, max_mcs, max_oracle_calls))
    return _select(candidates, scorer)


def preferred_mcs_plain(ontology: Ontology, method: Method,
                        max_mcs: int = DEFAULT_MAX_MCS,
                        max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> list[Mcs]:
    """Score-maximal MCSs of the ontology itself (unconditional queries)."""
    mcs_list = enumerate_mcs(ontology, max_mcs, max_oracle_calls)
    return _select(mcs_list, _scorer_for(method, ontology, lambda: mcs_list))


def infers(ontology: Ontology, alpha: Axiom, beta: Axiom, method: Method,
           max_mcs: int = DEFAULT_MAX_MCS,
           max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> bool:
    """Does every preferred MCS, together with alpha, entail beta?"""
    _require_non_trivial(beta, "conclusion axiom")
    preferred = preferred_mcs(ontology, alpha, method, max_mcs, max_oracle_calls)
    alpha = alpha if alpha.id else with_id(alpha, "q0")
    for mcs in preferred:
        premises = list(mcs.axioms())
        if not any(alpha == a for a in premises):
            premises.append(alpha)
        if not entails(premises, beta):
            return False
    return True


def answer_with_preferred(preferred: Sequence[Mcs], query: Axiom) -> QueryAnswer:
    """Three-valued verdict of a query against an already-selected MCS set."""
    query = query if query.id else with_id(query, "q0")
    records: list[McsVerdict] = []
    for mcs in preferred:
        axioms = list(mcs.axioms())
        entailed = entails(axioms, query)
        contradicted = (not entailed
                        and check_consistency(axioms + [query]) is not None)
        records.append(McsVerdict(mcs.ids, entailed, contradicted))
    if records and all(r.entailed for r in records):
        verdict = ACCEPTED
    elif records and all(r.contradicted for r in records):
        verdict = REJECTED
    else:
        verdict = UNDETERMINED
    return QueryAnswer(verdict, tuple(preferred), tuple(records))


def answer_query(ontology: Ontology, query: Axiom, method: Method,
                 max_mcs: int = DEFAULT_MAX_MCS,
                 max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> QueryAnswer:
    """Three-valued verdict over the preferred MCSs of the ontology."""
    preferred = preferred_mcs_plain(ontology, method, max_mcs, max_oracle_calls)
    return answer_with_preferred(preferred, query)


def _require_non_trivial(axiom: Axiom, role: str) -> None:
    if is_trivial(axiom):
        raise TrivialAxiomError(axiom.id or "?", f"{role}: {render_axiom(axiom)}")
