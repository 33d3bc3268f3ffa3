"""Scoring calculus over maximal consistent sub-ontologies.

Per-axiom scores: ``count_mc`` counts the MCSs containing an axiom;
``mc_score`` sums, over exactly those MCSs, the axiom's mean similarity to
the members (``agg``). Subset scores aggregate per-axiom scores with sum,
which makes the induced selection relation total, transitive, and strictly
monotonic under adding non-trivial axioms (every per-axiom score is
positive). Ties are resolved within an absolute tolerance so argmax sets are
reproducible under floating-point summation.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Iterable, Sequence, Union

from .embedding import SimilarityMatrix
from .errors import (
    EmptySubsetError,
    NotMemberError,
    UnknownAxiomError,
    UnknownSubsetError,
)
from .mcs import Mcs
from .ontology import Axiom, Ontology

TIE_TOLERANCE = 1e-12

AxiomRef = Union[str, Axiom]
SubsetScorer = Callable[[Iterable[str]], float]


def _axiom_id(ontology: Ontology, ref: AxiomRef) -> str:
    if isinstance(ref, str):
        if not ontology.has_id(ref):
            raise UnknownAxiomError(f"axiom id {ref!r} is not in the ontology")
        return ref
    for axiom in ontology:
        if axiom == ref:
            return axiom.id
    raise UnknownAxiomError(f"axiom {ref!r} is not in the ontology")


def _require_member_subset(mcs_list: Sequence[Mcs], subset: Iterable[str]) -> frozenset[str]:
    wanted = frozenset(subset)
    if not any(m.id_set() == wanted for m in mcs_list):
        raise UnknownSubsetError(f"{sorted(wanted)} is not one of the enumerated subsets")
    return wanted


def count_mc(ontology: Ontology, mcs_list: Sequence[Mcs], axiom: AxiomRef) -> int:
    """Number of MCSs that contain the axiom."""
    axiom_id = _axiom_id(ontology, axiom)
    return sum(1 for m in mcs_list if axiom_id in m)


def score_sharp_mc_sum(ontology: Ontology, mcs_list: Sequence[Mcs], mcs: Mcs) -> int:
    """Occurrence-count score of an MCS: sum of count_mc over its members."""
    members = _require_member_subset(mcs_list, mcs.ids)
    return sum(count_mc(ontology, mcs_list, axiom_id) for axiom_id in sorted(members))


def agg(mcs: Mcs, axiom: AxiomRef, sim: SimilarityMatrix) -> float:
    """Mean similarity of an axiom to all members of the subset, itself included."""
    axiom_id = axiom if isinstance(axiom, str) else _axiom_id(mcs.ontology, axiom)
    if len(mcs) == 0:
        raise EmptySubsetError("aggregation over the empty subset")
    if axiom_id not in mcs:
        raise NotMemberError(f"axiom {axiom_id!r} is not a member of {list(mcs.ids)}")
    return sum(sim.sim(axiom_id, other) for other in mcs.ids) / len(mcs)


def mc_score(ontology: Ontology, mcs_list: Sequence[Mcs], axiom: AxiomRef,
             sim: SimilarityMatrix) -> float:
    """Reliability of an axiom: sum of agg over exactly the MCSs containing it."""
    axiom_id = _axiom_id(ontology, axiom)
    return sum(agg(m, axiom_id, sim) for m in mcs_list if axiom_id in m)


def mcs_score(ontology: Ontology, mcs_list: Sequence[Mcs], mcs: Mcs,
              sim: SimilarityMatrix) -> float:
    """Score of an MCS: sum of member reliabilities."""
    members = _require_member_subset(mcs_list, mcs.ids)
    if not members:
        raise EmptySubsetError("cannot score the empty MCS")
    return score_subset(ontology, mcs_list, members, sim)


def score_subset(ontology: Ontology, mcs_list: Sequence[Mcs], subset: Iterable[str],
                 sim: SimilarityMatrix) -> float:
    """Sum-aggregated per-axiom score over an arbitrary subset of the ontology."""
    ids = ontology.sort_ids(_axiom_id(ontology, i) for i in subset)
    return sum(mc_score(ontology, mcs_list, axiom_id, sim) for axiom_id in ids)


class Comparison(Enum):
    LEFT = "left"    # first subset strictly preferred
    RIGHT = "right"  # second subset strictly preferred
    TIE = "tie"


def compare(first: Iterable[str], second: Iterable[str],
            scorer: SubsetScorer) -> Comparison:
    """Order two subsets by score; differences within tolerance tie."""
    a, b = scorer(tuple(first)), scorer(tuple(second))
    if abs(a - b) <= TIE_TOLERANCE:
        return Comparison.TIE
    return Comparison.LEFT if a > b else Comparison.RIGHT


def maximal_subsets(candidates: Sequence[Mcs], scorer: SubsetScorer) -> list[Mcs]:
    """Candidates whose score ties the maximum (within tolerance)."""
    if not candidates:
        return []
    scores = [scorer(m.ids) for m in candidates]
    best = max(scores)
    return [m for m, s in zip(candidates, scores) if best - s <= TIE_TOLERANCE]


# -- subset scorer factories: per-axiom scores are computed once up front,
#    then subset scores are plain sums -----------------------------------------


def embedding_scorer(ontology: Ontology, mcs_list: Sequence[Mcs],
                     sim: SimilarityMatrix) -> SubsetScorer:
    reliability = {axiom.id: mc_score(ontology, mcs_list, axiom.id, sim)
                   for axiom in ontology}

    def scorer(subset: Iterable[str]) -> float:
        ids = ontology.sort_ids(_axiom_id(ontology, i) for i in subset)
        return sum(reliability[i] for i in ids)
    return scorer


def sharp_mc_scorer(ontology: Ontology, mcs_list: Sequence[Mcs]) -> SubsetScorer:
    counts = {axiom.id: count_mc(ontology, mcs_list, axiom.id)
              for axiom in ontology}

    def scorer(subset: Iterable[str]) -> float:
        ids = ontology.sort_ids(_axiom_id(ontology, i) for i in subset)
        return float(sum(counts[i] for i in ids))
    return scorer


def cardinality_scorer() -> SubsetScorer:
    def scorer(subset: Iterable[str]) -> float:
        return float(len(tuple(subset)))
    return scorer
