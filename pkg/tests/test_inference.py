"""Preferred-MCS selection and query answering tests.

The Monument embedding cases use hand-crafted two-dimensional vectors whose
angles fix the similarity structure; the expected argmax MCS is recomputed
here with direct loops over the scoring definitions, independent of the
scoring module.
"""

import math

import numpy as np
import pytest

from mcsreason import (
    Method,
    answer_query,
    entails,
    enumerate_mcs,
    enumerate_mcs_with,
    hash_embed,
    infers,
    parse_axiom,
    preferred_mcs,
    similarity_matrix,
    to_sentences,
)
from mcsreason.embedding import AxiomEmbedding
from mcsreason.errors import MissingAxiomError, TrivialAxiomError
from mcsreason.inference import ACCEPTED, REJECTED, UNDETERMINED

import helpers

PROBE = parse_axiom("ClassAssertion(ProbeConcept probe_individual)")
MONUMENT_QUERY = parse_axiom("ClassAssertion(ExistingObjectType Monument)")


def _angle_embedding(degrees_by_id):
    vectors = {}
    for axiom_id, degrees in degrees_by_id.items():
        theta = math.radians(degrees)
        vectors[axiom_id] = np.array([math.cos(theta), math.sin(theta)])
    return AxiomEmbedding(vectors, 2, "import")


#: Angles that make a3 (the disjointness axiom) the semantic outlier, so the
#: top-scored MCS is the one omitting it.
OUTLIER_A3 = {"a1": 0.0, "a4": 15.0, "a2": 30.0, "a3": 135.0}
#: Angles that make a2 the outlier instead.
OUTLIER_A2 = {"a1": 0.0, "a4": 15.0, "a3": 30.0, "a2": 135.0}


def _expected_argmax(ontology, embedding, metric="cos"):
    """Direct computation of the highest-scoring MCS from the definitions."""
    sim = similarity_matrix(embedding, metric)
    mcs_list = enumerate_mcs(ontology)

    def agg_direct(member_ids, axiom_id):
        return sum(sim.sim(axiom_id, other) for other in member_ids) / len(member_ids)

    def mc_direct(axiom_id):
        return sum(agg_direct(m.ids, axiom_id) for m in mcs_list if axiom_id in m.ids)

    scores = {m.ids: sum(mc_direct(i) for i in m.ids) for m in mcs_list}
    best = max(scores.values())
    return {ids for ids, score in scores.items() if best - score <= 1e-12}


class TestPreferredSelection:
    def test_sharp_mc_keeps_all_tied_monument(self, monument):
        preferred = preferred_mcs(monument, PROBE, Method.sharp_mc())
        assert {m.id_set() for m in preferred} == \
            {m.id_set() for m in enumerate_mcs_with(monument, PROBE)}
        assert len(preferred) == 4

    def test_consistent_ontology_every_method(self, departments):
        embedding = hash_embed(to_sentences(departments), dim=64, seed=0)
        for method in (Method.skeptical(), Method.cmcs(), Method.sharp_mc(),
                       Method.embedding_based(embedding)):
            preferred = preferred_mcs(departments, PROBE, method)
            assert [m.id_set() for m in preferred] == [frozenset(departments.ids())]

    def test_embedding_argmax_monument(self, monument):
        embedding = _angle_embedding(OUTLIER_A3)
        assert _expected_argmax(monument, embedding) == {("a1", "a2", "a4")}
        preferred = preferred_mcs(monument, PROBE, Method.embedding_based(embedding))
        assert [m.ids for m in preferred] == [("a1", "a2", "a4")]

    def test_cmcs_selects_uniform_cardinality(self, monument):
        probe = parse_axiom("ClassAssertion(ExistingStuffType OtherThing)")
        preferred = preferred_mcs(monument, probe, Method.cmcs())
        assert len({len(m.ids) for m in preferred}) == 1

    def test_preferred_subset_of_candidates_and_ties(self, monument):
        embedding = _angle_embedding(OUTLIER_A3)
        method = Method.embedding_based(embedding)
        candidates = {m.ids for m in enumerate_mcs_with(monument, PROBE)}
        preferred = preferred_mcs(monument, PROBE, method)
        assert preferred
        assert {m.ids for m in preferred} <= candidates

    def test_preferred_tie_within_tolerance_excluded_strictly_lower(self, monument):
        # Preferred members tie at the maximum; every excluded candidate
        # scores strictly lower.
        from mcsreason.mcs import enumerate_mcs
        from mcsreason.scoring import embedding_scorer

        for angles in (OUTLIER_A3, OUTLIER_A2,
                       {"a1": 0.0, "a2": 0.0, "a3": 0.0, "a4": 0.0}):
            embedding = _angle_embedding(angles)
            method = Method.embedding_based(embedding)
            candidates = enumerate_mcs_with(monument, PROBE)
            preferred = {m.ids for m in preferred_mcs(monument, PROBE, method)}
            scorer = embedding_scorer(
                monument, enumerate_mcs(monument),
                similarity_matrix(embedding, "cos"))
            scores = {m.ids: scorer(m.ids) for m in candidates}
            best = max(scores.values())
            for ids, score in scores.items():
                if ids in preferred:
                    assert best - score <= 1e-12
                else:
                    assert score < best - 1e-12

    def test_trivial_alpha_rejected(self, monument):
        with pytest.raises(TrivialAxiomError):
            preferred_mcs(monument, parse_axiom("SubClassOf(A A)"), Method.skeptical())

    def test_incomplete_embedding_rejected(self, monument):
        embedding = _angle_embedding({"a1": 0.0, "a2": 10.0, "a3": 20.0})
        with pytest.raises(MissingAxiomError):
            preferred_mcs(monument, PROBE, Method.embedding_based(embedding))

    def test_budget_errors_propagate(self, monument):
        from mcsreason.errors import BudgetExceededError

        with pytest.raises(BudgetExceededError):
            preferred_mcs(monument, PROBE, Method.skeptical(), max_oracle_calls=2)


class TestInfers:
    def test_reflexivity_all_methods(self, monument, bioportal, departments):
        embeddings = {
            ontology: hash_embed(to_sentences(ontology), dim=64, seed=0)
            for ontology in (monument, bioportal, departments)}
        for ontology, embedding in embeddings.items():
            methods = (Method.skeptical(), Method.cmcs(), Method.sharp_mc(),
                       Method.embedding_based(embedding))
            for axiom in ontology:
                for method in methods:
                    assert infers(ontology, axiom, axiom, method), (
                        f"{axiom.id} via {method.kind}")

    def test_skeptical_rejects_monument_chain(self, monument):
        # The MCS without a1 does not entail the conclusion.
        assert not infers(monument, PROBE, MONUMENT_QUERY, Method.skeptical())

    def test_embedding_accepts_monument_chain(self, monument):
        method = Method.embedding_based(_angle_embedding(OUTLIER_A3))
        assert infers(monument, PROBE, MONUMENT_QUERY, method)
        # Independent check: the single preferred MCS entails the query.
        preferred = preferred_mcs(monument, PROBE, method)
        assert all(entails(list(m.axioms()) + [PROBE], MONUMENT_QUERY)
                   for m in preferred)

    def test_alpha_participates_in_entailment(self, monument):
        alpha = parse_axiom("SubClassOf(ExistingObjectType LandmarkKind)")
        beta = parse_axiom("ClassAssertion(LandmarkKind Monument)")
        method = Method.embedding_based(_angle_embedding(OUTLIER_A3))
        assert infers(monument, alpha, beta, method)


class TestAnswerQuery:
    def test_monument_skeptical_undetermined(self, monument):
        answer = answer_query(monument, MONUMENT_QUERY, Method.skeptical())
        assert answer.verdict == UNDETERMINED
        assert len(answer.preferred) == 4

    def test_monument_embedding_accepted(self, monument):
        method = Method.embedding_based(_angle_embedding(OUTLIER_A3))
        answer = answer_query(monument, MONUMENT_QUERY, method)
        assert answer.verdict == ACCEPTED
        assert [m.ids for m in answer.preferred] == [("a1", "a2", "a4")]

    def test_monument_rejected_when_query_clashes(self, monument):
        embedding = _angle_embedding(OUTLIER_A2)
        assert _expected_argmax(monument, embedding) == {("a1", "a3", "a4")}
        method = Method.embedding_based(embedding)
        query = parse_axiom("ClassAssertion(ExistingStuffType Monument)")
        answer = answer_query(monument, query, method)
        assert answer.verdict == REJECTED

    def test_records_are_exclusive(self, monument):
        for method in (Method.skeptical(), Method.cmcs()):
            answer = answer_query(monument, MONUMENT_QUERY, method)
            for record in answer.records:
                assert not (record.entailed and record.contradicted)

    def test_verdict_trichotomy_random(self):
        for seed in range(25):
            ontology = helpers.random_ontology(seed, max_axioms=5)
            if len(ontology) == 0:
                continue
            query = parse_axiom("ClassAssertion(A x)")
            answer = answer_query(ontology, query, Method.skeptical())
            assert answer.verdict in (ACCEPTED, REJECTED, UNDETERMINED)

    def test_skeptical_refinement(self):
        # Whatever skeptical inference accepts, every preferring method
        # accepts as well: preferred families are subsets of all MCSs.
        for seed in range(25):
            ontology = helpers.random_ontology(seed, max_axioms=5)
            if len(ontology) == 0:
                continue
            embedding = hash_embed(to_sentences(ontology), dim=64, seed=1)
            queries = [parse_axiom(f"ClassAssertion({c} {i})")
                       for c in ("A", "B") for i in ("x", "y")]
            for query in queries:
                skeptical = answer_query(ontology, query, Method.skeptical())
                if skeptical.verdict != ACCEPTED:
                    continue
                for method in (Method.cmcs(), Method.sharp_mc(),
                               Method.embedding_based(embedding)):
                    assert answer_query(ontology, query, method).verdict == ACCEPTED

    def test_empty_ontology_tautology_free_query(self):
        from mcsreason import parse_ontology

        empty = parse_ontology("")
        answer = answer_query(empty, parse_axiom("ClassAssertion(A x)"), Method.skeptical())
        assert answer.verdict == UNDETERMINED
