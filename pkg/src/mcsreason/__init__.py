"""Reasoning with inconsistent ontologies via embedding-scored maximal
consistent sub-ontologies."""

from .ontology import (
    AllValuesFrom,
    Axiom,
    ClassAssertion,
    ConceptExpr,
    DataPropertyAssertion,
    DataPropertyDomain,
    DisjointClasses,
    EquivalentClasses,
    ExactCardinality,
    FunctionalObjectProperty,
    HasValue,
    IntersectionOf,
    MaxCardinality,
    MinCardinality,
    Named,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
    with_id,
)
from .embedding import (
    AxiomEmbedding,
    SimilarityMatrix,
    TransEConfig,
    hash_embed,
    import_vectors,
    sim_cos,
    sim_euc,
    similarity_matrix,
    train_transe,
)
from .harness import classify_answer, evaluate, GoldRecord, inject_conflicts
from .inference import Method, QueryAnswer, answer_query, infers, preferred_mcs
from .mcs import Mcs, brute_force_mcs, enumerate_mcs, enumerate_mcs_with
from .reasoning import ClashReport, check_consistency, entails, is_consistent, is_trivial
from .scoring import agg, compare, count_mc, mc_score, mcs_score, score_sharp_mc_sum, score_subset
from .syntax import parse_axiom, parse_ontology, render_axiom, render_concept, render_ontology
from .verbalize import Sentence, Triple, to_sentence, to_sentences, to_triple, to_triples

__all__ = [
    "AllValuesFrom", "Axiom", "AxiomEmbedding", "ClassAssertion", "ClashReport",
    "ConceptExpr", "DataPropertyAssertion", "DataPropertyDomain",
    "DisjointClasses", "EquivalentClasses", "ExactCardinality",
    "FunctionalObjectProperty", "GoldRecord", "HasValue", "IntersectionOf",
    "MaxCardinality", "Mcs", "Method", "MinCardinality", "Named",
    "ObjectPropertyAssertion", "ObjectPropertyDomain", "ObjectPropertyRange",
    "Ontology", "QueryAnswer", "Sentence", "SimilarityMatrix", "SomeValuesFrom",
    "SubClassOf", "TransEConfig", "Triple", "UnionOf",
    "agg", "answer_query", "brute_force_mcs", "check_consistency",
    "classify_answer", "compare", "count_mc", "entails", "enumerate_mcs",
    "enumerate_mcs_with", "evaluate", "hash_embed", "import_vectors", "infers",
    "inject_conflicts", "is_consistent", "is_trivial", "mc_score", "mcs_score",
    "parse_axiom", "parse_ontology", "preferred_mcs", "render_axiom",
    "render_concept", "render_ontology", "score_sharp_mc_sum", "score_subset",
    "sim_cos", "sim_euc", "similarity_matrix", "to_sentence", "to_sentences",
    "to_triple", "to_triples", "train_transe", "with_id",
]

__version__ = "0.1.0"
