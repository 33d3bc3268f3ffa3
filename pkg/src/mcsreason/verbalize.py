"""Axiom-to-sentence and axiom-to-triple translation.

Sentences follow fixed phrase templates applied recursively over concept
expressions; identifier names are split on camel-case, underscores, and
hyphens into space-separated lowercase words (digits stay attached, so
``product145`` survives intact). Triples keep raw names and serialize complex
concept operands opaquely as functional-syntax text. The deliberately rough
grammar of some outputs ("is a made from at most one Grape") is the contract,
not a bug.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import UntranslatableError
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
)
from .syntax import render_concept


@dataclass(frozen=True)
class Sentence:
    axiom_id: str
    text: str


@dataclass(frozen=True)
class Triple:
    subject: str
    relation: str
    object: str

    def __post_init__(self) -> None:
        if not (self.subject and self.relation and self.object):
            raise ValueError("triple components must be non-empty")


_CAMEL_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*|[0-9]+|[a-z][a-z0-9]*")


def _local_part(name: str) -> str:
    if "://" in name:
        for sep in ("#", "/"):
            if sep in name:
                tail = name.rsplit(sep, 1)[1]
                if tail:
                    return tail
        return name
    if ":" in name:
        return name.split(":", 1)[1]
    return name


def identifier_tokens(name: str) -> list[str]:
    """Case-preserving word tokens of an identifier."""
    tokens: list[str] = []
    for chunk in re.split(r"[_\-\s]+", _local_part(name)):
        tokens.extend(_CAMEL_RE.findall(chunk))
    return tokens or [name]


def name_words(name: str) -> str:
    """Identifier as space-separated lowercase words."""
    return " ".join(t.lower() for t in identifier_tokens(name))


def _number_word(n: int) -> str:
    return "one" if n == 1 else str(n)


def _cardinality_phrase(kind: str, concept) -> str:
    """Phrase for a cardinality restriction.

    For unqualified restrictions whose property name ends in a capitalized
    noun (``madeFromGrape``), the trailing word acts as the filler class and
    keeps its original case.
    """
    tokens = identifier_tokens(concept.prop)
    count = _number_word(concept.n)
    if concept.filler is not None:
        return f"{name_words(concept.prop)} {kind} {count} {concept_phrase(concept.filler)}"
    if len(tokens) >= 2 and tokens[-1][0].isupper():
        prop_words = " ".join(t.lower() for t in tokens[:-1])
        return f"{prop_words} {kind} {count} {tokens[-1]}"
    return f"{name_words(concept.prop)} {kind} {count}"


def concept_phrase(concept: ConceptExpr) -> str:
    if isinstance(concept, Named):
        return name_words(concept.name)
    if isinstance(concept, IntersectionOf):
        return " and ".join(concept_phrase(op) for op in concept.operands)
    if isinstance(concept, UnionOf):
        return " or ".join(concept_phrase(op) for op in concept.operands)
    if isinstance(concept, SomeValuesFrom):
        return f"{name_words(concept.role)} at least one {concept_phrase(concept.filler)}"
    if isinstance(concept, AllValuesFrom):
        return f"{name_words(concept.role)} only {concept_phrase(concept.filler)}"
    if isinstance(concept, HasValue):
        return f"{name_words(concept.role)} {name_words(concept.individual)}"
    if isinstance(concept, ExactCardinality):
        return _cardinality_phrase("exactly", concept)
    if isinstance(concept, MinCardinality):
        return _cardinality_phrase("at least", concept)
    if isinstance(concept, MaxCardinality):
        return _cardinality_phrase("at most", concept)
    raise TypeError(f"not a concept expression: {concept!r}")


def to_sentence(axiom: Axiom) -> Sentence:
    """Natural-language rendering of an axiom. Deterministic per structure."""
    if isinstance(axiom, SubClassOf):
        text = f"{concept_phrase(axiom.sub)} is a kind of {concept_phrase(axiom.sup)}"
    elif isinstance(axiom, EquivalentClasses):
        text = f"{concept_phrase(axiom.left)} is a kind of {concept_phrase(axiom.right)}"
    elif isinstance(axiom, DisjointClasses):
        text = f"{concept_phrase(axiom.left)} isn't a kind of {concept_phrase(axiom.right)}"
    elif isinstance(axiom, ClassAssertion):
        text = f"{name_words(axiom.individual)} is a {concept_phrase(axiom.concept)}"
    elif isinstance(axiom, ObjectPropertyAssertion):
        text = f"{name_words(axiom.subject)} {name_words(axiom.prop)} {name_words(axiom.object)}"
    elif isinstance(axiom, DataPropertyAssertion):
        text = f"{name_words(axiom.subject)} {name_words(axiom.prop)} {axiom.value}"
    elif isinstance(axiom, (ObjectPropertyDomain, DataPropertyDomain)):
        text = (f"everything that {name_words(axiom.prop)} something "
                f"is a {concept_phrase(axiom.concept)}")
    elif isinstance(axiom, ObjectPropertyRange):
        text = (f"everything that is {name_words(axiom.prop)} by something "
                f"is a {concept_phrase(axiom.concept)}")
    elif isinstance(axiom, FunctionalObjectProperty):
        text = f"{name_words(axiom.prop)} has at most one value"
    else:
        raise UntranslatableError(f"no sentence template for {type(axiom).__name__}")
    return Sentence(axiom.id, text)


def _concept_term(concept: ConceptExpr) -> str:
    """Triple component for a concept operand: raw name, or opaque text."""
    if isinstance(concept, Named):
        return concept.name
    return render_concept(concept)


def to_triple(axiom: Axiom) -> Optional[Triple]:
    """Triple form of an axiom, or None where no triple rule exists."""
    if isinstance(axiom, SubClassOf):
        return Triple(_concept_term(axiom.sub), "SubClassOf", _concept_term(axiom.sup))
    if isinstance(axiom, DisjointClasses):
        return Triple(_concept_term(axiom.left), "Disjointness", _concept_term(axiom.right))
    if isinstance(axiom, EquivalentClasses):
        return Triple(_concept_term(axiom.left), "EquivalentClasses", _concept_term(axiom.right))
    if isinstance(axiom, ClassAssertion):
        return Triple(axiom.individual, "isInstanceOf", _concept_term(axiom.concept))
    if isinstance(axiom, ObjectPropertyAssertion):
        return Triple(axiom.subject, axiom.prop, axiom.object)
    if isinstance(axiom, DataPropertyAssertion):
        return Triple(axiom.subject, axiom.prop, axiom.value)
    return None


def to_sentences(ontology: Ontology) -> list[Sentence]:
    return [to_sentence(a) for a in ontology]


def to_triples(ontology: Ontology) -> dict[str, Optional[Triple]]:
    """Triple per axiom id; None marks unrepresentable axioms."""
    return {a.id: to_triple(a) for a in ontology}
