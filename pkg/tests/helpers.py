"""Shared test utilities: fixture texts and a seeded random ontology generator.

The generator emits only constructs the reasoning core fully decides (and the
finite-model oracle can evaluate): named/intersection subsumptions,
disjointness over named concepts, class and property assertions, domain and
range axioms, functional properties, and max-cardinality (0/1) restrictions
on the superclass side or asserted directly.
"""

from __future__ import annotations

import random
from pathlib import Path

from mcsreason.ontology import (
    Axiom,
    ClassAssertion,
    DataPropertyAssertion,
    DataPropertyDomain,
    DisjointClasses,
    EquivalentClasses,
    FunctionalObjectProperty,
    IntersectionOf,
    MaxCardinality,
    Named,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    SubClassOf,
    with_id,
)
from mcsreason.reasoning import is_trivial

DATA_DIR = Path(__file__).parent / "data"

MONUMENT = (DATA_DIR / "monument.ofn").read_text()
BIOPORTAL = (DATA_DIR / "bioportal.ofn").read_text()
DEPARTMENTS = (DATA_DIR / "departments.ofn").read_text()

CONCEPTS = ("A", "B", "C")
ROLES = ("r", "s")
DATA_PROP = "d"
INDIVIDUALS = ("x", "y", "z")
LITERALS = ("v1", "v2")


def _random_named(rng: random.Random) -> Named:
    return Named(rng.choice(CONCEPTS))


def _random_concept(rng: random.Random):
    roll = rng.random()
    if roll < 0.7:
        return _random_named(rng)
    first, second = rng.sample(CONCEPTS, 2)
    return IntersectionOf((Named(first), Named(second)))


def _random_axiom(rng: random.Random) -> Axiom:
    roll = rng.randrange(12)
    if roll == 0:
        return SubClassOf(_random_concept(rng), _random_concept(rng))
    if roll == 1:
        return SubClassOf(_random_named(rng),
                          MaxCardinality(rng.randrange(2), rng.choice(ROLES)))
    if roll == 2:
        return EquivalentClasses(_random_named(rng), _random_named(rng))
    if roll == 3:
        return DisjointClasses(_random_named(rng), _random_named(rng))
    if roll in (4, 5):
        return ClassAssertion(_random_concept(rng), rng.choice(INDIVIDUALS))
    if roll == 6:
        return ClassAssertion(MaxCardinality(rng.randrange(2), rng.choice(ROLES)),
                              rng.choice(INDIVIDUALS))
    if roll in (7, 8):
        return ObjectPropertyAssertion(rng.choice(ROLES), rng.choice(INDIVIDUALS),
                                       rng.choice(INDIVIDUALS))
    if roll == 9:
        return DataPropertyAssertion(DATA_PROP, rng.choice(INDIVIDUALS),
                                     rng.choice(LITERALS))
    if roll == 10:
        kind = rng.randrange(3)
        if kind == 0:
            return ObjectPropertyDomain(rng.choice(ROLES), _random_named(rng))
        if kind == 1:
            return ObjectPropertyRange(rng.choice(ROLES), _random_named(rng))
        return DataPropertyDomain(DATA_PROP, _random_named(rng))
    return FunctionalObjectProperty(rng.choice(ROLES))


def random_ontology(seed: int, max_axioms: int = 8) -> Ontology:
    """Seeded random core-fragment ontology with non-trivial, distinct axioms."""
    rng = random.Random(seed)
    size = rng.randint(1, max_axioms)
    axioms: list[Axiom] = []
    seen: set[Axiom] = set()
    attempts = 0
    while len(axioms) < size and attempts < 200:
        attempts += 1
        candidate = _random_axiom(rng)
        if candidate in seen or is_trivial(candidate):
            continue
        seen.add(candidate)
        axioms.append(with_id(candidate, f"a{len(axioms) + 1}"))
    return Ontology(axioms)
