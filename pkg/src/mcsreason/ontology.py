"""Data model for the supported ontology fragment.

Concept expressions and axioms are immutable dataclasses. Axiom equality is
structural: the ``id`` and ``injected`` fields never participate in ``==`` or
``hash``, so two axioms with the same shape compare equal regardless of where
they came from. An :class:`Ontology` is an ordered collection of structurally
distinct axioms with unique ids plus cached signature sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional, Union

#: Names that denote the universal concept for individuals or data values.
TOP_CONCEPT_NAMES = frozenset({"owl:Thing", "rdfs:Literal"})


# ---------------------------------------------------------------------------
# Concept expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Named:
    """Atomic concept referenced by name."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("concept name must be non-empty")


@dataclass(frozen=True)
class IntersectionOf:
    operands: tuple["ConceptExpr", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("IntersectionOf needs at least 2 operands")


@dataclass(frozen=True)
class UnionOf:
    operands: tuple["ConceptExpr", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("UnionOf needs at least 2 operands")


@dataclass(frozen=True)
class SomeValuesFrom:
    role: str
    filler: "ConceptExpr"


@dataclass(frozen=True)
class AllValuesFrom:
    role: str
    filler: "ConceptExpr"


@dataclass(frozen=True)
class HasValue:
    role: str
    individual: str


def _check_cardinality(n: int) -> None:
    if n < 0:
        raise ValueError("cardinality must be non-negative")


@dataclass(frozen=True)
class ExactCardinality:
    n: int
    prop: str
    filler: Optional["ConceptExpr"] = None
    data: bool = False  # written with the Data* spelling

    def __post_init__(self) -> None:
        _check_cardinality(self.n)


@dataclass(frozen=True)
class MinCardinality:
    n: int
    prop: str
    filler: Optional["ConceptExpr"] = None
    data: bool = False

    def __post_init__(self) -> None:
        _check_cardinality(self.n)


@dataclass(frozen=True)
class MaxCardinality:
    n: int
    prop: str
    filler: Optional["ConceptExpr"] = None
    data: bool = False

    def __post_init__(self) -> None:
        _check_cardinality(self.n)


ConceptExpr = Union[
    Named,
    IntersectionOf,
    UnionOf,
    SomeValuesFrom,
    AllValuesFrom,
    HasValue,
    ExactCardinality,
    MinCardinality,
    MaxCardinality,
]

CARDINALITY_TYPES = (ExactCardinality, MinCardinality, MaxCardinality)


def is_top(concept: ConceptExpr) -> bool:
    return isinstance(concept, Named) and concept.name in TOP_CONCEPT_NAMES


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubClassOf:
    sub: ConceptExpr
    sup: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class EquivalentClasses:
    left: ConceptExpr
    right: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class DisjointClasses:
    left: ConceptExpr
    right: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class ClassAssertion:
    concept: ConceptExpr
    individual: str
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class ObjectPropertyAssertion:
    prop: str
    subject: str
    object: str
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class DataPropertyAssertion:
    prop: str
    subject: str
    value: str
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class ObjectPropertyDomain:
    prop: str
    concept: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class ObjectPropertyRange:
    prop: str
    concept: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class DataPropertyDomain:
    prop: str
    concept: ConceptExpr
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class FunctionalObjectProperty:
    prop: str
    id: str = field(default="", compare=False)
    injected: bool = field(default=False, compare=False)


Axiom = Union[
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    ClassAssertion,
    ObjectPropertyAssertion,
    DataPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    DataPropertyDomain,
    FunctionalObjectProperty,
]

AXIOM_TYPES = Axiom.__args__  # type: ignore[attr-defined]


def with_id(axiom: Axiom, new_id: str) -> Axiom:
    return replace(axiom, id=new_id)


def mark_injected(axiom: Axiom) -> Axiom:
    return replace(axiom, injected=True)


def concepts_of(axiom: Axiom) -> tuple[ConceptExpr, ...]:
    """Top-level concept expressions appearing in an axiom."""
    if isinstance(axiom, SubClassOf):
        return (axiom.sub, axiom.sup)
    if isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        return (axiom.left, axiom.right)
    if isinstance(axiom, ClassAssertion):
        return (axiom.concept,)
    if isinstance(axiom, (ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain)):
        return (axiom.concept,)
    return ()


def walk_concepts(concept: ConceptExpr) -> Iterator[ConceptExpr]:
    """Yield a concept expression and all of its sub-expressions."""
    yield concept
    if isinstance(concept, (IntersectionOf, UnionOf)):
        for op in concept.operands:
            yield from walk_concepts(op)
    elif isinstance(concept, (SomeValuesFrom, AllValuesFrom)):
        yield from walk_concepts(concept.filler)
    elif isinstance(concept, CARDINALITY_TYPES):
        if concept.filler is not None:
            yield from walk_concepts(concept.filler)


# ---------------------------------------------------------------------------
# Ontology
# ---------------------------------------------------------------------------


class Ontology:
    """Ordered, immutable collection of structurally distinct axioms.

    Raises ``ValueError`` on duplicate ids or structurally identical axioms.
    """

    def __init__(self, axioms: Iterable[Axiom]):
        self.axioms: tuple[Axiom, ...] = tuple(axioms)
        self._by_id: dict[str, Axiom] = {}
        self._position: dict[str, int] = {}
        seen: set[Axiom] = set()
        for pos, axiom in enumerate(self.axioms):
            if not axiom.id:
                raise ValueError("ontology axioms need non-empty ids")
            if axiom.id in self._by_id:
                raise ValueError(f"duplicate axiom id {axiom.id!r}")
            if axiom in seen:
                raise ValueError(f"structurally duplicate axiom {axiom.id!r}")
            seen.add(axiom)
            self._by_id[axiom.id] = axiom
            self._position[axiom.id] = pos
        self.concept_names = frozenset(self._collect_concept_names())
        self.object_property_names = frozenset(self._collect_object_properties())
        self.data_property_names = frozenset(self._collect_data_properties())
        self.individual_names = frozenset(self._collect_individuals())

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __contains__(self, axiom: Axiom) -> bool:
        return any(axiom == a for a in self.axioms)

    def axiom(self, axiom_id: str) -> Axiom:
        try:
            return self._by_id[axiom_id]
        except KeyError:
            raise KeyError(f"unknown axiom id {axiom_id!r}") from None

    def has_id(self, axiom_id: str) -> bool:
        return axiom_id in self._by_id

    def position(self, axiom_id: str) -> int:
        return self._position[axiom_id]

    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.axioms)

    def subset(self, ids: Iterable[str]) -> tuple[Axiom, ...]:
        """Axioms with the given ids, in ontology order."""
        wanted = set(ids)
        return tuple(a for a in self.axioms if a.id in wanted)

    def sort_ids(self, ids: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(ids, key=self._position.__getitem__))

    def _collect_concept_names(self) -> set[str]:
        names: set[str] = set()
        for axiom in self.axioms:
            for top in concepts_of(axiom):
                for c in walk_concepts(top):
                    if isinstance(c, Named):
                        names.add(c.name)
        return names

    def _collect_object_properties(self) -> set[str]:
        props: set[str] = set()
        for axiom in self.axioms:
            if isinstance(axiom, (ObjectPropertyAssertion, ObjectPropertyDomain,
                                  ObjectPropertyRange, FunctionalObjectProperty)):
                props.add(axiom.prop)
            for top in concepts_of(axiom):
                for c in walk_concepts(top):
                    if isinstance(c, (SomeValuesFrom, AllValuesFrom)):
                        props.add(c.role)
                    elif isinstance(c, HasValue):
                        props.add(c.role)
                    elif isinstance(c, CARDINALITY_TYPES) and not c.data:
                        props.add(c.prop)
        return props

    def _collect_data_properties(self) -> set[str]:
        props: set[str] = set()
        for axiom in self.axioms:
            if isinstance(axiom, (DataPropertyAssertion, DataPropertyDomain)):
                props.add(axiom.prop)
            for top in concepts_of(axiom):
                for c in walk_concepts(top):
                    if isinstance(c, CARDINALITY_TYPES) and c.data:
                        props.add(c.prop)
        return props

    def _collect_individuals(self) -> set[str]:
        names: set[str] = set()
        for axiom in self.axioms:
            if isinstance(axiom, ClassAssertion):
                names.add(axiom.individual)
            elif isinstance(axiom, ObjectPropertyAssertion):
                names.add(axiom.subject)
                names.add(axiom.object)
            elif isinstance(axiom, DataPropertyAssertion):
                names.add(axiom.subject)
            for top in concepts_of(axiom):
                for c in walk_concepts(top):
                    if isinstance(c, HasValue):
                        names.add(c.individual)
        return names
