"""Conflict injection and the answer-quality evaluation protocol.

The injector adds instance assertions that violate functional-property or
disjointness constraints already present in a consistent ontology: one
injection, one minimal conflict. Evaluation compares method verdicts against
a hand-crafted gold standard and buckets each query as intended (IA),
cautious (CA), reckless (RA), or counter-intuitive (CIA); the ICR rate is the
fraction that is not counter-intuitive.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError, GoldMismatchError, NoConflictTargetsError
from .inference import UNDETERMINED, VERDICTS
from .mcs import enumerate_minimal_conflicts
from .ontology import (
    Axiom,
    ClassAssertion,
    ConceptExpr,
    DataPropertyAssertion,
    DisjointClasses,
    FunctionalObjectProperty,
    Named,
    ObjectPropertyAssertion,
    Ontology,
    SubClassOf,
    mark_injected,
    walk_concepts,
    with_id,
)
from .reasoning import Saturation, is_consistent
from .syntax import render_axiom

IA = "IA"
CA = "CA"
RA = "RA"
CIA = "CIA"

#: Sampling weight multiplier for symbols involved in a minimal conflict.
CONFLICT_SYMBOL_WEIGHT = 3


# ---------------------------------------------------------------------------
# Conflict injection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Target:
    kind: str  # "functional" | "disjoint"
    subject: str
    prop: str = ""
    left: Optional[ConceptExpr] = None
    right: Optional[ConceptExpr] = None


def _collect_targets(ontology: Ontology, sat: Saturation) -> list[_Target]:
    targets: list[_Target] = []
    used_subjects: set[tuple[str, str]] = set()
    for axiom in ontology:
        if isinstance(axiom, FunctionalObjectProperty):
            for other in ontology:
                if (isinstance(other, ObjectPropertyAssertion)
                        and other.prop == axiom.prop
                        and (axiom.prop, other.subject) not in used_subjects):
                    used_subjects.add((axiom.prop, other.subject))
                    targets.append(_Target("functional", other.subject, prop=axiom.prop))
        elif isinstance(axiom, DisjointClasses):
            for individual in sorted(ontology.individual_names):
                targets.append(_Target("disjoint", individual,
                                       left=axiom.left, right=axiom.right))
    return targets


def inject_conflicts(ontology: Ontology, n: int, seed: int = 0) -> Ontology:
    """Return the ontology plus assertions forming exactly ``n`` fresh conflicts.

    A functional target gains a second, distinct filler for an existing
    subject; a disjointness target puts an existing individual in both
    disjoint classes (one assertion suffices when it is already derivably in
    one side). Injected axioms carry the ``injected`` flag. Deterministic
    under the seed.
    """
    if n < 0:
        raise DomainError("conflict count must be non-negative")
    if not is_consistent(ontology.axioms):
        raise DomainError("conflict injection needs a consistent ontology")
    has_anchor = any(isinstance(a, (FunctionalObjectProperty, DisjointClasses))
                     for a in ontology)
    if not has_anchor:
        raise NoConflictTargetsError(
            "ontology has no functional-property or disjointness axioms")
    if n == 0:
        return Ontology(ontology.axioms)

    sat = Saturation(list(ontology.axioms))
    targets = _collect_targets(ontology, sat)
    # One target per individual keeps injected conflicts independent.
    rng = random.Random(seed)
    rng.shuffle(targets)
    chosen: list[_Target] = []
    used_individuals: set[str] = set()
    for target in targets:
        if len(chosen) == n:
            break
        if target.subject in used_individuals:
            continue
        used_individuals.add(target.subject)
        chosen.append(target)
    if len(chosen) < n:
        raise NoConflictTargetsError(
            f"only {len(chosen)} independent conflict targets available, need {n}")

    new_axioms: list[Axiom] = []
    next_id = len(ontology) + 1
    fresh_counter = 1

    def fresh_individual() -> str:
        nonlocal fresh_counter
        while True:
            name = f"injected_{fresh_counter}"
            fresh_counter += 1
            if name not in ontology.individual_names:
                return name

    def add(axiom: Axiom) -> None:
        nonlocal next_id
        new_axioms.append(mark_injected(with_id(axiom, f"a{next_id}")))
        next_id += 1

    for target in chosen:
        if target.kind == "functional":
            add(ObjectPropertyAssertion(target.prop, target.subject, fresh_individual()))
        else:
            assert target.left is not None and target.right is not None
            if not sat.holds(target.subject, target.left):
                add(ClassAssertion(target.left, target.subject))
            if not sat.holds(target.subject, target.right):
                add(ClassAssertion(target.right, target.subject))
    return Ontology(ontology.axioms + tuple(new_axioms))


def injected_ids(ontology: Ontology) -> tuple[str, ...]:
    return tuple(a.id for a in ontology if a.injected)


def strip_injected(ontology: Ontology) -> Ontology:
    return Ontology(tuple(a for a in ontology if not a.injected))


# ---------------------------------------------------------------------------
# Query generation
# ---------------------------------------------------------------------------


def _axiom_symbols(axiom: Axiom) -> set[str]:
    from .ontology import concepts_of

    symbols: set[str] = set()
    for top in concepts_of(axiom):
        for c in walk_concepts(top):
            if isinstance(c, Named):
                symbols.add(c.name)
    if isinstance(axiom, ClassAssertion):
        symbols.add(axiom.individual)
    elif isinstance(axiom, ObjectPropertyAssertion):
        symbols.update((axiom.subject, axiom.object, axiom.prop))
    elif isinstance(axiom, DataPropertyAssertion):
        symbols.update((axiom.subject, axiom.prop))
    return symbols


def generate_queries(ontology: Ontology, count: int, seed: int = 0) -> list[str]:
    """Random instance/subclass queries over the ontology's signature.

    Symbols that occur in a minimal conflict are sampled with
    :data:`CONFLICT_SYMBOL_WEIGHT` times the weight of other symbols, biasing
    queries toward the inconsistent part of the ontology.
    """
    concepts = sorted(ontology.concept_names)
    individuals = sorted(ontology.individual_names)
    if not concepts:
        return []
    conflict_symbols: set[str] = set()
    if not is_consistent(ontology.axioms):
        for conflict in enumerate_minimal_conflicts(ontology):
            for axiom_id in conflict:
                conflict_symbols |= _axiom_symbols(ontology.axiom(axiom_id))

    def weight(symbol: str) -> int:
        return CONFLICT_SYMBOL_WEIGHT if symbol in conflict_symbols else 1

    rng = random.Random(seed)
    queries: list[str] = []
    seen: set[str] = set()
    attempts = 0
    while len(queries) < count and attempts < count * 50:
        attempts += 1
        if individuals and rng.random() < 0.5:
            individual = rng.choices(individuals, [weight(i) for i in individuals])[0]
            concept = rng.choices(concepts, [weight(c) for c in concepts])[0]
            text = render_axiom(ClassAssertion(Named(concept), individual))
        else:
            sub = rng.choices(concepts, [weight(c) for c in concepts])[0]
            sups = [c for c in concepts if c != sub]
            if not sups:
                continue
            sup = rng.choices(sups, [weight(c) for c in sups])[0]
            text = render_axiom(SubClassOf(Named(sub), Named(sup)))
        if text not in seen:
            seen.add(text)
            queries.append(text)
    return queries


# ---------------------------------------------------------------------------
# Gold standard and evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldRecord:
    query_id: str
    query_text: str
    verdict: str

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise DomainError(f"gold verdict must be one of {VERDICTS}, got {self.verdict!r}")


@dataclass(frozen=True)
class EvalReport:
    ia: int
    ca: int
    ra: int
    cia: int

    @property
    def total(self) -> int:
        return self.ia + self.ca + self.ra + self.cia

    @property
    def ia_rate(self) -> float:
        """Fraction of intended answers, full precision."""
        return self.ia / self.total if self.total else 0.0

    @property
    def icr_rate(self) -> float:
        """Fraction of answers that are not counter-intuitive, full precision."""
        return (self.ia + self.ca + self.ra) / self.total if self.total else 0.0

    def to_json_dict(self) -> dict:
        """Presentation form: rates as percentages rounded to 2 decimals."""
        return {
            "ia": self.ia, "ca": self.ca, "ra": self.ra, "cia": self.cia,
            "total": self.total,
            "ia_rate": round(100.0 * self.ia_rate, 2),
            "icr_rate": round(100.0 * self.icr_rate, 2),
        }


def classify_answer(method_verdict: str, gold_verdict: str) -> str:
    """Bucket one (method, gold) verdict pair; total over the 3x3 grid."""
    for verdict in (method_verdict, gold_verdict):
        if verdict not in VERDICTS:
            raise DomainError(f"verdict must be one of {VERDICTS}, got {verdict!r}")
    if method_verdict == gold_verdict:
        return IA
    if method_verdict == UNDETERMINED:
        return CA
    if gold_verdict == UNDETERMINED:
        return RA
    return CIA


def evaluate(answers: Iterable[tuple[str, str]], gold: Sequence[GoldRecord]) -> EvalReport:
    """Classify every answered query against the gold standard."""
    gold_by_id: dict[str, GoldRecord] = {}
    for record in gold:
        if record.query_id in gold_by_id:
            raise GoldMismatchError(f"duplicate gold id {record.query_id!r}")
        gold_by_id[record.query_id] = record
    counts = {IA: 0, CA: 0, RA: 0, CIA: 0}
    answered: set[str] = set()
    for query_id, verdict in answers:
        record = gold_by_id.get(query_id)
        if record is None:
            raise GoldMismatchError(f"answer for unknown query id {query_id!r}")
        if query_id in answered:
            raise GoldMismatchError(f"duplicate answer for query id {query_id!r}")
        answered.add(query_id)
        counts[classify_answer(verdict, record.verdict)] += 1
    missing = set(gold_by_id) - answered
    if missing:
        raise GoldMismatchError(f"no answers for gold ids {sorted(missing)}")
    return EvalReport(counts[IA], counts[CA], counts[RA], counts[CIA])


def read_gold_csv(path) -> list[GoldRecord]:
    """Gold CSV: header ``id,query,gold``; quoted query text."""
    records: list[GoldRecord] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != ["id", "query", "gold"]:
            raise GoldMismatchError(
                f'gold CSV header must be "id,query,gold", got {reader.fieldnames}')
        for row in reader:
            records.append(GoldRecord(row["id"], row["query"], row["gold"]))
    return records


def write_gold_csv(records: Iterable[GoldRecord], handle) -> None:
    writer = csv.writer(handle, quoting=csv.QUOTE_ALL)
    writer.writerow(["id", "query", "gold"])
    for record in records:
        writer.writerow([record.query_id, record.query_text, record.verdict])
