"""Consistency and entailment over the reasoning-complete fragment core.

The engine runs grounded forward-chaining saturation to a fixpoint and then
scans for clashes. The core it reasons over: subclass/equivalence edges
between concept tokens (named concepts, intersections, and opaque complex
concepts treated as atoms), instance propagation through those edges and
through intersections, domain/range typing, and three integrity constraints:
disjointness violations, functional-property violations, and max-cardinality
(n in {0, 1}) violations over asserted fillers. Unique names are assumed for
individuals, distinct literals for data values.

Derived facts carry support sets (axiom ids used to derive them), so a clash
report always cites a subset that is itself inconsistent. Rule application
order is deterministic, which makes reports reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InconsistentPremisesError
from .ontology import (
    Axiom,
    ClassAssertion,
    ConceptExpr,
    DataPropertyAssertion,
    DataPropertyDomain,
    DisjointClasses,
    EquivalentClasses,
    FunctionalObjectProperty,
    IntersectionOf,
    MaxCardinality,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SubClassOf,
    concepts_of,
    is_top,
)
from .syntax import render_concept

Token = str

DISJOINTNESS_CLASH = "DisjointnessClash"
FUNCTIONAL_CLASH = "FunctionalClash"
MAX_CARDINALITY_CLASH = "MaxCardinalityClash"


@dataclass(frozen=True)
class ClashReport:
    """A witnessing violation found during saturation."""

    kind: str
    axiom_ids: tuple[str, ...]
    individuals: tuple[str, ...] = ()
    literals: tuple[str, ...] = ()
    detail: str = ""


def _token(concept: ConceptExpr) -> Token:
    return render_concept(concept)


class Saturation:
    """Saturated state for one axiom set; immutable once constructed.

    ``extra_concepts`` widens the token universe (used when checking a query
    whose concept expressions do not occur in the axioms themselves).
    """

    def __init__(self, axioms: Sequence[Axiom],
                 extra_concepts: Iterable[ConceptExpr] = ()):
        self._axioms: list[Axiom] = []
        for i, axiom in enumerate(axioms):
            self._axioms.append(axiom if axiom.id else _anon(axiom, i))

        # Derived state. Values are support sets: frozensets of axiom ids
        # sufficient to re-derive the fact.
        self.edges: dict[tuple[Token, Token], frozenset[str]] = {}
        self.members: dict[tuple[str, Token], frozenset[str]] = {}
        self.role_pairs: dict[tuple[str, str, str], frozenset[str]] = {}
        self.data_triples: dict[tuple[str, str, str], frozenset[str]] = {}

        self._disjoints: list[tuple[Token, Token, str]] = []
        self._functionals: list[tuple[str, str]] = []
        self._object_domains: list[tuple[str, Token, str]] = []
        self._object_ranges: list[tuple[str, Token, str]] = []
        self._data_domains: list[tuple[str, Token, str]] = []
        self._intersections: dict[Token, tuple[Token, ...]] = {}
        self._max_cards: dict[Token, MaxCardinality] = {}

        self._collect(extra_concepts)
        self._saturate()
        self.clash: Optional[ClashReport] = self._scan_clashes()

    # -- setup ---------------------------------------------------------------

    def _register_concept(self, concept: ConceptExpr) -> Token:
        """Record a concept token plus the structure the core understands."""
        tok = _token(concept)
        if isinstance(concept, IntersectionOf) and tok not in self._intersections:
            self._intersections[tok] = tuple(
                self._register_concept(op) for op in concept.operands)
        elif isinstance(concept, MaxCardinality) and concept.n <= 1:
            if tok not in self._max_cards:
                self._max_cards[tok] = concept
                if concept.filler is not None:
                    self._register_concept(concept.filler)
        return tok

    def _collect(self, extra_concepts: Iterable[ConceptExpr]) -> None:
        for concept in extra_concepts:
            self._register_concept(concept)
        for axiom in self._axioms:
            aid = axiom.id
            for concept in concepts_of(axiom):
                self._register_concept(concept)
            if isinstance(axiom, SubClassOf):
                self._add_edge(_token(axiom.sub), _token(axiom.sup), frozenset([aid]))
            elif isinstance(axiom, EquivalentClasses):
                left, right = _token(axiom.left), _token(axiom.right)
                self._add_edge(left, right, frozenset([aid]))
                self._add_edge(right, left, frozenset([aid]))
            elif isinstance(axiom, DisjointClasses):
                self._disjoints.append((_token(axiom.left), _token(axiom.right), aid))
            elif isinstance(axiom, ClassAssertion):
                self._add_member(axiom.individual, _token(axiom.concept), frozenset([aid]))
            elif isinstance(axiom, ObjectPropertyAssertion):
                self.role_pairs.setdefault(
                    (axiom.prop, axiom.subject, axiom.object), frozenset([aid]))
            elif isinstance(axiom, DataPropertyAssertion):
                self.data_triples.setdefault(
                    (axiom.prop, axiom.subject, axiom.value), frozenset([aid]))
            elif isinstance(axiom, ObjectPropertyDomain):
                self._object_domains.append((axiom.prop, _token(axiom.concept), aid))
            elif isinstance(axiom, ObjectPropertyRange):
                self._object_ranges.append((axiom.prop, _token(axiom.concept), aid))
            elif isinstance(axiom, DataPropertyDomain):
                self._data_domains.append((axiom.prop, _token(axiom.concept), aid))
            elif isinstance(axiom, FunctionalObjectProperty):
                self._functionals.append((axiom.prop, aid))
        # Intersection operands subsume the intersection itself.
        for inter_tok, operand_toks in sorted(self._intersections.items()):
            for op_tok in operand_toks:
                self._add_edge(inter_tok, op_tok, frozenset())

    def _add_edge(self, sub: Token, sup: Token, support: frozenset[str]) -> bool:
        if sub == sup or (sub, sup) in self.edges:
            return False
        self.edges[(sub, sup)] = support
        return True

    def _add_member(self, ind: str, tok: Token, support: frozenset[str]) -> bool:
        if (ind, tok) in self.members:
            return False
        self.members[(ind, tok)] = support
        return True

    # -- saturation ----------------------------------------------------------

    def _saturate(self) -> None:
        changed = True
        while changed:
            changed = False
            # Subsumption transitivity.
            for (a, b), sup_ab in sorted(self.edges.items()):
                for (b2, c), sup_bc in sorted(self.edges.items()):
                    if b2 == b and self._add_edge(a, c, sup_ab | sup_bc):
                        changed = True
            # Subsumption introduction for intersections: C below every
            # operand puts C below the intersection.
            for inter_tok, operand_toks in sorted(self._intersections.items()):
                subs = {a for (a, b) in self.edges if b in operand_toks} | set(operand_toks)
                for cand in sorted(subs):
                    if cand == inter_tok:
                        continue
                    support: frozenset[str] = frozenset()
                    ok = True
                    for op_tok in operand_toks:
                        if cand == op_tok:
                            continue
                        edge = self.edges.get((cand, op_tok))
                        if edge is None:
                            ok = False
                            break
                        support |= edge
                    if ok and self._add_edge(cand, inter_tok, support):
                        changed = True
            # Domain/range typing.
            for prop, tok, aid in self._object_domains:
                for (p, subj, _obj), sup in sorted(self.role_pairs.items()):
                    if p == prop and self._add_member(subj, tok, sup | {aid}):
                        changed = True
            for prop, tok, aid in self._object_ranges:
                for (p, _subj, obj), sup in sorted(self.role_pairs.items()):
                    if p == prop and self._add_member(obj, tok, sup | {aid}):
                        changed = True
            for prop, tok, aid in self._data_domains:
                for (p, subj, _val), sup in sorted(self.data_triples.items()):
                    if p == prop and self._add_member(subj, tok, sup | {aid}):
                        changed = True
            # Instance propagation along subsumption edges.
            for (ind, tok), sup_m in sorted(self.members.items()):
                for (sub, sup_tok), sup_e in sorted(self.edges.items()):
                    if sub == tok and self._add_member(ind, sup_tok, sup_m | sup_e):
                        changed = True
            # Instance introduction for intersections.
            for inter_tok, operand_toks in sorted(self._intersections.items()):
                for ind in sorted({i for (i, _t) in self.members}):
                    support = frozenset()
                    ok = True
                    for op_tok in operand_toks:
                        got = self.members.get((ind, op_tok))
                        if got is None:
                            ok = False
                            break
                        support |= got
                    if ok and self._add_member(ind, inter_tok, support):
                        changed = True

    # -- clash detection -------------------------------------------------------

    def _scan_clashes(self) -> Optional[ClashReport]:
        report = self._disjointness_clash()
        if report is None:
            report = self._functional_clash()
        if report is None:
            report = self._max_cardinality_clash()
        return report

    def _disjointness_clash(self) -> Optional[ClashReport]:
        individuals = sorted({ind for (ind, _t) in self.members})
        for left, right, aid in self._disjoints:
            for ind in individuals:
                in_left = self.members.get((ind, left))
                in_right = self.members.get((ind, right))
                if in_left is not None and in_right is not None:
                    cited = sorted(in_left | in_right | {aid})
                    return ClashReport(
                        DISJOINTNESS_CLASH, tuple(cited), individuals=(ind,),
                        detail=f"{ind} falls under disjoint classes {left} and {right}")
        return None

    def _functional_clash(self) -> Optional[ClashReport]:
        for prop, aid in self._functionals:
            by_subject: dict[str, list[str]] = {}
            for (p, subj, obj) in sorted(self.role_pairs):
                if p == prop:
                    by_subject.setdefault(subj, []).append(obj)
            for subj in sorted(by_subject):
                fillers = sorted(set(by_subject[subj]))
                if len(fillers) > 1:
                    first, second = fillers[0], fillers[1]
                    cited = sorted(
                        self.role_pairs[(prop, subj, first)]
                        | self.role_pairs[(prop, subj, second)]
                        | {aid})
                    return ClashReport(
                        FUNCTIONAL_CLASH, tuple(cited),
                        individuals=(subj, first, second),
                        detail=f"functional {prop} has two fillers for {subj}")
        return None

    def _max_cardinality_clash(self) -> Optional[ClashReport]:
        for (ind, tok) in sorted(self.members):
            card = self._max_cards.get(tok)
            if card is None:
                continue
            filler_ok_any = card.filler is None or is_top(card.filler)
            obj_fillers: list[tuple[str, frozenset[str]]] = []
            for (p, subj, obj), sup in sorted(self.role_pairs.items()):
                if p != card.prop or subj != ind:
                    continue
                if filler_ok_any or self.holds(obj, card.filler):
                    obj_fillers.append((obj, sup))
            lit_fillers: list[tuple[str, frozenset[str]]] = []
            if filler_ok_any:
                for (p, subj, val), sup in sorted(self.data_triples.items()):
                    if p == card.prop and subj == ind:
                        lit_fillers.append((val, sup))
            total = len(obj_fillers) + len(lit_fillers)
            if total > card.n:
                witnesses = (obj_fillers + lit_fillers)[:card.n + 1]
                cited: frozenset[str] = self.members[(ind, tok)]
                for _filler, sup in witnesses:
                    cited = cited | sup
                return ClashReport(
                    MAX_CARDINALITY_CLASH, tuple(sorted(cited)),
                    individuals=(ind,) + tuple(f for f, _ in obj_fillers[:card.n + 1]),
                    literals=tuple(v for v, _ in lit_fillers[:card.n + 1]),
                    detail=f"{ind} exceeds max {card.n} on {card.prop}")
        return None

    # -- queries ---------------------------------------------------------------

    def holds(self, individual: str, concept: ConceptExpr) -> bool:
        """Is the individual derivably an instance of the concept?"""
        if is_top(concept):
            return True
        if isinstance(concept, IntersectionOf):
            return all(self.holds(individual, op) for op in concept.operands)
        return (individual, _token(concept)) in self.members

    def subsumed(self, sub: ConceptExpr, sup: ConceptExpr) -> bool:
        """Is ``sub`` derivably a subclass of ``sup``?"""
        if is_top(sup):
            return True
        sub_tok, sup_tok = _token(sub), _token(sup)
        if sub_tok == sup_tok or (sub_tok, sup_tok) in self.edges:
            return True
        # A conjunction is entailed exactly when every conjunct is.
        if isinstance(sup, IntersectionOf):
            return all(self.subsumed(sub, op) for op in sup.operands)
        return False

    def disjoint(self, left: ConceptExpr, right: ConceptExpr) -> bool:
        """Is disjointness of the two concepts derivable (via weakening)?"""
        for dl, dr, _aid in self._disjoints:
            for first, second in ((dl, dr), (dr, dl)):
                if (self._token_subsumed(_token(left), first)
                        and self._token_subsumed(_token(right), second)):
                    return True
        return False

    def _token_subsumed(self, sub: Token, sup: Token) -> bool:
        return sub == sup or (sub, sup) in self.edges


def _anon(axiom: Axiom, index: int) -> Axiom:
    from .ontology import with_id

    return with_id(axiom, f"t{index + 1}")


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def check_consistency(axioms: Iterable[Axiom]) -> Optional[ClashReport]:
    """Return a witnessing clash, or None when the set is consistent."""
    return Saturation(list(axioms)).clash


def is_consistent(axioms: Iterable[Axiom]) -> bool:
    return check_consistency(axioms) is None


def entails(axioms: Iterable[Axiom], query: Axiom) -> bool:
    """Is the query in the deductive closure of a consistent axiom set?"""
    axiom_list = list(axioms)
    sat = Saturation(axiom_list, extra_concepts=concepts_of(query))
    if sat.clash is not None:
        raise InconsistentPremisesError(
            f"premises are inconsistent: {sat.clash.detail}")
    if any(query == a for a in axiom_list):
        return True
    if isinstance(query, ClassAssertion):
        return sat.holds(query.individual, query.concept)
    if isinstance(query, SubClassOf):
        return sat.subsumed(query.sub, query.sup)
    if isinstance(query, EquivalentClasses):
        return sat.subsumed(query.left, query.right) and sat.subsumed(query.right, query.left)
    if isinstance(query, DisjointClasses):
        return sat.disjoint(query.left, query.right)
    if isinstance(query, ObjectPropertyAssertion):
        return (query.prop, query.subject, query.object) in sat.role_pairs
    if isinstance(query, DataPropertyAssertion):
        return (query.prop, query.subject, query.value) in sat.data_triples
    if isinstance(query, ObjectPropertyDomain):
        return any(p == query.prop and sat._token_subsumed(tok, _token(query.concept))
                   for p, tok, _aid in sat._object_domains)
    if isinstance(query, ObjectPropertyRange):
        return any(p == query.prop and sat._token_subsumed(tok, _token(query.concept))
                   for p, tok, _aid in sat._object_ranges)
    if isinstance(query, DataPropertyDomain):
        return any(p == query.prop and sat._token_subsumed(tok, _token(query.concept))
                   for p, tok, _aid in sat._data_domains)
    if isinstance(query, FunctionalObjectProperty):
        return any(p == query.prop for p, _aid in sat._functionals)
    return False


def is_trivial(axiom: Axiom) -> bool:
    """True iff the axiom is a tautology or a single-axiom contradiction."""
    if check_consistency([axiom]) is not None:
        return True
    return entails([], axiom)
