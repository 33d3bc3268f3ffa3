"""Parser and renderer for the OWL functional-style fragment.

Input documents are UTF-8 text: one axiom statement per logical line
(statements may span physical lines until parentheses balance), optional
``Prefix(p:=<iri>)`` headers, and ``#`` comments. Prefixed names with a
declared prefix are expanded to full IRIs; undeclared prefixed names such as
``rdfs:Literal`` are kept verbatim. Rendering emits canonical text that
re-parses to a structurally equal axiom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DuplicateAxiomError,
    ParseError,
    TrivialAxiomError,
    UnsupportedConstructError,
)
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

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-.]*(?::[A-Za-z0-9_\-.]+)?")
_INT_RE = re.compile(r"\d+")

# Constructs we recognize as OWL but do not support; anything else unknown is
# a plain syntax error.
_KNOWN_UNSUPPORTED = {
    "ObjectComplementOf", "ObjectOneOf", "DataSomeValuesFrom", "DataAllValuesFrom",
    "DataHasValue", "ObjectInverseOf", "ObjectHasSelf",
    "AnnotationAssertion", "Declaration", "Ontology", "Import",
    "TransitiveObjectProperty", "SymmetricObjectProperty", "InverseObjectProperties",
    "SubObjectPropertyOf", "SubDataPropertyOf", "DataPropertyRange",
    "FunctionalDataProperty", "SameIndividual", "DifferentIndividuals",
    "DisjointUnion", "HasKey", "NegativeObjectPropertyAssertion",
    "NegativeDataPropertyAssertion",
}


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME | INT | STRING | IRI | LP | RP | ASSIGN
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "(":
            tokens.append(_Token("LP", "(", line, col))
            i += 1
            col += 1
            continue
        if ch == ")":
            tokens.append(_Token("RP", ")", line, col))
            i += 1
            col += 1
            continue
        if text.startswith(":=", i):
            tokens.append(_Token("ASSIGN", ":=", line, col))
            i += 2
            col += 2
            continue
        if ch == "<":
            end = text.find(">", i + 1)
            if end < 0 or "\n" in text[i:end]:
                raise ParseError("unterminated IRI", line, col)
            tokens.append(_Token("IRI", text[i + 1:end], line, col))
            col += end - i + 1
            i = end + 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            buf: list[str] = []
            while i < n:
                c = text[i]
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in '"\\':
                        raise ParseError("bad escape in literal", line, col)
                    buf.append(text[i + 1])
                    i += 2
                    col += 2
                    continue
                if c == '"':
                    i += 1
                    col += 1
                    break
                if c == "\n":
                    raise ParseError("unterminated literal", start_line, start_col)
                buf.append(c)
                i += 1
                col += 1
            else:
                raise ParseError("unterminated literal", start_line, start_col)
            tokens.append(_Token("STRING", "".join(buf), start_line, start_col))
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(_Token("INT", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(_Token("NAME", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.prefixes: dict[str, str] = {}

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, kind: Optional[str] = None, what: str = "token") -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
            raise ParseError(f"unexpected end of input, expected {what}", last.line, last.col)
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {what}, got {tok.value!r}", tok.line, tok.col)
        self.pos += 1
        return tok

    def resolve(self, tok: _Token) -> str:
        """Expand a declared prefix; leave undeclared prefixed names verbatim."""
        if tok.kind == "IRI":
            return tok.value
        name = tok.value
        if ":" in name:
            prefix, local = name.split(":", 1)
            iri = self.prefixes.get(prefix)
            if iri is not None:
                return iri + local
        return name

    def name(self, what: str) -> str:
        tok = self.peek()
        if tok is None or tok.kind not in ("NAME", "IRI"):
            bad = tok.value if tok else "end of input"
            where = tok if tok else (self.tokens[-1] if self.tokens else _Token("", "", 1, 1))
            raise ParseError(f"expected {what}, got {bad!r}", where.line, where.col)
        self.pos += 1
        return self.resolve(tok)

    # -- statements --------------------------------------------------------

    def statements(self) -> list[Axiom]:
        axioms: list[Axiom] = []
        while not self.at_end():
            head = self.next("NAME", "statement head")
            if head.value == "Prefix":
                self._prefix_decl()
                continue
            axioms.append(self._axiom(head))
        return axioms

    def _prefix_decl(self) -> None:
        self.next("LP", "'('")
        name_tok = self.next("NAME", "prefix name")
        if ":" in name_tok.value:
            raise ParseError("prefix name must not contain ':'", name_tok.line, name_tok.col)
        self.next("ASSIGN", "':='")
        iri = self.next("IRI", "IRI")
        self.next("RP", "')'")
        self.prefixes[name_tok.value] = iri.value

    def _axiom(self, head: _Token) -> Axiom:
        kind = head.value
        self.next("LP", "'('")
        if kind == "SubClassOf":
            ax: Axiom = SubClassOf(self._concept(), self._concept())
        elif kind == "EquivalentClasses":
            ax = EquivalentClasses(self._concept(), self._concept())
        elif kind == "DisjointClasses":
            ax = DisjointClasses(self._concept(), self._concept())
        elif kind == "ClassAssertion":
            ax = ClassAssertion(self._concept(), self.name("individual"))
        elif kind == "ObjectPropertyAssertion":
            ax = ObjectPropertyAssertion(
                self.name("property"), self.name("individual"), self.name("individual"))
        elif kind == "DataPropertyAssertion":
            prop = self.name("property")
            subject = self.name("individual")
            lit = self.next("STRING", "quoted literal")
            ax = DataPropertyAssertion(prop, subject, lit.value)
        elif kind == "ObjectPropertyDomain":
            ax = ObjectPropertyDomain(self.name("property"), self._concept())
        elif kind == "ObjectPropertyRange":
            ax = ObjectPropertyRange(self.name("property"), self._concept())
        elif kind == "DataPropertyDomain":
            ax = DataPropertyDomain(self.name("property"), self._concept())
        elif kind == "FunctionalObjectProperty":
            ax = FunctionalObjectProperty(self.name("property"))
        elif kind in _KNOWN_UNSUPPORTED:
            raise UnsupportedConstructError(kind, head.line, head.col)
        else:
            raise ParseError(f"unknown statement {kind!r}", head.line, head.col)
        self.next("RP", "')'")
        return ax

    # -- concepts -----------------------------------------------------------

    def _concept(self) -> ConceptExpr:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1]
            raise ParseError("expected concept expression", last.line, last.col)
        if tok.kind == "IRI":
            self.pos += 1
            return Named(tok.value)
        if tok.kind != "NAME":
            raise ParseError(f"expected concept expression, got {tok.value!r}", tok.line, tok.col)
        after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        if after is None or after.kind != "LP":
            self.pos += 1
            return Named(self.resolve(tok))
        head = self.next("NAME", "concept constructor")
        kind = head.value
        self.next("LP", "'('")
        expr = self._constructor(kind, head)
        self.next("RP", "')'")
        return expr

    def _constructor(self, kind: str, head: _Token) -> ConceptExpr:
        if kind in ("ObjectIntersectionOf", "ObjectUnionOf"):
            operands: list[ConceptExpr] = []
            while self.peek() is not None and self.peek().kind != "RP":
                operands.append(self._concept())
            if len(operands) < 2:
                raise ParseError(f"{kind} needs at least 2 operands", head.line, head.col)
            return (IntersectionOf if kind == "ObjectIntersectionOf" else UnionOf)(tuple(operands))
        if kind == "ObjectSomeValuesFrom":
            return SomeValuesFrom(self.name("property"), self._concept())
        if kind == "ObjectAllValuesFrom":
            return AllValuesFrom(self.name("property"), self._concept())
        if kind == "ObjectHasValue":
            return HasValue(self.name("property"), self.name("individual"))
        card = {
            "ObjectExactCardinality": (ExactCardinality, False),
            "ObjectMinCardinality": (MinCardinality, False),
            "ObjectMaxCardinality": (MaxCardinality, False),
            "DataExactCardinality": (ExactCardinality, True),
            "DataMinCardinality": (MinCardinality, True),
            "DataMaxCardinality": (MaxCardinality, True),
        }.get(kind)
        if card is not None:
            cls, is_data = card
            n_tok = self.next("INT", "cardinality")
            prop = self.name("property")
            filler: Optional[ConceptExpr] = None
            if self.peek() is not None and self.peek().kind != "RP":
                filler = self._concept()
            return cls(int(n_tok.value), prop, filler, is_data)
        if kind in _KNOWN_UNSUPPORTED:
            raise UnsupportedConstructError(kind, head.line, head.col)
        raise ParseError(f"unknown concept constructor {kind!r}", head.line, head.col)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _render_name(name: str) -> str:
    if _NAME_RE.fullmatch(name):
        return name
    return f"<{name}>"


def _render_literal(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def render_concept(concept: ConceptExpr) -> str:
    if isinstance(concept, Named):
        return _render_name(concept.name)
    if isinstance(concept, IntersectionOf):
        return "ObjectIntersectionOf(" + " ".join(render_concept(c) for c in concept.operands) + ")"
    if isinstance(concept, UnionOf):
        return "ObjectUnionOf(" + " ".join(render_concept(c) for c in concept.operands) + ")"
    if isinstance(concept, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({_render_name(concept.role)} {render_concept(concept.filler)})"
    if isinstance(concept, AllValuesFrom):
        return f"ObjectAllValuesFrom({_render_name(concept.role)} {render_concept(concept.filler)})"
    if isinstance(concept, HasValue):
        return f"ObjectHasValue({_render_name(concept.role)} {_render_name(concept.individual)})"
    if isinstance(concept, (ExactCardinality, MinCardinality, MaxCardinality)):
        word = {ExactCardinality: "ExactCardinality",
                MinCardinality: "MinCardinality",
                MaxCardinality: "MaxCardinality"}[type(concept)]
        prefix = "Data" if concept.data else "Object"
        parts = [str(concept.n), _render_name(concept.prop)]
        if concept.filler is not None:
            parts.append(render_concept(concept.filler))
        return f"{prefix}{word}(" + " ".join(parts) + ")"
    raise TypeError(f"not a concept expression: {concept!r}")


def render_axiom(axiom: Axiom) -> str:
    """Canonical functional-syntax text; re-parses to a structurally equal axiom."""
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({render_concept(axiom.sub)} {render_concept(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return f"EquivalentClasses({render_concept(axiom.left)} {render_concept(axiom.right)})"
    if isinstance(axiom, DisjointClasses):
        return f"DisjointClasses({render_concept(axiom.left)} {render_concept(axiom.right)})"
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({render_concept(axiom.concept)} {_render_name(axiom.individual)})"
    if isinstance(axiom, ObjectPropertyAssertion):
        return (f"ObjectPropertyAssertion({_render_name(axiom.prop)} "
                f"{_render_name(axiom.subject)} {_render_name(axiom.object)})")
    if isinstance(axiom, DataPropertyAssertion):
        return (f"DataPropertyAssertion({_render_name(axiom.prop)} "
                f"{_render_name(axiom.subject)} {_render_literal(axiom.value)})")
    if isinstance(axiom, ObjectPropertyDomain):
        return f"ObjectPropertyDomain({_render_name(axiom.prop)} {render_concept(axiom.concept)})"
    if isinstance(axiom, ObjectPropertyRange):
        return f"ObjectPropertyRange({_render_name(axiom.prop)} {render_concept(axiom.concept)})"
    if isinstance(axiom, DataPropertyDomain):
        return f"DataPropertyDomain({_render_name(axiom.prop)} {render_concept(axiom.concept)})"
    if isinstance(axiom, FunctionalObjectProperty):
        return f"FunctionalObjectProperty({_render_name(axiom.prop)})"
    raise TypeError(f"not an axiom: {axiom!r}")


def render_ontology(ontology: Ontology) -> str:
    return "".join(render_axiom(a) + "\n" for a in ontology)


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def parse_statements(text: str) -> list[Axiom]:
    """Parse raw statements without id assignment or triviality checks."""
    return _Parser(_tokenize(text)).statements()


def parse_axiom(text: str, axiom_id: str = "q1", reject_trivial: bool = False) -> Axiom:
    """Parse exactly one axiom statement (used for queries and probes)."""
    axioms = parse_statements(text)
    if len(axioms) != 1:
        raise ParseError(f"expected exactly one statement, got {len(axioms)}", 1, 1)
    axiom = with_id(axioms[0], axiom_id)
    if reject_trivial:
        from .reasoning import is_trivial

        if is_trivial(axiom):
            raise TrivialAxiomError(axiom_id, render_axiom(axiom))
    return axiom


def parse_ontology(text: str) -> Ontology:
    """Parse a document into an Ontology with ids a1, a2, ... in source order.

    Trivial axioms (tautologies or contradictions) and structural duplicates
    are rejected.
    """
    from .reasoning import is_trivial

    raw = parse_statements(text)
    axioms: list[Axiom] = []
    seen: set[Axiom] = set()
    for i, axiom in enumerate(raw):
        axiom = with_id(axiom, f"a{i + 1}")
        if axiom in seen:
            raise DuplicateAxiomError(
                f"axiom {axiom.id} duplicates an earlier statement: {render_axiom(axiom)}")
        if is_trivial(axiom):
            raise TrivialAxiomError(axiom.id, render_axiom(axiom))
        seen.add(axiom)
        axioms.append(axiom)
    return Ontology(axioms)
