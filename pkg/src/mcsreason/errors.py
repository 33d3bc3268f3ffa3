"""Exception hierarchy shared across the package.

Everything raised on bad input or violated contracts derives from
:class:`DomainError`, so the CLI can map library failures to exit code 1.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class ParseError(DomainError):
    """Input text violates the fragment grammar."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class UnsupportedConstructError(ParseError):
    """A recognizable OWL construct outside the supported grammar."""

    def __init__(self, construct: str, line: int, col: int):
        super().__init__(f"unsupported construct {construct!r}", line, col)
        self.construct = construct


class TrivialAxiomError(DomainError):
    """Axiom is a tautology or a contradiction and cannot be loaded."""

    def __init__(self, axiom_id: str, text: str):
        super().__init__(f"axiom {axiom_id} is trivial: {text}")
        self.axiom_id = axiom_id
        self.text = text


class DuplicateAxiomError(DomainError):
    """Two statements in one document are structurally identical."""


class InconsistentPremisesError(DomainError):
    """Entailment was asked over an inconsistent axiom set."""


class BudgetExceededError(DomainError):
    """Enumeration exceeded the configured subset or oracle-call budget."""

    def __init__(self, limit_name: str, limit: int):
        super().__init__(f"{limit_name} budget of {limit} exceeded")
        self.limit_name = limit_name
        self.limit = limit


class TooLargeError(DomainError):
    """Brute-force guard: the ontology is too large to enumerate exhaustively."""


class UntranslatableError(DomainError):
    """Axiom kind has no sentence template."""


class EmptySentenceError(DomainError):
    """A sentence contains no tokens and cannot be hash-embedded."""

    def __init__(self, axiom_id: str):
        super().__init__(f"sentence for axiom {axiom_id} has no tokens")
        self.axiom_id = axiom_id


class NoTriplesError(DomainError):
    """Every axiom was unrepresentable as a triple; nothing to train on."""


class VectorError(DomainError):
    """Bad vector arguments (zero vector, arity mismatch, non-finite values)."""


class ImportFormatError(DomainError):
    """Vectors JSONL file violates its format contract."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class MissingAxiomError(DomainError):
    """A vectors file does not cover every axiom of the ontology."""

    def __init__(self, axiom_id: str):
        super().__init__(f"no vector for axiom {axiom_id}")
        self.axiom_id = axiom_id


class UnknownAxiomError(DomainError):
    """Scoring was asked about an axiom outside the ontology."""


class UnknownSubsetError(DomainError):
    """Scoring was asked about a subset outside the enumerated family."""


class NotMemberError(DomainError):
    """Aggregation target axiom is not a member of the subset."""


class EmptySubsetError(DomainError):
    """Aggregation over an empty subset is undefined."""


class MalformedQueryError(DomainError):
    """Query text does not parse as a single fragment axiom."""


class NoConflictTargetsError(DomainError):
    """The ontology offers no usable functional or disjointness targets."""


class GoldMismatchError(DomainError):
    """Answer ids and gold-standard ids do not line up."""
