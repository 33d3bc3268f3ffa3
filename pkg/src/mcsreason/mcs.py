"""Enumeration of maximal consistent sub-ontologies.

The enumerator is MARCO-style: a map store proposes an unblocked seed, the
seed is grown to a maximal consistent subset (or shrunk to a minimal
inconsistent one) with single-axiom consistency probes in ascending axiom
order, and the result blocks a region of the powerset. The map store is a
small DPLL search over the blocking clauses, so no solver dependency is
needed. Output order is canonical: lexicographic over tuples of ontology
positions. A brute-force enumerator over all subsets serves as the reference
semantics for testing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError, TooLargeError
from .ontology import Axiom, Ontology, with_id
from .reasoning import is_consistent

DEFAULT_MAX_MCS = 10_000
DEFAULT_MAX_ORACLE_CALLS = 1_000_000
BRUTE_FORCE_LIMIT = 16


@dataclass(frozen=True)
class Mcs:
    """One maximal consistent sub-ontology, as a sorted tuple of axiom ids."""

    ids: tuple[str, ...]
    ontology: Ontology = field(compare=False, repr=False, hash=False)

    def id_set(self) -> frozenset[str]:
        return frozenset(self.ids)

    def axioms(self) -> tuple[Axiom, ...]:
        return self.ontology.subset(self.ids)

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, axiom_id: str) -> bool:
        return axiom_id in self.ids


class _Budget:
    def __init__(self, max_mcs: int, max_oracle_calls: int):
        self.max_mcs = max_mcs
        self.max_oracle_calls = max_oracle_calls
        self.oracle_calls = 0
        self.mcs_count = 0

    def count_oracle_call(self) -> None:
        self.oracle_calls += 1
        if self.oracle_calls > self.max_oracle_calls:
            raise BudgetExceededError("oracle-call", self.max_oracle_calls)

    def count_mcs(self) -> None:
        self.mcs_count += 1
        if self.mcs_count > self.max_mcs:
            raise BudgetExceededError("MCS-count", self.max_mcs)


class _Oracle:
    """Memoized consistency probe over index subsets of one axiom list."""

    def __init__(self, axioms: Sequence[Axiom], budget: _Budget):
        self.axioms = list(axioms)
        self.budget = budget
        self._cache: dict[frozenset[int], bool] = {}

    def consistent(self, indices: Iterable[int]) -> bool:
        key = frozenset(indices)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.budget.count_oracle_call()
        result = is_consistent([self.axioms[i] for i in sorted(key)])
        self._cache[key] = result
        return result


class _MapStore:
    """Blocking-clause store with a deterministic DPLL seed search.

    Clauses are disjunctions of literals ``(var, polarity)``. ``block_down``
    forbids subsets of an emitted maximal set, ``block_up`` forbids supersets
    of a minimal inconsistent set. The search runs unit propagation over a
    per-variable clause index and branches in ascending variable order,
    preferring True (high bias: large seeds first).
    """

    def __init__(self, n: int):
        self.n = n
        self.clauses: list[tuple[tuple[int, bool], ...]] = []
        self._by_var: dict[int, list[int]] = {i: [] for i in range(n)}

    def _add_clause(self, clause: tuple[tuple[int, bool], ...]) -> None:
        index = len(self.clauses)
        self.clauses.append(clause)
        for var, _polarity in clause:
            self._by_var[var].append(index)

    def block_down(self, included: set[int]) -> None:
        self._add_clause(tuple((i, True) for i in range(self.n) if i not in included))

    def block_up(self, core: set[int]) -> None:
        self._add_clause(tuple((i, False) for i in sorted(core)))

    def next_seed(self) -> Optional[set[int]]:
        assignment = self._solve()
        if assignment is None:
            return None
        return {i for i in range(self.n) if assignment.get(i, False)}

    def _propagate(self, assignment: dict[int, bool],
                   trail: list[int], queue: list[int]) -> bool:
        """Exhaust unit consequences of newly assigned vars; False on conflict."""
        while queue:
            var = queue.pop()
            for clause_index in self._by_var[var]:
                clause = self.clauses[clause_index]
                unassigned: Optional[tuple[int, bool]] = None
                satisfied = False
                open_literals = 0
                for lit_var, polarity in clause:
                    got = assignment.get(lit_var)
                    if got is None:
                        open_literals += 1
                        unassigned = (lit_var, polarity)
                        if open_literals > 1:
                            break
                    elif got == polarity:
                        satisfied = True
                        break
                if satisfied or open_literals > 1:
                    continue
                if open_literals == 0:
                    return False
                forced_var, forced_value = unassigned
                assignment[forced_var] = forced_value
                trail.append(forced_var)
                queue.append(forced_var)
        return True

    def _solve(self) -> Optional[dict[int, bool]]:
        # Empty clause means the whole space is blocked.
        if any(not clause for clause in self.clauses):
            return None
        # Only variables occurring in some clause need search; the rest are
        # unconstrained and go True immediately (largest seed).
        decision_vars = sorted(
            {var for clause in self.clauses for (var, _p) in clause})
        assignment: dict[int, bool] = {
            var: True for var in range(self.n) if not self._by_var[var]}
        order = {var: k for k, var in enumerate(decision_vars)}
        # Each level: (decision var, tried_false flag, trail of assignments).
        levels: list[tuple[int, bool, list[int]]] = []

        def decide_from(start: int) -> Optional[int]:
            for k in range(start, len(decision_vars)):
                if decision_vars[k] not in assignment:
                    return decision_vars[k]
            return None

        next_var = decide_from(0)
        while True:
            if next_var is None:
                return assignment
            assignment[next_var] = True
            trail = [next_var]
            if self._propagate(assignment, trail, [next_var]):
                levels.append((next_var, False, trail))
                next_var = decide_from(order[next_var] + 1)
                continue
            # Conflict: undo this level, then flip the deepest flippable one.
            for var in trail:
                del assignment[var]
            levels.append((next_var, False, []))
            while True:
                var, tried_false, trail = levels.pop()
                for assigned in trail:
                    del assignment[assigned]
                if not tried_false:
                    assignment[var] = False
                    new_trail = [var]
                    if self._propagate(assignment, new_trail, [var]):
                        levels.append((var, True, new_trail))
                        next_var = decide_from(order[var] + 1)
                        break
                    for assigned in new_trail:
                        del assignment[assigned]
                if not levels:
                    return None


def _sort_key(ontology: Ontology, ids: Iterable[str]) -> tuple[int, ...]:
    return tuple(sorted(ontology.position(i) for i in ids))


def enumerate_mcs(ontology: Ontology,
                  max_mcs: int = DEFAULT_MAX_MCS,
                  max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> list[Mcs]:
    """All maximal consistent sub-ontologies, in canonical order."""
    axioms = ontology.axioms
    n = len(axioms)
    budget = _Budget(max_mcs, max_oracle_calls)
    oracle = _Oracle(axioms, budget)
    store = _MapStore(n)
    found: list[set[int]] = []

    while True:
        seed = store.next_seed()
        if seed is None:
            break
        if oracle.consistent(seed):
            mss = _grow(seed, n, oracle)
            budget.count_mcs()
            found.append(mss)
            store.block_down(mss)
        else:
            mus = _shrink(seed, oracle)
            store.block_up(mus)

    result = [Mcs(ontology.sort_ids(axioms[i].id for i in member), ontology)
              for member in found]
    result.sort(key=lambda m: _sort_key(ontology, m.ids))
    return result


def _grow(seed: set[int], n: int, oracle: _Oracle) -> set[int]:
    current = set(seed)
    for i in range(n):
        if i in current:
            continue
        if oracle.consistent(current | {i}):
            current.add(i)
    return current


def _shrink(seed: set[int], oracle: _Oracle) -> set[int]:
    current = set(seed)
    for i in sorted(seed):
        if i not in current:
            continue
        if not oracle.consistent(current - {i}):
            current.remove(i)
    return current


def enumerate_minimal_conflicts(ontology: Ontology,
                                max_mcs: int = DEFAULT_MAX_MCS,
                                max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> list[tuple[str, ...]]:
    """All minimal inconsistent subsets, in canonical order.

    Same MARCO loop as :func:`enumerate_mcs`; here the shrunk cores are the
    product and the grown maximal sets are the side effect.
    """
    axioms = ontology.axioms
    budget = _Budget(max_mcs, max_oracle_calls)
    oracle = _Oracle(axioms, budget)
    store = _MapStore(len(axioms))
    cores: list[set[int]] = []
    while True:
        seed = store.next_seed()
        if seed is None:
            break
        if oracle.consistent(seed):
            store.block_down(_grow(seed, len(axioms), oracle))
        else:
            mus = _shrink(seed, oracle)
            cores.append(mus)
            store.block_up(mus)
    result = [ontology.sort_ids(axioms[i].id for i in core) for core in cores]
    result.sort(key=lambda ids: _sort_key(ontology, ids))
    return result


def enumerate_mcs_with(ontology: Ontology, axiom: Axiom,
                       max_mcs: int = DEFAULT_MAX_MCS,
                       max_oracle_calls: int = DEFAULT_MAX_ORACLE_CALLS) -> list[Mcs]:
    """Subsets S of the ontology such that S plus the axiom is an MCS of
    ontology-plus-axiom. The axiom itself is excluded from membership."""
    if any(axiom == a for a in ontology):
        conditioned_id = next(a.id for a in ontology if a == axiom)
        combined = ontology
    else:
        conditioned_id = "q0"
        combined = Ontology(ontology.axioms + (with_id(axiom, conditioned_id),))
    family: list[tuple[str, ...]] = []
    seen: set[frozenset[str]] = set()
    for mcs in enumerate_mcs(combined, max_mcs, max_oracle_calls):
        if conditioned_id not in mcs.ids:
            continue
        rest = tuple(i for i in mcs.ids if i != conditioned_id)
        if frozenset(rest) not in seen:
            seen.add(frozenset(rest))
            family.append(rest)
    family.sort(key=lambda ids: _sort_key(ontology, ids))
    return [Mcs(ids, ontology) for ids in family]


def brute_force_mcs(ontology: Ontology) -> list[Mcs]:
    """Reference semantics: test all 2^n subsets. Guarded for small inputs."""
    n = len(ontology)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLargeError(f"brute force limited to {BRUTE_FORCE_LIMIT} axioms, got {n}")
    axioms = ontology.axioms
    consistent: list[set[int]] = []
    for mask in range(1 << n):
        subset = {i for i in range(n) if mask & (1 << i)}
        if is_consistent([axioms[i] for i in sorted(subset)]):
            consistent.append(subset)
    maximal = [s for s in consistent
               if not any(s < other for other in consistent)]
    result = [Mcs(ontology.sort_ids(axioms[i].id for i in member), ontology)
              for member in maximal]
    result.sort(key=lambda m: _sort_key(ontology, m.ids))
    return result
