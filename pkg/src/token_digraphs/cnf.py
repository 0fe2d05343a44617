"""3-CNF formulas for the kernel-hardness reduction."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

Clause = tuple[int, int, int]
Assignment = tuple[bool, ...]


@dataclass(frozen=True, slots=True)
class CnfFormula:
    """A conjunction of 3-literal clauses.

    Literals use the DIMACS convention: ``+j`` is ``x_j`` and ``-j`` is its
    negation, for ``1 <= j <= num_vars``. A clause may repeat a literal.
    """

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError(f"num_vars must be non-negative, got {self.num_vars}")
        clauses = []
        for i, clause in enumerate(self.clauses):
            clause = tuple(int(lit) for lit in clause)
            if len(clause) != 3:
                raise ValueError(f"Clause {i} has {len(clause)} literals, expected exactly 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(
                        f"Clause {i} has literal {lit} outside ±1..±{self.num_vars}"
                    )
            clauses.append(clause)
        object.__setattr__(self, "clauses", tuple(clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def literal_value(self, lit: int, assignment: Assignment) -> bool:
        value = assignment[abs(lit) - 1]
        return value if lit > 0 else not value

    def is_nae(self, assignment: Assignment) -> bool:
        """True when every clause has at least one true and one false literal."""
        if len(assignment) != self.num_vars:
            raise ValueError(
                f"Assignment has {len(assignment)} values, formula has {self.num_vars} variables"
            )
        for clause in self.clauses:
            values = {self.literal_value(lit, assignment) for lit in clause}
            if len(values) != 2:
                return False
        return True


def format_literal(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def nae_oracle(formula: CnfFormula) -> Assignment | None:
    """Exhaustive NAE check over all ``2**num_vars`` assignments."""
    for bits in itertools.product((True, False), repeat=formula.num_vars):
        if formula.is_nae(bits):
            return bits
    return None


def _canonical(clauses: Sequence[Clause], num_vars: int) -> tuple[Clause, ...]:
    best: tuple[Clause, ...] | None = None
    for perm in itertools.permutations(range(1, num_vars + 1)):
        for flips in itertools.product((1, -1), repeat=num_vars):

            def image(lit: int, perm=perm, flips=flips) -> int:
                j = abs(lit) - 1
                return perm[j] * flips[j] * (1 if lit > 0 else -1)

            mapped = tuple(sorted(tuple(sorted(image(lit) for lit in c)) for c in clauses))
            if best is None or mapped < best:
                best = mapped
    assert best is not None
    return best


def enumerate_formulas(max_vars: int, max_clauses: int) -> Iterator[CnfFormula]:
    """All formulas with ``1..max_clauses`` clauses over ``1..max_vars`` variables.

    Literal order inside a clause and clause order are ignored, and formulas
    equal up to renaming variables or flipping a variable's sign are produced
    once. Every variable ``1..num_vars`` occurs in the formula.
    """
    seen: set[tuple[int, tuple[Clause, ...]]] = set()
    for num_vars in range(1, max_vars + 1):
        literals = [s * j for j in range(1, num_vars + 1) for s in (1, -1)]
        clause_pool = list(itertools.combinations_with_replacement(sorted(literals), 3))
        for m in range(1, max_clauses + 1):
            for clauses in itertools.combinations_with_replacement(clause_pool, m):
                used = {abs(lit) for c in clauses for lit in c}
                if len(used) != num_vars:
                    continue
                key = (num_vars, _canonical(clauses, num_vars))
                if key in seen:
                    continue
                seen.add(key)
                yield CnfFormula(num_vars, key[1])
