"""Kernels of digraphs and the NAE-3-SAT gadget for kernels of 2-token digraphs.

A kernel K is independent and absorbing: every vertex outside K has an arc
into K. The gadget numbering for a formula with v variables and c clauses:

* literal ``x_j`` is vertex ``2(j-1)`` and ``~x_j`` is ``2(j-1)+1``;
* position ``p`` of clause ``i`` is vertex ``2v + 3i + p``;
* the sink ``u`` is vertex ``2v + 3c``.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .cnf import Assignment, CnfFormula, enumerate_formulas, format_literal, nae_oracle
from .components import scc
from .digraph import (
    Digraph,
    PreconditionError,
    _bits,
    all_digraphs,
    induced_subdigraph,
    mask_of,
    members_of,
    random_digraph,
    underlying_graph,
)
from .reports import CheckResult, failed, passed, skipped
from .tokens import TokenDigraph, check_k, rank, token_digraph

logger = logging.getLogger(__name__)

__all__ = [
    "CnfFormula",
    "GadgetDigraph",
    "KernelSet",
    "Role",
    "RoleKind",
    "build_special_kernel",
    "build_token_kernel",
    "dag_kernel",
    "enumerate_formulas",
    "fig5_formula",
    "fig6_fixture",
    "find_kernel",
    "has_odd_oriented_cycle",
    "is_kernel",
    "iter_kernels",
    "kernel_violation",
    "nae_oracle",
    "reduce",
    "search_kernel_gain",
    "search_kernel_loss",
    "verify_odd_cycle_preservation",
    "verify_reduction",
]


@dataclass(frozen=True, slots=True)
class KernelSet:
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def from_mask(cls, mask: int) -> KernelSet:
        return cls(members_of(mask))

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def kernel_violation(d: Digraph, members: Iterable[int]) -> tuple[str, list[int]] | None:
    """First reason *members* is not a kernel of *d*, or None if it is one."""
    mask = mask_of(members)
    for v in _bits(mask):
        inside = d.succ_mask(v) & mask
        if inside:
            return "arc inside", [v, (inside & -inside).bit_length() - 1]
    for v in d.vertices:
        if not mask >> v & 1 and not d.succ_mask(v) & mask:
            return "unabsorbed", [v]
    return None


def is_kernel(d: Digraph, members: Iterable[int]) -> bool:
    return kernel_violation(d, members) is None


def _checked(d: Digraph, kernel: KernelSet) -> KernelSet:
    problem = kernel_violation(d, kernel.members)
    if problem is not None:
        raise RuntimeError(f"constructed set {list(kernel.members)} is not a kernel: {problem}")
    return kernel


# ---------------------------------------------------------------------------
# Odd cycles and dags
# ---------------------------------------------------------------------------


def _is_bipartite(d: Digraph) -> bool:
    g = underlying_graph(d)
    side = [-1] * g.n
    for root in g.vertices:
        if side[root] != -1:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def has_odd_oriented_cycle(d: Digraph) -> bool:
    """True when some strong component has a non-bipartite underlying graph.

    A strongly connected digraph has an oriented odd cycle exactly when its
    underlying graph is not bipartite.
    """
    for comp in scc(d).components:
        if len(comp) > 2:
            sub, _ = induced_subdigraph(d, comp)
            if not _is_bipartite(sub):
                return True
    return False


def dag_kernel(d: Digraph) -> KernelSet:
    """The unique kernel of an acyclic digraph by repeated sink peeling."""
    if not scc(d).is_acyclic():
        raise PreconditionError("dag_kernel needs an acyclic digraph")
    remaining = (1 << d.n) - 1
    kernel = 0
    while remaining:
        sinks = 0
        for v in _bits(remaining):
            if not d.succ_mask(v) & remaining:
                sinks |= 1 << v
        removed = sinks
        for v in _bits(sinks):
            removed |= d.pred_mask(v)
        kernel |= sinks
        remaining &= ~removed
    return _checked(d, KernelSet.from_mask(kernel))


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------


class _KernelSearch:
    """Backtracking over in/out decisions with unit propagation."""

    def __init__(self, d: Digraph) -> None:
        self.d = d
        self.full = (1 << d.n) - 1
        self.nbr = [d.succ_mask(v) | d.pred_mask(v) for v in d.vertices]
        self.nodes = 0

    def _choose(self, inside: int, out: int, v: int) -> tuple[int, int]:
        return inside | 1 << v, (out | self.nbr[v]) & ~(inside | 1 << v)

    def _propagate(self, inside: int, out: int) -> tuple[int, int, int | None] | None:
        """Apply forced choices; return the state and the tightest unabsorbed vertex.

        None means a conflict. The third value is None when every vertex is
        absorbed.
        """
        d = self.d
        while True:
            undecided = self.full & ~inside & ~out
            best_v = None
            best_count = 0
            forced = None
            for v in range(d.n):
                if inside >> v & 1 or d.succ_mask(v) & inside:
                    continue
                cands = (d.succ_mask(v) | 1 << v) & undecided
                count = cands.bit_count()
                if count == 0:
                    return None
                if count == 1:
                    forced = cands.bit_length() - 1
                    break
                if best_v is None or count < best_count:
                    best_v, best_count = v, count
            if forced is None:
                return inside, out, best_v
            inside, out = self._choose(inside, out, forced)

    def kernels(self, inside: int = 0, out: int = 0) -> Iterator[int]:
        self.nodes += 1
        state = self._propagate(inside, out)
        if state is None:
            return
        inside, out, v = state
        if v is None:
            yield inside
            return
        undecided = self.full & ~inside & ~out
        cands = sorted(
            _bits((self.d.succ_mask(v) | 1 << v) & undecided),
            key=lambda w: (-self.d.out_degree(w), w),
        )
        for w in cands:
            yield from self.kernels(*self._choose(inside, out, w))
            out |= 1 << w


def iter_kernels(d: Digraph) -> Iterator[KernelSet]:
    """Every kernel of *d*, each once."""
    search = _KernelSearch(d)
    for mask in search.kernels():
        yield _checked(d, KernelSet.from_mask(mask))
    logger.debug("kernel enumeration on n=%d visited %d nodes", d.n, search.nodes)


def find_kernel(d: Digraph) -> KernelSet | None:
    """Some kernel of *d*, or None when there is none."""
    return next(iter_kernels(d), None)


def count_kernels(d: Digraph, limit: int | None = None) -> int:
    return sum(1 for _ in itertools.islice(iter_kernels(d), limit))


def bruteforce_kernels(d: Digraph) -> list[KernelSet]:
    """All kernels by scanning every vertex subset; for small digraphs only."""
    return [
        KernelSet.from_mask(mask)
        for mask in range(1 << d.n)
        if kernel_violation(d, members_of(mask)) is None
    ]


# ---------------------------------------------------------------------------
# The gadget
# ---------------------------------------------------------------------------


class RoleKind(str, Enum):
    LITERAL = "literal"
    CLAUSE = "clause"
    SINK = "sink"


@dataclass(frozen=True, slots=True)
class Role:
    kind: RoleKind
    literal: int | None = None
    clause: int | None = None
    position: int | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value}
        if self.literal is not None:
            out["literal"] = self.literal
            out["label"] = format_literal(self.literal)
        if self.clause is not None:
            out["clause"] = self.clause
            out["position"] = self.position
        return out


@dataclass(frozen=True, slots=True)
class GadgetDigraph:
    formula: CnfFormula
    digraph: Digraph
    roles: tuple[Role, ...]

    @property
    def sink(self) -> int:
        return self.digraph.n - 1

    @property
    def literal_vertices(self) -> range:
        return range(2 * self.formula.num_vars)

    @property
    def clause_vertices(self) -> range:
        return range(2 * self.formula.num_vars, self.sink)

    def literal_vertex(self, lit: int) -> int:
        return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)

    def clause_vertex(self, clause: int, position: int) -> int:
        return 2 * self.formula.num_vars + 3 * clause + position

    def label(self, v: int) -> int:
        """The literal written on a literal or clause vertex."""
        lit = self.roles[v].literal
        if lit is None:
            raise ValueError(f"vertex {v} is the sink and has no label")
        return lit

    def d_prime(self) -> Digraph:
        """The gadget without its sink; vertex numbers are unchanged."""
        return induced_subdigraph(self.digraph, range(self.sink))[0]

    def labels(self) -> list[str]:
        out = []
        for role in self.roles:
            if role.kind is RoleKind.SINK:
                out.append("u")
            elif role.kind is RoleKind.LITERAL:
                out.append(format_literal(role.literal))
            else:
                out.append(f"C{role.clause + 1}:{format_literal(role.literal)}")
        return out


def reduce(formula: CnfFormula) -> GadgetDigraph:
    """Build the gadget: variable digons, clause triangles, label arcs and the sink."""
    v, c = formula.num_vars, formula.num_clauses
    roles: list[Role] = []
    for j in range(1, v + 1):
        roles += [Role(RoleKind.LITERAL, j), Role(RoleKind.LITERAL, -j)]
    for i, clause in enumerate(formula.clauses):
        roles += [Role(RoleKind.CLAUSE, lit, i, p) for p, lit in enumerate(clause)]
    roles.append(Role(RoleKind.SINK))
    sink = 2 * v + 3 * c

    arcs: list[tuple[int, int]] = []
    for j in range(v):
        arcs += [(2 * j, 2 * j + 1), (2 * j + 1, 2 * j)]
    for i, clause in enumerate(formula.clauses):
        base = 2 * v + 3 * i
        for p, lit in enumerate(clause):
            arcs.append((base + p, base + (p + 1) % 3))
            arcs.append((base + p, 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)))
    arcs += [(lit_v, sink) for lit_v in range(2 * v)]
    return GadgetDigraph(formula, Digraph(sink + 1, tuple(arcs)), tuple(roles))


def fig5_formula() -> CnfFormula:
    """``(x1 | ~x2 | x3) & (~x1 | x3 | x4) & (x2 | ~x3 | ~x4)``."""
    return CnfFormula(4, ((1, -2, 3), (-1, 3, 4), (2, -3, -4)))


def build_special_kernel(gadget: GadgetDigraph, assignment: Assignment) -> KernelSet:
    """A kernel of the sinkless gadget with one vertex per digon and per triangle.

    The true literal of each digon is taken. In each triangle the chosen
    vertex is the false one whose triangle successor carries a true literal;
    with two false vertices this is the out-neighbour of the other one.
    """
    formula = gadget.formula
    if not formula.is_nae(tuple(assignment)):
        raise PreconditionError("assignment is not not-all-equal for the formula")
    chosen = [
        gadget.literal_vertex(j if assignment[j - 1] else -j)
        for j in range(1, formula.num_vars + 1)
    ]
    for i, clause in enumerate(formula.clauses):
        values = [formula.literal_value(lit, assignment) for lit in clause]
        p = next(p for p in range(3) if not values[p] and values[(p + 1) % 3])
        chosen.append(gadget.clause_vertex(i, p))
    return _checked(gadget.d_prime(), KernelSet(tuple(chosen)))


def is_special_kernel(gadget: GadgetDigraph, kernel: KernelSet) -> bool:
    if not is_kernel(gadget.d_prime(), kernel.members):
        return False
    for j in range(gadget.formula.num_vars):
        if sum(1 for w in (2 * j, 2 * j + 1) if w in kernel) != 1:
            return False
    for i in range(gadget.formula.num_clauses):
        if sum(1 for p in range(3) if gadget.clause_vertex(i, p) in kernel) != 1:
            return False
    return True


def assignment_from_special_kernel(gadget: GadgetDigraph, kernel: KernelSet) -> Assignment:
    """Make true exactly the literals whose digon vertex is in the kernel."""
    return tuple(gadget.literal_vertex(j) in kernel for j in range(1, gadget.formula.num_vars + 1))


def build_token_kernel(
    gadget: GadgetDigraph, special: KernelSet, token: TokenDigraph | None = None
) -> KernelSet:
    """Kernel of F_2(gadget) assembled from a special kernel.

    In each triangle the dominating vertex is the in-neighbour of the kernel
    vertex and the undominating vertex is the remaining one. The kernel is
    the union of:

    * ``{u, v}`` for v in the special kernel;
    * pairs of literal vertices both outside it;
    * ``{v, y}`` with v a kernel literal and y dominating, or v a non-kernel
      literal and y undominating;
    * pairs of clause vertices that are both in the kernel, both dominating
      with their label vertex outside the kernel, both undominating, or a
      kernel vertex with the dominating vertex of its own triangle.
    """
    if not is_special_kernel(gadget, special):
        raise PreconditionError("input is not a special kernel of the sinkless gadget")
    token = token or token_digraph(gadget.digraph, 2)
    u = gadget.sink
    in_k = set(special.members)
    literals = list(gadget.literal_vertices)
    dominating: dict[int, int] = {}
    undominating: dict[int, int] = {}
    kernel_vertex: dict[int, int] = {}
    for i in range(gadget.formula.num_clauses):
        triangle = [gadget.clause_vertex(i, p) for p in range(3)]
        y = next(w for w in triangle if w in in_k)
        p = y - gadget.clause_vertex(i, 0)
        kernel_vertex[i] = y
        dominating[i] = gadget.clause_vertex(i, (p - 1) % 3)
        undominating[i] = gadget.clause_vertex(i, (p + 1) % 3)

    pairs: set[tuple[int, int]] = set()
    pairs |= {(v, u) for v in in_k}
    outside = [v for v in literals if v not in in_k]
    pairs |= set(itertools.combinations(outside, 2))
    for v in literals:
        side = dominating if v in in_k else undominating
        pairs |= {(v, y) for y in side.values()}

    kernel_c = list(kernel_vertex.values())
    dom_free = [
        y for y in dominating.values() if gadget.literal_vertex(gadget.label(y)) not in in_k
    ]
    undom = list(undominating.values())
    pairs |= set(itertools.combinations(kernel_c, 2))
    pairs |= set(itertools.combinations(dom_free, 2))
    pairs |= set(itertools.combinations(undom, 2))
    pairs |= {(kernel_vertex[i], dominating[i]) for i in kernel_vertex}

    nodes = tuple(rank(tuple(sorted(p))) for p in pairs)
    return _checked(token.digraph, KernelSet(nodes))


def verify_reduction(formula: CnfFormula) -> list[CheckResult]:
    """NAE satisfiable iff F_2 of the gadget has a kernel, plus the constructive direction."""
    instance = " & ".join(
        "(" + " | ".join(format_literal(lit) for lit in clause) + ")" for clause in formula.clauses
    )
    gadget = reduce(formula)
    token = token_digraph(gadget.digraph, 2)
    witness = nae_oracle(formula)
    kernel = find_kernel(token.digraph)
    data = {"nae": witness is not None, "f2_kernel": kernel is not None, "f2_nodes": token.n}
    results = []
    if (witness is None) == (kernel is None):
        results.append(passed("reduction", instance, **data))
    else:
        proof: Any = (
            list(witness) if witness is not None else [list(token.members[v]) for v in kernel]
        )
        results.append(
            failed("reduction", instance, "NAE and kernel existence disagree", proof, **data)
        )
    if witness is not None:
        special = build_special_kernel(gadget, witness)
        built = build_token_kernel(gadget, special, token)
        results.append(
            passed(
                "token-kernel-construction",
                instance,
                special=list(special.members),
                size=len(built),
            )
        )
    if kernel is not None:
        induced = {a for v in kernel for a in token.members[v] if gadget.sink in token.members[v]}
        induced.discard(gadget.sink)
        special = KernelSet(tuple(induced))
        if is_special_kernel(gadget, special) and formula.is_nae(
            assignment_from_special_kernel(gadget, special)
        ):
            results.append(passed("kernel-to-assignment", instance))
        else:
            results.append(
                failed(
                    "kernel-to-assignment",
                    instance,
                    "kernel of F_2 does not induce a special kernel",
                    list(special.members),
                )
            )
    return results


def fig6_fixture() -> Digraph:
    """The 6-node subdigraph of F_2 for the three-clause example formula.

    One token is in the digon of ``x1`` and the other in the triangle of the
    first clause. This digraph has no kernel.
    """
    gadget = reduce(fig5_formula())
    digon = (gadget.literal_vertex(1), gadget.literal_vertex(-1))
    triangle = tuple(gadget.clause_vertex(0, p) for p in range(3))
    token = token_digraph(gadget.digraph, 2)
    nodes = [rank(tuple(sorted((a, y)))) for a in digon for y in triangle]
    sub, _ = induced_subdigraph(token.digraph, nodes)
    if find_kernel(sub) is not None:
        raise RuntimeError("the digon x triangle subdigraph unexpectedly has a kernel")
    return sub


# ---------------------------------------------------------------------------
# Odd-cycle preservation and existence searches
# ---------------------------------------------------------------------------


def verify_odd_cycle_preservation(d: Digraph, k: int, *, bruteforce_upto: int = 10) -> CheckResult:
    """No oriented odd cycle in d implies none in F_k(d), and both have kernels.

    Kernels are asserted unique only for acyclic inputs; an even cycle such
    as C_4 already has two.
    """
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    if has_odd_oriented_cycle(d):
        return skipped("odd-cycle", instance, "host has an oriented odd cycle")
    token = token_digraph(d, k)
    if has_odd_oriented_cycle(token.digraph):
        return failed("odd-cycle", instance, "F_k has an oriented odd cycle", list(d.arcs))
    host_count = count_kernels(d, limit=2)
    token_count = count_kernels(token.digraph, limit=2)
    data = {"host_kernels": host_count, "token_kernels": token_count}
    if d.n <= bruteforce_upto and len(bruteforce_kernels(d)) != count_kernels(d):
        return failed(
            "odd-cycle", instance, "kernel search disagrees with subset scan", list(d.arcs)
        )
    if host_count == 0 or token_count == 0:
        return failed("odd-cycle", instance, "missing kernel", list(d.arcs), **data)
    if scc(d).is_acyclic() and (host_count, token_count) != (1, 1):
        return failed("odd-cycle", instance, "dag with more than one kernel", list(d.arcs), **data)
    return passed("odd-cycle", instance, **data)


def _candidates(seed: int, n_exhaustive: int, n_random: Iterable[int], attempts: int):
    for n in range(2, n_exhaustive + 1):
        yield from all_digraphs(n)
    rng = random.Random(seed)
    sizes = list(n_random)
    for attempt in range(attempts if sizes else 0):
        yield random_digraph(sizes[attempt % len(sizes)], (0.2, 0.4, 0.6)[attempt % 3], rng)


def search_kernel_loss(
    *, seed: int = 0, n_exhaustive: int = 4, n_random: Iterable[int] = (5,), attempts: int = 500
) -> Digraph | None:
    """A digraph with a kernel whose 2-token digraph has none."""
    for d in _candidates(seed, n_exhaustive, n_random, attempts):
        if d.n < 3 or find_kernel(d) is None:
            continue
        if find_kernel(token_digraph(d, 2).digraph) is None:
            return d
    return None


def search_kernel_gain(
    *, seed: int = 0, n_exhaustive: int = 4, n_random: Iterable[int] = (5, 6), attempts: int = 2000
) -> Digraph | None:
    """A digraph without a kernel whose 2-token digraph has one."""
    for d in _candidates(seed, n_exhaustive, n_random, attempts):
        if d.n < 3 or find_kernel(d) is not None:
            continue
        if find_kernel(token_digraph(d, 2).digraph) is not None:
            return d
    return None
