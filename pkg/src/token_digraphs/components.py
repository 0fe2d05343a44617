"""Strongly connected components, condensation and the vector model of CD(F_k(D))."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce

from .digraph import Digraph, _bits, cartesian_product, induced_subdigraph
from .reports import CheckResult, failed, passed
from .tokens import TokenConfig, check_k, rank, token_digraph, token_factor

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SccDecomposition:
    """Components ``C_1..C_t`` listed in a topological order of the condensation."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def is_strongly_connected(self) -> bool:
        return self.count == 1

    def is_acyclic(self) -> bool:
        """True when every component is a single vertex (no oriented cycle)."""
        return all(len(c) == 1 for c in self.components)


def _tarjan(d: Digraph) -> list[tuple[int, ...]]:
    """Iterative Tarjan; components come out sinks first."""
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    found: list[tuple[int, ...]] = []
    counter = 0
    for root in range(d.n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(d.successors(root)))]
        while work:
            v, successors = work[-1]
            descended = False
            for w in successors:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(d.successors(w))))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                found.append(tuple(sorted(comp)))
    return found


def scc(d: Digraph) -> SccDecomposition:
    """Strongly connected components in topological order.

    The order is certified: every arc between two components must go from
    the lower index to the higher one.
    """
    components = tuple(reversed(_tarjan(d)))
    component_of = [0] * d.n
    for i, comp in enumerate(components):
        for v in comp:
            component_of[v] = i
    for u, v in d.arcs:
        if component_of[u] > component_of[v]:
            raise RuntimeError(f"Component order is not topological at arc ({u}, {v})")
    return SccDecomposition(components, tuple(component_of))


def condensation(d: Digraph, decomposition: SccDecomposition | None = None) -> Digraph:
    """CD(d): vertex i is component C_i."""
    dec = decomposition or scc(d)
    of = dec.component_of
    arcs = {(of[u], of[v]) for u, v in d.arcs if of[u] != of[v]}
    return Digraph(dec.count, tuple(arcs))


def is_weakly_connected(d: Digraph) -> bool:
    if d.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        grow = 0
        for v in _bits(frontier):
            grow |= d.succ_mask(v) | d.pred_mask(v)
        frontier = grow & ~seen
        seen |= frontier
    return seen.bit_count() == d.n


@dataclass(frozen=True, slots=True)
class CondensationModel:
    """The dag on vectors of V_k(c_1..c_t) with (i, j)-move arcs.

    ``arcs`` index into ``vertices``.
    """

    sizes: tuple[int, ...]
    k: int
    cd_arcs: tuple[tuple[int, int], ...]
    vertices: tuple[Vector, ...]
    arcs: tuple[tuple[int, int], ...]

    @property
    def digraph(self) -> Digraph:
        return Digraph(len(self.vertices), self.arcs)

    def index_of(self, vector: Iterable[int]) -> int:
        return self.vertices.index(tuple(vector))

    def vector_arcs(self) -> set[tuple[Vector, Vector]]:
        return {(self.vertices[i], self.vertices[j]) for i, j in self.arcs}


def vectors(sizes: tuple[int, ...], k: int) -> list[Vector]:
    """All ``(k_1..k_t)`` with ``0 <= k_i <= c_i`` summing to *k*, largest first."""
    out: list[Vector] = []

    def extend(prefix: list[int], i: int, left: int) -> None:
        if i == len(sizes):
            if left == 0:
                out.append(tuple(prefix))
            return
        if left > sum(sizes[i:]):
            return
        for value in range(min(left, sizes[i]), -1, -1):
            prefix.append(value)
            extend(prefix, i + 1, left - value)
            prefix.pop()

    extend([], 0, k)
    return out


def build_model(
    sizes: tuple[int, ...], cd_arcs: Iterable[tuple[int, int]], k: int
) -> CondensationModel:
    cd_arcs = tuple(sorted(cd_arcs))
    verts = vectors(sizes, k)
    position = {v: i for i, v in enumerate(verts)}
    arcs = []
    for idx, vec in enumerate(verts):
        for i, j in cd_arcs:
            if vec[i] > 0 and vec[j] < sizes[j]:
                moved = list(vec)
                moved[i] -= 1
                moved[j] += 1
                arcs.append((idx, position[tuple(moved)]))
    return CondensationModel(tuple(sizes), k, cd_arcs, tuple(verts), tuple(sorted(arcs)))


def condensation_model(d: Digraph, k: int) -> CondensationModel:
    """The model on V_k(c_1..c_t) predicted for CD(F_k(d))."""
    check_k(d.n, k)
    dec = scc(d)
    return build_model(dec.sizes, condensation(d, dec).arcs, k)


def associated_vector(
    d: Digraph, a: TokenConfig | Iterable[int], decomposition: SccDecomposition | None = None
) -> Vector:
    """``k_j = |A ∩ C_j|`` for each component in topological order."""
    dec = decomposition or scc(d)
    counts = [0] * dec.count
    for v in a:
        if not 0 <= v < d.n:
            raise ValueError(f"Vertex {v} is not in the digraph")
        counts[dec.component_of[v]] += 1
    return tuple(counts)


def verify_condensation_theorem(d: Digraph, k: int) -> list[CheckResult]:
    """Compare CD(F_k(d)) with the vector model, plus the connectivity corollaries."""
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    host = scc(d)
    token = token_digraph(d, k)
    tdec = scc(token.digraph)
    model = condensation_model(d, k)
    results: list[CheckResult] = []

    comp_vector: list[Vector] = []
    mismatch = None
    for comp in tdec.components:
        vecs = {associated_vector(d, token.members[i], host) for i in comp}
        if len(vecs) != 1 and mismatch is None:
            mismatch = [list(token.members[i]) for i in comp]
        comp_vector.append(min(vecs))
    induced = {
        (comp_vector[tdec.component_of[u]], comp_vector[tdec.component_of[v]])
        for u, v in token.digraph.arcs
        if tdec.component_of[u] != tdec.component_of[v]
    }
    data = {"scc_count": tdec.count, "model_vertex_count": len(model.vertices)}
    if mismatch is not None:
        results.append(
            failed("condensation-model", instance, "one SCC mixes vectors", mismatch, **data)
        )
    elif sorted(comp_vector) != sorted(model.vertices):
        extra = sorted(set(comp_vector) ^ set(model.vertices))
        results.append(
            failed(
                "condensation-model",
                instance,
                "SCC vectors differ from V_k",
                [list(v) for v in extra] or [list(v) for v in comp_vector],
                **data,
            )
        )
    elif induced != model.vector_arcs():
        bad = sorted(induced ^ model.vector_arcs())[0]
        results.append(
            failed(
                "condensation-model",
                instance,
                "condensation arcs differ from the move arcs",
                [list(bad[0]), list(bad[1])],
                **data,
            )
        )
    else:
        results.append(passed("condensation-model", instance, **data))

    for check, lhs, rhs in (
        ("strong-connectivity", host.is_strongly_connected(), tdec.is_strongly_connected()),
        ("acyclicity", host.is_acyclic(), tdec.is_acyclic()),
        ("weak-connectivity", is_weakly_connected(d), is_weakly_connected(token.digraph)),
    ):
        if lhs == rhs:
            results.append(passed(check, instance, host=lhs, token=rhs))
        else:
            results.append(
                failed(check, instance, f"host={lhs} but F_k={rhs}", list(d.arcs), host=lhs)
            )
    return results


def verify_component_decomposition(
    d: Digraph, a: TokenConfig | Iterable[int]
) -> CheckResult:
    """Certify that the SCC of F_k(d) containing *a* is the product of per-component token digraphs.

    The map is ``B -> (B ∩ C_j)_j`` over components with ``k_j > 0``.
    """
    config = a if isinstance(a, TokenConfig) else TokenConfig(tuple(a))
    k = config.k
    check_k(d.n, k)
    instance = f"n={d.n},A={list(config.members)}"
    dec = scc(d)
    vec = associated_vector(d, config, dec)
    used = [j for j, kj in enumerate(vec) if kj > 0]

    factors = []
    relabels = []
    for j in used:
        sub, index = induced_subdigraph(d, dec.components[j])
        factors.append(token_factor(sub, vec[j]))
        relabels.append(index)
    product = reduce(cartesian_product, [f.digraph for f in factors])

    token = token_digraph(d, k)
    tdec = scc(token.digraph)
    start = token.index_of(config.members)
    block = list(tdec.components[tdec.component_of[start]])
    image: dict[int, int] = {}
    for i in block:
        members = token.members[i]
        if associated_vector(d, members, dec) != vec:
            return failed(
                "component-decomposition", instance, "SCC node with another vector", list(members)
            )
        coord = 0
        for factor, index, j in zip(factors, relabels, used, strict=True):
            local = tuple(sorted(index[v] for v in members if dec.component_of[v] == j))
            coord = coord * factor.n + rank(local)
        image[i] = coord
    data = {"scc_size": len(block), "product_size": product.n}
    if len(set(image.values())) != len(block) or len(block) != product.n:
        return failed(
            "component-decomposition",
            instance,
            "map onto product vertices is not a bijection",
            [len(block), product.n],
            **data,
        )
    in_block = set(block)
    for u, v in token.digraph.arcs:
        if u in in_block and v in in_block and not product.has_arc(image[u], image[v]):
            return failed(
                "component-decomposition",
                instance,
                "arc not preserved",
                [list(token.members[u]), list(token.members[v])],
                **data,
            )
    inverse = {c: i for i, c in image.items()}
    for x, y in product.arcs:
        if not token.digraph.has_arc(inverse[x], inverse[y]):
            return failed(
                "component-decomposition",
                instance,
                "product arc has no preimage",
                [list(token.members[inverse[x]]), list(token.members[inverse[y]])],
                **data,
            )
    return passed("component-decomposition", instance, **data)


def representative_configs(d: Digraph, k: int) -> list[TokenConfig]:
    """One configuration per vector of V_k, in model order."""
    dec = scc(d)
    out = []
    for vec in vectors(dec.sizes, k):
        members: list[int] = []
        for comp, kj in zip(dec.components, vec, strict=True):
            members.extend(comp[:kj])
        out.append(TokenConfig(tuple(members)))
    return out


def fig3_fixture() -> Digraph:
    """Seven vertices with components of sizes 4, 2 and 1.

    ``C_1`` is the 4-cycle ``0->1->2->3->0``, ``C_2`` the digon ``4<->5`` and
    ``C_3`` the vertex 6; the condensation has arcs C_1->C_2, C_2->C_3 and
    C_1->C_3.
    """
    arcs = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 4), (3, 4), (5, 6), (0, 6)]
    return Digraph(7, tuple(arcs))
