"""Cliques, proper colourings, acyclic partitions and the 2-token chromatic conjecture."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import networkx as nx

from .components import scc
from .cycles import circumference, girth, shortest_cycle
from .digraph import (
    Digraph,
    Graph,
    PreconditionError,
    _bits,
    clean_graph,
    complement_of_cycle_in_complete,
    family,
    induced_subdigraph,
    induced_subgraph,
)
from .reports import CheckResult, VerificationError, failed, passed, skipped
from .tokens import check_k, token_digraph, token_graph, unrank, verify_fact_one

logger = logging.getLogger(__name__)

DEFAULT_CORPUS_N_MAX = 6

# ---------------------------------------------------------------------------
# Cliques
# ---------------------------------------------------------------------------


def max_clique(g: Graph) -> tuple[int, ...]:
    """A maximum clique by branch and bound with a greedy colouring bound."""
    adj = [g.neighbor_mask(v) for v in g.vertices]
    best: list[int] = []

    def expand(chosen: list[int], pool: int) -> None:
        nonlocal best
        if not pool:
            if len(chosen) > len(best):
                best = chosen.copy()
            return
        order: list[tuple[int, int]] = []
        uncoloured = pool
        colour = 0
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, colour))
                uncoloured &= ~(1 << v)
                avail &= ~(1 << v) & ~adj[v]
        for v, bound in reversed(order):
            if len(chosen) + bound <= len(best):
                return
            chosen.append(v)
            expand(chosen, pool & adj[v])
            chosen.pop()
            pool &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return tuple(sorted(best))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def bidirected_clique_number(d: Digraph) -> int:
    """Largest vertex set joined pairwise by digons; equals the clique number of D*."""
    return clique_number(clean_graph(d))


def clique_formula(omega: int, n: int, k: int) -> int:
    return min(omega, max(n - k + 1, k + 1))


def verify_clique_formula(d: Digraph, k: int) -> list[CheckResult]:
    """Bidirected clique number of F_k(d) against ``min(w, max(n-k+1, k+1))``."""
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    omega = bidirected_clique_number(d)
    expected = clique_formula(omega, d.n, k)
    token = token_digraph(d, k)
    clique = max_clique(clean_graph(token.digraph))
    data = {"omega": omega, "omega_token": len(clique), "formula": expected}
    if len(clique) == expected:
        result = passed("clique-formula", instance, **data)
    else:
        result = failed(
            "clique-formula",
            instance,
            f"token clique number {len(clique)} but formula gives {expected}",
            [list(token.members[v]) for v in clique],
            **data,
        )
    return [result, verify_fact_one(d, k)]


# ---------------------------------------------------------------------------
# Proper colourings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ProperColoring:
    colors: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(set(self.colors))

    def is_valid(self, g: Graph) -> bool:
        return len(self.colors) == g.n and all(self.colors[u] != self.colors[v] for u, v in g.edges)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return [out[c] for c in sorted(out)]


def dsatur(g: Graph) -> list[int]:
    """Greedy DSATUR colouring: most saturated vertex first, ties by degree."""
    colors = [-1] * g.n
    seen: list[set[int]] = [set() for _ in g.vertices]
    for _ in g.vertices:
        v = max(
            (u for u in g.vertices if colors[u] == -1),
            key=lambda u: (len(seen[u]), g.degree(u), -u),
        )
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in g.neighbors(v):
            seen[w].add(c)
    return colors


class _ColoringSearch:
    """Exact r-colourability by DSATUR backtracking with forward checking."""

    def __init__(self, g: Graph, r: int, seed_clique: Sequence[int]) -> None:
        self.g = g
        self.r = r
        self.adj = [g.neighbors(v) for v in g.vertices]
        self.colors = [-1] * g.n
        self.count = [[0] * r for _ in g.vertices]
        self.sat = [0] * g.n
        self.nodes = 0
        self.used = 0
        for c, v in enumerate(seed_clique[:r]):
            self._assign(v, c)
        self.used = min(len(seed_clique), r)

    def _assign(self, v: int, c: int) -> None:
        self.colors[v] = c
        for w in self.adj[v]:
            self.count[w][c] += 1
            if self.count[w][c] == 1:
                self.sat[w] += 1

    def _unassign(self, v: int, c: int) -> None:
        self.colors[v] = -1
        for w in self.adj[v]:
            self.count[w][c] -= 1
            if self.count[w][c] == 0:
                self.sat[w] -= 1

    def solve(self) -> bool:
        self.nodes += 1
        pick = -1
        key = (-1, -1)
        for v in self.g.vertices:
            if self.colors[v] != -1:
                continue
            if self.sat[v] == self.r:
                return False
            cand = (self.sat[v], len(self.adj[v]))
            if cand > key:
                pick, key = v, cand
        if pick == -1:
            return True
        used = self.used
        for c in range(min(self.r, used + 1)):
            if self.count[pick][c]:
                continue
            self._assign(pick, c)
            self.used = max(used, c + 1)
            if self.solve():
                return True
            self._unassign(pick, c)
            self.used = used
        return False


def optimal_coloring(g: Graph, *, lower_bound: int | None = None) -> ProperColoring:
    """An optimal proper colouring.

    Colour counts are tried upward from the clique number (or *lower_bound*,
    when larger) until the DSATUR upper bound.
    """
    if g.n == 0:
        return ProperColoring(())
    clique = max_clique(g)
    greedy = dsatur(g)
    upper = max(greedy) + 1
    lower = max(len(clique), lower_bound or 0)
    for r in range(lower, upper):
        search = _ColoringSearch(g, r, clique)
        found = search.solve()
        logger.debug("%d-colouring of n=%d: %s after %d nodes", r, g.n, found, search.nodes)
        if found:
            return ProperColoring(tuple(search.colors))
    return ProperColoring(tuple(greedy))


def chromatic_number(g: Graph) -> int:
    coloring = optimal_coloring(g)
    if not coloring.is_valid(g):
        raise RuntimeError(f"colouring search returned an improper colouring {coloring.colors}")
    return coloring.r


def edge_coloring_view(g: Graph, coloring: ProperColoring) -> dict[int, list[list[int]]]:
    """Read a colouring of F_2(g) as a colouring of the pairs of V(g)."""
    if len(coloring.colors) != math.comb(g.n, 2):
        raise ValueError("colouring does not match the node count of F_2")
    view: dict[int, list[list[int]]] = {}
    for node, c in enumerate(coloring.colors):
        view.setdefault(c, []).append(list(unrank(node, 2)))
    return {c: sorted(pairs) for c, pairs in sorted(view.items())}


def is_critical(g: Graph, chi: int | None = None) -> bool:
    """Every vertex deletion lowers the chromatic number."""
    chi = chromatic_number(g) if chi is None else chi
    for v in g.vertices:
        sub, _ = induced_subgraph(g, (u for u in g.vertices if u != v))
        if chromatic_number(sub) != chi - 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Acyclic partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AcyclicPartition:
    colors: tuple[int, ...]
    r: int

    def classes(self) -> list[list[int]]:
        return [[v for v, c in enumerate(self.colors) if c == i] for i in range(self.r)]

    def violation(self, d: Digraph) -> tuple[int, list[int]] | None:
        """A class and an oriented cycle inside it, or None if every class is acyclic."""
        if len(self.colors) != d.n or any(not 0 <= c < self.r for c in self.colors):
            raise ValueError("partition does not fit the digraph")
        for i, members in enumerate(self.classes()):
            sub, index = induced_subdigraph(d, members)
            cycle = shortest_cycle(sub)
            if cycle is not None:
                back = {new: old for old, new in index.items()}
                return i, [back[v] for v in cycle.vertices]
        return None

    def is_valid(self, d: Digraph) -> bool:
        return self.violation(d) is None


def _closes_cycle(d: Digraph, v: int, klass: int) -> bool:
    """Would adding *v* to the vertex set *klass* create an oriented cycle?"""
    seen = 0
    frontier = d.succ_mask(v) & klass
    while frontier:
        if frontier & d.pred_mask(v):
            return True
        seen |= frontier
        grow = 0
        for w in _bits(frontier):
            grow |= d.succ_mask(w)
        frontier = grow & klass & ~seen
    return False


def _partition_search(d: Digraph, r: int) -> list[int] | None:
    order = sorted(d.vertices, key=lambda v: (-(d.out_degree(v) + d.in_degree(v)), v))
    masks = [0] * r
    colors = [-1] * d.n

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(r, used + 1)):
            if _closes_cycle(d, v, masks[c]):
                continue
            masks[c] |= 1 << v
            colors[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            masks[c] &= ~(1 << v)
            colors[v] = -1
        return False

    return colors if place(0, 0) else None


def _min_partition(d: Digraph) -> list[int]:
    if d.n == 0:
        return []
    lower = 1 if scc(d).is_acyclic() else 2
    for r in range(lower, d.n + 1):
        colors = _partition_search(d, r)
        if colors is not None:
            return colors
    raise RuntimeError("no acyclic partition found with n classes")


def optimal_acyclic_partition(d: Digraph, *, by_components: bool = True) -> AcyclicPartition:
    """A minimum acyclic partition, solved one strong component at a time.

    Arcs between components never close a cycle, so the per-component
    partitions can share class labels.
    """
    if not by_components:
        colors = _min_partition(d)
        return AcyclicPartition(tuple(colors), max(colors, default=-1) + 1)
    colors = [0] * d.n
    r = 1 if d.n else 0
    for comp in scc(d).components:
        if len(comp) == 1:
            continue
        sub, index = induced_subdigraph(d, comp)
        local = _min_partition(sub)
        for v in comp:
            colors[v] = local[index[v]]
        r = max(r, max(local) + 1)
    return AcyclicPartition(tuple(colors), r)


def dichromatic_number(d: Digraph) -> int:
    partition = optimal_acyclic_partition(d)
    found = partition.violation(d)
    if found is not None:
        raise RuntimeError(f"partition search returned a cyclic class: {found}")
    return partition.r


def lift_acyclic_partition(d: Digraph, c: AcyclicPartition, k: int) -> AcyclicPartition:
    """``c'(A) = sum of c(a) over a in A, mod r`` on F_k(d).

    Raises
    ------
    PreconditionError
        If *c* is not an acyclic partition of *d*.
    VerificationError
        If a class of the lifted partition contains an oriented cycle.
    """
    check_k(d.n, k)
    if not c.is_valid(d):
        raise PreconditionError("input is not an acyclic partition of the digraph")
    token = token_digraph(d, k)
    colors = tuple(sum(c.colors[a] for a in members) % c.r for members in token.members)
    lifted = AcyclicPartition(colors, c.r)
    found = lifted.violation(token.digraph)
    if found is not None:
        klass, cycle = found
        failed(
            "dichromatic-lift",
            f"n={d.n},m={d.num_arcs},k={k}",
            f"class {klass} of the lifted partition has a cycle",
            [list(token.members[v]) for v in cycle],
        ).raise_for_status()
    return lifted


def cordero_bound(d: Digraph) -> int:
    """``ceil((c - 1) / (g - 1)) + 1`` from the exact girth g and circumference c."""
    g = girth(d)
    if g is None:
        raise PreconditionError("the bound needs a digraph with an oriented cycle")
    c = circumference(d)
    assert c is not None
    return math.ceil((c - 1) / (g - 1)) + 1


def verify_dichromatic(d: Digraph, k: int) -> list[CheckResult]:
    """Lift, monotonicity, component maximum, spacious equality and the cycle bound."""
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    results: list[CheckResult] = []
    base = optimal_acyclic_partition(d)
    chi = base.r
    token = token_digraph(d, k)
    chi_token = dichromatic_number(token.digraph)
    data = {"chi": chi, "chi_token": chi_token}
    try:
        lifted = lift_acyclic_partition(d, base, k)
        results.append(passed("dichromatic-lift", instance, classes=lifted.r, **data))
    except VerificationError as e:
        results.append(e.result)

    if chi_token <= chi:
        results.append(passed("dichromatic-monotone", instance, **data))
    else:
        results.append(
            failed("dichromatic-monotone", instance, "F_k needs more classes", list(d.arcs), **data)
        )

    whole = optimal_acyclic_partition(d, by_components=False).r
    if whole == chi:
        results.append(passed("dichromatic-components", instance, chi=chi))
    else:
        results.append(
            failed(
                "dichromatic-components",
                instance,
                f"whole-digraph search gives {whole}, component maximum gives {chi}",
                list(d.arcs),
            )
        )

    spacious = False
    for comp in scc(d).components:
        sub, _ = induced_subdigraph(d, comp)
        if dichromatic_number(sub) == chi and d.n >= len(comp) + k - 1:
            spacious = True
            break
    if spacious:
        if chi_token == chi:
            results.append(passed("dichromatic-spacious", instance, **data))
        else:
            results.append(
                failed(
                    "dichromatic-spacious",
                    instance,
                    "room for k-1 parked tokens but the number dropped",
                    list(d.arcs),
                    **data,
                )
            )

    if girth(d) is None:
        results.append(skipped("cycle-bound", instance, "acyclic digraph"))
    else:
        bound = cordero_bound(d)
        if chi <= bound and chi_token <= bound:
            results.append(passed("cycle-bound", instance, bound=bound, **data))
        else:
            results.append(
                failed("cycle-bound", instance, "bound exceeded", list(d.arcs), bound=bound, **data)
            )
    return results


# ---------------------------------------------------------------------------
# Special substrings
# ---------------------------------------------------------------------------


def find_special_substring(s: str) -> tuple[int, int]:
    """Inclusive bounds of the first substring ``X Y^j Z`` with X, Y, Z distinct, j >= 1."""
    if len(set(s)) != 3:
        raise PreconditionError(f"expected exactly three distinct letters, got {sorted(set(s))}")
    for i in range(len(s) - 2):
        x, y = s[i], s[i + 1]
        if x == y:
            continue
        j = i + 1
        while j < len(s) and s[j] == y:
            j += 1
        if j < len(s) and s[j] not in (x, y):
            return i, j
    raise RuntimeError(f"no special substring in {s!r}")


# ---------------------------------------------------------------------------
# The 2-token chromatic conjecture
# ---------------------------------------------------------------------------


def from_networkx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    edges = {tuple(sorted((index[a], index[b]))) for a, b in h.edges}
    return Graph(len(index), tuple(sorted(edges)))


def _augment(graphs: list[nx.Graph]) -> list[nx.Graph]:
    """Add one vertex in every possible way, keeping one graph per isomorphism class."""
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for h in graphs:
        n = h.number_of_nodes()
        for size in range(1, n + 1):
            for nbrs in itertools.combinations(range(n), size):
                grown = h.copy()
                grown.add_node(n)
                grown.add_edges_from((n, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(grown)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(grown, other) for other in bucket):
                    continue
                bucket.append(grown)
                out.append(grown)
    return out


def conjecture_corpus(n_max: int = DEFAULT_CORPUS_N_MAX, n_min: int = 3) -> Iterator[Graph]:
    """Connected graphs on ``n_min..n_max`` vertices, one per isomorphism class.

    Up to seven vertices the networkx graph atlas is used; larger orders are
    grown by adding a vertex to each connected graph of the previous order.
    """
    layer: list[nx.Graph] = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n > n_max:
            break
        if n >= max(n_min, 1) and nx.is_connected(h):
            yield from_networkx(h)
        if n == 7:
            layer.append(h)
    layer = [h for h in layer if nx.is_connected(h)]
    for n in range(8, n_max + 1):
        layer = _augment(layer)
        logger.info("grew %d connected graphs on %d vertices", len(layer), n)
        for h in layer:
            if n >= n_min:
                yield from_networkx(h)


def graph_id(g: Graph) -> str:
    return f"n={g.n}:" + ",".join(f"{u}-{v}" for u, v in g.edges)


def scan_graph(g: Graph, *, monotonicity: bool = False) -> CheckResult:
    """Check the 2-token chromatic conjecture on one graph."""
    gid = graph_id(g)
    if g.n < 3:
        return skipped("conjecture", gid, "F_2 needs at least 3 vertices")
    coloring = optimal_coloring(g)
    chi = coloring.r
    f2 = token_graph(g, 2)
    f2_coloring = optimal_coloring(f2, lower_bound=clique_formula(clique_number(g), g.n, 2))
    chi2 = f2_coloring.r
    even_complete = g.is_complete and g.n % 2 == 0
    data: dict[str, object] = {"graph_id": gid, "chi": chi, "chi_F2": chi2}
    if monotonicity:
        series = [chi] + [chromatic_number(token_graph(g, k)) for k in range(2, g.n // 2 + 1)]
        data["chi_Fk"] = series
        data["drops"] = [k + 1 for k in range(1, len(series)) if series[k] < series[k - 1]]
    problems = []
    if chi2 > chi:
        problems.append(f"chi(F_2) = {chi2} exceeds chi = {chi}")
    if (chi2 < chi) != even_complete:
        problems.append("strict drop does not match 'complete of even order'")
    if even_complete and chi2 != g.n - 1:
        problems.append(f"chi(F_2(K_{g.n})) = {chi2}, expected {g.n - 1}")
    if (chi <= 2) != (chi2 <= 2):
        problems.append("bipartiteness of G and F_2(G) differ")
    if not problems:
        return passed("conjecture", gid, **data)
    omega = clique_number(g)
    data["filters"] = {
        "chi_above_3": chi > 3,
        "critical": is_critical(g, chi),
        "max_degree_at_least_chi": g.max_degree >= chi,
        "chi_above_omega": chi > omega,
    }
    return failed(
        "conjecture",
        gid,
        "; ".join(problems),
        {"coloring_F2": edge_coloring_view(g, f2_coloring)},
        **data,
    )


def scan_conjecture(graphs: Iterable[Graph], *, monotonicity: bool = False) -> list[CheckResult]:
    return [scan_graph(g, monotonicity=monotonicity) for g in graphs]


def k8_minus_c5() -> Graph:
    """K_8 without the edges of the 5-cycle 0-1-2-3-4-0."""
    return complement_of_cycle_in_complete(8, [0, 1, 2, 3, 4])


K8_MINUS_C5_EXPECTED = (6, 6, 6, 5)


def k8_minus_c5_study(ks: Sequence[int] = (1, 2, 3, 4)) -> list[CheckResult]:
    """Exact chromatic numbers of F_k(K_8 - C_5)."""
    g = k8_minus_c5()
    omega = clique_number(g)
    results = []
    for k in ks:
        tg = token_graph(g, k)
        coloring = optimal_coloring(tg, lower_bound=clique_formula(omega, g.n, k))
        expected = K8_MINUS_C5_EXPECTED[k - 1]
        data = {"nodes": tg.n, "chi": coloring.r}
        if coloring.r == expected and coloring.is_valid(tg):
            results.append(passed("k8c5", f"k={k}", **data))
        else:
            results.append(
                failed(
                    "k8c5",
                    f"k={k}",
                    f"chi(F_{k}) = {coloring.r}, expected {expected}",
                    list(coloring.colors),
                    **data,
                )
            )
    return results


# (family, n, chi(F_2)) pairs with known exact answers.
NAMED_F2_CHROMATIC: tuple[tuple[str, int, int], ...] = (
    ("complete", 4, 3),
    ("complete", 5, 5),
    ("complete", 6, 5),
    ("wheel", 5, 4),
    ("mycielski-of-cycle", 5, 4),
)


def verify_named_chromatic(kind: str, n: int, expected: int) -> CheckResult:
    """Exact chromatic number of F_2 of a named family member."""
    g = family(kind, n)
    assert isinstance(g, Graph)
    f2 = token_graph(g, 2)
    coloring = optimal_coloring(f2, lower_bound=clique_formula(clique_number(g), g.n, 2))
    instance = f"F_2({kind} {n})"
    if coloring.r == expected and coloring.is_valid(f2):
        return passed("named-chromatic", instance, chi_F2=coloring.r, nodes=f2.n)
    return failed(
        "named-chromatic",
        instance,
        f"chi(F_2) = {coloring.r}, expected {expected}",
        edge_coloring_view(g, coloring),
        chi_F2=coloring.r,
    )
