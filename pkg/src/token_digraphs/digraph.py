"""Core digraph and graph types, standard constructions and family generators.

Vertices are always the dense integers ``0..n-1``. Adjacency is kept as
per-vertex bit masks so that subset tests elsewhere in the package stay cheap.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum


class GraphError(ValueError):
    """Raised when a digraph or graph would violate the simple-digraph rules."""


class PreconditionError(ValueError):
    """Raised when an operation is called outside its documented precondition."""


def _bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of *mask* in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    return tuple(_bits(mask))


@dataclass(frozen=True, slots=True)
class Digraph:
    """A finite simple digraph on vertices ``0..n-1``.

    *arcs* may be given in any order; it is stored sorted. Loops, endpoints
    out of range and repeated arcs raise :class:`GraphError`.
    """

    n: int
    arcs: tuple[tuple[int, int], ...] = ()
    _succ: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _pred: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _arc_set: frozenset[tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        arcs = tuple(sorted((int(u), int(v)) for u, v in self.arcs))
        succ = [0] * self.n
        pred = [0] * self.n
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"Arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"Self-loop at vertex {u} is not allowed")
            if succ[u] >> v & 1:
                raise GraphError(f"Duplicate arc ({u}, {v})")
            succ[u] |= 1 << v
            pred[v] |= 1 << u
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_succ", tuple(succ))
        object.__setattr__(self, "_pred", tuple(pred))
        object.__setattr__(self, "_arc_set", frozenset(arcs))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def succ_mask(self, v: int) -> int:
        return self._succ[v]

    def pred_mask(self, v: int) -> int:
        return self._pred[v]

    def successors(self, v: int) -> tuple[int, ...]:
        return members_of(self._succ[v])

    def predecessors(self, v: int) -> tuple[int, ...]:
        return members_of(self._pred[v])

    def out_degree(self, v: int) -> int:
        return self._succ[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self._pred[v].bit_count()


@dataclass(frozen=True, slots=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    _adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        adj = [0] * self.n
        normalized = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"Edge {{{u}, {v}}} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"Self-loop at vertex {u} is not allowed")
            if adj[u] >> v & 1:
                raise GraphError(f"Duplicate edge {{{u}, {v}}}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            normalized.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "_adj", tuple(adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return members_of(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    @property
    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def reverse(d: Digraph) -> Digraph:
    """Reverse every arc of *d*."""
    return Digraph(d.n, tuple((v, u) for u, v in d.arcs))


def clean_graph(d: Digraph) -> Graph:
    """Return D*: an edge ``uv`` for every digon of *d*."""
    return Graph(d.n, tuple((u, v) for u, v in d.arcs if u < v and d.has_arc(v, u)))


def bidirect(g: Graph) -> Digraph:
    """Replace every edge of *g* by a digon."""
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    return Digraph(g.n, tuple(arcs))


def underlying_graph(d: Digraph) -> Graph:
    """Forget arc directions (a digon becomes a single edge)."""
    pairs = {(min(u, v), max(u, v)) for u, v in d.arcs}
    return Graph(d.n, tuple(sorted(pairs)))


def cartesian_product(d1: Digraph, d2: Digraph) -> Digraph:
    """Cartesian product; the pair ``(u1, u2)`` is vertex ``u1 * d2.n + u2``."""
    n2 = d2.n
    arcs = [(u1 * n2 + w, v1 * n2 + w) for u1, v1 in d1.arcs for w in range(n2)]
    arcs += [(w * n2 + u2, w * n2 + v2) for u2, v2 in d2.arcs for w in range(d1.n)]
    return Digraph(d1.n * n2, tuple(arcs))


def induced_subdigraph(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Subdigraph induced by *vertices*, relabelled in increasing order.

    Returns the subdigraph and the map from old vertex ids to new ones.
    """
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    arcs = tuple((index[u], index[v]) for u, v in d.arcs if u in index and v in index)
    return Digraph(len(keep), arcs), index


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return Graph(len(keep), edges), index


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


class Family(str, Enum):
    """Named graph families.

    Vertex numbering:

    * ``complete``: ``0..n-1``.
    * ``cycle``: ``0..n-1`` in cyclic order; the directed version has arcs
      ``i -> i+1 mod n``.
    * ``path``: ``0..n-1`` in order; the directed version has arcs ``i -> i+1``.
    * ``wheel``: W_n has rim ``0..n-1`` in cyclic order and hub ``n``.
    * ``mycielski-of-cycle``: M(C_n) has the cycle ``v_i = i`` for
      ``0 <= i < n``, the shadows ``u_i = n + i`` and the apex ``2n``.
    * ``empty``: ``n`` isolated vertices.

    The directed version of ``complete``, ``wheel``, ``mycielski-of-cycle``
    and ``empty`` is the bidirected graph.
    """

    COMPLETE = "complete"
    CYCLE = "cycle"
    PATH = "path"
    WHEEL = "wheel"
    MYCIELSKI_OF_CYCLE = "mycielski-of-cycle"
    EMPTY = "empty"


_MIN_SIZE = {
    Family.COMPLETE: 1,
    Family.CYCLE: 3,
    Family.PATH: 1,
    Family.WHEEL: 3,
    Family.MYCIELSKI_OF_CYCLE: 3,
    Family.EMPTY: 1,
}


def _cycle_edges(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + (i + 1) % n) for i in range(n)]


def _family_graph(kind: Family, n: int) -> Graph:
    if kind is Family.COMPLETE:
        return Graph(n, tuple(itertools.combinations(range(n), 2)))
    if kind is Family.CYCLE:
        return Graph(n, tuple(_cycle_edges(n)))
    if kind is Family.PATH:
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if kind is Family.WHEEL:
        return Graph(n + 1, tuple(_cycle_edges(n) + [(i, n) for i in range(n)]))
    if kind is Family.MYCIELSKI_OF_CYCLE:
        edges = _cycle_edges(n)
        for i in range(n):
            for j in ((i - 1) % n, (i + 1) % n):
                edges.append((n + i, j))
            edges.append((n + i, 2 * n))
        return Graph(2 * n + 1, tuple(edges))
    return Graph(n)


def family(kind: Family | str, n: int, directed: bool = False) -> Digraph | Graph:
    """Build a member of a named family (see :class:`Family` for numbering).

    Raises
    ------
    GraphError
        If *n* is below the family's minimum size.
    """
    kind = Family(kind)
    if n < _MIN_SIZE[kind]:
        raise GraphError(f"{kind.value} needs n >= {_MIN_SIZE[kind]}, got {n}")
    if directed and kind in (Family.CYCLE, Family.PATH):
        edges = _cycle_edges(n) if kind is Family.CYCLE else [(i, i + 1) for i in range(n - 1)]
        return Digraph(n, tuple(edges))
    g = _family_graph(kind, n)
    return bidirect(g) if directed else g


def complement_of_cycle_in_complete(n: int, cycle: Sequence[int]) -> Graph:
    """K_n with the edges of the cycle through *cycle* removed."""
    removed = {
        (min(a, b), max(a, b)) for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]], strict=True)
    }
    edges = tuple(e for e in itertools.combinations(range(n), 2) if e not in removed)
    return Graph(n, edges)


def disjoint_union(d1: Digraph, d2: Digraph) -> Digraph:
    """Place *d2* after *d1*; vertex ``v`` of *d2* becomes ``d1.n + v``."""
    shifted = tuple((u + d1.n, v + d1.n) for u, v in d2.arcs)
    return Digraph(d1.n + d2.n, d1.arcs + shifted)


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    """Include each of the ``n(n-1)`` possible arcs independently with probability *p*."""
    arcs = tuple((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p)
    return Digraph(n, arcs)


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labelled simple digraph on ``n`` vertices (``2**(n*(n-1))`` of them)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(1 << len(pairs)):
        yield Digraph(n, tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1))


def tournaments(n: int) -> Iterator[Digraph]:
    """Every orientation of K_n (labelled)."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Digraph(
            n, tuple((v, u) if bits >> i & 1 else (u, v) for i, (u, v) in enumerate(pairs))
        )
