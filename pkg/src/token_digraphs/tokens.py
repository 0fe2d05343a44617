"""k-token digraphs and graphs, plus the three natural isomorphisms.

A node of F_k(D) is a k-subset of V(D). Node indices are colexicographic
ranks: the sorted subset ``c_1 < ... < c_k`` has rank ``sum C(c_i, i)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

from .digraph import (
    Digraph,
    Graph,
    _bits,
    bidirect,
    clean_graph,
    mask_of,
    members_of,
    reverse,
)
from .reports import CheckResult, failed, passed

logger = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 20_000


class TokenRangeError(ValueError):
    """Raised when k is outside ``1..n-1`` or F_k would be too large to build."""


@dataclass(frozen=True, slots=True)
class TokenConfig:
    """A k-token configuration: a strictly increasing tuple of vertex ids."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(int(v) for v in self.members))
        if len(set(members)) != len(members):
            raise ValueError(f"Token configuration repeats a vertex: {members}")
        if members and members[0] < 0:
            raise ValueError(f"Vertex ids must be non-negative, got {members[0]}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, mask: int) -> TokenConfig:
        return cls(members_of(mask))

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def rank(members: tuple[int, ...] | TokenConfig) -> int:
    """Colexicographic rank of a sorted subset."""
    return sum(comb(c, i) for i, c in enumerate(members, 1))


def rank_mask(mask: int) -> int:
    total = 0
    for i, c in enumerate(_bits(mask), 1):
        total += comb(c, i)
    return total


def unrank(r: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`rank` for subsets of size *k*."""
    if r < 0:
        raise ValueError(f"Rank must be non-negative, got {r}")
    out = []
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        out.append(c)
        r -= comb(c, i)
    return tuple(reversed(out))


def check_k(n: int, k: int) -> None:
    """Raise :class:`TokenRangeError` unless ``1 <= k <= n - 1``."""
    if not 1 <= k <= n - 1:
        raise TokenRangeError(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got k={k}")


def _check_size(n: int, k: int, node_limit: int | None) -> None:
    if node_limit is not None and comb(n, k) > node_limit:
        raise TokenRangeError(
            f"F_{k} of a {n}-vertex digraph has {comb(n, k)} nodes, above the limit {node_limit}"
        )


@dataclass(frozen=True, slots=True)
class TokenDigraph:
    """F_k(D) materialized as a :class:`Digraph` over colex node indices.

    ``witness[(i, j)]`` is the host arc ``(a, b)`` whose slide turns node
    *i* into node *j*.
    """

    host: Digraph
    k: int
    digraph: Digraph
    masks: tuple[int, ...]
    witness: dict[tuple[int, int], tuple[int, int]] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def members(self) -> tuple[tuple[int, ...], ...]:
        return tuple(members_of(m) for m in self.masks)

    def config(self, index: int) -> TokenConfig:
        return TokenConfig.from_mask(self.masks[index])

    def index_of(self, config: TokenConfig | tuple[int, ...] | frozenset[int]) -> int:
        members = tuple(sorted(config))
        if len(members) != self.k or (members and members[-1] >= self.host.n):
            raise ValueError(f"{members} is not a {self.k}-subset of 0..{self.host.n - 1}")
        return rank(members)


def _build(d: Digraph, k: int) -> TokenDigraph:
    n = d.n
    count = comb(n, k)
    masks = tuple(mask_of(unrank(r, k)) for r in range(count))
    arcs: list[tuple[int, int]] = []
    witness: dict[tuple[int, int], tuple[int, int]] = {}
    for i, mask in enumerate(masks):
        for a in _bits(mask):
            for b in _bits(d.succ_mask(a) & ~mask):
                j = rank_mask(mask ^ (1 << a) ^ (1 << b))
                arcs.append((i, j))
                witness[(i, j)] = (a, b)
    logger.debug("built F_%d of n=%d: %d nodes, %d arcs", k, n, count, len(arcs))
    return TokenDigraph(d, k, Digraph(count, tuple(arcs)), masks, witness)


def token_digraph(
    d: Digraph, k: int, *, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> TokenDigraph:
    """Build F_k(d).

    Raises
    ------
    TokenRangeError
        If k is outside ``1..n-1`` or C(n, k) exceeds *node_limit*.
    """
    check_k(d.n, k)
    _check_size(d.n, k, node_limit)
    return _build(d, k)


def token_factor(d: Digraph, k: int) -> TokenDigraph:
    """Like :func:`token_digraph` but also allows ``k = 0`` and ``k = n``."""
    if not 0 <= k <= d.n:
        raise TokenRangeError(f"k must satisfy 0 <= k <= n = {d.n}, got k={k}")
    return _build(d, k)


def token_graph(g: Graph, k: int, *, node_limit: int | None = DEFAULT_NODE_LIMIT) -> Graph:
    """Build the undirected k-token graph F_k(g) over colex node indices."""
    check_k(g.n, k)
    _check_size(g.n, k, node_limit)
    count = comb(g.n, k)
    edges: list[tuple[int, int]] = []
    for i in range(count):
        mask = mask_of(unrank(i, k))
        for a in _bits(mask):
            for b in _bits(g.neighbor_mask(a) & ~mask):
                j = rank_mask(mask ^ (1 << a) ^ (1 << b))
                if i < j:
                    edges.append((i, j))
    return Graph(count, tuple(edges))


def _first_unmatched(
    left: Digraph, right: Digraph, image: list[int]
) -> tuple[str, tuple[int, int]] | None:
    for u, v in left.arcs:
        if not right.has_arc(image[u], image[v]):
            return "arc lost", (u, v)
    inverse = {w: u for u, w in enumerate(image)}
    for u, v in right.arcs:
        if not left.has_arc(inverse[u], inverse[v]):
            return "arc gained", (inverse[u], inverse[v])
    return None


def verify_property(which: int, obj: Digraph | Graph, k: int) -> CheckResult:
    """Check one of the three natural isomorphisms through its explicit bijection.

    1. ``A -> V - A`` maps F_k(D) onto F_{n-k}(reverse(D)).
    2. the identity maps F_k(D) onto reverse(F_k(reverse(D))).
    3. the identity maps F_k(bidirect(G)) onto bidirect(F_k(G)).
    """
    check = f"property-{which}"
    instance = f"n={obj.n},k={k}"
    check_k(obj.n, k)
    if which == 1:
        if not isinstance(obj, Digraph):
            raise TypeError("Property 1 needs a Digraph")
        left = token_digraph(obj, k)
        right = token_digraph(reverse(obj), obj.n - k)
        full = (1 << obj.n) - 1
        image = [rank_mask(full ^ m) for m in left.masks]
        problem = _first_unmatched(left.digraph, right.digraph, image)
    elif which == 2:
        if not isinstance(obj, Digraph):
            raise TypeError("Property 2 needs a Digraph")
        left = token_digraph(obj, k)
        right_dg = reverse(token_digraph(reverse(obj), k).digraph)
        problem = _first_unmatched(left.digraph, right_dg, list(range(left.n)))
    elif which == 3:
        if not isinstance(obj, Graph):
            raise TypeError("Property 3 needs a Graph")
        left = token_digraph(bidirect(obj), k)
        right_dg = bidirect(token_graph(obj, k))
        problem = _first_unmatched(left.digraph, right_dg, list(range(left.n)))
    else:
        raise ValueError(f"Unknown property {which}; expected 1, 2 or 3")
    if problem is None:
        return passed(check, instance, nodes=left.n, arcs=left.digraph.num_arcs)
    reason, (u, v) = problem
    return failed(
        check,
        instance,
        f"{reason} under the bijection",
        [list(left.members[u]), list(left.members[v])],
    )


def verify_fact_one(d: Digraph, k: int) -> CheckResult:
    """Check that the clean graph of F_k(D) equals F_k of the clean graph."""
    check_k(d.n, k)
    lhs = clean_graph(token_digraph(d, k).digraph)
    rhs = token_graph(clean_graph(d), k)
    instance = f"n={d.n},k={k}"
    if lhs.edges == rhs.edges:
        return passed("fact-1", instance, edges=len(lhs.edges))
    diff = sorted(set(lhs.edges) ^ set(rhs.edges))
    u, v = diff[0]
    return failed(
        "fact-1",
        instance,
        "clean graph of F_k differs from F_k of clean graph",
        [list(unrank(u, k)), list(unrank(v, k))],
    )
