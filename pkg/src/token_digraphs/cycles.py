"""Cycles, paths and connectivity of digraphs and their token digraphs.

Exact searches here are exponential in the worst case; they are meant for
digraphs with at most a few dozen vertices.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .components import condensation, condensation_model, scc
from .digraph import Digraph, PreconditionError, _bits, mask_of, random_digraph
from .reports import CheckResult, failed, passed, skipped
from .tokens import TokenConfig, check_k, rank, token_digraph

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class CycleWitness:
    """An oriented cycle ``v_1 -> ... -> v_l -> v_1``; the closing vertex is not repeated."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def closed(self) -> tuple[int, ...]:
        return self.vertices + self.vertices[:1]

    def is_valid(self, d: Digraph) -> bool:
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            return False
        return all(d.has_arc(u, v) for u, v in zip(vs, vs[1:] + vs[:1]))


def _reach(d: Digraph, start: int, within: int) -> int:
    """Vertices of *within* reachable from *start* by paths inside *within*."""
    seen = 0
    frontier = d.succ_mask(start) & within
    while frontier:
        seen |= frontier
        grow = 0
        for v in _bits(frontier):
            grow |= d.succ_mask(v)
        frontier = grow & within & ~seen
    return seen


def _coreach(d: Digraph, target: int, within: int) -> int:
    seen = 0
    frontier = d.pred_mask(target) & within
    while frontier:
        seen |= frontier
        grow = 0
        for v in _bits(frontier):
            grow |= d.pred_mask(v)
        frontier = grow & within & ~seen
    return seen


# ---------------------------------------------------------------------------
# Girth and circumference
# ---------------------------------------------------------------------------


def shortest_cycle(d: Digraph) -> CycleWitness | None:
    """A shortest oriented cycle (digons count), or None for an acyclic digraph."""
    best: tuple[int, ...] | None = None
    for s in d.vertices:
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if d.has_arc(v, s):
                walk = [v]
                while walk[-1] != s:
                    walk.append(parent[walk[-1]])
                cycle = tuple(reversed(walk))
                if best is None or len(cycle) < len(best):
                    best = cycle
                break
            for w in d.successors(v):
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        if best is not None and len(best) == 2:
            break
    return CycleWitness(best) if best is not None else None


def girth(d: Digraph) -> int | None:
    cycle = shortest_cycle(d)
    return cycle.length if cycle else None


def longest_cycle(d: Digraph, *, at_least: int | None = None) -> CycleWitness | None:
    """A longest oriented cycle by backtracking.

    Cycles are enumerated by their smallest vertex ``s``, inside the strong
    component of ``s`` among vertices ``>= s``. A branch is cut when the path
    plus everything still reachable cannot beat the best cycle. With
    *at_least*, the search stops at the first cycle that long.
    """
    best: list[int] = []
    explored = 0

    for s in d.vertices:
        above = ((1 << d.n) - 1) & ~((1 << s) - 1)
        comp = (_reach(d, s, above) & _coreach(d, s, above)) | (1 << s)
        size = comp.bit_count()
        if size < 2 or size <= len(best):
            continue

        def extend(v: int, visited: int, path: list[int], s: int = s, comp: int = comp) -> bool:
            nonlocal best, explored
            explored += 1
            out = d.succ_mask(v) & comp
            if len(path) >= 2 and out >> s & 1 and len(path) > len(best):
                best = path.copy()
                if at_least is not None and len(best) >= at_least:
                    return True
                if len(best) == comp.bit_count():
                    return True
            free = comp & ~visited
            if len(path) + _reach(d, v, free).bit_count() <= len(best):
                return False
            for w in _bits(out & free):
                path.append(w)
                if extend(w, visited | 1 << w, path):
                    return True
                path.pop()
            return False

        if extend(s, 1 << s, [s]) and at_least is not None and len(best) >= at_least:
            break
    logger.debug("longest cycle search on n=%d explored %d states", d.n, explored)
    return CycleWitness(tuple(best)) if best else None


def circumference(d: Digraph) -> int | None:
    cycle = longest_cycle(d)
    return cycle.length if cycle else None


def verify_girth_circumference(d: Digraph, k: int) -> CheckResult:
    """``g(F_k(D)) = g(D)`` and ``c(F_k(D)) >= c(D)``."""
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    g_host = girth(d)
    if g_host is None:
        return skipped("girth-circumference", instance, "acyclic host; F_k is acyclic too")
    token = token_digraph(d, k)
    g_token = girth(token.digraph)
    c_host = circumference(d)
    c_token = circumference(token.digraph)
    data = {"g": g_host, "g_token": g_token, "c": c_host, "c_token": c_token}
    if g_token != g_host:
        witness = shortest_cycle(token.digraph)
        return failed(
            "girth-circumference",
            instance,
            f"girth {g_host} but token girth {g_token}",
            [list(token.members[v]) for v in witness.vertices] if witness else None,
            **data,
        )
    if c_token is None or c_host is None or c_token < c_host:
        return failed(
            "girth-circumference",
            instance,
            f"token circumference {c_token} below {c_host}",
            list(d.arcs),
            **data,
        )
    return passed("girth-circumference", instance, **data)


# ---------------------------------------------------------------------------
# Token paths and unilaterality
# ---------------------------------------------------------------------------


def _shortest_between(d: Digraph, sources: Iterable[int], targets: set[int]) -> list[int]:
    parent: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sorted(sources):
        parent[s] = -1
        queue.append(s)
    while queue:
        v = queue.popleft()
        if v in targets:
            walk = [v]
            while parent[walk[-1]] != -1:
                walk.append(parent[walk[-1]])
            return walk[::-1]
        for w in d.successors(v):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    raise PreconditionError("no path between the token sets; is the digraph strongly connected?")


def token_path(
    d: Digraph, a: TokenConfig | Iterable[int], b: TokenConfig | Iterable[int]
) -> tuple[TokenConfig, ...]:
    """An oriented AB-path in F_k(d), built one host path at a time.

    Each round takes a shortest host path from ``A - B`` to ``B - A``. The
    tokens sitting on it are pushed forward starting from the last one, so
    ``|A - B|`` drops by one per round.
    """
    start = set(a)
    goal = set(b)
    if len(start) != len(goal):
        raise PreconditionError(f"configurations differ in size: {len(start)} vs {len(goal)}")
    if not scc(d).is_strongly_connected():
        raise PreconditionError("token_path needs a strongly connected digraph")
    current = set(start)
    steps = [TokenConfig(tuple(current))]
    while current != goal:
        path = _shortest_between(d, current - goal, goal - current)
        occupied = [i for i, v in enumerate(path) if v in current] + [len(path) - 1]
        for t in range(len(occupied) - 2, -1, -1):
            for pos in range(occupied[t], occupied[t + 1]):
                current.discard(path[pos])
                current.add(path[pos + 1])
                steps.append(TokenConfig(tuple(current)))
    return tuple(steps)


def is_token_walk(d: Digraph, configs: Sequence[Iterable[int]]) -> bool:
    """True when each consecutive pair is one token slid along an arc of *d*."""
    masks = [mask_of(c) for c in configs]
    for x, y in zip(masks, masks[1:]):
        gone, came = x & ~y, y & ~x
        if gone.bit_count() != 1 or came.bit_count() != 1:
            return False
        if not d.has_arc(gone.bit_length() - 1, came.bit_length() - 1):
            return False
    return True


def is_unilateral(d: Digraph) -> tuple[bool, tuple[int, ...] | None]:
    """Unilateral iff CD(d) has a Hamiltonian path; returns the path when it exists.

    In a dag that path can only be the topological order, so consecutive
    components must be joined by an arc.
    """
    dec = scc(d)
    cd = condensation(d, dec)
    for i in range(dec.count - 1):
        if not cd.has_arc(i, i + 1):
            return False, None
    return True, tuple(range(dec.count))


def reachability_unilateral(d: Digraph) -> bool:
    """Pairwise check: for all x, y there is an xy-path or a yx-path."""
    everything = (1 << d.n) - 1
    reach = [_reach(d, v, everything) | 1 << v for v in d.vertices]
    return all(reach[x] >> y & 1 or reach[y] >> x & 1 for x in d.vertices for y in d.vertices)


def predict_token_unilateral(d: Digraph, k: int) -> bool:
    """Whether F_k(d) is unilateral, from the structure of CD(d).

    For ``2 <= k <= n-2``: d is unilateral and either ``t <= 2`` or ``t = 3``
    with a single-vertex middle component. For ``k`` in ``{1, n-1}`` F_k(d)
    is computed directly.
    """
    check_k(d.n, k)
    if k in (1, d.n - 1):
        logger.info("k=%d is outside 2..n-2; deciding unilaterality of F_k directly", k)
        return is_unilateral(token_digraph(d, k).digraph)[0]
    unilateral, _ = is_unilateral(d)
    if not unilateral:
        return False
    sizes = scc(d).sizes
    return len(sizes) <= 2 or (len(sizes) == 3 and sizes[1] == 1)


def condensation_hamiltonian_path(d: Digraph, k: int) -> list[Vector]:
    """Explicit Hamiltonian path through the vector model of CD(F_k(d)).

    Only defined when ``predict_token_unilateral`` holds and ``2 <= k <= n-2``.
    """
    check_k(d.n, k)
    if not 2 <= k <= d.n - 2 or not predict_token_unilateral(d, k):
        raise PreconditionError("F_k(d) is not predicted to be unilateral for this k")
    sizes = scc(d).sizes
    if len(sizes) == 1:
        return [(k,)]
    if len(sizes) == 2:
        c1, c2 = sizes
        k1, k2 = min(k, c1), min(k, c2)
        return [(x, k - x) for x in range(k1, k - k2 - 1, -1)]
    c1, _, c3 = sizes
    end = (0, 0, k) if k <= c3 else (k - c3 - 1, 1, c3)
    path: list[Vector] = []
    if k <= c1:
        path.append((k, 0, 0))
        m = 1
        while path[-1] != end and k - m >= 0:
            path.append((k - m, 1, m - 1))
            if path[-1] == end:
                break
            path.append((k - m, 0, m))
            m += 1
    else:
        m = 0
        while (not path or path[-1] != end) and c1 - m >= 0:
            path.append((c1 - m, 1, k - c1 - 1 + m))
            if path[-1] == end:
                break
            path.append((c1 - m, 0, k - c1 + m))
            m += 1
    return path


def certify_condensation_path(d: Digraph, k: int, path: Sequence[Vector]) -> CheckResult:
    """Check that *path* visits each model vertex once along model arcs."""
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    model = condensation_model(d, k)
    arcs = model.vector_arcs()
    if sorted(path) != sorted(model.vertices):
        missing = sorted(set(model.vertices) - set(path))
        return failed(
            "condensation-path",
            instance,
            "path does not cover the model exactly once",
            {"path": [list(v) for v in path], "missing": [list(v) for v in missing]},
        )
    for x, y in zip(path, path[1:]):
        if (tuple(x), tuple(y)) not in arcs:
            return failed(
                "condensation-path", instance, "step is not a move arc", [list(x), list(y)]
            )
    return passed("condensation-path", instance, length=len(path))


# ---------------------------------------------------------------------------
# Degree balance and Hamiltonicity
# ---------------------------------------------------------------------------


def is_degree_balanced(d: Digraph) -> bool:
    """Every vertex has equal in- and out-degree."""
    return all(d.out_degree(v) == d.in_degree(v) for v in d.vertices)


def verify_eulerian_equivalence(d: Digraph, k: int) -> CheckResult:
    check_k(d.n, k)
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    token = token_digraph(d, k).digraph
    host_balanced = is_degree_balanced(d)
    token_balanced = is_degree_balanced(token)
    if host_balanced == token_balanced:
        return passed("eulerian", instance, balanced=host_balanced)
    side, g = (token, "token") if not token_balanced else (d, "host")
    bad = next(v for v in side.vertices if side.out_degree(v) != side.in_degree(v))
    return failed(
        "eulerian", instance, f"only the {g} side is unbalanced", [g, bad], balanced=host_balanced
    )


def hamiltonian_cycle(d: Digraph) -> CycleWitness | None:
    """Exact Hamiltonian-cycle search from vertex 0."""
    n = d.n
    if n < 2 or not scc(d).is_strongly_connected():
        return None
    everything = (1 << n) - 1

    def stranded(visited: int, head: int) -> bool:
        free = everything & ~visited
        for u in _bits(free):
            if not d.pred_mask(u) & (free | 1 << head):
                return True
            if not d.succ_mask(u) & (free | 1):
                return True
        return False

    path = [0]

    def extend(v: int, visited: int) -> bool:
        if len(path) == n:
            return d.has_arc(v, 0)
        for w in _bits(d.succ_mask(v) & ~visited):
            seen = visited | 1 << w
            if stranded(seen, w):
                continue
            path.append(w)
            if extend(w, seen):
                return True
            path.pop()
        return False

    return CycleWitness(tuple(path)) if extend(0, 1) else None


def is_hamiltonian(d: Digraph) -> tuple[bool, CycleWitness | None]:
    cycle = hamiltonian_cycle(d)
    return cycle is not None, cycle


def search_hamiltonian_gain(
    *, seed: int = 0, n_min: int = 4, n_max: int = 6, attempts: int = 2000
) -> Digraph | None:
    """Find a non-Hamiltonian digraph whose 2-token digraph is Hamiltonian."""
    rng = random.Random(seed)
    for attempt in range(attempts):
        n = n_min + attempt % (n_max - n_min + 1)
        d = random_digraph(n, rng.choice((0.3, 0.4, 0.5, 0.6)), rng)
        if not scc(d).is_strongly_connected() or is_hamiltonian(d)[0]:
            continue
        if is_hamiltonian(token_digraph(d, 2).digraph)[0]:
            logger.info("hamiltonian gain found after %d attempts", attempt + 1)
            return d
    return None


# ---------------------------------------------------------------------------
# Long token cycles
# ---------------------------------------------------------------------------


def long_cycle_length_bound(n: int, k: int, c: int) -> int:
    """``r * c`` where r is 2 for k=2 and ``min(max(k, n-k), c-3)`` otherwise."""
    r = 2 if k == 2 else min(max(k, n - k), c - 3)
    return r * c


def construct_long_token_cycle(d: Digraph, k: int) -> CycleWitness:
    """An oriented cycle of length ``r * c(d)`` in F_k(d), returned as node indices.

    Tokens ride the longest host cycle as a block of r; the block advances one
    position per round by moving its front token first, and after c rounds it
    is back where it started. Extra tokens park off the cycle. When
    ``k != 2`` and ``k < n-k`` the construction runs on ``(reverse(d), n-k)``
    and is mapped back by complementation.
    """
    n = d.n
    if not 2 <= k <= n - 3:
        raise PreconditionError(f"need 2 <= k <= n-3 = {n - 3}, got k={k}")
    cycle = longest_cycle(d)
    if cycle is None or cycle.length < 5:
        raise PreconditionError("need a host cycle of length at least 5")
    c = cycle.length
    flipped = k != 2 and k < n - k
    work_k = n - k if flipped else k
    ring = list(reversed(cycle.vertices)) if flipped else list(cycle.vertices)
    r = 2 if work_k == 2 else min(work_k, c - 3)

    on_ring = set(ring)
    parked = [v for v in range(n) if v not in on_ring][: work_k - r]
    tokens = set(ring[:r]) | set(parked)
    configs: list[frozenset[int]] = []
    for i in range(c):
        for j in range(i + r - 1, i - 1, -1):
            configs.append(frozenset(tokens))
            tokens.discard(ring[j % c])
            tokens.add(ring[(j + 1) % c])
    if frozenset(tokens) != configs[0]:
        raise RuntimeError("token block did not return to its starting position")

    full = set(range(n))
    if flipped:
        configs = [frozenset(full - cfg) for cfg in configs]
    nodes = tuple(rank(tuple(sorted(cfg))) for cfg in configs)
    if len(set(nodes)) != len(nodes):
        raise RuntimeError("constructed token cycle repeats a configuration")
    return CycleWitness(nodes)
