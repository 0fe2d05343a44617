"""Read and write edge lists, DIMACS CNF, DOT and JSON sidecars.

Edge-list format::

    n m
    u v        (m lines)

Blank lines and lines starting with ``#`` are ignored when parsing. The
serializers always emit the canonical form (arcs sorted), so
``serialize(parse(x)) == x`` for canonical files.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from typing import TYPE_CHECKING

from .cnf import CnfFormula
from .digraph import Digraph, Graph, GraphError

if TYPE_CHECKING:
    from .kernels import GadgetDigraph
    from .tokens import TokenDigraph

_DOT_PALETTE = (
    "red",
    "blue",
    "green",
    "orange",
    "purple",
    "brown",
    "cyan",
    "magenta",
    "gold",
    "gray",
)


class ParseError(GraphError):
    """Malformed input; *line* is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append((number, stripped.split()))
    return rows


def _int_pair(tokens: list[str], line: int) -> tuple[int, int]:
    if len(tokens) != 2:
        raise ParseError(f"expected 2 integers, got {len(tokens)} fields", line)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line) from None


def _parse_pairs(text: str, *, directed: bool) -> tuple[int, list[tuple[int, int]]]:
    rows = _content_lines(text)
    if not rows:
        raise ParseError("empty input: missing 'n m' header")
    header_line, header = rows[0]
    n, m = _int_pair(header, header_line)
    if n < 0 or m < 0:
        raise ParseError(f"header values must be non-negative, got n={n} m={m}", header_line)
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line, tokens in rows[1:]:
        u, v = _int_pair(tokens, line)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1} in '{u} {v}'", line)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            kind = "arc" if directed else "edge"
            raise ParseError(f"duplicate {kind} '{u} {v}'", line)
        seen.add(key)
        pairs.append((u, v))
    if len(pairs) != m:
        raise ParseError(f"header declares {m} lines but {len(pairs)} were found", header_line)
    return n, pairs


def parse_digraph(text: str) -> Digraph:
    """Parse an edge list into a :class:`Digraph`."""
    n, arcs = _parse_pairs(text, directed=True)
    return Digraph(n, tuple(arcs))


def parse_graph(text: str) -> Graph:
    """Parse an edge list into an undirected :class:`Graph`."""
    n, edges = _parse_pairs(text, directed=False)
    return Graph(n, tuple(edges))


def to_edge_list(obj: Digraph | Graph) -> str:
    pairs = obj.arcs if isinstance(obj, Digraph) else obj.edges
    lines = [f"{obj.n} {len(pairs)}"] + [f"{u} {v}" for u, v in pairs]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Every clause must have exactly three literals."""
    header: tuple[int, int] | None = None
    header_line = 0
    clauses: list[tuple[int, int, int]] = []
    pending: list[int] = []
    pending_line = 0
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c") or stripped.startswith("%"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if header is not None:
                raise ParseError("duplicate 'p cnf' header", number)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {stripped!r}", number)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"malformed header {stripped!r}", number) from None
            header_line = number
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", number)
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"expected an integer literal, got {token!r}", number) from None
            if not pending:
                pending_line = number
            if lit == 0:
                if len(pending) != 3:
                    raise ParseError(
                        f"clause has {len(pending)} literals, expected exactly 3", pending_line
                    )
                clauses.append((pending[0], pending[1], pending[2]))
                pending = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared {header[0]} variables", number)
            pending.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if pending:
        raise ParseError("last clause is not terminated by 0", pending_line)
    if len(clauses) != header[1]:
        raise ParseError(
            f"header declares {header[1]} clauses but {len(clauses)} were found", header_line
        )
    return CnfFormula(header[0], tuple(clauses))


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


def to_dot(
    obj: Digraph | Graph,
    *,
    labels: Mapping[int, str] | Sequence[str] | None = None,
    colors: Sequence[int] | None = None,
    name: str = "G",
) -> str:
    """Render a digraph or graph as DOT.

    *labels* override the default ``str(v)`` labels; *colors* (one integer
    class per vertex) become fill colours.
    """
    directed = isinstance(obj, Digraph)
    keyword, connector = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{keyword} {json.dumps(name)} {{"]
    for v in obj.vertices:
        label = labels[v] if labels is not None else str(v)
        attrs = [f"label={json.dumps(label)}"]
        if colors is not None:
            fill = _DOT_PALETTE[colors[v] % len(_DOT_PALETTE)]
            attrs.append(f'style=filled fillcolor="{fill}"')
            attrs.append(f"class={colors[v]}")
        lines.append(f"  {v} [{' '.join(attrs)}];")
    pairs = obj.arcs if directed else obj.edges
    for u, v in pairs:
        lines.append(f"  {u} {connector} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def token_node_map(token: TokenDigraph) -> dict[str, object]:
    """Sidecar for a token digraph: node index to member list."""
    return {
        "host_n": token.host.n,
        "k": token.k,
        "nodes": [list(members) for members in token.members],
    }


def gadget_role_map(gadget: GadgetDigraph) -> dict[str, object]:
    """Sidecar for a reduction gadget: vertex index to role."""
    return {
        "num_vars": gadget.formula.num_vars,
        "clauses": [list(c) for c in gadget.formula.clauses],
        "roles": [role.to_dict() for role in gadget.roles],
    }


def to_json(payload: object) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write(path: str, text: str) -> None:
    with open(path, "w") as f:
        f.write(text)


def save_edge_list(obj: Digraph | Graph, path: str) -> None:
    _write(path, to_edge_list(obj))


def save_dimacs(formula: CnfFormula, path: str) -> None:
    _write(path, to_dimacs(formula))


def save_dot(obj: Digraph | Graph, path: str, **kwargs: object) -> None:
    _write(path, to_dot(obj, **kwargs))  # type: ignore[arg-type]


def save_json(payload: object, path: str) -> None:
    _write(path, to_json(payload))


def load_digraph(path: str) -> Digraph:
    with open(path) as f:
        return parse_digraph(f.read())


def load_graph(path: str) -> Graph:
    with open(path) as f:
        return parse_graph(f.read())


def load_dimacs(path: str) -> CnfFormula:
    with open(path) as f:
        return parse_dimacs(f.read())
