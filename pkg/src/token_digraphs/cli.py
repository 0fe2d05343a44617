"""Command-line interface for token-digraphs."""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click

from .coloring import (
    bidirected_clique_number,
    conjecture_corpus,
    cordero_bound,
    graph_id,
    optimal_acyclic_partition,
    optimal_coloring,
)
from .components import scc
from .cycles import (
    circumference,
    girth,
    is_degree_balanced,
    is_unilateral,
    search_hamiltonian_gain,
)
from .digraph import Digraph, Graph, GraphError, PreconditionError
from .formats import (
    gadget_role_map,
    load_digraph,
    load_dimacs,
    load_graph,
    save_dimacs,
    save_dot,
    save_edge_list,
    save_json,
    to_edge_list,
    token_node_map,
)
from .kernels import (
    find_kernel,
    has_odd_oriented_cycle,
    reduce,
    search_kernel_gain,
    search_kernel_loss,
)
from .reports import RunReport, passed, skipped, stopwatch
from .suites import DEFAULT_SEED, SUITES, SuiteOptions, default_suites, execute, run_suite
from .tokens import DEFAULT_NODE_LIMIT, TokenRangeError, token_digraph, token_graph, unrank

T = TypeVar("T")

EXIT_USAGE = 2

_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_INPUT_ERRORS = (OSError, GraphError, PreconditionError, TokenRangeError, ValueError)


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _guard(action: Callable[[], T]) -> T:
    """Run *action*, turning input errors into exit code 2."""
    try:
        return action()
    except _INPUT_ERRORS as e:
        _fail(str(e))


def _set_label(members: tuple[int, ...]) -> str:
    return "{" + ",".join(map(str, members)) + "}"


def _write_report(report: RunReport, output: str | None, timings: bool) -> None:
    if output:
        with open(output, "w") as f:
            f.write(report.to_json(timings))


def _emit_report(report: RunReport, *, as_json: bool, output: str | None, timings: bool) -> None:
    _write_report(report, output, timings)
    if as_json:
        click.echo(report.to_json(timings), nl=False)
    else:
        summary = report.summary()
        click.echo(f"=== {report.command} ===")
        click.echo(
            f"pass: {summary['pass']}  fail: {summary['fail']}  "
            f"skip: {summary['skip']}  total: {summary['total']}"
        )
        if timings:
            total = sum(r.elapsed for r in report.results)
            click.echo(f"elapsed: {total:.3f}s")
        for r in report.failures:
            click.echo(f"FAIL {r.check} [{r.instance}]: {r.detail}")
            click.echo(f"  witness: {json.dumps(r.witness)}")
    sys.exit(report.exit_code)


@click.group()
@click.version_option(package_name="token-digraphs")
@click.option("-v", "--verbose", count=True, help="Log progress (-v info, -vv debug).")
def cli(verbose: int) -> None:
    """Token Digraphs - build, analyze and verify k-token digraphs."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=_LOG_FORMAT, stream=sys.stderr)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-k", "k", type=int, required=True, help="Number of tokens.")
@click.option("--graph", "undirected", is_flag=True, help="Read an undirected edge list.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Edge list destination.")
@click.option("--dot", type=click.Path(dir_okay=False), help="Also write DOT here.")
@click.option(
    "--node-limit",
    type=int,
    default=DEFAULT_NODE_LIMIT,
    show_default=True,
    help="Refuse to build token digraphs with more nodes.",
)
def build(
    input_file: str, k: int, undirected: bool, output: str | None, dot: str | None, node_limit: int
) -> None:
    """Build F_k of an edge-list file.

    With --output, a node map sidecar is written next to it as
    OUTPUT.nodes.json, listing the members of each node index.
    """

    def construct() -> tuple[Digraph | Graph, dict[str, object]]:
        if undirected:
            g = load_graph(input_file)
            tg = token_graph(g, k, node_limit=node_limit)
            nodes = [list(unrank(i, k)) for i in range(tg.n)]
            return tg, {"host_n": g.n, "k": k, "nodes": nodes}
        token = token_digraph(load_digraph(input_file), k, node_limit=node_limit)
        return token.digraph, token_node_map(token)

    result, node_map = _guard(construct)
    labels = [_set_label(unrank(i, k)) for i in range(result.n)]
    if output:
        save_edge_list(result, output)
        save_json(node_map, f"{output}.nodes.json")
        click.echo(f"Wrote F_{k}: {result.n} nodes to {output}")
    else:
        click.echo(to_edge_list(result), nl=False)
    if dot:
        save_dot(result, dot, labels=labels, name=f"F_{k}")


@cli.command()
@click.argument("theorem", type=click.Choice(sorted(SUITES) + ["all"]))
@click.option("--n-max", type=int, default=7, show_default=True, help="Largest host order.")
@click.option("--samples", type=int, default=200, show_default=True, help="Random hosts per order.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Sampling seed.")
@click.option("-k", "k", type=int, default=None, help="Only this token count (default: all).")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes.")
@click.option("--max-clauses", type=int, default=2, show_default=True, help="Reduction corpus.")
@click.option(
    "--exhaustive-upto",
    type=int,
    default=4,
    show_default=True,
    help="Enumerate every labelled digraph up to this order.",
)
@click.option("--include-slow", is_flag=True, help="With 'all', also run slow suites.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the JSON report.")
@click.option("--timings", is_flag=True, help="Include wall times in the report.")
@click.option("--json-output", "as_json", is_flag=True, help="Print the JSON report.")
def verify(
    theorem: str,
    n_max: int,
    samples: int,
    seed: int,
    k: int | None,
    jobs: int,
    max_clauses: int,
    exhaustive_upto: int,
    include_slow: bool,
    output: str | None,
    timings: bool,
    as_json: bool,
) -> None:
    """Run a verification suite; exit 1 if any check fails.

    THEOREM is a suite name, or 'all' for every suite not marked slow.
    """
    try:
        options = SuiteOptions(
            n_max=n_max,
            samples=samples,
            seed=seed,
            k=k,
            jobs=jobs,
            max_clauses=max_clauses,
            exhaustive_upto=exhaustive_upto,
        )
    except ValueError as e:
        _fail(str(e))
    if theorem == "all":
        names = list(SUITES) if include_slow else default_suites()
    else:
        names = [theorem]
    report = RunReport(f"verify {theorem}", {"suites": names, **options.to_dict()})
    for name in names:
        report.extend(run_suite(name, options))
    _emit_report(report, as_json=as_json, output=output, timings=timings)


@cli.command(name="reduce")
@click.argument("cnf_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Gadget edge list path.")
@click.option("--dot", type=click.Path(dir_okay=False), help="Also write DOT here.")
def reduce_cmd(cnf_file: str, output: str | None, dot: str | None) -> None:
    """Turn a DIMACS 3-CNF formula into the kernel gadget.

    With --output, roles go to OUTPUT.roles.json and the normalised
    formula to OUTPUT.cnf.
    """
    formula = _guard(lambda: load_dimacs(cnf_file))
    gadget = _guard(lambda: reduce(formula))
    if output:
        save_edge_list(gadget.digraph, output)
        save_json(gadget_role_map(gadget), f"{output}.roles.json")
        save_dimacs(gadget.formula, f"{output}.cnf")
        click.echo(
            f"Wrote gadget: {gadget.digraph.n} vertices, "
            f"{gadget.digraph.num_arcs} arcs to {output}"
        )
    else:
        click.echo(to_edge_list(gadget.digraph), nl=False)
    if dot:
        save_dot(gadget.digraph, dot, labels=gadget.labels(), name="gadget")


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-k", "k", type=int, default=None, help="Search F_k of the input instead.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the JSON report.")
@click.option("--timings", is_flag=True, help="Include wall times in the report.")
@click.option("--json-output", "as_json", is_flag=True, help="Print the JSON report.")
def kernel(
    input_file: str, k: int | None, output: str | None, timings: bool, as_json: bool
) -> None:
    """Find a kernel of a digraph (or of its k-token digraph)."""
    d = _guard(lambda: load_digraph(input_file))
    instance = f"{input_file}" if k is None else f"F_{k}({input_file})"
    with stopwatch() as elapsed:
        if k is None:
            target = d
            members: list[Any] | None = None
        else:
            token = _guard(lambda: token_digraph(d, k))
            target = token.digraph
            members = [list(m) for m in token.members]
        found = find_kernel(target)
    if found is None:
        result = passed("kernel", instance, "none", found=False)
    else:
        result = passed("kernel", instance, found=True, size=len(found))
        result.witness = [members[v] for v in found] if members else list(found)
    result.elapsed = elapsed[0]
    report = RunReport("kernel", {"input": input_file, "k": k}, [result])
    _write_report(report, output, timings)
    if as_json:
        click.echo(report.to_json(timings), nl=False)
    elif found is None:
        click.echo("Kernel: none")
    else:
        click.echo(f"Kernel (size {len(found)}): {json.dumps(result.witness)}")


def _save_colored_f2(g: Graph, index: int, directory: Path) -> Path:
    """Write an optimal colouring of F_2(g) as DOT, one fill colour per class."""
    f2 = token_graph(g, 2)
    coloring = optimal_coloring(f2)
    path = directory / f"graph_{index:05d}.dot"
    labels = [_set_label(unrank(i, 2)) for i in range(f2.n)]
    save_dot(f2, str(path), labels=labels, colors=coloring.colors, name=f"F_2({graph_id(g)})")
    return path


@cli.command()
@click.option("--n-max", type=int, default=6, show_default=True, help="Largest graph order.")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes.")
@click.option("--monotonicity", is_flag=True, help="Also record chi(F_k) for k <= n/2.")
@click.option(
    "--dot",
    "dot_dir",
    type=click.Path(file_okay=False),
    help="Write coloured F_2 of every counterexample as DOT into this directory.",
)
@click.option(
    "--dot-graph",
    "dot_graphs",
    multiple=True,
    help="With --dot, also write this graph id (e.g. 'n=3:0-1,1-2'). Repeatable.",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the JSON report.")
@click.option("--timings", is_flag=True, help="Include wall times in the report.")
@click.option("--json-output", "as_json", is_flag=True, help="Print the JSON report.")
def scan(
    n_max: int,
    jobs: int,
    monotonicity: bool,
    dot_dir: str | None,
    dot_graphs: tuple[str, ...],
    output: str | None,
    timings: bool,
    as_json: bool,
) -> None:
    """Scan connected graphs for counterexamples to the 2-token chromatic conjecture."""
    if jobs < 1:
        _fail(f"--jobs must be at least 1, got {jobs}")
    if dot_graphs and not dot_dir:
        _fail("--dot-graph needs --dot")
    graphs = list(conjecture_corpus(n_max))
    tasks = [("conjecture", (g.n, g.edges, monotonicity)) for g in graphs]
    results = execute(tasks, jobs)
    report = RunReport(
        "scan", {"n_max": n_max, "jobs": jobs, "monotonicity": monotonicity}, results
    )
    for r in report.failures:
        click.echo(f"COUNTEREXAMPLE {r.instance}: {r.detail}", err=True)
        click.echo(f"  {json.dumps(r.data, sort_keys=True)}", err=True)
    if dot_dir:
        directory = Path(dot_dir)
        directory.mkdir(parents=True, exist_ok=True)
        wanted = set(dot_graphs)
        written = [
            _save_colored_f2(g, i, directory)
            for i, (g, r) in enumerate(zip(graphs, results, strict=True))
            if r.failed or graph_id(g) in wanted
        ]
        missing = wanted - {graph_id(g) for g in graphs}
        for gid in sorted(missing):
            click.echo(f"Warning: graph {gid} is not in the corpus", err=True)
        click.echo(f"Wrote {len(written)} DOT file(s) to {dot_dir}", err=True)
    _emit_report(report, as_json=as_json, output=output, timings=timings)


def _invariants(d: Digraph) -> dict[str, Any]:
    dec = scc(d)
    found = find_kernel(d)
    unilateral, _ = is_unilateral(d)
    cyclic = not dec.is_acyclic()
    return {
        "n": d.n,
        "m": d.num_arcs,
        "scc_sizes": list(dec.sizes),
        "girth": girth(d),
        "circumference": circumference(d),
        "unilateral": unilateral,
        "degree_balanced": is_degree_balanced(d),
        "odd_cycle": has_odd_oriented_cycle(d),
        "kernel": list(found) if found is not None else None,
        "bidirected_clique_number": bidirected_clique_number(d),
        "dichromatic_number": optimal_acyclic_partition(d).r,
        "cycle_bound": cordero_bound(d) if cyclic else None,
    }


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-k", "k", type=int, default=None, help="Also analyze F_k of the input.")
@click.option("--json-output", "as_json", is_flag=True, help="Output as JSON.")
def analyze(input_file: str, k: int | None, as_json: bool) -> None:
    """Dump structural invariants of a digraph."""
    d = _guard(lambda: load_digraph(input_file))
    payload: dict[str, Any] = {"digraph": _invariants(d)}
    if k is not None:
        token = _guard(lambda: token_digraph(d, k))
        payload["k"] = k
        payload["token_digraph"] = _invariants(token.digraph)

    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    for section, values in payload.items():
        if not isinstance(values, dict):
            continue
        title = "Digraph" if section == "digraph" else f"F_{k}"
        click.echo(f"=== {title} ===")
        for key, value in values.items():
            click.echo(f"{key:<26} {value}")


_SEARCHES: dict[str, Callable[[int], Digraph | None]] = {
    "kernel-loss": lambda seed: search_kernel_loss(seed=seed),
    "kernel-gain": lambda seed: search_kernel_gain(seed=seed),
    "hamiltonian-gain": lambda seed: search_hamiltonian_gain(seed=seed),
}

_SEARCH_CLAIMS = {
    "kernel-loss": "has a kernel, F_2 has none",
    "kernel-gain": "has no kernel, F_2 has one",
    "hamiltonian-gain": "not Hamiltonian, F_2 Hamiltonian",
}


@cli.command()
@click.argument("kind", type=click.Choice(sorted(_SEARCHES)))
@click.option("--seed", type=int, default=0, show_default=True, help="Sampling seed.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Edge list of the find.")
@click.option("--dot", type=click.Path(dir_okay=False), help="Also write DOT here.")
@click.option("--json-output", "as_json", is_flag=True, help="Print the JSON report.")
def search(kind: str, seed: int, output: str | None, dot: str | None, as_json: bool) -> None:
    """Hunt for a small digraph whose 2-token digraph behaves differently."""
    found = _SEARCHES[kind](seed)
    if found is None:
        result = skipped(kind, f"seed={seed}", "nothing found within the search budget")
    else:
        result = passed(kind, f"seed={seed}", _SEARCH_CLAIMS[kind], n=found.n)
        result.witness = [list(a) for a in found.arcs]
        if output:
            save_edge_list(found, output)
        if dot:
            save_dot(found, dot, name=kind)
    report = RunReport("search", {"kind": kind, "seed": seed}, [result])
    if as_json:
        click.echo(report.to_json(), nl=False)
        return
    if found is None:
        click.echo(f"No {kind} example found (seed={seed}).")
        return
    click.echo(f"Found {kind} example on {found.n} vertices ({_SEARCH_CLAIMS[kind]}):")
    click.echo(to_edge_list(found), nl=False)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
