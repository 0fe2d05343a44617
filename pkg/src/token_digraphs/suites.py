"""Verification suites: deterministic corpora plus a registry of per-claim checks.

Every suite turns :class:`SuiteOptions` into a list of picklable tasks. A
task names a checker and carries plain tuples, so tasks can be shipped to
worker processes; results come back in task order whatever ``jobs`` is.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any

from .cnf import CnfFormula, enumerate_formulas
from .coloring import (
    DEFAULT_CORPUS_N_MAX,
    NAMED_F2_CHROMATIC,
    conjecture_corpus,
    dichromatic_number,
    k8_minus_c5_study,
    scan_graph,
    verify_clique_formula,
    verify_dichromatic,
    verify_named_chromatic,
)
from .components import (
    fig3_fixture,
    representative_configs,
    scc,
    verify_component_decomposition,
    verify_condensation_theorem,
)
from .cycles import (
    certify_condensation_path,
    circumference,
    condensation_hamiltonian_path,
    construct_long_token_cycle,
    is_hamiltonian,
    is_token_walk,
    is_unilateral,
    long_cycle_length_bound,
    predict_token_unilateral,
    reachability_unilateral,
    token_path,
    verify_eulerian_equivalence,
    verify_girth_circumference,
)
from .digraph import (
    Digraph,
    Graph,
    all_digraphs,
    clean_graph,
    disjoint_union,
    family,
    random_digraph,
    tournaments,
)
from .kernels import (
    dag_kernel,
    fig5_formula,
    fig6_fixture,
    find_kernel,
    verify_odd_cycle_preservation,
    verify_reduction,
)
from .reports import CheckResult, failed, passed, stopwatch
from .tokens import token_digraph, verify_fact_one, verify_property

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
EDGE_PROBABILITIES = (0.2, 0.4, 0.6)

# Largest host order per suite whose checks grow with |V(F_k)| faster than
# the rest; suites not listed go up to ``n_max``.
ORDER_CAPS = {
    "condensation": 6,
    "lemma2": 5,
    "girth": 6,
    "long-cycle": 6,
    "odd-cycle": 6,
}
# Above this order the dichromatic suite only tries k in {1, 2, n-2, n-1}.
DICHROMATIC_ALL_K_UPTO = 5

Task = tuple[str, tuple[Any, ...]]


@dataclass(frozen=True)
class SuiteOptions:
    """Scope of a verification run."""

    n_max: int = 7
    samples: int = 200
    seed: int = DEFAULT_SEED
    k: int | None = None
    jobs: int = 1
    max_clauses: int = 2
    exhaustive_upto: int = 4

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")
        if self.samples < 0:
            raise ValueError(f"samples must be non-negative, got {self.samples}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def ks(self, n: int) -> list[int]:
        """Token counts to try on an n-vertex host."""
        if self.k is not None:
            return [self.k] if 1 <= self.k <= n - 1 else []
        return list(range(1, n))


# ---------------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------------


def digraph_corpus(
    options: SuiteOptions, *, n_min: int = 2, n_max: int | None = None
) -> Iterator[Digraph]:
    """Every labelled digraph up to ``exhaustive_upto`` vertices, then seeded samples.

    Sampled digraphs cycle through :data:`EDGE_PROBABILITIES`; each order
    draws from its own generator so the corpus for n does not depend on
    ``n_max``.
    """
    top = options.n_max if n_max is None else min(n_max, options.n_max)
    for n in range(n_min, top + 1):
        if n <= options.exhaustive_upto:
            yield from all_digraphs(n)
            continue
        rng = random.Random(options.seed * 1009 + n)
        for i in range(options.samples):
            yield random_digraph(n, EDGE_PROBABILITIES[i % len(EDGE_PROBABILITIES)], rng)


def _pack(d: Digraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    return d.n, d.arcs


def _unpack(n: int, arcs: tuple[tuple[int, int], ...]) -> Digraph:
    return Digraph(n, arcs)


def _per_k(
    checker: str, digraphs: Iterator[Digraph], options: SuiteOptions, low: int = 1
) -> list[Task]:
    return [
        (checker, (*_pack(d), k))
        for d in digraphs
        for k in options.ks(d.n)
        if low <= k <= d.n - low
    ]


# ---------------------------------------------------------------------------
# Instance checkers (module level so worker processes can import them)
# ---------------------------------------------------------------------------


def _check_properties(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    return [
        verify_property(1, d, k),
        verify_property(2, d, k),
        verify_property(3, clean_graph(d), k),
        verify_fact_one(d, k),
    ]


def _check_token_path(d: Digraph, k: int) -> CheckResult:
    a, b = tuple(range(k)), tuple(range(d.n - k, d.n))
    instance = f"n={d.n},m={d.num_arcs},k={k}"
    steps = token_path(d, a, b)
    members = [list(s.members) for s in steps]
    if steps[0].members == a and steps[-1].members == b and is_token_walk(d, members):
        return passed("token-path", instance, length=len(steps) - 1)
    return failed("token-path", instance, "not a token walk from A to B", members)


def _check_condensation(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    results = verify_condensation_theorem(d, k)
    if scc(d).is_strongly_connected():
        results.append(_check_token_path(d, k))
    return results


def _check_lemma2(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    return [verify_component_decomposition(d, a) for a in representative_configs(d, k)]


def _check_unilateral(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    instance = f"n={n},m={len(arcs)},k={k}"
    results = []
    host, _ = is_unilateral(d)
    if host == reachability_unilateral(d):
        results.append(passed("unilateral-criterion", instance, unilateral=host))
    else:
        results.append(
            failed("unilateral-criterion", instance, "condensation path test disagrees", list(arcs))
        )
    predicted = predict_token_unilateral(d, k)
    actual, _ = is_unilateral(token_digraph(d, k).digraph)
    if predicted == actual:
        results.append(passed("token-unilateral", instance, unilateral=actual))
    else:
        results.append(
            failed(
                "token-unilateral",
                instance,
                f"predicted {predicted} but F_k gives {actual}",
                list(arcs),
            )
        )
    if predicted and 2 <= k <= n - 2:
        results.append(certify_condensation_path(d, k, condensation_hamiltonian_path(d, k)))
    return results


def _check_girth(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    return [verify_girth_circumference(_unpack(n, arcs), k)]


def _check_long_cycle(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    instance = f"n={n},m={len(arcs)},k={k}"
    c = circumference(d)
    assert c is not None
    expected = long_cycle_length_bound(n, k, c)
    cycle = construct_long_token_cycle(d, k)
    token = token_digraph(d, k)
    members = [list(token.members[v]) for v in cycle.vertices]
    if cycle.length == expected and cycle.is_valid(token.digraph):
        return [passed("long-cycle", instance, length=cycle.length, c=c)]
    return [
        failed(
            "long-cycle",
            instance,
            f"cycle of length {cycle.length}, expected a valid one of length {expected}",
            members,
            c=c,
        )
    ]


def _check_eulerian(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    return [verify_eulerian_equivalence(_unpack(n, arcs), k)]


def _check_hamiltonian_cycle_family(n: int) -> list[CheckResult]:
    d = family("cycle", n, directed=True)
    assert isinstance(d, Digraph)
    found, witness = is_hamiltonian(token_digraph(d, 2).digraph)
    expected = n in (3, 5)
    instance = f"F_2(directed C_{n})"
    if found == expected:
        return [passed("hamiltonian-cn", instance, hamiltonian=found)]
    return [
        failed(
            "hamiltonian-cn",
            instance,
            f"hamiltonian={found}, expected {expected}",
            list(witness.vertices) if witness else None,
        )
    ]


def _check_odd_cycle(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    d = _unpack(n, arcs)
    results = [verify_odd_cycle_preservation(d, k)]
    if k == 1 and scc(d).is_acyclic():
        instance = f"n={n},m={len(arcs)}"
        found = find_kernel(d)
        unique = dag_kernel(d)
        if found == unique:
            results.append(passed("dag-kernel", instance, size=len(unique)))
        else:
            results.append(
                failed(
                    "dag-kernel",
                    instance,
                    "search and dag construction disagree",
                    [list(unique), list(found) if found else None],
                )
            )
    return results


def _check_reduction(num_vars: int, clauses: tuple) -> list[CheckResult]:
    return verify_reduction(CnfFormula(num_vars, clauses))


def _check_fig6() -> list[CheckResult]:
    try:
        d = fig6_fixture()
    except RuntimeError as e:
        return [failed("z-subdigraph", "digon x triangle", str(e), None)]
    return [passed("z-subdigraph", "digon x triangle", nodes=d.n, arcs=d.num_arcs)]


def _check_clique(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    return verify_clique_formula(_unpack(n, arcs), k)


def _check_dichromatic(n: int, arcs: tuple, k: int) -> list[CheckResult]:
    return verify_dichromatic(_unpack(n, arcs), k)


def _check_dichromatic_c5() -> list[CheckResult]:
    d = family("cycle", 5, directed=True)
    assert isinstance(d, Digraph)
    chi = dichromatic_number(token_digraph(d, 2).digraph)
    if chi == 2:
        return [passed("dichromatic-c5", "F_2(directed C_5)", chi_token=chi)]
    return [failed("dichromatic-c5", "F_2(directed C_5)", f"got {chi}, expected 2", chi)]


def _check_conjecture(n: int, edges: tuple, monotonicity: bool) -> list[CheckResult]:
    return [scan_graph(Graph(n, edges), monotonicity=monotonicity)]


def _check_named(kind: str, n: int, expected: int) -> list[CheckResult]:
    return [verify_named_chromatic(kind, n, expected)]


def _check_k8c5(k: int) -> list[CheckResult]:
    return k8_minus_c5_study((k,))


CHECKERS: dict[str, Callable[..., list[CheckResult]]] = {
    "properties": _check_properties,
    "condensation": _check_condensation,
    "lemma2": _check_lemma2,
    "unilateral": _check_unilateral,
    "girth": _check_girth,
    "long-cycle": _check_long_cycle,
    "eulerian": _check_eulerian,
    "hamiltonian-cn": _check_hamiltonian_cycle_family,
    "odd-cycle": _check_odd_cycle,
    "reduction": _check_reduction,
    "fig6": _check_fig6,
    "clique": _check_clique,
    "dichromatic": _check_dichromatic,
    "dichromatic-c5": _check_dichromatic_c5,
    "conjecture": _check_conjecture,
    "named-chromatic": _check_named,
    "k8c5": _check_k8c5,
}


def run_task(task: Task) -> list[CheckResult]:
    """Run one task and stamp the elapsed time evenly onto its results.

    A checker that raises yields a single failed result whose witness is
    the task's arguments, so one broken instance never ends the run.
    """
    name, args = task
    with stopwatch() as elapsed:
        try:
            results = CHECKERS[name](*args)
        except Exception as e:
            logger.warning("checker %s raised on %r: %s", name, args, e)
            results = [failed(name, f"task {name}", f"{type(e).__name__}: {e}", list(args))]
    for r in results:
        r.elapsed = elapsed[0] / max(len(results), 1)
    return results


# ---------------------------------------------------------------------------
# Suite task builders
# ---------------------------------------------------------------------------


def _properties_tasks(options: SuiteOptions) -> list[Task]:
    return _per_k("properties", digraph_corpus(options), options)


def _condensation_tasks(options: SuiteOptions) -> list[Task]:
    tasks = [("condensation", (*_pack(fig3_fixture()), 2))]
    corpus = digraph_corpus(options, n_max=ORDER_CAPS["condensation"])
    return tasks + _per_k("condensation", corpus, options)


def _lemma2_tasks(options: SuiteOptions) -> list[Task]:
    tasks = [("lemma2", (*_pack(fig3_fixture()), 2))]
    return tasks + _per_k(
        "lemma2", digraph_corpus(options, n_max=ORDER_CAPS["lemma2"]), options
    )


def _unilateral_tasks(options: SuiteOptions) -> list[Task]:
    return _per_k("unilateral", digraph_corpus(options, n_min=4), options, low=2)


def _girth_tasks(options: SuiteOptions) -> list[Task]:
    cap = ORDER_CAPS["girth"]
    corpus = [d for d in digraph_corpus(options, n_max=cap) if not scc(d).is_acyclic()]
    for n in range(3, min(options.n_max, options.exhaustive_upto + 1) + 1):
        corpus.extend(t for t in tournaments(n) if not scc(t).is_acyclic())
    return _per_k("girth", iter(corpus), options)


def _long_cycle_fixtures() -> list[tuple[Digraph, int]]:
    out = []
    for c, extra in ((5, 3), (6, 2), (5, 2), (7, 1)):
        cyc = family("cycle", c, directed=True)
        assert isinstance(cyc, Digraph)
        host = disjoint_union(cyc, Digraph(extra))
        out.extend((host, k) for k in range(2, host.n - 2))
    return out


def _long_cycle_tasks(options: SuiteOptions) -> list[Task]:
    tasks = [("long-cycle", (*_pack(d), k)) for d, k in _long_cycle_fixtures()]
    for d in digraph_corpus(options, n_min=5, n_max=ORDER_CAPS["long-cycle"]):
        c = circumference(d)
        if c is None or c < 5:
            continue
        tasks.extend(("long-cycle", (*_pack(d), k)) for k in options.ks(d.n) if 2 <= k <= d.n - 3)
    return tasks


def _eulerian_tasks(options: SuiteOptions) -> list[Task]:
    return _per_k("eulerian", digraph_corpus(options), options)


def _hamiltonian_tasks(options: SuiteOptions) -> list[Task]:
    return [("hamiltonian-cn", (n,)) for n in range(3, 8)]


def _odd_cycle_tasks(options: SuiteOptions) -> list[Task]:
    return _per_k("odd-cycle", digraph_corpus(options, n_max=ORDER_CAPS["odd-cycle"]), options)


def _reduction_tasks(options: SuiteOptions) -> list[Task]:
    formulas = [fig5_formula(), *enumerate_formulas(3, options.max_clauses)]
    return [("fig6", ())] + [("reduction", (f.num_vars, f.clauses)) for f in formulas]


def _clique_tasks(options: SuiteOptions) -> list[Task]:
    return _per_k("clique", digraph_corpus(options), options)


def _dichromatic_tasks(options: SuiteOptions) -> list[Task]:
    tasks: list[Task] = [("dichromatic-c5", ())]
    for d in digraph_corpus(options):
        ks = options.ks(d.n)
        if d.n > DICHROMATIC_ALL_K_UPTO:
            ks = [k for k in ks if min(k, d.n - k) <= 2]
        tasks.extend(("dichromatic", (*_pack(d), k)) for k in ks)
    return tasks


def _conjecture_tasks(options: SuiteOptions) -> list[Task]:
    tasks: list[Task] = [("named-chromatic", entry) for entry in NAMED_F2_CHROMATIC]
    graphs = conjecture_corpus(min(options.n_max, DEFAULT_CORPUS_N_MAX))
    return tasks + [("conjecture", (g.n, g.edges, False)) for g in graphs]


def _k8c5_tasks(options: SuiteOptions) -> list[Task]:
    return [("k8c5", (k,)) for k in (1, 2, 3, 4)]


@dataclass(frozen=True, slots=True)
class Suite:
    """A named claim family and the builder of its tasks."""

    name: str
    description: str
    tasks: Callable[[SuiteOptions], list[Task]]
    slow: bool = False


SUITES: dict[str, Suite] = {}


def _register(*suites: Suite) -> None:
    for s in suites:
        SUITES[s.name] = s


_register(
    Suite("properties", "complement, reversal and bidirection isomorphisms", _properties_tasks),
    Suite(
        "condensation",
        "condensation model, connectivity equivalences, token paths",
        _condensation_tasks,
    ),
    Suite("lemma2", "SCCs of F_k as products of per-component token digraphs", _lemma2_tasks),
    Suite(
        "unilateral",
        "unilaterality prediction and condensation path certificates",
        _unilateral_tasks,
    ),
    Suite("girth", "girth equality and circumference inequality", _girth_tasks),
    Suite("long-cycle", "explicit long cycles in F_k", _long_cycle_tasks),
    Suite("eulerian", "degree balance equivalence", _eulerian_tasks),
    Suite("hamiltonian-cn", "Hamiltonicity of F_2 of directed cycles", _hamiltonian_tasks),
    Suite("odd-cycle", "odd-cycle freeness and unique kernels", _odd_cycle_tasks),
    Suite("reduction", "NAE-3-SAT to kernels of F_2", _reduction_tasks, slow=True),
    Suite("clique", "bidirected clique formula and clean graph commutation", _clique_tasks),
    Suite("dichromatic", "acyclic partition lift and dichromatic bounds", _dichromatic_tasks),
    Suite(
        "conjecture",
        "2-token chromatic conjecture on small connected graphs",
        _conjecture_tasks,
    ),
    Suite("k8c5", "chromatic numbers of F_k(K_8 - C_5)", _k8c5_tasks, slow=True),
)


def get_suite(name: str) -> Suite:
    """Look up a suite by name.

    Raises
    ------
    KeyError
        If *name* is not registered.
    """
    try:
        return SUITES[name]
    except KeyError:
        raise KeyError(f"Unknown suite '{name}'. Known suites: {', '.join(SUITES)}") from None


def execute(tasks: list[Task], jobs: int = 1) -> list[CheckResult]:
    """Run tasks, in worker processes when ``jobs > 1``, preserving task order."""
    if jobs > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(run_task, tasks, chunksize=chunksize))
    else:
        batches = [run_task(t) for t in tasks]
    return [r for batch in batches for r in batch]


def run_suite(name: str, options: SuiteOptions | None = None) -> list[CheckResult]:
    options = options or SuiteOptions()
    suite = get_suite(name)
    tasks = suite.tasks(options)
    logger.info("suite %s: %d tasks on %d job(s)", name, len(tasks), options.jobs)
    results = execute(tasks, options.jobs)
    logger.debug("suite %s: %d results", name, len(results))
    return results


def default_suites() -> list[str]:
    """Every registered suite that is not marked slow."""
    return [s.name for s in SUITES.values() if not s.slow]
