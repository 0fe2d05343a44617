"""Tests for kernels, the NAE-3-SAT gadget and odd-cycle preservation."""

import random

import networkx as nx
import pytest

from token_digraphs import (
    CnfFormula,
    Digraph,
    PreconditionError,
    build_special_kernel,
    build_token_kernel,
    dag_kernel,
    family,
    fig6_fixture,
    find_kernel,
    has_odd_oriented_cycle,
    reduce,
    token_digraph,
    verify_odd_cycle_preservation,
    verify_reduction,
)
from token_digraphs.components import scc
from token_digraphs.digraph import all_digraphs, random_digraph
from token_digraphs.kernels import (
    KernelSet,
    RoleKind,
    assignment_from_special_kernel,
    bruteforce_kernels,
    count_kernels,
    fig5_formula,
    is_kernel,
    is_special_kernel,
    iter_kernels,
    kernel_violation,
    search_kernel_loss,
)
from token_digraphs.reports import Status


def _dicycle(n):
    return family("cycle", n, directed=True)


def _dipath(n):
    return Digraph(n, tuple((i, i + 1) for i in range(n - 1)))


def _one_clause():
    return CnfFormula(3, ((1, 2, 3),))


class TestKernelPredicate:
    def test_violations(self):
        d = _dipath(3)
        assert kernel_violation(d, [0, 2]) is None
        assert kernel_violation(d, [0, 1]) == ("arc inside", [0, 1])
        assert kernel_violation(d, [2]) == ("unabsorbed", [0])

    def test_kernel_set_is_sorted(self):
        k = KernelSet((3, 1, 3))
        assert k.members == (1, 3)
        assert k.mask == 0b1010
        assert 3 in k and 2 not in k
        assert len(k) == 2


class TestKernelSearch:
    def test_odd_dicycle_has_none(self):
        assert find_kernel(_dicycle(5)) is None
        assert find_kernel(_dicycle(3)) is None

    def test_two_token_dicycle_has_size_five(self):
        token = token_digraph(_dicycle(5), 2)
        kernels = list(iter_kernels(token.digraph))
        assert kernels
        assert any(len(k) == 5 for k in kernels)
        assert all(is_kernel(token.digraph, k.members) for k in kernels)

    def test_even_dicycle_has_two(self):
        kernels = {k.members for k in iter_kernels(_dicycle(4))}
        assert kernels == {(0, 2), (1, 3)}

    def test_matches_subset_scan(self):
        for n in (2, 3):
            for d in all_digraphs(n):
                found = sorted(k.members for k in iter_kernels(d))
                assert found == sorted(k.members for k in bruteforce_kernels(d))

    def test_count_limit(self):
        assert count_kernels(_dicycle(4)) == 2
        assert count_kernels(_dicycle(4), limit=1) == 1


class TestDagKernel:
    def test_path(self):
        assert dag_kernel(_dipath(3)).members == (0, 2)
        assert dag_kernel(_dipath(4)).members == (1, 3)

    def test_cyclic_rejected(self):
        with pytest.raises(PreconditionError):
            dag_kernel(_dicycle(3))

    def test_unique_on_small_dags(self):
        for d in all_digraphs(4):
            if not scc(d).is_acyclic():
                continue
            kernels = list(iter_kernels(d))
            assert [k.members for k in kernels] == [dag_kernel(d).members]


class TestOddCycles:
    def test_detection(self):
        assert has_odd_oriented_cycle(_dicycle(5))
        assert has_odd_oriented_cycle(_dicycle(3))
        assert not has_odd_oriented_cycle(_dicycle(4))
        assert not has_odd_oriented_cycle(Digraph(2, ((0, 1), (1, 0))))
        assert not has_odd_oriented_cycle(_dipath(5))

    def test_against_cycle_enumeration(self):
        rng = random.Random(21)
        for n in range(3, 8):
            for i in range(60):
                d = random_digraph(n, (0.15, 0.3, 0.5)[i % 3], rng)
                h = nx.DiGraph()
                h.add_nodes_from(range(d.n))
                h.add_edges_from(d.arcs)
                odd = any(len(c) % 2 for c in nx.simple_cycles(h))
                assert has_odd_oriented_cycle(d) == odd, d.arcs

    def test_preservation_on_even_cycle(self):
        result = verify_odd_cycle_preservation(_dicycle(4), 2)
        assert result.passed
        assert result.data["host_kernels"] == 2

    def test_dag_has_unique_kernels(self):
        result = verify_odd_cycle_preservation(_dipath(4), 2)
        assert result.passed
        assert result.data == {"host_kernels": 1, "token_kernels": 1}

    def test_odd_host_skipped(self):
        assert verify_odd_cycle_preservation(_dicycle(5), 2).status is Status.SKIP

    def test_every_small_odd_free_digraph(self):
        for d in all_digraphs(4):
            if has_odd_oriented_cycle(d):
                continue
            assert verify_odd_cycle_preservation(d, 2).passed


class TestGadget:
    def test_layout(self):
        gadget = reduce(fig5_formula())
        assert gadget.digraph.n == 18
        assert gadget.sink == 17
        assert gadget.digraph.out_degree(gadget.sink) == 0
        assert gadget.roles[gadget.sink].kind is RoleKind.SINK
        assert gadget.labels()[:2] == ["x1", "~x1"]
        assert gadget.labels()[8] == "C1:x1"
        assert gadget.labels()[-1] == "u"

    def test_arcs(self):
        gadget = reduce(_one_clause())
        d = gadget.digraph
        assert d.has_arc(0, 1) and d.has_arc(1, 0)
        assert d.has_arc(6, 7) and d.has_arc(7, 8) and d.has_arc(8, 6)
        assert d.has_arc(6, 0) and d.has_arc(7, 2) and d.has_arc(8, 4)
        assert all(d.has_arc(v, gadget.sink) for v in gadget.literal_vertices)
        assert d.num_arcs == 6 + 6 + 6

    def test_label(self):
        gadget = reduce(_one_clause())
        assert gadget.label(7) == 2
        with pytest.raises(ValueError):
            gadget.label(gadget.sink)


class TestSpecialKernel:
    def test_single_clause(self):
        gadget = reduce(_one_clause())
        special = build_special_kernel(gadget, (True, False, False))
        assert special.members == (0, 3, 5, 8)
        assert is_special_kernel(gadget, special)
        assert assignment_from_special_kernel(gadget, special) == (True, False, False)

    def test_example_formula(self):
        formula = fig5_formula()
        gadget = reduce(formula)
        assignment = (True, True, False, True)
        assert formula.is_nae(assignment)
        special = build_special_kernel(gadget, assignment)
        assert len(special) == formula.num_vars + formula.num_clauses
        assert is_kernel(gadget.d_prime(), special.members)

    def test_not_nae_rejected(self):
        with pytest.raises(PreconditionError):
            build_special_kernel(reduce(_one_clause()), (True, True, True))


class TestTokenKernel:
    def test_single_clause(self):
        gadget = reduce(_one_clause())
        token = token_digraph(gadget.digraph, 2)
        assert token.n == 45
        special = build_special_kernel(gadget, (True, False, False))
        kernel = build_token_kernel(gadget, special, token)
        assert is_kernel(token.digraph, kernel.members)

    def test_example_formula(self):
        gadget = reduce(fig5_formula())
        token = token_digraph(gadget.digraph, 2)
        assert token.n == 153
        special = build_special_kernel(gadget, (True, True, False, True))
        kernel = build_token_kernel(gadget, special, token)
        assert is_kernel(token.digraph, kernel.members)

    def test_rejects_non_special(self):
        gadget = reduce(_one_clause())
        with pytest.raises(PreconditionError):
            build_token_kernel(gadget, KernelSet((0, 2)))


class TestReduction:
    def test_single_clause(self):
        results = verify_reduction(_one_clause())
        assert [r.check for r in results] == [
            "reduction",
            "token-kernel-construction",
            "kernel-to-assignment",
        ]
        assert all(r.passed for r in results)
        assert results[0].data["nae"] and results[0].data["f2_kernel"]

    def test_repeated_literal_clause(self):
        results = verify_reduction(CnfFormula(1, ((1, 1, 1),)))
        assert [r.check for r in results] == ["reduction"]
        assert results[0].passed
        assert results[0].data["f2_kernel"] is False

    @pytest.mark.slow
    def test_unsatisfiable(self):
        formula = CnfFormula(2, ((1, 1, 2), (1, 1, -2), (-1, -1, 2), (-1, -1, -2)))
        results = verify_reduction(formula)
        assert len(results) == 1
        assert results[0].passed
        assert results[0].data == {"nae": False, "f2_kernel": False, "f2_nodes": 136}

    @pytest.mark.slow
    def test_example_formula(self):
        results = verify_reduction(fig5_formula())
        assert all(r.passed for r in results)
        assert results[0].data["f2_nodes"] == 153

    def test_no_kernel_fixture(self):
        sub = fig6_fixture()
        assert sub.n == 6
        assert find_kernel(sub) is None


class TestKernelLossSearch:
    def test_finds_small_example(self):
        d = search_kernel_loss(n_exhaustive=4, n_random=())
        assert d is not None
        assert d.n <= 4
        assert find_kernel(d) is not None
        assert find_kernel(token_digraph(d, 2).digraph) is None
