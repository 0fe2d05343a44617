"""Tests for cycles, paths, unilaterality, degree balance and Hamiltonicity."""

import random

import networkx as nx
import pytest

from token_digraphs import (
    Digraph,
    PreconditionError,
    circumference,
    construct_long_token_cycle,
    family,
    girth,
    is_degree_balanced,
    is_hamiltonian,
    is_unilateral,
    predict_token_unilateral,
    token_digraph,
    token_path,
    verify_eulerian_equivalence,
    verify_girth_circumference,
)
from token_digraphs.components import condensation_model, fig3_fixture
from token_digraphs.cycles import (
    CycleWitness,
    certify_condensation_path,
    condensation_hamiltonian_path,
    is_token_walk,
    long_cycle_length_bound,
    longest_cycle,
    reachability_unilateral,
    search_hamiltonian_gain,
    shortest_cycle,
)
from token_digraphs.digraph import all_digraphs, disjoint_union, random_digraph, tournaments
from token_digraphs.reports import Status


def _dicycle(n):
    return family("cycle", n, directed=True)


def _digon():
    return Digraph(2, ((0, 1), (1, 0)))


def _nx(d):
    h = nx.DiGraph()
    h.add_nodes_from(range(d.n))
    h.add_edges_from(d.arcs)
    return h


class TestGirthCircumference:
    def test_girth_examples(self):
        assert girth(_dicycle(5)) == 5
        assert girth(_digon()) == 2
        assert girth(family("path", 4, directed=True)) is None

    def test_circumference_examples(self):
        assert circumference(_dicycle(5)) == 5
        assert circumference(family("complete", 4, directed=True)) == 4
        assert circumference(family("path", 4, directed=True)) is None

    def test_witnesses_are_cycles(self):
        rng = random.Random(2)
        for _ in range(30):
            d = random_digraph(6, 0.3, rng)
            for witness in (shortest_cycle(d), longest_cycle(d)):
                assert witness is None or witness.is_valid(d)

    def test_against_networkx(self):
        rng = random.Random(3)
        for _ in range(40):
            d = random_digraph(6, 0.3, rng)
            lengths = [len(c) for c in nx.simple_cycles(_nx(d))]
            assert girth(d) == (min(lengths) if lengths else None)
            assert circumference(d) == (max(lengths) if lengths else None)

    def test_at_least_stops_early(self):
        witness = longest_cycle(family("complete", 5, directed=True), at_least=3)
        assert witness is not None
        assert witness.length >= 3

    def test_cycle_witness(self):
        w = CycleWitness((0, 1, 2))
        assert w.closed() == (0, 1, 2, 0)
        assert w.is_valid(_dicycle(3))
        assert not CycleWitness((0, 2, 1)).is_valid(_dicycle(3))
        assert not CycleWitness((0,)).is_valid(_dicycle(3))


class TestGirthEquality:
    def test_dicycle(self):
        result = verify_girth_circumference(_dicycle(5), 2)
        assert result.passed
        assert result.data["g"] == result.data["g_token"] == 5

    def test_digon_plus_isolated(self):
        d = disjoint_union(_digon(), Digraph(1))
        result = verify_girth_circumference(d, 2)
        assert result.passed
        assert result.data["g_token"] == 2

    def test_complete(self):
        result = verify_girth_circumference(family("complete", 4, directed=True), 2)
        assert result.passed
        assert result.data["c_token"] >= 4

    def test_acyclic_is_skipped(self):
        result = verify_girth_circumference(family("path", 4, directed=True), 2)
        assert result.status is Status.SKIP

    def test_tournaments(self):
        for t in tournaments(4):
            for k in (1, 2, 3):
                result = verify_girth_circumference(t, k)
                assert result.status is not Status.FAIL


class TestTokenPath:
    def test_single_token(self):
        steps = token_path(_dicycle(3), (0,), (2,))
        assert [s.members for s in steps] == [(0,), (1,), (2,)]

    def test_front_token_moves_first(self):
        steps = token_path(_dicycle(3), (0, 1), (1, 2))
        assert [s.members for s in steps] == [(0, 1), (0, 2), (1, 2)]

    def test_same_config(self):
        steps = token_path(_dicycle(4), (0, 2), (0, 2))
        assert len(steps) == 1

    def test_random_strong_digraphs(self):
        rng = random.Random(4)
        checked = 0
        while checked < 20:
            d = random_digraph(6, 0.45, rng)
            if not nx.is_strongly_connected(_nx(d)):
                continue
            checked += 1
            a, b = (0, 1, 2), (3, 4, 5)
            steps = token_path(d, a, b)
            assert steps[0].members == a
            assert steps[-1].members == b
            assert is_token_walk(d, [s.members for s in steps])

    def test_requires_strong_connectivity(self):
        with pytest.raises(PreconditionError):
            token_path(family("path", 3, directed=True), (0,), (2,))

    def test_requires_equal_sizes(self):
        with pytest.raises(PreconditionError):
            token_path(_dicycle(3), (0,), (1, 2))

    def test_is_token_walk_rejects_jumps(self):
        assert not is_token_walk(_dicycle(4), [(0,), (2,)])
        assert is_token_walk(_dicycle(4), [(0,), (1,)])


class TestUnilateral:
    def test_examples(self):
        assert is_unilateral(family("path", 4, directed=True)) == (True, (0, 1, 2, 3))
        assert not is_unilateral(Digraph(3, ((0, 2), (1, 2))))[0]
        assert is_unilateral(_dicycle(5))[0]

    def test_matches_pairwise_reachability(self):
        for d in all_digraphs(3):
            assert is_unilateral(d)[0] == reachability_unilateral(d)
        rng = random.Random(5)
        for _ in range(50):
            d = random_digraph(6, 0.25, rng)
            assert is_unilateral(d)[0] == reachability_unilateral(d)

    def test_prediction_examples(self):
        assert predict_token_unilateral(family("path", 4, directed=True), 2) is False
        two_digons = Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (1, 2)))
        assert predict_token_unilateral(two_digons, 2) is True
        chain = Digraph(5, ((0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 3)))
        assert predict_token_unilateral(chain, 2) is True

    def test_prediction_matches_direct_check(self):
        rng = random.Random(6)
        for _ in range(60):
            d = random_digraph(5, 0.4, rng)
            for k in range(2, 4):
                direct = is_unilateral(token_digraph(d, k).digraph)[0]
                assert predict_token_unilateral(d, k) == direct

    def test_extreme_k_falls_back(self, caplog):
        with caplog.at_level("INFO"):
            assert predict_token_unilateral(family("path", 4, directed=True), 1) is True
        assert "directly" in caplog.text

    def test_condensation_path_two_components(self):
        two_digons = Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (1, 2)))
        path = condensation_hamiltonian_path(two_digons, 2)
        assert path == [(2, 0), (1, 1), (0, 2)]
        assert certify_condensation_path(two_digons, 2, path).passed

    def test_condensation_path_three_components(self):
        chain = Digraph(5, ((0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 3)))
        for k in (2, 3):
            path = condensation_hamiltonian_path(chain, k)
            assert certify_condensation_path(chain, k, path).passed

    def test_condensation_path_precondition(self):
        with pytest.raises(PreconditionError):
            condensation_hamiltonian_path(fig3_fixture(), 2)

    def test_certifier_rejects_bad_order(self):
        two_digons = Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (1, 2)))
        bad = [(1, 1), (2, 0), (0, 2)]
        result = certify_condensation_path(two_digons, 2, bad)
        assert result.failed
        assert len(condensation_model(two_digons, 2).vertices) == 3


class TestDegreeBalance:
    def test_examples(self):
        assert is_degree_balanced(_dicycle(6))
        assert not is_degree_balanced(Digraph(2, ((0, 1),)))
        assert is_degree_balanced(family("wheel", 4, directed=True))

    def test_eulerian_examples(self):
        result = verify_eulerian_equivalence(_dicycle(4), 2)
        assert result.passed and result.data["balanced"] is True
        result = verify_eulerian_equivalence(Digraph(3, ((0, 1),)), 2)
        assert result.passed and result.data["balanced"] is False
        assert verify_eulerian_equivalence(family("complete", 3, directed=True), 2).passed

    def test_random(self):
        rng = random.Random(7)
        for _ in range(60):
            d = random_digraph(5, 0.5, rng)
            for k in range(1, 5):
                assert verify_eulerian_equivalence(d, k).passed


class TestHamiltonian:
    @pytest.mark.parametrize("n, expected", [(3, True), (4, False), (5, True), (6, False)])
    def test_token_dicycles(self, n, expected):
        found, witness = is_hamiltonian(token_digraph(_dicycle(n), 2).digraph)
        assert found is expected
        if found:
            assert witness.length == n * (n - 1) // 2

    def test_against_networkx(self):
        rng = random.Random(8)
        for _ in range(30):
            d = random_digraph(5, 0.45, rng)
            expected = any(len(c) == d.n for c in nx.simple_cycles(_nx(d)))
            assert is_hamiltonian(d)[0] is expected

    def test_witness_is_valid(self):
        d = family("complete", 4, directed=True)
        found, witness = is_hamiltonian(d)
        assert found and witness.is_valid(d) and witness.length == 4

    @pytest.mark.slow
    def test_gain_search(self):
        d = search_hamiltonian_gain(seed=1)
        if d is not None:
            assert not is_hamiltonian(d)[0]
            assert is_hamiltonian(token_digraph(d, 2).digraph)[0]


class TestLongCycle:
    def test_bound(self):
        assert long_cycle_length_bound(8, 2, 5) == 10
        assert long_cycle_length_bound(8, 3, 6) == 18

    def test_dicycle_plus_isolated(self):
        d = disjoint_union(_dicycle(5), Digraph(3))
        cycle = construct_long_token_cycle(d, 2)
        assert cycle.length == 10
        assert cycle.is_valid(token_digraph(d, 2).digraph)

    def test_parked_tokens(self):
        d = disjoint_union(_dicycle(6), Digraph(2))
        cycle = construct_long_token_cycle(d, 3)
        assert cycle.length == 18
        assert cycle.is_valid(token_digraph(d, 3).digraph)

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_every_k(self, k):
        d = disjoint_union(_dicycle(7), Digraph(1))
        cycle = construct_long_token_cycle(d, k)
        assert cycle.length == long_cycle_length_bound(8, k, 7)
        assert cycle.is_valid(token_digraph(d, k).digraph)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            construct_long_token_cycle(_dicycle(5), 2)
        with pytest.raises(PreconditionError):
            construct_long_token_cycle(disjoint_union(_dicycle(4), Digraph(3)), 2)
