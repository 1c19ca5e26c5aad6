import random

import pytest

from apsat.graph import DirectedGraph
from apsat.oracle import brute_force_oracle

from conftest import complete_digraph, random_graph
from reference_impls import perm_cover_stats


def test_complete_digraph_4():
    result = brute_force_oracle(complete_digraph(4))
    assert result.hc_count == 6
    assert result.cover_count == 9
    assert result.is_hamiltonian


def test_arc_free():
    result = brute_force_oracle(DirectedGraph(4, frozenset()))
    assert not result.is_hamiltonian
    assert result.hc_count == 0 and result.cover_count == 0


def test_four_cycle_with_chord():
    g = DirectedGraph(4, frozenset([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]))
    result = brute_force_oracle(g)
    assert result.hc_count == 1
    assert result.cover_count == 1


def test_two_cycle():
    g = DirectedGraph(2, frozenset([(1, 2), (2, 1)]))
    result = brute_force_oracle(g)
    assert result.hc_count == 1 and result.cover_count == 1


def test_single_vertex():
    result = brute_force_oracle(DirectedGraph(1, frozenset()))
    assert result.hc_count == 0 and result.cover_count == 0


def test_triangle():
    g = DirectedGraph(3, frozenset([(1, 2), (2, 3), (3, 1)]))
    result = brute_force_oracle(g)
    assert result.hc_count == 1 and result.cover_count == 1


def test_complete_k3_counts():
    result = brute_force_oracle(complete_digraph(3))
    assert result.hc_count == 2 and result.cover_count == 2


def test_size_guard():
    with pytest.raises(ValueError):
        brute_force_oracle(complete_digraph(13))


def test_against_permutation_enumeration():
    rng = random.Random(2718)
    for _ in range(400):
        g = random_graph(rng, rng.randint(1, 6))
        covers, hcs = perm_cover_stats(g)
        result = brute_force_oracle(g)
        assert result.cover_count == covers, g
        assert result.hc_count == hcs, g
        assert result.is_hamiltonian == (hcs > 0)


def test_hc_count_never_exceeds_cover_count():
    rng = random.Random(314)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 8))
        result = brute_force_oracle(g)
        assert result.hc_count <= result.cover_count
