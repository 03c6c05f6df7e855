import random
from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import dfs_hamiltonian, dfs_longest_path, graphs, random_graph
from hamlab.graph import (Graph, complete_graph, cycle_graph, disjoint_union, is_cycle, is_path,
                          path_graph, petersen_graph)
from hamlab.oracles import (OracleLimits, cut_value, exact_longest_path, exact_max_cut,
                            hamilton_path_exists, held_karp_hamiltonian, local_max_cut)


def _permutation_hamiltonian(G: Graph) -> bool:
    if G.n < 3:
        return False
    for rest in permutations(range(1, G.n)):
        if rest[0] > rest[-1]:
            continue
        if is_cycle(G, (0,) + rest):
            return True
    return False


def test_held_karp_examples():
    ok, cyc = held_karp_hamiltonian(complete_graph(4))
    assert ok and is_cycle(complete_graph(4), cyc)
    assert held_karp_hamiltonian(path_graph(4)) == (False, None)
    assert not held_karp_hamiltonian(petersen_graph())[0]
    assert not _permutation_hamiltonian(petersen_graph())


def test_held_karp_matches_permutation_search():
    rng = random.Random(1)
    for _ in range(1000):
        G = random_graph(rng.randint(1, 8), rng.uniform(0.3, 0.9), rng.randrange(1 << 30))
        ok, cyc = held_karp_hamiltonian(G)
        assert ok == _permutation_hamiltonian(G)
        if ok:
            assert len(cyc) == G.n and is_cycle(G, cyc)


def test_held_karp_matches_backtracking_at_larger_n():
    rng = random.Random(2)
    for _ in range(60):
        G = random_graph(rng.randint(10, 16), rng.uniform(0.15, 0.4), rng.randrange(1 << 30))
        assert held_karp_hamiltonian(G)[0] == dfs_hamiltonian(G)


def test_longest_path_examples():
    assert exact_longest_path(path_graph(5))[0] == 5
    assert exact_longest_path(complete_graph(5))[0] == 5
    two = disjoint_union(complete_graph(3), complete_graph(3))
    length, path = exact_longest_path(two)
    assert length == 3 and is_path(two, path)
    assert exact_longest_path(Graph(0)) == (0, [])


@settings(max_examples=150)
@given(graphs(max_n=10))
def test_longest_path_matches_backtracking(G):
    length, path = exact_longest_path(G)
    assert length == dfs_longest_path(G)
    assert len(path) == length and is_path(G, path)
    if G.n:
        assert (length == G.n) == hamilton_path_exists(G)


def test_oracle_caps():
    with pytest.raises(ValueError):
        held_karp_hamiltonian(Graph(21))
    with pytest.raises(ValueError):
        exact_longest_path(Graph(19))
    assert exact_longest_path(Graph(19), OracleLimits(max_n_longest_path=19))[0] == 1


def test_max_cut_examples():
    A, B, val = exact_max_cut(cycle_graph(4))
    assert val == 4 and (A, B) == ([0, 2], [1, 3])
    assert exact_max_cut(cycle_graph(5))[2] == 4
    A, B, val = exact_max_cut(complete_graph(4))
    assert val == 4 and len(A) == 2


@settings(max_examples=100)
@given(graphs(max_n=10))
def test_max_cut_value_is_optimal(G):
    A, B, val = exact_max_cut(G)
    assert cut_value(G, A) == val
    best = max((cut_value(G, [v for v in range(G.n) if m >> v & 1]) for m in range(1 << G.n)), default=0)
    assert val == best


def _locally_optimal(G, A, B):
    side = {v: 0 for v in A} | {v: 1 for v in B}
    return all(2 * sum(1 for w in G.adj[v] if w in side and side[w] == side[v])
               <= sum(1 for w in G.adj[v] if w in side) for v in side)


def test_local_max_cut_is_locally_optimal():
    rng = random.Random(3)
    hits = 0
    for i in range(1000):
        G = random_graph(rng.randint(1, 12), rng.random(), rng.randrange(1 << 30))
        A, B = local_max_cut(G, seed=i)
        assert sorted(A + B) == list(range(G.n))
        assert _locally_optimal(G, A, B)
        val = cut_value(G, A)
        exact = exact_max_cut(G)[2]
        assert 2 * val >= exact
        hits += val == exact
    assert hits >= 600  # local optima are usually global at this size


def test_local_max_cut_on_subsets_and_bipartite_start():
    G = complete_graph(6)
    A, B = local_max_cut(G, U=[0, 2, 4, 5], seed=0)
    assert sorted(A + B) == [0, 2, 4, 5]
    sub = Graph(6, [e for e in G.edges() if set(e) <= {0, 2, 4, 5}])
    assert _locally_optimal(sub, A, B)
    C = cycle_graph(8)
    A, B = local_max_cut(C, init=[0, 2, 4, 6])
    assert cut_value(C, A) == C.m
