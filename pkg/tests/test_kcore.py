import json
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_graph
from hamlab.graph import Graph, complete_graph, cycle_graph, path_graph
from hamlab.kcore import brute_force_core, core_vertex_set, k_core


def test_examples():
    assert k_core(cycle_graph(5), 2).core_vertices == list(range(5))
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert k_core(tree, 2).core_vertices == []
    K5_pendant = complete_graph(5)
    K5_pendant = Graph(6, list(K5_pendant.edges()) + [(4, 5)])
    res = k_core(K5_pendant, 3)
    assert res.core_vertices == [0, 1, 2, 3, 4]
    assert res.peel_order == [(5, 1)]
    assert res.core_graph == complete_graph(5)


def test_brute_force_examples():
    assert brute_force_core(complete_graph(4), 3) == [0, 1, 2, 3]
    assert brute_force_core(path_graph(3), 2) == []
    with pytest.raises(ValueError):
        brute_force_core(Graph(17), 1)


def test_matches_brute_force_on_random_small_graphs():
    rng = random.Random(0)
    for _ in range(300):
        G = random_graph(rng.randint(0, 8), rng.random(), rng.randrange(1 << 30))
        for k in range(1, 6):
            assert k_core(G, k).core_vertices == brute_force_core(G, k)


@given(graphs(max_n=14), st.integers(0, 6))
def test_matches_networkx(G, k):
    ref = nx.Graph()
    ref.add_nodes_from(range(G.n))
    ref.add_edges_from(G.edges())
    assert k_core(G, k).core_vertices == sorted(nx.k_core(ref, k).nodes)
    assert core_vertex_set(G, k) == k_core(G, k).core_vertices


@given(graphs(max_n=14), st.integers(1, 5))
def test_core_properties(G, k):
    res = k_core(G, k)
    core = set(res.core_vertices)
    again = k_core(res.core_graph, k)
    assert again.core_vertices == list(range(res.core_graph.n))  # fixpoint
    for v, _ in res.peel_order:
        assert sum(1 for w in G.adj[v] if w in core) < k  # maximality
    assert set(k_core(G, k + 1).core_vertices) <= core  # monotone in k
    assert sorted([v for v, _ in res.peel_order] + res.core_vertices) == list(range(G.n))


@given(graphs(min_n=2, max_n=12), st.integers(1, 4), st.data())
def test_adding_an_edge_never_shrinks_the_core(G, k, data):
    non_edges = [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not G.has_edge(u, v)]
    if not non_edges:
        return
    u, v = data.draw(st.sampled_from(non_edges))
    H = G.copy()
    H.add_edge(u, v)
    assert set(k_core(G, k).core_vertices) <= set(k_core(H, k).core_vertices)


@given(graphs(max_n=12), st.integers(1, 4), st.randoms(use_true_random=False))
def test_shuffled_peeling_gives_same_core(G, k, rnd):
    alive = set(range(G.n))
    while True:
        low = [v for v in alive if sum(1 for w in G.adj[v] if w in alive) < k]
        if not low:
            break
        alive.discard(rnd.choice(low))
    assert sorted(alive) == k_core(G, k).core_vertices


def test_result_serialises():
    res = k_core(cycle_graph(4), 2)
    data = json.loads(res.to_json())
    assert data == {"k": 2, "core_vertices": [0, 1, 2, 3], "peel_order": []}
    assert bool(res) and not bool(k_core(path_graph(4), 2))
