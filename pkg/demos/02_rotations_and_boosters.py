"""Rotations, rotation closures and boosters on a small random graph, checked by exact oracles.

    python3 demos/02_rotations_and_boosters.py
"""
from hamlab.graph import Graph
from hamlab.oracles import exact_longest_path, held_karp_hamiltonian
from hamlab.posa import find_boosters_single, rotate, rotation_closure
from hamlab.random_models import sample_gnp

G = sample_gnp(14, 0.15, seed=3)
print(f"G(14, 0.15): {G.m} edges, degrees {G.degrees()}")

length, P = exact_longest_path(G)
print(f"a longest path ({length} vertices): {P}")

# a single rotation: the free end uses one of its edges back into the path
end = P[-1]
pivots = [w for w in G.adj[end] if w in P[:-2]]
if pivots:
    Q = rotate(P, (end, pivots[0]))
    print(f"rotating at {end}-{pivots[0]} gives {Q}; new free end {Q[-1]}")

fam = rotation_closure(G, P, fixed=P[0])
print(f"with {P[0]} held fixed, rotations reach {len(fam.endpoints)} free ends: {sorted(fam.endpoints)}")
for u in fam.endpoints[:3]:
    print(f"  path to {u}: {fam.replay(u)}")

boosters = find_boosters_single(G, P)
print(f"{len(boosters)} single-edge boosters; checking each with the exact oracles")
for b in boosters[:8]:
    aug = b.augmented()
    new_len = exact_longest_path(aug)[0]
    ham = held_karp_hamiltonian(aug)[0]
    print(f"  add {b.edges[0]}: longest path {length} -> {new_len}, Hamiltonian: {ham}")

# a graph with no boosters at all: the longest path already spans a component
lonely = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
print("two disjoint paths, boosters:", [b.edges for b in find_boosters_single(lonely, [0, 1, 2])])
