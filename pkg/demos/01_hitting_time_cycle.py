"""Run the random graph process until every vertex has degree 2, then find a Hamilton cycle.

    python3 demos/01_hitting_time_cycle.py [n] [seed]
"""
import sys
import time

from hamlab.posa import build_hamilton, verify_hamilton
from hamlab.random_models import GraphProcess, hitting_time_min_degree

n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7

proc = GraphProcess(n, seed)
rep = hitting_time_min_degree(proc, 2)
G = proc.current
print(f"n={n}: minimum degree reaches 2 after {rep.tau} edges "
      f"(average degree {2 * G.m / n:.2f}, max degree {G.max_degree()})")

# the last edge added is the one that lifted the final degree-1 vertex
last = proc.edge(rep.tau - 1)
print(f"edge number {rep.tau} was {last}")

# start from a very sparse subgraph (3 chosen edges per vertex) so boosters have work to do
log = []
start = time.perf_counter()
cycle = build_hamilton(G, per_vertex=3, seed=seed, log=log)
elapsed = time.perf_counter() - start
print(f"Hamilton cycle found in {elapsed:.2f}s after {len(log)} boosters; verified: {verify_hamilton(G, cycle)}")
stages = {}
for entry in log:
    stages[entry["stage"]] = stages.get(entry["stage"], 0) + 1
print("boosters by search stage:", stages)

# one edge earlier the graph still has a vertex of degree 1, so no Hamilton cycle can exist
before = proc.snapshot(rep.tau - 1)
print(f"one edge earlier the minimum degree is {before.min_degree()}")
