"""Delete a quarter of every vertex's edges and rebuild; then show that deleting half breaks it.

    python3 demos/03_resilience_attacks.py [n] [seed]
"""
import sys

from hamlab.adversary import (bipartition_attack, greedy_min_degree_attack, is_unbalanced_bipartite,
                              random_attack, validate_plan)
from hamlab.posa import BuildFailure, build_hamilton
from hamlab.random_models import GraphProcess, hitting_time_min_degree

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1

proc = GraphProcess(n, seed)
hitting_time_min_degree(proc, 2)
G = proc.current
print(f"graph at the degree-2 hitting time: n={n}, {G.m} edges")

for plan in (random_attack(G, 0.25, seed), greedy_min_degree_attack(G, 0.25)):
    R = plan.residual()
    ok, _ = validate_plan(plan)
    try:
        build_hamilton(G, R, seed=seed)
        verdict = "Hamilton cycle found"
    except BuildFailure as exc:
        verdict = f"builder gave up ({exc.stage})"
    print(f"{plan.kind:>18}: removed {plan.removed.m} edges, plan valid {ok}, "
          f"residual min degree {R.min_degree()}: {verdict}")

# just over half: split into two unequal sides and delete every edge inside a side
plan = bipartition_attack(G, eps=0.05, seed=seed)
A, B = plan.parts
ok, _ = validate_plan(plan)
print(f"bipartition attack: sides {len(A)} and {len(B)}, removed {plan.removed.m} edges, "
      f"each vertex loses at most {plan.alpha:.2f} of its edges (valid {ok})")
print("residual is unbalanced bipartite, so no Hamilton cycle:",
      is_unbalanced_bipartite(plan.residual(), plan.parts)[0])
