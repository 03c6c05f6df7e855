"""Degree-proportional deletion attacks and the checks that validate them.

An attack removes a subgraph ``H`` of ``G`` with ``d_H(v) <= alpha d_G(v)``
at every vertex.  Three attacks are provided: the unbalanced-bipartition
attack, which leaves a graph that cannot be Hamiltonian, and two baselines
(random and greedy low-degree) used against the builder.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, graph_minus, induced
from .oracles import local_max_cut

_TOL = 1e-9


@dataclass
class DeletionPlan:
    host: Graph
    removed: Graph
    alpha: float
    kind: str  # "bipartition" | "random" | "greedy-min-degree"
    parts: tuple[list[int], list[int]] | None = None
    valid: bool = False
    meta: dict = field(default_factory=dict)

    def residual(self) -> Graph:
        return graph_minus(self.host, self.removed)

    def to_dict(self) -> dict:
        ok, violations = validate_plan(self)
        return {"kind": self.kind, "alpha": self.alpha,
                "removed": [list(e) for e in self.removed.edges()],
                "parts": [list(p) for p in self.parts] if self.parts else None,
                "validation": {"valid": ok, "violations": [list(v) for v in violations]},
                "meta": self.meta}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class AttackFailure(RuntimeError):
    """The bipartition attack found no mover that keeps the per-vertex bound."""

    def __init__(self, reason: str, **details):
        super().__init__(reason)
        self.reason = reason
        self.details = details

    def to_dict(self) -> dict:
        return {"reason": self.reason, **self.details}


def validate_plan(plan: DeletionPlan) -> tuple[bool, list[tuple[int, int, float]]]:
    """Exact check of ``E(removed) ⊆ E(host)`` and ``d_removed(v) <= alpha d_host(v)``.

    Violations are ``(vertex, d_removed, allowed)``; a removed edge missing
    from the host is reported with ``allowed = -1``.
    """
    host, rem = plan.host, plan.removed
    violations = []
    if rem.n != host.n:
        return False, [(-1, rem.n, host.n)]
    for u, v in rem.edges():
        if not host.has_edge(u, v):
            violations.append((u, v, -1))
    for v in range(host.n):
        allowed = plan.alpha * host.degree(v)
        if rem.degree(v) > allowed + _TOL:
            violations.append((v, rem.degree(v), allowed))
    return not violations, violations


@dataclass
class ResidualReport:
    beta: float
    violations: list[tuple[int, int, float]]  # (vertex, d_H, required)

    def __bool__(self) -> bool:
        return not self.violations


def residual_check(G: Graph, H: Graph, beta: float, vertices=None) -> ResidualReport:
    """Check ``d_H(v) >= beta d_{G[V(H)]}(v)`` on ``vertices`` (default all of ``H``)."""
    verts = range(H.n) if vertices is None else sorted(set(vertices))
    inside = set(verts)
    out = []
    for v in verts:
        d_host = sum(1 for w in G.adj[v] if w in inside)
        d_h = sum(1 for w in H.adj[v] if w in inside)
        need = beta * d_host
        if d_h < need - _TOL:
            out.append((v, d_h, need))
    return ResidualReport(beta, out)


def is_unbalanced_bipartite(H: Graph, parts=None) -> tuple[bool, tuple[list[int], list[int]] | None]:
    """Bipartite with parts of different sizes.

    With ``parts`` given, checks those parts; otherwise 2-colours each
    component with its least vertex on side A (no rebalancing is attempted).
    """
    if parts is not None:
        A, B = (sorted(p) for p in parts)
        side = {v: 0 for v in A}
        side.update({v: 1 for v in B})
        if len(side) != H.n or len(A) + len(B) != H.n:
            return False, (A, B)
        ok = all(side[u] != side[v] for u, v in H.edges())
        return ok and len(A) != len(B), (A, B)
    colour = [-1] * H.n
    for s in range(H.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for w in H.adj[x]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[x]
                    queue.append(w)
                elif colour[w] == colour[x]:
                    return False, None
    A = [v for v in range(H.n) if colour[v] == 0]
    B = [v for v in range(H.n) if colour[v] == 1]
    return len(A) != len(B), (A, B)


def _same_side_removal(host: Graph, A: list[int]) -> Graph:
    side = set(A)
    rem = Graph(host.n, labels=host.labels)
    for u, v in host.edges():
        if (u in side) == (v in side):
            rem.add_edge(u, v)
    return rem


def bipartition_attack(G: Graph, U=None, eps: float = 0.05, seed: int = 0,
                       cut_attempts: int = 8) -> DeletionPlan:
    """Delete every edge inside the parts of an unbalanced cut of ``G[U]``.

    The residual is bipartite with unequal parts, hence not Hamiltonian.  A
    locally maximal cut bounds each vertex's loss by half its degree.  Up to
    ``cut_attempts`` seeded local searches look for an unbalanced cut; if all
    come out balanced, one mover switches sides: vertices of degree below
    ``1/eps`` and their neighbours are never moved, candidates are tried in
    order of their share of neighbours on the destination side, and the first
    one meeting ``d_removed(v) <= (1/2 + eps) d(v)`` everywhere is used.

    Raises :class:`AttackFailure` when no candidate passes.
    """
    verts = list(range(G.n)) if U is None else sorted(set(U))
    if len(verts) < 3:
        raise ValueError("bipartition_attack needs |U| >= 3")
    host = G if len(verts) == G.n else induced(G, verts)
    for t in range(max(1, cut_attempts)):
        A, B = local_max_cut(host, seed=seed + t)
        if len(A) != len(B):
            break
    if len(A) != len(B):
        plan = DeletionPlan(host, _same_side_removal(host, A), 0.5, "bipartition", (A, B),
                            meta={"mover": None, "eps": eps})
        plan.valid = validate_plan(plan)[0]
        return plan
    side_a = set(A)
    low = {v for v in range(host.n) if host.degree(v) * eps < 1 - _TOL}
    blocked = set(low)
    for v in low:
        blocked |= host.adj[v]
    cands = []
    for x in range(host.n):
        if x in blocked or host.degree(x) == 0:
            continue
        dest = sum(1 for w in host.adj[x] if (w in side_a) != (x in side_a))
        cands.append((dest / host.degree(x), x))
    cands.sort()
    alpha = 0.5 + eps
    for _, x in cands:
        A2 = [v for v in A if v != x] if x in side_a else sorted(A + [x])
        B2 = [v for v in range(host.n) if v not in set(A2)]
        plan = DeletionPlan(host, _same_side_removal(host, A2), alpha, "bipartition", (A2, B2),
                            meta={"mover": x, "eps": eps})
        if validate_plan(plan)[0]:
            plan.valid = True
            return plan
    raise AttackFailure("no valid mover", candidates=len(cands), excluded=len(blocked),
                        balanced_size=len(A))


def _budgets(G: Graph, alpha: float) -> list[int]:
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    return [int(alpha * G.degree(v) + _TOL) for v in range(G.n)]


def random_attack(G: Graph, alpha: float, seed: int = 0) -> DeletionPlan:
    """Remove edges in seeded random order while both endpoints have budget ``floor(alpha d)``."""
    budget = _budgets(G, alpha)
    edges = list(G.edges())
    random.Random(seed).shuffle(edges)
    rem = Graph(G.n, labels=G.labels)
    for u, v in edges:
        if budget[u] > 0 and budget[v] > 0:
            rem.add_edge(u, v)
            budget[u] -= 1
            budget[v] -= 1
    plan = DeletionPlan(G, rem, alpha, "random", meta={"seed": seed})
    plan.valid = validate_plan(plan)[0]
    return plan


def greedy_min_degree_attack(G: Graph, alpha: float) -> DeletionPlan:
    """Strip edges at low-degree vertices first, preferring low-degree neighbours."""
    budget = _budgets(G, alpha)
    deg = [G.degree(v) for v in range(G.n)]
    rem = Graph(G.n, labels=G.labels)
    for v in sorted(range(G.n), key=lambda x: (deg[x], x)):
        for w in sorted(G.adj[v], key=lambda x: (deg[x], x)):
            if budget[v] == 0:
                break
            if budget[w] > 0 and not rem.has_edge(v, w):
                rem.add_edge(v, w)
                budget[v] -= 1
                budget[w] -= 1
    plan = DeletionPlan(G, rem, alpha, "greedy-min-degree")
    plan.valid = validate_plan(plan)[0]
    return plan
