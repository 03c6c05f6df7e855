"""k-core extraction by peeling, plus an exhaustive oracle for small graphs."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np

from .graph import Graph, induced

BRUTE_FORCE_MAX_N = 16


@dataclass
class CoreResult:
    k: int
    core_vertices: list[int]
    core_graph: Graph
    peel_order: list[tuple[int, int]]  # (vertex, degree when removed)

    def __bool__(self) -> bool:
        return bool(self.core_vertices)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "core_vertices": self.core_vertices,
            "peel_order": [list(p) for p in self.peel_order],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def k_core(G: Graph, k: int) -> CoreResult:
    """Maximal induced subgraph of minimum degree at least ``k``.

    Vertices of degree below ``k`` are peeled least id first, so
    ``peel_order`` is reproducible; the core itself does not depend on order.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    adj = G.adj
    deg = [len(a) for a in adj]
    removed = [False] * G.n
    heap = [v for v in range(G.n) if deg[v] < k]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        if removed[v]:
            continue
        removed[v] = True
        order.append((v, deg[v]))
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                if deg[w] == k - 1:
                    heapq.heappush(heap, w)
    core = [v for v in range(G.n) if not removed[v]]
    return CoreResult(k, core, induced(G, core), order)


def core_vertex_set(G: Graph, k: int) -> list[int]:
    """Vertex set of the ``k``-core (unordered peel, no subgraph built)."""
    adj = G.adj
    deg = [len(a) for a in adj]
    removed = [False] * G.n
    stack = [v for v in range(G.n) if deg[v] < k]
    for v in stack:
        removed[v] = True
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                if deg[w] < k:
                    removed[w] = True
                    stack.append(w)
    return [v for v in range(G.n) if not removed[v]]


_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)


def brute_force_core(G: Graph, k: int) -> list[int]:
    """Union of all vertex sets ``U`` with ``min degree(G[U]) >= k``, by scanning all 2^n subsets."""
    n = G.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute_force_core supports n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n == 0:
        return []
    masks = np.arange(1 << n, dtype=np.int64)
    feasible = np.ones(1 << n, dtype=bool)
    for v in range(n):
        nbr = sum(1 << w for w in G.adj[v])
        inside = (masks >> v) & 1
        deg_in = _POPCOUNT16[masks & nbr]
        feasible &= (inside == 0) | (deg_in >= k)
    feasible[0] = False
    union = int(np.bitwise_or.reduce(masks[feasible])) if feasible.any() else 0
    return [v for v in range(n) if union >> v & 1]
