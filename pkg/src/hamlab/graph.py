"""Undirected simple graphs on dense integer vertex ids.

Vertices are ``0..n-1``.  Graphs built by :func:`induced` carry a ``labels``
list mapping local ids back to the ids of the graph they were cut from, so
certificates can always be reported against the original labelling.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from typing import TextIO

Edge = tuple[int, int]


class Graph:
    """Mutable adjacency-set graph.

    Treat instances as immutable once shared; ``add_edge`` / ``remove_edge``
    are meant for the code that builds a graph.
    """

    __slots__ = ("n", "adj", "m", "labels")

    def __init__(self, n: int, edges: Iterable[Edge] = (), labels: Sequence[int] | None = None):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_pairs(cls, n: int, us: Iterable[int], vs: Iterable[int]) -> Graph:
        """Build from parallel endpoint sequences without duplicate checks."""
        g = cls(n)
        adj = g.adj
        for u, v in zip(us, vs):
            adj[u].add(v)
            adj[v].add(u)
        g.m = sum(len(a) for a in adj) // 2
        return g

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"invalid vertex id {v} for graph on {self.n} vertices")

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if v in self.adj[u]:
            raise ValueError(f"duplicate edge {u}-{v}")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.adj[u]:
            raise ValueError(f"no edge {u}-{v}")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbour list of ``v``."""
        self._check(v)
        return sorted(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[Edge]:
        return {(u, v) for u in range(self.n) for v in self.adj[u] if u < v}

    def copy(self) -> Graph:
        g = Graph(self.n, labels=self.labels)
        g.adj = [set(a) for a in self.adj]
        g.m = self.m
        return g

    def label(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _vertex_list(G: Graph, A: Iterable[int]) -> list[int]:
    out = sorted(set(A))
    for v in out:
        G._check(v)
    return out


def degree(G: Graph, v: int) -> int:
    return G.degree(v)


def neighborhood(G: Graph, A: Iterable[int]) -> list[int]:
    """Vertices outside ``A`` adjacent to some vertex of ``A``."""
    inside = set(_vertex_list(G, A))
    out: set[int] = set()
    for v in inside:
        out |= G.adj[v]
    return sorted(out - inside)


def edges_between(G: Graph, A: Iterable[int], B: Iterable[int]) -> int:
    """Count ordered pairs ``(x, y)`` with ``x in A``, ``y in B`` and ``xy`` an edge.

    An edge with both ends in ``A & B`` is counted twice.
    """
    A = _vertex_list(G, A)
    B = set(_vertex_list(G, B))
    return sum(len(G.adj[x] & B) for x in A)


def induced(G: Graph, U: Iterable[int]) -> Graph:
    """Subgraph induced on ``U``, relabelled to ``0..|U|-1`` in increasing order of id.

    The result's ``labels`` map each local id to the corresponding label of ``G``.
    """
    verts = _vertex_list(G, U)
    local = {v: i for i, v in enumerate(verts)}
    H = Graph(len(verts), labels=[G.label(v) for v in verts])
    for i, v in enumerate(verts):
        H.adj[i] = {local[w] for w in G.adj[v] if w in local}
    H.m = sum(len(a) for a in H.adj) // 2
    return H


def graph_minus(G: Graph, H: Graph) -> Graph:
    """``G`` with the edges of ``H`` removed; vertex set of ``G``."""
    out = G.copy()
    for u in range(min(G.n, H.n)):
        out.adj[u] -= H.adj[u]
    out.m = sum(len(a) for a in out.adj) // 2
    return out


def graph_union(G: Graph, H: Graph) -> Graph:
    """Edge union on the vertex set ``0..max(|G|, |H|)-1``."""
    n = max(G.n, H.n)
    out = Graph(n)
    for src in (G, H):
        for u in range(src.n):
            out.adj[u] |= src.adj[u]
    out.m = sum(len(a) for a in out.adj) // 2
    return out


def bfs_distances(G: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    """Breadth-first distances from ``source``, optionally truncated at ``limit``."""
    G._check(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if limit is not None and d >= limit:
            continue
        for w in G.adj[u]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def within_distance(G: Graph, u: int, v: int, d: int) -> bool:
    G._check(v)
    return v in bfs_distances(G, u, limit=d)


def connected_components(G: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their least vertex."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    return len(bfs_distances(G, 0)) == G.n


def is_path(G: Graph, path: Sequence[int]) -> bool:
    """True if ``path`` lists distinct vertices joined consecutively by edges of ``G``."""
    if len(set(path)) != len(path):
        return False
    if any(not 0 <= v < G.n for v in path):
        return False
    return all(path[i + 1] in G.adj[path[i]] for i in range(len(path) - 1))


def is_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    """True if ``cycle`` is a simple cycle of ``G`` (at least 3 vertices)."""
    return len(cycle) >= 3 and is_path(G, cycle) and cycle[0] in G.adj[cycle[-1]]


# --- constructors --------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)) if n >= 3 else ())


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    out = Graph(G.n + H.n)
    for u, v in G.edges():
        out.add_edge(u, v)
    for u, v in H.edges():
        out.add_edge(u + G.n, v + G.n)
    return out


# --- edge-list text format ----------------------------------------------

def write_edge_list(G: Graph, fh: TextIO) -> None:
    fh.write(f"{G.n} {G.m}\n")
    for u, v in G.edges():
        fh.write(f"{u} {v}\n")


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` format; rejects loops, duplicates and bad ids."""
    tokens = [line.split() for line in text.splitlines() if line.strip()]
    if not tokens or len(tokens[0]) != 2:
        raise ValueError("missing 'n m' header line")
    n, m = (int(t) for t in tokens[0])
    body = tokens[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    G = Graph(n)
    for lineno, tok in enumerate(body, start=2):
        if len(tok) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        u, v = int(tok[0]), int(tok[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: vertex id out of range")
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at {u}")
        if u > v:
            raise ValueError(f"line {lineno}: edges must be written with u < v")
        if v in G.adj[u]:
            raise ValueError(f"line {lineno}: duplicate edge {u} {v}")
        G.add_edge(u, v)
    return G


def read_edge_list(fh: TextIO) -> Graph:
    return parse_edge_list(fh.read())
