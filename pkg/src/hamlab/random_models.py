"""G(n, p), G(n, M) and the random graph process, with hitting times.

Vertex pairs are indexed ``0..N-1`` (``N = n(n-1)/2``) in lexicographic
order: ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, parse_edge_list
from .kcore import core_vertex_set

# Above this many pairs the process samples its order lazily by rejection
# instead of materialising a full permutation.
MATERIALIZE_PAIR_LIMIT = 8_000_000


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def _row_offsets(n: int) -> np.ndarray:
    u = np.arange(n, dtype=np.int64)
    return u * (2 * n - u - 1) // 2


def pairs_from_indices(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Decode pair indices into endpoint arrays ``(u, v)`` with ``u < v``."""
    idx = np.asarray(idx, dtype=np.int64)
    offsets = _row_offsets(n)
    u = np.searchsorted(offsets, idx, side="right") - 1
    v = idx - offsets[u] + u + 1
    return u, v


def pair_index(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def derive_seed(master_seed: int, *keys: int) -> int:
    """Stable 63-bit seed for a sub-stream identified by ``keys``."""
    ss = np.random.SeedSequence([master_seed, *keys])
    return int(ss.generate_state(1, np.uint64)[0]) >> 1


def _graph_from_indices(n: int, idx: np.ndarray) -> Graph:
    u, v = pairs_from_indices(n, idx)
    return Graph.from_pairs(n, u.tolist(), v.tolist())


def sample_gnm(n: int, M: int, seed: int) -> Graph:
    """Uniform graph with exactly ``M`` edges (partial Fisher-Yates over pair ids)."""
    N = pair_count(n)
    if not 0 <= M <= N:
        raise ValueError(f"M={M} outside [0, {N}]")
    rng = np.random.default_rng(seed)
    draws = rng.integers(np.arange(M), N).tolist() if M else []
    swapped: dict[int, int] = {}
    chosen = []
    for i, j in enumerate(draws):
        chosen.append(swapped.get(j, j))
        swapped[j] = swapped.get(i, i)
    return _graph_from_indices(n, np.array(chosen, dtype=np.int64))


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph: every pair independently with probability ``p``."""
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    N = pair_count(n)
    rng = np.random.default_rng(seed)
    if N <= 20_000_000:
        idx = np.flatnonzero(rng.random(N) < p)
        return _graph_from_indices(n, idx)
    # edge count is Bin(N, p); given the count the edge set is uniform
    return sample_gnm(n, int(rng.binomial(N, p)), int(rng.integers(2**63 - 1)))


class GraphProcess:
    """A random ordering of all vertex pairs with a movable prefix length ``M``.

    ``current`` is always the graph formed by the first ``M`` pairs of the
    order.  Small instances hold the whole permutation; large ones draw the
    order on demand by rejection, which is equally uniform.
    """

    def __init__(self, n: int, seed: int, materialize_limit: int = MATERIALIZE_PAIR_LIMIT):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.seed = seed
        self.N = pair_count(n)
        self.M = 0
        self.current = Graph(n)
        self._rng = np.random.default_rng(seed)
        self.materialized = self.N <= materialize_limit
        if self.materialized:
            order = self._rng.permutation(self.N)
            u, v = pairs_from_indices(n, order)
            self._u = u.tolist()
            self._v = v.tolist()
        else:
            self._u, self._v = [], []
            self._seen: set[int] = set()

    def _extend_lazy(self, upto: int) -> None:
        n = self.n
        while len(self._u) < upto:
            if len(self._u) >= self.N // 2:
                self._finish_lazy()
                return
            batch = self._rng.integers(0, n, size=(4096, 2)).tolist()
            for a, b in batch:
                if a == b:
                    continue
                if a > b:
                    a, b = b, a
                key = a * n + b
                if key in self._seen:
                    continue
                self._seen.add(key)
                self._u.append(a)
                self._v.append(b)
            # whole batches are always consumed, so the order never depends on
            # how far ahead callers happened to ask

    def _finish_lazy(self) -> None:
        # dense regime: shuffle whatever pairs remain unused
        rest = [k for k in range(self.n * self.n)
                if k // self.n < k % self.n and k not in self._seen]
        perm = self._rng.permutation(len(rest))
        for t in perm.tolist():
            k = rest[t]
            self._seen.add(k)
            self._u.append(k // self.n)
            self._v.append(k % self.n)

    def edge(self, i: int) -> tuple[int, int]:
        """The ``i``-th pair (0-based) of the order."""
        if not 0 <= i < self.N:
            raise IndexError(i)
        if i >= len(self._u):
            self._extend_lazy(i + 1)
        return self._u[i], self._v[i]

    def advance(self, steps: int = 1) -> GraphProcess:
        if steps < 0:
            raise ValueError("steps must be non-negative")
        if self.M + steps > self.N:
            raise ValueError(f"cannot advance {steps} steps from M={self.M}: only {self.N} pairs")
        if self.M + steps > len(self._u):
            self._extend_lazy(self.M + steps)
        adj = self.current.adj
        for i in range(self.M, self.M + steps):
            a, b = self._u[i], self._v[i]
            adj[a].add(b)
            adj[b].add(a)
        self.M += steps
        self.current.m = self.M
        return self

    def rewind(self) -> GraphProcess:
        self.M = 0
        self.current = Graph(self.n)
        return self

    def snapshot(self, M: int) -> Graph:
        """A fresh graph of the first ``M`` edges; does not move the process."""
        if not 0 <= M <= self.N:
            raise ValueError(f"M={M} outside [0, {self.N}]")
        if M > len(self._u):
            self._extend_lazy(M)
        return Graph.from_pairs(self.n, self._u[:M], self._v[:M])

    def order_prefix(self, M: int) -> list[tuple[int, int]]:
        if M > len(self._u):
            self._extend_lazy(M)
        return list(zip(self._u[:M], self._v[:M]))

    def to_text(self, dump_order: bool = False) -> str:
        """``n seed M`` header, optionally followed by the first ``M`` pairs as an edge list."""
        head = f"{self.n} {self.seed} {self.M}\n"
        if not dump_order:
            return head
        lines = [f"{self.n} {self.M}"] + [f"{u} {v}" for u, v in self.order_prefix(self.M)]
        return head + "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GraphProcess:
        """Replay a serialised process; checks a dumped order against the regenerated one."""
        lines = text.splitlines()
        n, seed, M = (int(t) for t in lines[0].split())
        proc = cls(n, seed)
        proc.advance(M)
        if len(lines) > 1:
            dumped = [tuple(int(t) for t in ln.split()) for ln in lines[2:] if ln.strip()]
            if dumped != proc.order_prefix(M):
                raise ValueError("dumped edge order does not match the seed")
        return proc

    def __repr__(self) -> str:
        return f"GraphProcess(n={self.n}, seed={self.seed}, M={self.M})"


def new_process(n: int, seed: int) -> GraphProcess:
    return GraphProcess(n, seed)


def advance(P: GraphProcess, steps: int) -> GraphProcess:
    return P.advance(steps)


def replay_edge_order(text: str) -> list[tuple[int, int]]:
    """Read a dumped edge order (edge-list format) preserving its line order."""
    parse_edge_list(text)  # validates
    return [tuple(int(t) for t in ln.split()) for ln in text.splitlines()[1:] if ln.strip()]


@dataclass
class HittingTimeReport:
    criterion: str  # "min-degree" | "nonempty-k-core"
    k: int
    tau: int
    reached: bool = True
    witness: list[int] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "k": self.k, "tau": self.tau,
                "reached": self.reached, "witness": self.witness}


def hitting_time_min_degree(P: GraphProcess, k: int) -> HittingTimeReport:
    """Smallest ``M`` with minimum degree at least ``k``; leaves ``P`` at that ``M``.

    If the criterion never holds (``k >= n``) the report has ``reached=False``
    and ``P`` ends at the complete graph.
    """
    P.rewind()
    n = P.n
    deg = [0] * n
    below = n if k > 0 else 0
    while below > 0 and P.M < P.N:
        u, v = P.edge(P.M)
        P.advance(1)
        for x in (u, v):
            deg[x] += 1
            if deg[x] == k:
                below -= 1
    return HittingTimeReport("min-degree", k, P.M, reached=below == 0)


def hitting_time_kcore(P: GraphProcess, k: int, cadence: int | None = None) -> HittingTimeReport:
    """Smallest ``M`` at which the ``k``-core is non-empty; leaves ``P`` at that ``M``.

    Degrees are tracked per edge.  Once ``k + 1`` vertices reach degree ``k``
    (necessary for a non-empty core) the core is recomputed every ``cadence``
    edges, and the first positive check is bisected back to the exact birth
    edge.  The criterion is monotone in ``M``, so the bisection is exact.
    """
    P.rewind()
    n = P.n
    if k <= 0:
        return HittingTimeReport("nonempty-k-core", k, 0, n > 0, list(range(n)) if n else None)
    if cadence is None:
        cadence = max(1, n // 10)
    deg = [0] * n
    heavy = 0
    last_empty = 0
    since = 0
    while P.M < P.N:
        u, v = P.edge(P.M)
        P.advance(1)
        for x in (u, v):
            deg[x] += 1
            if deg[x] == k:
                heavy += 1
        if heavy <= k:
            last_empty = P.M
            continue
        since += 1
        if since < cadence and P.M < P.N:
            continue
        since = 0
        if not core_vertex_set(P.current, k):
            last_empty = P.M
            continue
        lo, hi = last_empty, P.M  # empty at lo, non-empty at hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if core_vertex_set(P.snapshot(mid), k):
                hi = mid
            else:
                lo = mid
        P.rewind().advance(hi)
        return HittingTimeReport("nonempty-k-core", k, hi, True, core_vertex_set(P.current, k))
    return HittingTimeReport("nonempty-k-core", k, P.N, False)


def low_degree_separated(G: Graph, d: float, r: int) -> tuple[bool, tuple[int, int] | None]:
    """True iff no two vertices of degree at most ``d`` lie within distance ``r``.

    On failure returns the offending pair (least first vertex, then nearest).
    """
    low = [v for v in range(G.n) if len(G.adj[v]) <= d]
    low_set = set(low)
    for s in low:
        dist = {s: 0}
        queue = deque([s])
        hits = []
        while queue:
            x = queue.popleft()
            if dist[x] >= r:
                continue
            for w in G.adj[x]:
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
                    if w in low_set:
                        hits.append(w)
        if hits:
            return False, (s, min(hits, key=lambda w: (dist[w], w)))
    return True, None
