"""Pósa rotation-extension: rotations, rotation closures, boosters, and a
Hamilton cycle builder that grows a sparse spanning subgraph by boosters.

Rotated paths inside a closure are stored as *ropes*: lists of ``(s, e)``
index ranges into the root path, read left to right, each range walked
forwards if ``s <= e`` and backwards otherwise.  A rotation splits one range
and reverses the tail, so a state costs O(rotation depth) rather than O(n).
"""

from __future__ import annotations

import json
import random
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .expander import (EdgeBudgetError, default_per_vertex, extract_min_degree_subgraph,
                       extract_sparse_expander, sparsify)
from .graph import Graph, graph_minus, graph_union, is_connected, is_cycle, is_path
from .oracles import DEFAULT_LIMITS, exact_longest_path

Edge = tuple[int, int]

# Below four selected edges per vertex the rotation closures at n ~ 10^3 get
# too small to close the last few gaps reliably.
BUILDER_MIN_PER_VERTEX = 4


def _e(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def rotate(path: Sequence[int], pivot_edge: Edge, fixed: int | None = None,
           host: Graph | None = None) -> list[int]:
    """Rotate ``x1 .. xk`` with ``x1`` fixed using the edge ``xk xj``.

    Returns ``x1 .. xj xk x(k-1) .. x(j+1)``: the edge ``xj x(j+1)`` is broken
    and ``x(j+1)`` becomes the free end.
    """
    path = list(path)
    if fixed is not None and path[0] != fixed:
        raise ValueError("path does not start at the fixed vertex")
    end = path[-1]
    a, b = pivot_edge
    if end not in (a, b):
        raise ValueError(f"pivot edge {pivot_edge} is not incident to the free end {end}")
    other = b if a == end else a
    try:
        j = path.index(other)
    except ValueError:
        raise ValueError(f"pivot vertex {other} is not on the path") from None
    if j >= len(path) - 2:
        raise ValueError("degenerate rotation: pivot is the free end's predecessor")
    if host is not None and not host.has_edge(end, other):
        raise ValueError(f"{end}-{other} is not an edge of the host graph")
    return path[: j + 1] + path[j + 1:][::-1]


# --- rope machinery ------------------------------------------------------

def _materialize(p: list[int], segs: list[Edge]) -> list[int]:
    out: list[int] = []
    for s, e in segs:
        if s <= e:
            out.extend(p[s:e + 1])
        else:
            out.extend(reversed(p[e:s + 1]))
    return out


def _pred(segs: list[Edge]) -> int | None:
    s, e = segs[-1]
    if s != e:
        return e - 1 if e > s else e + 1
    return segs[-2][1] if len(segs) > 1 else None


def _rotate_rope(segs: list[Edge], i: int) -> list[Edge]:
    for k, (s, e) in enumerate(segs):
        if (s <= i <= e) if s <= e else (e <= i <= s):
            break
    step = 1 if e >= s else -1
    head = segs[:k]
    head.append((s, i))
    tail = [(i + step, e)] if i != e else []
    tail.extend(segs[k + 1:])
    head.extend((y, x) for x, y in reversed(tail))
    return head


def _successor(segs: list[Edge], i: int) -> int:
    """Root index that follows root index ``i`` along the rope (``i`` not last)."""
    for k, (s, e) in enumerate(segs):
        if s <= e:
            if s <= i <= e:
                return i + 1 if i != e else segs[k + 1][0]
        elif e <= i <= s:
            return i - 1 if i != e else segs[k + 1][0]
    raise ValueError(f"index {i} not on the rope")


def _closure_states(adj: list[set[int]], p: list[int], pos: dict[int, int],
                    helper_adj: list[set[int]] | None = None, helper_depth: int = 0,
                    by_path: bool = False) -> Iterator[tuple[int, list[Edge], Edge | None, tuple | None]]:
    """Breadth-first rotation closure of ``p`` with ``p[0]`` fixed.

    Yields ``(endpoint, rope, helper_edge, (pivot, prior))`` as endpoints are
    discovered, root first.  Plain rotations are exhausted before any helper
    rotation is tried; at most one helper rotation is used per derived path.
    States are deduplicated by endpoint, or by the whole path when
    ``by_path`` is set (exact but exponential).
    """
    root = p[-1]
    segs0 = [(0, len(p) - 1)]
    seen = {tuple(p) if by_path else root}
    ends = {root}
    yield root, segs0, None, None
    level0 = [(segs0, root)]
    queue = deque(level0)

    def expand(segs, u, nbrs):
        pred = _pred(segs)
        for w in nbrs:
            i = pos.get(w)
            if i is None or i == pred:
                continue
            if by_path:
                new = _rotate_rope(segs, i)
                key = tuple(_materialize(p, new))
                if key not in seen:
                    seen.add(key)
                    yield key[-1], new, w
                continue
            v = p[_successor(segs, i)]
            if v not in seen:
                seen.add(v)
                yield v, _rotate_rope(segs, i), w

    def fresh(v):
        if v in ends:
            return False
        ends.add(v)
        return True

    while queue:
        segs, u = queue.popleft()
        for v, new, w in expand(segs, u, adj[u]):
            if fresh(v):
                yield v, new, None, (w, u)
            entry = (new, v)
            queue.append(entry)
            level0.append(entry)
    if not helper_adj or helper_depth < 1:
        return
    queue = deque()
    for segs, u in level0:
        for v, new, w in expand(segs, u, helper_adj[u]):
            he = _e(u, w)
            if fresh(v):
                yield v, new, he, (w, u)
            queue.append((new, v, he))
    while queue:
        segs, u, he = queue.popleft()
        for v, new, w in expand(segs, u, adj[u]):
            if fresh(v):
                yield v, new, he, (w, u)
            queue.append((new, v, he))


@dataclass
class RotationFamily:
    """Endpoints reachable by rotations from ``root`` with ``fixed_end`` held."""

    host: Graph
    fixed_end: int
    span: frozenset[int]
    root: list[int]
    endpoints: list[int]
    parent: dict[int, tuple[Edge, int]]
    helper_edge: dict[int, Edge | None]
    _ropes: dict[int, list[Edge]] = field(repr=False)

    def path(self, u: int) -> list[int]:
        """Path on ``span`` from ``fixed_end`` to ``u``."""
        return _materialize(self.root, self._ropes[u])

    def replay(self, u: int) -> list[int]:
        """Rebuild the path to ``u`` by replaying rotations along parent links."""
        chain = []
        x = u
        while x != self.root[-1]:
            edge, prior = self.parent[x]
            chain.append(edge)
            x = prior
        path = list(self.root)
        for edge in reversed(chain):
            path = rotate(path, edge)
        return path


def _check_path(H: Graph, P: Sequence[int]) -> None:
    if not P or not is_path(H, P):
        raise ValueError("malformed path: not a simple path of the host graph")


def rotation_closure(H: Graph, P: Sequence[int], fixed: int | None = None,
                     helper: Graph | None = None, helper_depth: int = 0,
                     dedup: str = "endpoint") -> RotationFamily:
    """All free ends reachable from ``P`` by rotations, with one witness path each.

    ``dedup="endpoint"`` keeps the first path found per endpoint, as in the
    usual counting argument; ``dedup="path"`` explores every distinct path
    and so can reach a few more endpoints on small graphs.
    """
    if dedup not in ("endpoint", "path"):
        raise ValueError(f"dedup must be 'endpoint' or 'path', got {dedup!r}")
    P = list(P)
    if fixed is not None and P and P[0] != fixed:
        if P[-1] == fixed:
            P.reverse()
        else:
            raise ValueError("the fixed vertex must be an end of the path")
    _check_path(H, P)
    if helper is not None:
        _check_path(graph_union(H, helper), P)
    pos = {v: i for i, v in enumerate(P)}
    endpoints, parent, helper_edge, ropes = [], {}, {}, {}
    for u, segs, he, via in _closure_states(H.adj, P, pos, helper.adj if helper else None, helper_depth,
                                            by_path=dedup == "path"):
        endpoints.append(u)
        ropes[u] = segs
        helper_edge[u] = he
        if via is not None:
            w, prior = via
            parent[u] = (_e(prior, w), prior)
    return RotationFamily(H, P[0], frozenset(P), P, endpoints, parent, helper_edge, ropes)


# --- longest path heuristic --------------------------------------------

def _greedy_extend(adj: list[set[int]], path: list[int], on: set[int], rng: random.Random) -> None:
    for _ in range(2):
        while True:
            free = [w for w in adj[path[-1]] if w not in on]
            if not free:
                break
            w = free[0] if len(free) == 1 else rng.choice(free)
            path.append(w)
            on.add(w)
        path.reverse()


def _open_cycle(adj: list[set[int]], cycle: list[int], on: set[int]) -> list[int] | None:
    """Turn a cycle into a longer path through an outside neighbour, if any."""
    for t, c in enumerate(cycle):
        for z in adj[c]:
            if z not in on:
                return [z] + cycle[t:] + cycle[:t]
    return None


def _improve(adj: list[set[int]], n: int, path: list[int], second_level: int) -> tuple[list[int] | None, list[int] | None]:
    """One improvement step on a stuck path, using edges of ``adj`` only.

    Returns ``(longer_path, None)``, ``(None, hamilton_cycle)`` or ``(None, None)``.
    """
    on = set(path)
    L = len(path)
    has_boundary = any(adj[c] - on for c in path) if L < n else False
    if L < n and not has_boundary:
        return None, None  # path spans its component
    firsts = []
    for orient in (path, path[::-1]):
        pos = {v: i for i, v in enumerate(orient)}
        fixed = orient[0]
        for u, segs, _, _ in _closure_states(adj, orient, pos):
            if orient is path:
                firsts.append((u, segs))
            for z in adj[u]:
                if z not in pos:
                    return _materialize(orient, segs) + [z], None
            if L >= 3 and fixed in adj[u]:
                cyc = _materialize(orient, segs)
                if L == n:
                    return None, cyc
                return _open_cycle(adj, cyc, on), None
    for a, segs in firsts[1:1 + second_level]:
        q = _materialize(path, segs)[::-1]
        pos = {v: i for i, v in enumerate(q)}
        for b, segs2, _, _ in _closure_states(adj, q, pos):
            if L >= 3 and a in adj[b]:
                cyc = _materialize(q, segs2)
                if L == n:
                    return None, cyc
                return _open_cycle(adj, cyc, on), None
    return None, None


def _extend_rotate(adj: list[set[int]], n: int, path: list[int], rng: random.Random,
                   second_level: int) -> tuple[list[int], list[int] | None]:
    path = list(path)
    while True:
        _greedy_extend(adj, path, set(path), rng)
        if len(path) == n and n >= 3 and path[0] in adj[path[-1]]:
            return path, path
        longer, cycle = _improve(adj, n, path, second_level)
        if cycle is not None:
            return cycle, cycle
        if longer is None:
            return path, None
        path = longer


def longest_path_heuristic(H: Graph, seed: int = 0, effort: int = 3, second_level: int = 32) -> list[int]:
    """Best maximal path over ``effort`` restarts of extend-or-rotate.

    A returned path cannot be extended at either end after rotations, nor via
    a cycle on its vertex set found by rotating both ends.  Not necessarily a
    longest path.
    """
    if H.n == 0:
        return []
    rng = random.Random(seed)
    best: list[int] = []
    for _ in range(max(1, effort)):
        path, _ = _extend_rotate(H.adj, H.n, [rng.randrange(H.n)], rng, second_level)
        if len(path) > len(best):
            best = path
        if len(best) == H.n:
            break
    return best


def longest_path(H: Graph, seed: int = 0, effort: int = 3) -> list[int]:
    """Exact longest path when the oracle allows it, otherwise the heuristic."""
    if H.n <= DEFAULT_LIMITS.max_n_longest_path:
        return exact_longest_path(H)[1]
    return longest_path_heuristic(H, seed, effort)


# --- boosters ------------------------------------------------------------

@dataclass
class BoosterSet:
    """One or two pairs whose addition lengthens the longest path or closes a Hamilton cycle.

    ``certificate`` is the longer path (``kind == "path"``) or the Hamilton
    cycle (``kind == "cycle"``) realised in ``base + edges``.
    """

    base: Graph
    edges: list[Edge]
    certificate: list[int]
    kind: str
    base_length: int
    helper_edges: list[Edge] = field(default_factory=list)

    def augmented(self) -> Graph:
        g = self.base.copy()
        for u, v in self.edges:
            if not g.has_edge(u, v):
                g.add_edge(u, v)
        return g

    def verify(self) -> bool:
        g = self.augmented()
        if self.kind == "cycle":
            return len(self.certificate) == g.n and is_cycle(g, self.certificate)
        if not is_path(g, self.certificate) or len(self.certificate) <= self.base_length:
            return False
        return all(not self.base.has_edge(*e) or e in self.helper_edges for e in self.edges)

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "helper_edges": [list(e) for e in self.helper_edges],
                "kind": self.kind, "certificate": self.certificate, "base_length": self.base_length}


def _certify(base: Graph, cycle: list[int], edges: list[Edge], helper_edges: list[Edge],
             L: int) -> BoosterSet | None:
    if len(cycle) == base.n:
        return BoosterSet(base, edges, cycle, "cycle", L, helper_edges)
    on = set(cycle)
    longer = _open_cycle(base.adj, cycle, on)
    if longer is None:
        return None
    return BoosterSet(base, edges, longer, "path", L, helper_edges)


def find_boosters_single(H: Graph, P: Sequence[int], effort: int | None = None) -> list[BoosterSet]:
    """Single pairs ``{a, b}`` closing a cycle on ``V(P)``, from rotating both ends.

    ``a`` ranges over the closure with ``P[0]`` fixed (at most ``effort`` of
    them); ``b`` over the closure of the path to ``a`` with ``a`` fixed.
    Pairs already in ``H`` are emitted only when they close a Hamilton cycle.
    ``P`` should be a longest path for the boosters to lengthen the longest path.
    """
    P = list(P)
    _check_path(H, P)
    L = len(P)
    out: dict[frozenset, BoosterSet] = {}
    fam1 = rotation_closure(H, P, fixed=P[0])
    firsts = fam1.endpoints if effort is None else fam1.endpoints[:effort]
    for a in firsts:
        q = fam1.path(a)[::-1]
        pos = {v: i for i, v in enumerate(q)}
        for b, segs, _, _ in _closure_states(H.adj, q, pos):
            key = frozenset((a, b))
            if b == a or key in out or L < 3:
                continue
            present = H.has_edge(a, b)
            if present and L != H.n:
                continue
            booster = _certify(H, _materialize(q, segs), [_e(a, b)], [], L)
            if booster is not None:
                out[key] = booster
    return list(out.values())


def find_boosters_paired(H0: Graph, H1: Graph, effort: int | None = None,
                         path: Sequence[int] | None = None, seed: int = 0) -> list[BoosterSet]:
    """Boosters for ``H0`` that use at most one rotation along an edge of ``H1``.

    From a longest path of ``H0`` with ``v = P[0]`` fixed, every closure
    endpoint ``u`` reached by ``H0`` rotations gives the single pair ``{uv}``;
    endpoints reached via one helper edge ``e`` give ``{uv, e}``; helper
    edges from a plain endpoint to a vertex off the path give ``{e}``.
    """
    if H0.n != H1.n:
        raise ValueError("H0 and H1 must share a vertex set")
    for u, v in H1.edges():
        if H0.has_edge(u, v):
            raise ValueError("H0 and H1 must be edge-disjoint")
    P = list(path) if path is not None else longest_path(H0, seed)
    _check_path(H0, P)
    L = len(P)
    v0 = P[0]
    span = set(P)
    out: dict[frozenset, BoosterSet] = {}
    fam = rotation_closure(H0, P, fixed=v0, helper=H1, helper_depth=1)
    ends = fam.endpoints if effort is None else fam.endpoints[:effort]
    for u in ends:
        he = fam.helper_edge[u]
        cyc = fam.path(u)
        helpers = [he] if he else []
        if he is None:
            for z in sorted(H1.adj[u] - span):
                e = _e(u, z)
                key = frozenset([e])
                if key not in out:
                    out[key] = BoosterSet(H0, [e], cyc + [z], "path", L, [e])
        if L < 3:
            continue
        closing = _e(u, v0)
        if H0.has_edge(*closing):
            if L != H0.n:
                continue
            # already a Hamilton cycle: report the closing pair, as the single search does
            edges = helpers or [closing]
        else:
            edges = helpers + [closing]
        key = frozenset(edges)
        if key in out:
            continue
        aug = H0.copy()
        for e in edges:
            if not aug.has_edge(*e):
                aug.add_edge(*e)
        booster = _certify(aug, cyc, edges, helpers, L)
        if booster is not None:
            booster.base = H0
            out[key] = booster
    return list(out.values())


@dataclass
class PartnerReport:
    """Per end-vertex counts of certified booster partners (helper depth one)."""

    eps: float
    size: int
    partners: dict[int, list[int]]
    rich: list[int]  # vertices with at least (1/2 + eps)|H0| partners

    @property
    def threshold(self) -> float:
        return self.eps * self.size

    @property
    def many(self) -> bool:
        return len(self.rich) >= self.threshold


def count_booster_partners(H0: Graph, H1: Graph, eps: float, path: Sequence[int] | None = None,
                           seed: int = 0) -> PartnerReport:
    """For each end ``v`` of a longest path of ``H0``, the ``u`` with ``{uv, e}`` a certified booster."""
    P = list(path) if path is not None else longest_path(H0, seed)
    fam = rotation_closure(H0, P, fixed=P[0])
    partners = {}
    for v in fam.endpoints + [P[0]]:
        q = fam.path(v)[::-1] if v != P[0] else P[::-1]
        found = set()
        for b in find_boosters_paired(H0, H1, path=q):
            closing = [e for e in b.edges if v in e and e not in b.helper_edges]
            if closing:
                a, c = closing[0]
                found.add(c if a == v else a)
        partners[v] = sorted(found)
    need = (0.5 + eps) * H0.n
    rich = sorted(v for v, us in partners.items() if len(us) >= need)
    return PartnerReport(eps, H0.n, partners, rich)


# --- builder -------------------------------------------------------------

class BuildFailure(RuntimeError):
    """``build_hamilton`` gave up; ``stage`` is no-expander, no-booster or budget-exhausted."""

    def __init__(self, stage: str, **diagnostics):
        super().__init__(f"{stage}: {diagnostics.get('reason', '')}".rstrip(": "))
        self.stage = stage
        self.diagnostics = diagnostics

    def to_dict(self) -> dict:
        return {"stage": self.stage, **self.diagnostics}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str)


def verify_hamilton(H: Graph, cycle: Sequence[int]) -> bool:
    cycle = list(cycle)
    return len(cycle) == H.n and sorted(cycle) == list(range(H.n)) and is_cycle(H, cycle)


def _open_with(cur: list[set[int]], full: list[set[int]], cycle: list[int]) -> tuple[list[int], Edge | None] | None:
    """Extend a non-spanning cycle by one vertex, preferring edges already in ``cur``."""
    on = set(cycle)
    longer = _open_cycle(cur, cycle, on)
    if longer is not None:
        return longer, None
    longer = _open_cycle(full, cycle, on)
    if longer is not None:
        return longer, _e(longer[0], longer[1])
    return None


def _search_booster(cur: list[set[int]], full: list[set[int]], n: int, path: list[int],
                    second_level: int, rng: random.Random, helper_adj=None):
    """Find a move for ``path`` whose new edges all come from ``full``.

    Returns ``(new_edges, certificate, kind, stage)`` or ``None``.  Rotations
    use ``cur`` edges only (plus one helper edge in the paired stage).
    ``new_edges`` is empty when ``cur`` alone lengthens the path.
    """
    L = len(path)

    def close(cyc, edges, stage, allow_extra=True):
        if len(cyc) == n:
            return edges, cyc, "cycle", stage
        opened = _open_with(cur, full, cyc)
        if opened is None:
            return None
        longer, extra = opened
        if extra is not None:
            if not allow_extra:
                return None
            edges = edges + [extra]
        return edges, longer, "path", stage

    def scan(u, segs, orient, pos, fixed, extra_edges, stage):
        cu = cur[u]
        for z in full[u]:
            if z not in pos:
                e = [] if z in cu else [_e(u, z)]
                return extra_edges + e, _materialize(orient, segs) + [z], "path", stage
        if L >= 3 and fixed in full[u]:
            e = [] if fixed in cu else [_e(u, fixed)]
            return close(_materialize(orient, segs), extra_edges + e, stage, not extra_edges)
        return None

    firsts = []
    for orient in (path, path[::-1]):
        pos = {v: i for i, v in enumerate(orient)}
        for u, segs, _, _ in _closure_states(cur, orient, pos):
            if orient is path:
                firsts.append((u, segs))
            res = scan(u, segs, orient, pos, orient[0], [], "single")
            if res is not None:
                return res
    cand = firsts[1:]
    if len(cand) > second_level:
        cand = rng.sample(cand, second_level)
    for a, segs in cand:
        q = _materialize(path, segs)[::-1]
        pos = {v: i for i, v in enumerate(q)}
        for b, segs2, _, _ in _closure_states(cur, q, pos):
            if b == a:
                continue
            res = scan(b, segs2, q, pos, a, [], "two-level")
            if res is not None:
                return res
    if helper_adj is None:
        return None
    for orient in (path, path[::-1]):
        pos = {v: i for i, v in enumerate(orient)}
        for u, segs, he, _ in _closure_states(cur, orient, pos, helper_adj, 1):
            if he is None:
                continue
            res = scan(u, segs, orient, pos, orient[0], [he], "paired")
            if res is not None and he not in res[0][1:]:
                return res
    return None


def _perturb(cur: list[set[int]], path: list[int], rng: random.Random, steps: int) -> list[int]:
    """Random rotations alternating between the two ends; keeps the vertex set."""
    for _ in range(steps):
        path.reverse()
        end = path[-1]
        pos = {v: i for i, v in enumerate(path)}
        pivots = [w for w in cur[end] if w in pos and pos[w] < len(path) - 2]
        if pivots:
            path = rotate(path, (end, rng.choice(pivots)))
    return path


def build_hamilton(G: Graph, H: Graph | None = None, *, per_vertex: int | None = None, q: float = 0.05,
                   edge_budget: int | None = None, kcap: int | None = None, attempts: int = 2,
                   mode: str | None = None, effort: int = 16, max_boosters: int | None = None,
                   restarts: int = 8, second_level: int = 48, helper_fraction: float | None = None,
                   seed: int = 0, require_expander: bool = False, incremental: bool = True,
                   log: list | None = None) -> list[int]:
    """Find a Hamilton cycle of ``H`` (a spanning subgraph of ``G``) by adding boosters.

    A sparse spanning subgraph ``H0`` of ``H`` is extracted first.  Each round
    takes the current path, makes it maximal, and looks for one or two edges of
    ``H`` outside the current subgraph that lengthen it or close a Hamilton
    cycle: single boosters via rotation closures from both ends, then
    two-level closures, then pairs using one rotation along a helper subgraph
    of the unused edges.  Every returned cycle is re-verified against ``H``.

    Raises :class:`BuildFailure` when no cycle is found.
    """
    if H is None:
        H = G
    if H.n != G.n:
        raise ValueError("H must be a spanning subgraph on the vertex ids of G")
    n = H.n
    rng = random.Random(seed)
    if n < 3:
        raise BuildFailure("no-booster", reason="fewer than 3 vertices")
    if H.min_degree() < 2:
        raise BuildFailure("no-booster", reason="vertex of degree below 2")
    if not is_connected(H):
        raise BuildFailure("no-booster", reason="disconnected")
    if per_vertex is None:
        per_vertex = max(BUILDER_MIN_PER_VERTEX, default_per_vertex(G))
    try:
        extract = extract_sparse_expander(G, H, per_vertex=per_vertex, q=q, edge_budget=edge_budget,
                                          kcap=kcap, attempts=attempts, seed=seed, mode=mode,
                                          effort=effort)
    except EdgeBudgetError as exc:
        raise BuildFailure("no-expander", reason=str(exc)) from None
    if require_expander and extract.verdict.falsified:
        raise BuildFailure("no-expander", reason="extracted subgraph falsified",
                           verdict=extract.verdict.to_dict())
    cur_graph = extract.subgraph.copy()
    cur = cur_graph.adj
    full = H.adj
    if max_boosters is None:
        max_boosters = n
    hq = q if helper_fraction is None else helper_fraction
    pv = per_vertex

    def diagnostics(**extra):
        return dict(boosters=boosters, restarts=restarts_used, best_length=best,
                    subgraph_edges=cur_graph.m, verdict=extract.verdict.status, **extra)

    def done(cycle):
        if not verify_hamilton(H, cycle):
            raise AssertionError("builder produced an invalid Hamilton cycle")
        return list(cycle)

    boosters = restarts_used = 0
    path, cycle = _extend_rotate(cur, n, [rng.randrange(n)], rng, second_level)
    best = len(path)
    while True:
        if cycle is not None:
            return done(cycle)
        if boosters >= max_boosters:
            raise BuildFailure("budget-exhausted", reason=f"{boosters} boosters added", **diagnostics())
        level = second_level << min(restarts_used, 6)
        found = _search_booster(cur, full, n, path, level, rng)
        if found is None:
            spare = graph_minus(H, cur_graph)
            if restarts_used:
                # escalate: every unused edge of H may serve as the helper rotation
                helper = spare
            else:
                helper = graph_union(extract_min_degree_subgraph(spare, max(1, pv)),
                                     sparsify(spare, hq, rng.randrange(2**31)))
            found = _search_booster(cur, full, n, path, level, rng, helper.adj)
        if found is None:
            restarts_used += 1
            if restarts_used > restarts:
                raise BuildFailure("no-booster", reason="no booster found from the current path",
                                   **diagnostics())
            path = _perturb(cur, path, rng, 8)
            continue
        edges, cert, kind, stage = found
        for u, v in edges:
            if v not in cur[u]:
                cur_graph.add_edge(u, v)
        if edges:
            boosters += 1
        if log is not None:
            log.append({"iteration": boosters, "edges": [list(e) for e in edges], "stage": stage,
                        "kind": kind, "length": len(cert)})
        if kind == "cycle":
            return done(cert)
        best = max(best, len(cert))
        if incremental:
            # the booster search scans every H-edge, cur edges included, so a
            # greedy pass is enough here
            path = list(cert)
            _greedy_extend(cur, path, set(path), rng)
            cycle = path if len(path) == n and path[0] in cur[path[-1]] else None
        else:
            fresh = longest_path_heuristic(cur_graph, seed=rng.randrange(2**31), effort=1,
                                           second_level=second_level)
            start = fresh if len(fresh) > len(cert) else cert
            path, cycle = _extend_rotate(cur, n, start, rng, second_level)
        best = max(best, len(path))
