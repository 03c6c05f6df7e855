"""Exact exponential-time ground truth for small graphs, plus local max-cut.

The path dynamic programs store, for every vertex subset ``S``, a bitmask of
the vertices ``v`` such that some path covers exactly ``S`` and ends at ``v``.
Subsets are processed layer by layer (by size) with numpy.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class OracleLimits:
    max_n_hamilton: int = 20
    max_n_longest_path: int = 18
    max_n_maxcut_exact: int = 20


DEFAULT_LIMITS = OracleLimits()

_layer_cache: dict[int, list[np.ndarray]] = {}


def _layers(n: int) -> list[np.ndarray]:
    """Subset masks of ``range(n)`` grouped by popcount."""
    if n not in _layer_cache:
        masks = np.arange(1 << n, dtype=np.int64)
        pc = np.zeros(1 << n, dtype=np.int8)
        for v in range(n):
            pc += ((masks >> v) & 1).astype(np.int8)
        _layer_cache[n] = [masks[pc == s] for s in range(n + 1)]
    return _layer_cache[n]


def _nbr_masks(G: Graph) -> list[int]:
    return [sum(1 << w for w in G.adj[v]) for v in range(G.n)]


def _path_table(G: Graph, start: int | None) -> np.ndarray:
    n = G.n
    nbr = _nbr_masks(G)
    dp = np.zeros(1 << n, dtype=np.int64)
    if start is None:
        for v in range(n):
            dp[1 << v] = 1 << v
    else:
        dp[1 << start] = 1 << start
    for layer in _layers(n)[1:n]:
        live = layer[dp[layer] != 0]
        if live.size == 0:
            continue
        ends = dp[live]
        for w in range(n):
            bit = 1 << w
            ok = ((live & bit) == 0) & ((ends & nbr[w]) != 0)
            if ok.any():
                tgt = live[ok] | bit
                dp[tgt] |= bit
    return dp


def _backtrack(G: Graph, dp: np.ndarray, mask: int, end: int) -> list[int]:
    path = [end]
    while mask & (mask - 1):
        mask ^= 1 << end
        prev = dp[mask]
        end = next(u for u in range(G.n) if prev >> u & 1 and u in G.adj[end])
        path.append(end)
    path.reverse()
    return path


def _guard(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ValueError(f"{what}: n={n} exceeds the oracle cap {cap}")


def held_karp_hamiltonian(G: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> tuple[bool, list[int] | None]:
    """Decide Hamiltonicity exactly; returns a Hamilton cycle as witness when one exists."""
    n = G.n
    _guard(n, limits.max_n_hamilton, "held_karp_hamiltonian")
    if n < 3:
        return False, None
    dp = _path_table(G, start=0)
    full = (1 << n) - 1
    closers = int(dp[full]) & _nbr_masks(G)[0]
    if not closers:
        return False, None
    end = (closers & -closers).bit_length() - 1
    return True, _backtrack(G, dp, full, end)


def hamilton_path_exists(G: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> bool:
    _guard(G.n, limits.max_n_longest_path, "hamilton_path_exists")
    if G.n == 0:
        return False
    return bool(_path_table(G, start=None)[(1 << G.n) - 1])


def exact_longest_path(G: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> tuple[int, list[int]]:
    """Number of vertices on a longest path, with a witness path."""
    n = G.n
    _guard(n, limits.max_n_longest_path, "exact_longest_path")
    if n == 0:
        return 0, []
    dp = _path_table(G, start=None)
    layers = _layers(n)
    for size in range(n, 0, -1):
        layer = layers[size]
        hit = layer[dp[layer] != 0]
        if hit.size:
            mask = int(hit.min())
            ends = int(dp[mask])
            end = (ends & -ends).bit_length() - 1
            return size, _backtrack(G, dp, mask, end)
    raise AssertionError("unreachable: singletons are paths")


def cut_value(G: Graph, A: Iterable[int]) -> int:
    side = set(A)
    return sum(1 for u, v in G.edges() if (u in side) != (v in side))


def exact_max_cut(G: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> tuple[list[int], list[int], int]:
    """Maximum cut by exhaustion; ties go to the lexicographically least ``A``."""
    n = G.n
    _guard(n, limits.max_n_maxcut_exact, "exact_max_cut")
    if n == 0:
        return [], [], 0
    # vertex 0 always sits in A: that side is lexicographically smaller
    rest = np.arange(1 << (n - 1), dtype=np.int64)
    masks = (rest << 1) | 1
    cut = np.zeros(masks.size, dtype=np.int32)
    for u, v in G.edges():
        cut += (((masks >> u) ^ (masks >> v)) & 1).astype(np.int32)
    best = int(cut.max())
    winners = masks[cut == best].tolist()
    A = min(([v for v in range(n) if m >> v & 1] for m in winners))
    B = [v for v in range(n) if v not in set(A)]
    return A, B, best


def local_max_cut(G: Graph, U: Iterable[int] | None = None, seed: int = 0, restarts: int = 3,
                  init: Iterable[int] | None = None) -> tuple[list[int], list[int]]:
    """Single-vertex-move local search for a cut of ``G[U]``.

    On return every vertex has at most as many neighbours on its own side as
    on the other.  Starts from ``init`` (taken as side A) if given, otherwise
    from ``restarts`` seeded random splits, keeping the best local optimum.
    """
    verts = sorted(set(range(G.n) if U is None else U))
    inside = set(verts)
    nbrs = {v: [w for w in G.adj[v] if w in inside] for v in verts}
    rng = random.Random(seed)
    starts = []
    if init is not None:
        init = set(init)
        starts.append({v: v in init for v in verts})
    else:
        for _ in range(max(1, restarts)):
            starts.append({v: rng.random() < 0.5 for v in verts})
    best = None
    for side in starts:
        moved = True
        while moved:
            moved = False
            for v in verts:
                same = sum(1 for w in nbrs[v] if side[w] == side[v])
                if 2 * same > len(nbrs[v]):
                    side[v] = not side[v]
                    moved = True
        value = sum(1 for v in verts for w in nbrs[v] if side[v] != side[w]) // 2
        if best is None or value > best[0]:
            best = (value, dict(side))
    side = best[1]
    A = [v for v in verts if side[v]]
    B = [v for v in verts if not side[v]]
    return A, B
