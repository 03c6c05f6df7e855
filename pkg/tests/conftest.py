import random
import sys

import pytest
from hypothesis import strategies as st

import hamlab
import hamlab.cli
import hamlab.lab
import hamlab.posa
from hamlab.graph import Graph, is_cycle

# --- builder audit ---------------------------------------------------------
# Every build_hamilton call made anywhere in the suite goes through this
# wrapper, which re-checks the returned cycle against the graph it was asked
# to search.

AUDIT = {"calls": 0, "cycles": 0, "violations": []}
_original_build = hamlab.posa.build_hamilton


def _audited_build(G, H=None, *args, **kwargs):
    AUDIT["calls"] += 1
    cycle = _original_build(G, H, *args, **kwargs)
    target = G if H is None else H
    AUDIT["cycles"] += 1
    ok = (len(cycle) == target.n and sorted(cycle) == list(range(target.n))
          and is_cycle(target, cycle) and all(G.has_edge(u, v) for u, v in zip(cycle, cycle[1:] + cycle[:1])))
    if not ok:
        AUDIT["violations"].append((target.n, list(cycle)))
    return cycle


for _mod in (hamlab.posa, hamlab.lab, hamlab.cli, hamlab):
    _mod.build_hamilton = _audited_build

# --- acceptance report -----------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line, file=sys.stderr)


def pytest_terminal_summary(terminalreporter):
    if AUDIT["calls"]:
        passed = not AUDIT["violations"]
        record_criterion(4, passed, f"builder soundness over the whole run: {AUDIT['cycles']} cycles "
                                    f"from {AUDIT['calls']} calls, {len(AUDIT['violations'])} invalid")
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


def pytest_sessionfinish(session, exitstatus):
    if AUDIT["violations"]:
        session.exitstatus = 1


# --- helpers ---------------------------------------------------------------

def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def dfs_hamiltonian(G: Graph) -> bool:
    """Backtracking search for a Hamilton cycle through vertex 0."""
    n = G.n
    if n < 3:
        return False
    seen = [False] * n
    seen[0] = True

    def go(v, depth):
        if depth == n:
            return 0 in G.adj[v]
        for w in G.adj[v]:
            if not seen[w]:
                seen[w] = True
                if go(w, depth + 1):
                    return True
                seen[w] = False
        return False

    return go(0, 1)


def dfs_longest_path(G: Graph) -> int:
    """Vertex count of a longest path by exhaustive backtracking."""
    best = 0 if G.n == 0 else 1
    seen = [False] * G.n

    def go(v, length):
        nonlocal best
        best = max(best, length)
        if best == G.n:
            return
        for w in G.adj[v]:
            if not seen[w]:
                seen[w] = True
                go(w, length + 1)
                seen[w] = False

    for s in range(G.n):
        seen[s] = True
        go(s, 1)
        seen[s] = False
    return best


@pytest.fixture
def audit():
    return AUDIT
