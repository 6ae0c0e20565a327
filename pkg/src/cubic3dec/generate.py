"""Bundled generator for connected cubic graphs up to desk scale (n <= 16).

Main route: grow graphs from K4 by the three classical cubic expansions
(handle insertion, diamond substitution, K4 bridging), rejecting isomorphic
duplicates via canonical forms.  Every connected cubic graph other than K4
arises from a smaller one by one of these operations, so iterating them from
K4 upward is exhaustive.

A labelled backtracking enumerator doubles as an independent oracle: tests
cross-validate class lists at small orders and labelled counts via the
orbit identity  sum over classes of n!/|Aut|  =  #labelled graphs.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .canon import automorphisms, canonical_form, canonical_order
from .graphs import Graph, complete_graph, write_graph6


def _subdivide_two(g: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> Graph:
    n = g.n
    p, q = n, n + 1
    edges = [e for e in g.edges() if e not in (e1, e2)]
    edges += [(e1[0], p), (e1[1], p), (e2[0], q), (e2[1], q), (p, q)]
    return Graph.from_edges(n + 2, edges)


def _diamond_substitute(g: Graph, e: tuple[int, int]) -> Graph:
    n = g.n
    p, q, r, s = n, n + 1, n + 2, n + 3
    edges = [f for f in g.edges() if f != e]
    edges += [(p, r), (p, s), (q, r), (q, s), (r, s), (e[0], p), (e[1], q)]
    return Graph.from_edges(n + 4, edges)


def _k4_bridge(g: Graph, e: tuple[int, int]) -> Graph:
    n = g.n
    k = list(range(n, n + 4))
    p, q = n + 4, n + 5
    edges = [f for f in g.edges() if f != e]
    edges += [(k[i], k[j]) for i in range(4) for j in range(i + 1, 4) if (i, j) != (0, 1)]
    edges += [(e[0], p), (e[1], p), (k[0], q), (k[1], q), (p, q)]
    return Graph.from_edges(n + 6, edges)


@lru_cache(maxsize=None)
def connected_cubic_graphs(n: int) -> tuple[Graph, ...]:
    """All connected cubic graphs on n vertices, one per isomorphism class.

    Output is deterministic: canonically labelled, sorted by graph6 string.
    """
    if n < 4 or n % 2:
        return ()
    if n == 4:
        return (complete_graph(4),)
    seen: dict = {}
    for m, op in ((n - 2, "handle"), (n - 4, "diamond"), (n - 6, "bridge")):
        if m < 4:
            continue
        for base in connected_cubic_graphs(m):
            edges = base.edges()
            if op == "handle":
                candidates = (_subdivide_two(base, edges[i], edges[j])
                              for i in range(len(edges)) for j in range(i + 1, len(edges)))
            elif op == "diamond":
                candidates = (_diamond_substitute(base, e) for e in edges)
            else:
                candidates = (_k4_bridge(base, e) for e in edges)
            for h in candidates:
                key = canonical_form(h)
                if key not in seen:
                    order = canonical_order(h)
                    pos = [0] * h.n
                    for i, v in enumerate(order):
                        pos[v] = i
                    seen[key] = h.relabel(pos)
    result = sorted(seen.values(), key=write_graph6)
    return tuple(result)


def automorphism_count(g: Graph) -> int:
    return len(automorphisms(g))


# ---------------------------------------------------------------------------
# independent oracle: plain labelled enumeration

def iter_labelled_cubic(n: int) -> Iterator[Graph]:
    """Every labelled simple cubic graph on vertices 0..n-1, exactly once."""
    if n < 4 or n % 2:
        return
    deg = [0] * n
    rows = [0] * n

    def extend(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, list(rows))
            return
        need = 3 - deg[v]
        pool = [w for w in range(v + 1, n) if deg[w] < 3]
        if need == 0:
            yield from extend(v + 1)
            return
        if len(pool) < need:
            return
        for combo in combinations(pool, need):
            for w in combo:
                deg[v] += 1
                deg[w] += 1
                rows[v] |= 1 << w
                rows[w] |= 1 << v
            yield from extend(v + 1)
            for w in combo:
                deg[v] -= 1
                deg[w] -= 1
                rows[v] &= ~(1 << w)
                rows[w] &= ~(1 << v)

    yield from extend(0)


def labelled_cubic_counts(n: int) -> tuple[int, int]:
    """(#labelled cubic graphs, #labelled connected cubic graphs) on n vertices."""
    total = connected = 0
    for g in iter_labelled_cubic(n):
        total += 1
        if g.is_connected():
            connected += 1
    return total, connected
