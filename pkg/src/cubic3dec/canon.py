"""Canonical labelling and isomorphism tests for the small graphs handled here.

The canonicaliser is a plain individualisation-refinement search: refine an
ordered partition by neighbour counts, branch on the first non-singleton
cell, and keep the lexicographically smallest adjacency certificate over all
discrete leaves.  No automorphism pruning; graphs stay tiny (<= ~20 vertices).
"""
from __future__ import annotations

from typing import Optional, Sequence

from .graphs import Graph, _bits


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for splitter in list(cells):
            smask = 0
            for v in splitter:
                smask |= 1 << v
            new_cells: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((g.adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for key in sorted(groups):
                        new_cells.append(groups[key])
            cells = new_cells
            if changed:
                break
    return cells


def _certificate(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * g.n
    for v in range(g.n):
        for u in _bits(g.adj[v]):
            rows[pos[v]] |= 1 << pos[u]
    return tuple(rows)


def canonical_order(g: Graph) -> tuple[int, ...]:
    """A vertex ordering whose certificate is minimal; invariant under relabelling."""
    best_cert: Optional[tuple[int, ...]] = None
    best_order: Optional[tuple[int, ...]] = None

    def search(cells: list[list[int]]):
        nonlocal best_cert, best_order
        cells = _refine(g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = tuple(c[0] for c in cells)
            cert = _certificate(g, order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if g.n == 0:
        return ()
    search([list(range(g.n))])
    assert best_order is not None
    return best_order


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    order = canonical_order(g)
    return g.n, _certificate(g, order)


def find_isomorphism(a: Graph, b: Graph) -> Optional[list[int]]:
    """Backtracking isomorphism a -> b, or None.  Independent of the canonicaliser."""
    if a.n != b.n or sorted(a.degrees()) != sorted(b.degrees()):
        return None
    n = a.n
    mapping = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = k
        for w in range(n):
            if used >> w & 1 or a.degree(v) != b.degree(w):
                continue
            ok = True
            for u in range(k):
                if a.has_edge(u, v) != b.has_edge(mapping[u], w):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used |= 1 << w
                if extend(k + 1):
                    return True
                used &= ~(1 << w)
                mapping[v] = -1
        return False

    return mapping if extend(0) else None


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return find_isomorphism(a, b) is not None


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """The full automorphism group as vertex maps (brute force, small graphs only)."""
    n = g.n
    result: list[tuple[int, ...]] = []
    mapping = [-1] * n
    used = 0

    def extend(k: int):
        nonlocal used
        if k == n:
            result.append(tuple(mapping))
            return
        for w in range(n):
            if used >> w & 1 or g.degree(k) != g.degree(w):
                continue
            if all(g.has_edge(u, k) == g.has_edge(mapping[u], w) for u in range(k)):
                mapping[k] = w
                used |= 1 << w
                extend(k + 1)
                used &= ~(1 << w)
                mapping[k] = -1

    extend(0)
    return result
