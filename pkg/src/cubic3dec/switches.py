"""Switching rewrites that thin out the square's local behaviours.

Each switch locally rewrites a host 3-decomposition around an embedded
square so that the induced behaviour moves to a representative class, while
the rewritten labelling stays a valid 3-decomposition of the same host.
Applying switches until a fixpoint maps all 39 labelled behaviours onto 18
terminal representatives.
"""
from __future__ import annotations

from typing import Optional

from .decomp import C, M, T, ThreeDecomposition, decomposition_from_map, norm_edge, verify
from .extend import ConsistentForest, restrict_forest, template_edge_image
from .graphs import Graph
from .templates import Embedding, TemplateGraph

Edge = tuple[int, int]

# square template coordinates: cycle 0-1-3-2, pendants (0,4),(1,5),(2,6),(3,7)
_SQUARE_EDGES = ((0, 1), (0, 2), (1, 3), (2, 3))
_PENDANTS = {0: (0, 4), 1: (1, 5), 2: (2, 6), 3: (3, 7)}
_CYCLE_ORDER = (0, 1, 3, 2)


def _square_neighbours(v: int) -> tuple[int, int]:
    i = _CYCLE_ORDER.index(v)
    return _CYCLE_ORDER[(i - 1) % 4], _CYCLE_ORDER[(i + 1) % 4]


def _relabel(host: Graph, d: ThreeDecomposition, changes: dict[Edge, str]) -> ThreeDecomposition:
    labels = d.label_map()
    for e, lab in changes.items():
        labels[norm_edge(*e)] = lab
    nd = decomposition_from_map(host, labels)
    ok, why = verify(host, nd)
    if not ok:
        raise AssertionError(f"switch produced an invalid decomposition: {why}")
    return nd


def _host_tree_cycle(host: Graph, d: ThreeDecomposition, extra: Edge) -> set[Edge]:
    """Edges of the unique cycle closed by adding `extra` to the tree."""
    tree = d.tree_edges()
    adj: dict[int, list[int]] = {}
    for u, v in tree:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    a, b = extra
    parent = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    cyc = {norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)}
    cyc.add(norm_edge(a, b))
    return cyc


def switch_step(host: Graph, d: ThreeDecomposition, square: TemplateGraph,
                emb: Embedding) -> Optional[ThreeDecomposition]:
    """Apply one switching rewrite at the embedded square; None when terminal."""
    fx = restrict_forest(host, d, square, emb)
    lab = {e: fx.edge_label(e) for e in square.edges()}
    img = lambda e: template_edge_image(square, emb, e)
    sq_c = [e for e in _SQUARE_EDGES if lab[e] == C]
    sq_m = [e for e in _SQUARE_EDGES if lab[e] == M]

    if len(sq_c) == 2:
        corner = (set(sq_c[0]) & set(sq_c[1])).pop()
        if corner in (1, 3):
            return None
        # trade the two square C-edges against the two square T-edges
        sq_t = [e for e in _SQUARE_EDGES if lab[e] == T]
        changes = {img(e): T for e in sq_c}
        changes.update({img(e): C for e in sq_t})
        return _relabel(host, d, changes)

    if len(sq_c) == 1:
        e = sq_c[0]
        f = next(x for x in _SQUARE_EDGES if not set(x) & set(e))
        if lab[f] != T:
            return None
        bad = [w for w in f if lab[_PENDANTS[w]] == M]
        if not bad:
            return None
        w = bad[0]
        # move the M-pendant into the tree in place of the opposite edge
        return _relabel(host, d, {img(_PENDANTS[w]): T, img(f): M})

    if len(sq_m) == 1:
        e = sq_m[0]
        off = [v for v in range(4) if v not in e]
        pend_m = [w for w in off if lab[_PENDANTS[w]] == M]
        if len(pend_m) == 2:
            return None
        if not pend_m:
            if e == (0, 1):
                return None
            # rotate the square M-edge to the canonical position
            return _relabel(host, d, {img(e): T, img((0, 1)): M})
        w = pend_m[0]
        a = next(v for v in e if v in _square_neighbours(w))
        b = next(v for v in e if v != a)
        z = next(v for v in off if v != w)
        p_w = _PENDANTS[w]
        cyc = _host_tree_cycle(host, d, img(p_w))
        if img((min(w, z), max(w, z))) in cyc:
            return _relabel(host, d, {img(p_w): T, img((min(w, z), max(w, z))): M})
        # exchange the square M-edge first, then retarget the pendant swap
        d2 = _relabel(host, d, {img(e): T, img((min(b, z), max(b, z))): M})
        cyc2 = _host_tree_cycle(host, d2, img(p_w))
        wa = (min(w, a), max(w, a))
        if img(wa) not in cyc2:
            raise AssertionError("pendant tree cycle avoided the expected square edge")
        return _relabel(host, d2, {img(p_w): T, img(wa): M})

    return None


def reduce_square_behaviour(host: Graph, d: ThreeDecomposition, square: TemplateGraph,
                            emb: Embedding) -> tuple[ThreeDecomposition, ConsistentForest, int]:
    """Switch until the square's behaviour is a representative; returns steps taken."""
    steps = 0
    while True:
        nd = switch_step(host, d, square, emb)
        if nd is None:
            return d, restrict_forest(host, d, square, emb), steps
        d = nd
        steps += 1
        if steps > 4:
            raise AssertionError("switch chain failed to terminate")
