"""3-decompositions of cubic graphs: verification, search, and HIST reductions.

A 3-decomposition labels every edge T, C, or M so that the T-edges form a
spanning tree, the C-edges a disjoint union of cycles, and the M-edges a
matching.  Certificates store only the tree edge set; C and M are recomputed
from the complement (cycle components -> C, single edges -> M, anything else
rejects the certificate).
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Optional

from .graphs import Graph, GraphError, _bits, _reach, parse_graph6, write_graph6

Edge = tuple[int, int]

T, C, M = "T", "C", "M"

# per-vertex (T-degree, C-degree, M-degree) patterns a cubic vertex may end at
_SIGNATURES = ((3, 0, 0), (1, 2, 0), (2, 0, 1))


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class DecompositionError(ValueError):
    pass


class BudgetExceeded(Exception):
    """Search node limit hit before the question was settled."""


@dataclass(frozen=True)
class ThreeDecomposition:
    host: Graph
    labels: tuple[str, ...]  # parallel to host.edges()

    def edge_label(self, u: int, v: int) -> str:
        return self.labels[self._index()[norm_edge(u, v)]]

    def _index(self) -> dict[Edge, int]:
        idx = getattr(self, "_idx_cache", None)
        if idx is None:
            idx = {e: i for i, e in enumerate(self.host.edges())}
            object.__setattr__(self, "_idx_cache", idx)
        return idx

    def label_map(self) -> dict[Edge, str]:
        return dict(zip(self.host.edges(), self.labels))

    def edges_with_label(self, which: str) -> frozenset[Edge]:
        return frozenset(e for e, lab in zip(self.host.edges(), self.labels) if lab == which)

    def tree_edges(self) -> frozenset[Edge]:
        return self.edges_with_label(T)


def decomposition_from_map(g: Graph, labels: dict[Edge, str]) -> ThreeDecomposition:
    edges = g.edges()
    if set(labels) != set(edges):
        raise DecompositionError("label map must cover exactly the host edge set")
    return ThreeDecomposition(g, tuple(labels[e] for e in edges))


def verify(g: Graph, d: ThreeDecomposition) -> tuple[bool, str]:
    """Check all four 3-decomposition invariants; name the first failure."""
    edges = g.edges()
    if d.host != g:
        raise DecompositionError("decomposition belongs to a different host graph")
    if len(d.labels) != len(edges):
        raise DecompositionError("label map is not total on the edge set")
    if any(lab not in (T, C, M) for lab in d.labels):
        bad = next(e for e, lab in zip(edges, d.labels) if lab not in (T, C, M))
        raise DecompositionError(f"edge {bad} carries an unknown label")

    tdeg = [0] * g.n
    cdeg = [0] * g.n
    mdeg = [0] * g.n
    tree = []
    for e, lab in zip(edges, d.labels):
        u, v = e
        if lab == T:
            tree.append(e)
            tdeg[u] += 1
            tdeg[v] += 1
        elif lab == C:
            cdeg[u] += 1
            cdeg[v] += 1
        else:
            mdeg[u] += 1
            mdeg[v] += 1

    for v in range(g.n):
        if mdeg[v] > 1:
            return False, f"matching violation at vertex {v}"
    for v in range(g.n):
        if cdeg[v] not in (0, 2):
            return False, f"2-regularity violation at vertex {v} (C-degree {cdeg[v]})"
    if len(tree) != g.n - 1:
        return False, f"tree has {len(tree)} edges, expected {g.n - 1}"
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in tree:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False, f"tree edges close a cycle through edge ({u},{v})"
        parent[ru] = rv
    # n-1 acyclic edges on n vertices form a single spanning component
    return True, "ok"


def from_tree(g: Graph, tree_edges) -> ThreeDecomposition:
    """Recover the full labelling from a tree edge set (the certificate rule).

    Complement components must be cycles (-> C) or single edges (-> M);
    a path component of length >= 2 rejects the tree.
    """
    tree = frozenset(norm_edge(*e) for e in tree_edges)
    edge_set = set(g.edges())
    if not tree <= edge_set:
        raise DecompositionError("tree contains a non-edge of the host")
    labels: dict[Edge, str] = {e: T for e in tree}
    rest_adj: dict[int, set[int]] = defaultdict(set)
    for u, v in edge_set - tree:
        rest_adj[u].add(v)
        rest_adj[v].add(u)
    seen: set[int] = set()
    for start in list(rest_adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in rest_adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comp_edges = [norm_edge(x, y) for x in comp for y in rest_adj[x] if x < y]
        if len(comp_edges) == 1:
            labels[comp_edges[0]] = M
        elif all(len(rest_adj[x]) == 2 for x in comp):
            for e in comp_edges:
                labels[e] = C
        else:
            raise DecompositionError(
                f"complement component on {sorted(comp)} is a path of length >= 2")
    d = decomposition_from_map(g, labels)
    ok, why = verify(g, d)
    if not ok:
        raise DecompositionError(f"tree does not induce a 3-decomposition: {why}")
    return d


def is_hist(g: Graph, tree_edges) -> bool:
    """True iff the spanning tree has no degree-2 vertex."""
    tree = [norm_edge(*e) for e in tree_edges]
    if len(tree) != g.n - 1:
        raise DecompositionError("not a spanning tree: wrong edge count")
    deg = [0] * g.n
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in tree:
        if not g.has_edge(u, v):
            raise DecompositionError(f"tree edge ({u},{v}) is not a host edge")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise DecompositionError("tree edges contain a cycle")
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
    return all(d != 2 for d in deg)


# ---------------------------------------------------------------------------
# exhaustive solver: branch on edge labels in BFS order with unit propagation

def _feasible(t: int, c: int, m: int, undecided: int) -> bool:
    for st, sc, sm in _SIGNATURES:
        if st >= t and sc >= c and sm >= m and (st - t) + (sc - c) + (sm - m) == undecided:
            return True
    return False


def _bfs_edge_order(g: Graph) -> list[Edge]:
    pos = [-1] * g.n
    order = []
    nxt = 0
    for root in range(g.n):
        if pos[root] >= 0:
            continue
        pos[root] = nxt
        nxt += 1
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in g.neighbors(v):
                if pos[u] < 0:
                    pos[u] = nxt
                    nxt += 1
                    queue.append(u)
    return sorted(g.edges(), key=lambda e: (min(pos[e[0]], pos[e[1]]), max(pos[e[0]], pos[e[1]])))


class _LabelSearch:
    """DFS over edge labels with signature propagation and a connectivity bound."""

    def __init__(self, g: Graph, budget: Optional[int]):
        self.g = g
        self.n = g.n
        self.edges = _bfs_edge_order(g)
        self.m = len(self.edges)
        self.eidx = {e: i for i, e in enumerate(self.edges)}
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(self.edges):
            self.inc[u].append((i, v))
            self.inc[v].append((i, u))
        self.label = [""] * self.m
        self.t = [0] * g.n
        self.c = [0] * g.n
        self.mm = [0] * g.n
        self.und = [g.degree(v) for v in range(g.n)]
        self.tcount = 0
        self.undecided = self.m
        self.avail = list(g.adj)  # adjacency over T + undecided edges
        self.parent = list(range(g.n))
        self.size = [1] * g.n
        self.budget = budget
        self.nodes = 0

    # union-find without path compression so unions roll back cleanly
    def _find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def _assign(self, i: int, lab: str, trail: list) -> bool:
        u, v = self.edges[i]
        self.label[i] = lab
        self.undecided -= 1
        trail.append(i)
        for w in (u, v):
            self.und[w] -= 1
        if lab == T:
            self.t[u] += 1
            self.t[v] += 1
            self.tcount += 1
            ru, rv = self._find(u), self._find(v)
            if ru == rv:
                return False
            if self.size[ru] < self.size[rv]:
                ru, rv = rv, ru
            self.parent[rv] = ru
            self.size[ru] += self.size[rv]
            trail.append((ru, rv))
            if self.tcount > self.n - 1:
                return False
        else:
            if lab == C:
                self.c[u] += 1
                self.c[v] += 1
            else:
                self.mm[u] += 1
                self.mm[v] += 1
            self.avail[u] &= ~(1 << v)
            self.avail[v] &= ~(1 << u)
            full = (1 << self.n) - 1
            if _reach(self.avail, 1, full) != full:
                return False
        if self.tcount + self.undecided < self.n - 1:
            return False
        for w in (u, v):
            if not _feasible(self.t[w], self.c[w], self.mm[w], self.und[w]):
                return False
        return True

    def _undo(self, trail: list, mark: int) -> None:
        while len(trail) > mark:
            item = trail.pop()
            if isinstance(item, tuple):
                ru, rv = item
                self.parent[rv] = rv
                self.size[ru] -= self.size[rv]
                continue
            i = item
            lab = self.label[i]
            u, v = self.edges[i]
            self.label[i] = ""
            self.undecided += 1
            for w in (u, v):
                self.und[w] += 1
            if lab == T:
                self.t[u] -= 1
                self.t[v] -= 1
                self.tcount -= 1
            elif lab == C:
                self.c[u] -= 1
                self.c[v] -= 1
                self.avail[u] |= 1 << v
                self.avail[v] |= 1 << u
            else:
                self.mm[u] -= 1
                self.mm[v] -= 1
                self.avail[u] |= 1 << v
                self.avail[v] |= 1 << u

    def _forced_moves(self, around: tuple[int, int]) -> Optional[list[tuple[int, str]]]:
        """Single-label forcings at the endpoints; None signals a dead end."""
        moves = []
        for w in around:
            if self.und[w] == 0:
                continue
            options = [lab for lab in (T, C, M)
                       if _feasible(self.t[w] + (lab == T), self.c[w] + (lab == C),
                                    self.mm[w] + (lab == M), self.und[w] - 1)]
            if not options:
                return None
            if len(options) == 1:
                lab = options[0]
                for i, _ in self.inc[w]:
                    if self.label[i] == "":
                        moves.append((i, lab))
        return moves

    def _propagate(self, i: int, lab: str, trail: list) -> bool:
        queue = [(i, lab)]
        while queue:
            j, laj = queue.pop()
            if self.label[j] != "":
                if self.label[j] != laj:
                    return False
                continue
            if not self._assign(j, laj, trail):
                return False
            moves = self._forced_moves(self.edges[j])
            if moves is None:
                return False
            queue.extend(moves)
        return True

    def run(self) -> Iterator[frozenset[Edge]]:
        yield from self._dfs([])

    def _dfs(self, trail: list) -> Iterator[frozenset[Edge]]:
        if self.undecided == 0:
            yield frozenset(e for e, lab in zip(self.edges, self.label) if lab == T)
            return
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"label search exceeded {self.budget} nodes")
        i = self.label.index("")
        for lab in (T, C, M):
            mark = len(trail)
            if self._propagate(i, lab, trail):
                yield from self._dfs(trail)
            self._undo(trail, mark)


def iter_tree_sets(g: Graph, budget: Optional[int] = None) -> Iterator[frozenset[Edge]]:
    """All tree edge sets of valid 3-decompositions, exhaustively."""
    if not g.is_cubic():
        raise DecompositionError("host must be cubic")
    if not g.is_connected():
        raise DecompositionError("host must be connected")
    search = _LabelSearch(g, budget)
    yield from search.run()


def solve_exhaustive(g: Graph, budget: Optional[int] = None) -> Optional[ThreeDecomposition]:
    if not g.is_cubic():
        raise DecompositionError("host must be cubic")
    if not g.is_connected():
        raise DecompositionError("host must be connected")
    search = _LabelSearch(g, budget)
    for tree in search.run():
        return from_tree(g, tree)
    return None


# ---------------------------------------------------------------------------
# heuristic: greedy HIST-seeking growth plus local edge-swap repair

def heuristic_solve(g: Graph, restarts: int = 200, seed: int = 0) -> Optional[ThreeDecomposition]:
    rng = random.Random(seed)
    for _ in range(restarts):
        tree = _grow_tree(g, rng)
        if tree is None:
            return None  # disconnected; caller guards against this
        repaired = _repair_tree(g, tree, rng)
        if repaired is not None:
            try:
                return from_tree(g, repaired)
            except DecompositionError:
                continue
    return None


def _grow_tree(g: Graph, rng: random.Random) -> Optional[set[Edge]]:
    n = g.n
    root = rng.randrange(n)
    in_tree = 1 << root
    tdeg = [0] * n
    tree: set[Edge] = set()
    while in_tree != (1 << n) - 1:
        frontier = []
        for u in _bits(in_tree):
            outside = g.adj[u] & ~in_tree
            if outside:
                # extending a degree-2 vertex completes it to 3; a leaf is worst
                rank = 0 if tdeg[u] == 2 else (1 if tdeg[u] == 0 else 2)
                for w in _bits(outside):
                    frontier.append((rank, rng.random(), u, w))
        if not frontier:
            return None
        _, _, u, w = min(frontier)
        tree.add(norm_edge(u, w))
        tdeg[u] += 1
        tdeg[w] += 1
        in_tree |= 1 << w
    return tree


def _complement_badness(g: Graph, tree: set[Edge]) -> int:
    """Number of complement components that are paths of length >= 2."""
    rest = defaultdict(set)
    for u, v in g.edges():
        if norm_edge(u, v) not in tree:
            rest[u].add(v)
            rest[v].add(u)
    seen: set[int] = set()
    bad = 0
    for s in list(rest):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in rest[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        ecount = sum(len(rest[x] & comp) for x in comp) // 2
        if ecount >= 2 and any(len(rest[x]) == 1 for x in comp):
            bad += 1
    return bad


def _repair_tree(g: Graph, tree: set[Edge], rng: random.Random, rounds: int = 40) -> Optional[set[Edge]]:
    badness = _complement_badness(g, tree)
    for _ in range(rounds):
        if badness == 0:
            return tree
        candidates = [e for e in g.edges() if e not in tree]
        rng.shuffle(candidates)
        improved = False
        for e in candidates:
            cycle = _tree_cycle(g, tree, e)
            for f in cycle:
                if f == e:
                    continue
                trial = (tree - {f}) | {e}
                b = _complement_badness(g, trial)
                if b < badness:
                    tree, badness = trial, b
                    improved = True
                    break
            if improved:
                break
        if not improved:
            return None
    return tree if badness == 0 else None


def _tree_cycle(g: Graph, tree: set[Edge], extra: Edge) -> list[Edge]:
    """Edges of the unique cycle in tree + extra."""
    adj = defaultdict(list)
    for u, v in tree:
        adj[u].append(v)
        adj[v].append(u)
    a, b = extra
    parent = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    cyc = [norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)]
    cyc.append(norm_edge(a, b))
    return cyc


def solve(g: Graph, budget: Optional[int] = None, restarts: int = 200,
          seed: int = 0) -> Optional[ThreeDecomposition]:
    """Heuristic first, exhaustive fallback.

    Returns None only when the exhaustive search completed: there is no
    3-decomposition.  A budget overrun raises BudgetExceeded (= unknown).
    """
    if not g.is_connected():
        raise DecompositionError("host must be connected")
    if not g.is_cubic():
        raise DecompositionError("host must be cubic")
    d = heuristic_solve(g, restarts=restarts, seed=seed)
    if d is not None:
        return d
    return solve_exhaustive(g, budget)


# ---------------------------------------------------------------------------
# certificates

def format_certificate(g: Graph, d: ThreeDecomposition) -> str:
    tree = sorted(d.tree_edges())
    return write_graph6(g) + "\n" + " ".join(f"{u}-{v}" for u, v in tree) + "\n"


def parse_certificate(text: str) -> tuple[Graph, frozenset[Edge]]:
    lines = text.splitlines()
    if len(lines) < 2:
        raise DecompositionError("certificate needs a graph6 line and a tree line")
    g = parse_graph6(lines[0].strip())
    tree = []
    for token in lines[1].split():
        a, _, b = token.partition("-")
        tree.append(norm_edge(int(a), int(b)))
    return g, frozenset(tree)


def check_certificate(g: Graph, tree_edges) -> tuple[bool, str]:
    try:
        from_tree(g, tree_edges)
    except (DecompositionError, GraphError) as exc:
        return False, str(exc)
    return True, "ok"


# ---------------------------------------------------------------------------
# coloured graphs and the HIST reduction procedure

class ColouredGraph:
    """Cubic graph over arbitrary vertex ids whose T-labelled edges are green.

    Vertex ids persist across reductions so that inverse extensions replay
    bit-exactly.
    """

    def __init__(self, labels: dict[Edge, str]):
        self.labels = {norm_edge(*e): lab for e, lab in labels.items()}
        adj: dict[int, set[int]] = defaultdict(set)
        for u, v in self.labels:
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency = {v: frozenset(ns) for v, ns in adj.items()}
        self.vertices = tuple(sorted(self.adjacency))

    def label(self, u: int, v: int) -> str:
        return self.labels[norm_edge(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.labels

    def green_neighbours(self, v: int) -> list[int]:
        return sorted(u for u in self.adjacency[v] if self.labels[norm_edge(u, v)] == T)

    def green_degree(self, v: int) -> int:
        return sum(1 for u in self.adjacency[v] if self.labels[norm_edge(u, v)] == T)

    def green_edges(self) -> frozenset[Edge]:
        return frozenset(e for e, lab in self.labels.items() if lab == T)

    def matching_edges(self) -> frozenset[Edge]:
        return frozenset(e for e, lab in self.labels.items() if lab == M)

    def third_neighbour(self, v: int, excluded: tuple[int, ...]) -> int:
        rest = [u for u in self.adjacency[v] if u not in excluded]
        if len(rest) != 1:
            raise DecompositionError(f"vertex {v} has no unique neighbour outside {excluded}")
        return rest[0]

    def verify(self) -> tuple[bool, str]:
        """Green spanning tree + black complement splits into cycles and a matching."""
        verts = self.vertices
        green = self.green_edges()
        if len(green) != len(verts) - 1:
            return False, "green edge count is not n-1"
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for u, v in green:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False, f"green cycle through ({u},{v})"
            parent[ru] = rv
        for v in verts:
            black = [u for u in self.adjacency[v] if self.labels[norm_edge(u, v)] != T]
            cdeg = sum(1 for u in black if self.labels[norm_edge(u, v)] == C)
            mdeg = len(black) - cdeg
            if cdeg not in (0, 2) or mdeg > 1:
                return False, f"black structure violation at {v}"
        return True, "ok"

    def __eq__(self, other) -> bool:
        return isinstance(other, ColouredGraph) and self.labels == other.labels

    def __repr__(self) -> str:
        return f"ColouredGraph({len(self.vertices)} vertices, {len(self.labels)} edges)"


@dataclass(frozen=True)
class ReductionStep:
    """One Tutte- or diamond-reduction, with enough data to invert it exactly.

    tutte:   removed = (p, q); p subdivided restored[0], q subdivided
             restored[1]; the bridge pq was an M-edge.
    diamond: removed = (d1, d2, d3, d4) in path order; restored = ((x, y),)
             with d1 joined to x and d4 to y; d1d3 and d2d4 were M-edges.
    """
    kind: str
    removed: tuple[int, ...]
    restored: tuple[Edge, ...]


def coloured_from_decomposition(g: Graph, d: ThreeDecomposition) -> ColouredGraph:
    return ColouredGraph(d.label_map())


def hist_reduce(g: Graph, d: ThreeDecomposition) -> tuple[ColouredGraph, list[ReductionStep]]:
    """Reduce a 3-decomposition to one whose tree is a HIST (and M is empty).

    Follows the constructive case analysis vertex by vertex: any tree-degree-2
    vertex sits on an M-edge, and one of four Tutte/diamond reductions always
    applies.  Failure to find a case is a logic error and aborts loudly.
    """
    ok, why = verify(g, d)
    if not ok:
        raise DecompositionError(f"input does not verify: {why}")
    cg = coloured_from_decomposition(g, d)
    steps: list[ReductionStep] = []
    guard = 0
    while True:
        deg2 = [v for v in cg.vertices if cg.green_degree(v) == 2]
        if not deg2:
            break
        guard += 1
        if guard > len(g.edges()):
            raise AssertionError("HIST reduction failed to make progress")
        v = min(deg2)
        cg, step = _reduce_at(cg, v)
        steps.append(step)
        ok, why = cg.verify()
        if not ok:
            raise AssertionError(f"reduction produced an invalid colouring: {why}")
    if cg.matching_edges():
        raise AssertionError("terminal decomposition kept a matching edge")
    return cg, steps


def _reduce_at(cg: ColouredGraph, v: int) -> tuple[ColouredGraph, ReductionStep]:
    mates = [u for u in cg.adjacency[v] if cg.label(u, v) == M]
    if len(mates) != 1:
        raise AssertionError(f"tree-degree-2 vertex {v} has no unique M-edge")
    u = mates[0]
    xu, yu = cg.green_neighbours(u)
    xv, yv = cg.green_neighbours(v)

    if not cg.has_edge(xu, yu) and not cg.has_edge(xv, yv):
        labels = dict(cg.labels)
        for e in (norm_edge(u, xu), norm_edge(u, yu), norm_edge(v, xv),
                  norm_edge(v, yv), norm_edge(u, v)):
            del labels[e]
        labels[norm_edge(xu, yu)] = T
        labels[norm_edge(xv, yv)] = T
        step = ReductionStep("tutte", (u, v), (norm_edge(xu, yu), norm_edge(xv, yv)))
        return ColouredGraph(labels), step

    # anchor a on the triangle side
    if cg.has_edge(xu, yu):
        a, b = u, v
    else:
        a, b = v, u
    xa, ya = cg.green_neighbours(a)
    if cg.label(xa, ya) != M:
        raise AssertionError("triangle edge next to the M-edge must itself be an M-edge")
    xt = cg.third_neighbour(xa, (a, ya))
    yt = cg.third_neighbour(ya, (a, xa))
    if xt == yt:
        raise AssertionError("tree acyclicity rules out a shared third neighbour")

    if b not in (xt, yt):
        labels = dict(cg.labels)
        for e in (norm_edge(xt, xa), norm_edge(xa, a), norm_edge(a, ya),
                  norm_edge(ya, yt), norm_edge(xa, ya)):
            del labels[e]
        labels[norm_edge(a, xt)] = T
        labels[norm_edge(a, yt)] = T
        step = ReductionStep("tutte", (xa, ya), (norm_edge(a, xt), norm_edge(a, yt)))
        return ColouredGraph(labels), step

    if yt == b:
        xa, ya = ya, xa
        xt, yt = yt, xt
    # now xa is adjacent to b; identify b's other green neighbour
    b_green = cg.green_neighbours(b)
    if xa not in b_green:
        raise AssertionError("expected the triangle corner to be green-adjacent to b")
    yb = next(w for w in b_green if w != xa)
    if yb == yt:
        raise AssertionError("tree acyclicity rules out yb == yt")

    if not cg.has_edge(yb, yt):
        labels = dict(cg.labels)
        for e in (norm_edge(yt, ya), norm_edge(ya, a), norm_edge(a, xa),
                  norm_edge(xa, b), norm_edge(b, yb),
                  norm_edge(xa, ya), norm_edge(a, b)):
            del labels[e]
        labels[norm_edge(yt, yb)] = T
        # restored pair stays oriented: d1 reattaches to yt, d4 to yb
        step = ReductionStep("diamond", (ya, a, xa, b), ((yt, yb),))
        return ColouredGraph(labels), step

    if cg.label(yb, yt) != M:
        raise AssertionError("edge between yb and yt must be an M-edge")
    ybt = cg.third_neighbour(yb, (b, yt))
    ytt = cg.third_neighbour(yt, (ya, yb))
    labels = dict(cg.labels)
    for e in (norm_edge(ytt, yt), norm_edge(yt, ya), norm_edge(b, yb),
              norm_edge(yb, ybt), norm_edge(yb, yt)):
        del labels[e]
    labels[norm_edge(b, ybt)] = T
    labels[norm_edge(ya, ytt)] = T
    step = ReductionStep("tutte", (yb, yt), (norm_edge(b, ybt), norm_edge(ya, ytt)))
    return ColouredGraph(labels), step


def tutte_or_diamond_extend(cg: ColouredGraph, step: ReductionStep) -> ColouredGraph:
    """Apply the inverse extension described by a ReductionStep."""
    labels = dict(cg.labels)
    for w in step.removed:
        if w in cg.adjacency:
            raise DecompositionError(f"vertex id {w} already present")
    if step.kind == "tutte":
        (p, q) = step.removed
        e1, e2 = step.restored
        if e1 == e2:
            raise DecompositionError("the two subdivided green edges must be distinct")
        for e in (e1, e2):
            if labels.get(e) != T:
                raise DecompositionError(f"edge {e} is not a green edge")
        del labels[e1]
        del labels[e2]
        labels[norm_edge(e1[0], p)] = T
        labels[norm_edge(e1[1], p)] = T
        labels[norm_edge(e2[0], q)] = T
        labels[norm_edge(e2[1], q)] = T
        labels[norm_edge(p, q)] = M
    elif step.kind == "diamond":
        d1, d2, d3, d4 = step.removed
        (xy,) = step.restored
        x, y = xy
        if labels.get(norm_edge(x, y)) != T:
            raise DecompositionError(f"edge {xy} is not a green edge")
        del labels[norm_edge(x, y)]
        for e in ((x, d1), (d1, d2), (d2, d3), (d3, d4), (d4, y)):
            labels[norm_edge(*e)] = T
        labels[norm_edge(d1, d3)] = M
        labels[norm_edge(d2, d4)] = M
    else:
        raise DecompositionError(f"unknown step kind {step.kind!r}")
    result = ColouredGraph(labels)
    if len(result.labels) != len(labels):
        raise DecompositionError("extension created a parallel edge")
    return result


def replay_extensions(terminal: ColouredGraph, steps: list[ReductionStep]) -> ColouredGraph:
    cg = terminal
    for step in reversed(steps):
        cg = tutte_or_diamond_extend(cg, step)
    return cg
