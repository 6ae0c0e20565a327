"""3-consistent forests, naive extendability, and decomposition lifting.

A spanning forest of a template is 3-consistent when every tree component
touches an outer vertex and every complement component is a single vertex, a
single edge, a cycle, or a path joining two outer vertices.  Such forests are
the local traces of 3-decompositions; lifting a decomposition through an
extension means finding a forest of the bigger template that realises the
same outer assignment and component pattern (the naive case), or falling
back to one of the hard-coded special-case rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .decomp import (C, M, T, DecompositionError, ThreeDecomposition,
                     decomposition_from_map, norm_edge, verify)
from .graphs import Graph
from .templates import (Embedding, TemplateGraph, TransformationPair, TransformResult,
                        apply_transformation, pair_symmetries)

Edge = tuple[int, int]


class ManualCaseUnresolved(RuntimeError):
    """A non-naive forest reached a lift without an applicable special-case rule."""


@dataclass(frozen=True)
class ConsistentForest:
    template: TemplateGraph
    tree_edges: frozenset[Edge]
    cycle_edges: frozenset[Edge]
    matching_edges: frozenset[Edge]
    assignment: tuple[str, ...]              # per outer slot: 't' / 'c' / 'm'
    outer_partition: frozenset[frozenset[int]]  # slots grouped by tree component

    def edge_label(self, e: Edge) -> str:
        e = norm_edge(*e)
        if e in self.tree_edges:
            return T
        if e in self.cycle_edges:
            return C
        return M

    def label_map(self) -> dict[Edge, str]:
        return {norm_edge(*e): self.edge_label(e) for e in self.template.edges()}


def classify_forest(t: TemplateGraph, tree_edges) -> Optional[ConsistentForest]:
    """The ConsistentForest for a tree edge subset, or None if not 3-consistent."""
    g = t.graph
    tree = frozenset(norm_edge(*e) for e in tree_edges)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in tree:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv

    comps: dict[int, list[int]] = {}
    for v in range(g.n):
        comps.setdefault(find(v), []).append(v)
    outer_set = set(t.outer)
    for members in comps.values():
        if not outer_set.intersection(members):
            return None

    rest = [e for e in g.edges() if e not in tree]
    radj: dict[int, list[int]] = {}
    for u, v in rest:
        radj.setdefault(u, []).append(v)
        radj.setdefault(v, []).append(u)
    cycle: set[Edge] = set()
    matching: set[Edge] = set()
    seen: set[int] = set()
    for s in radj:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in radj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comp_edges = [norm_edge(x, y) for x in comp for y in radj[x] if x < y]
        degs = {x: len(radj[x]) for x in comp}
        if len(comp_edges) == 1:
            matching.add(comp_edges[0])
        elif all(d == 2 for d in degs.values()):
            cycle.update(comp_edges)
        else:
            ends = [x for x, d in degs.items() if d == 1]
            if len(ends) != 2 or any(d > 2 for d in degs.values()):
                return None
            if not all(x in outer_set for x in ends):
                return None
            cycle.update(comp_edges)

    assignment = []
    for j in range(len(t.outer)):
        e = norm_edge(*t.pendant_edge(j))
        if e in tree:
            assignment.append("t")
        elif e in matching:
            assignment.append("m")
        else:
            assignment.append("c")
    groups: dict[int, set[int]] = {}
    for j, w in enumerate(t.outer):
        groups.setdefault(find(w), set()).add(j)
    partition = frozenset(frozenset(s) for s in groups.values())
    return ConsistentForest(t, tree, frozenset(cycle), frozenset(matching),
                            tuple(assignment), partition)


@lru_cache(maxsize=None)
def enumerate_consistent_forests(t: TemplateGraph) -> tuple[ConsistentForest, ...]:
    """All labelled 3-consistent spanning forests, by backtracking over edges."""
    edges = t.graph.edges()
    n = t.graph.n
    out: list[ConsistentForest] = []
    parent = list(range(n))
    rank = [0] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    chosen: list[Edge] = []

    def rec(i: int):
        if i == len(edges):
            cf = classify_forest(t, chosen)
            if cf is not None:
                out.append(cf)
            return
        rec(i + 1)
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            if rank[ru] < rank[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            bumped = rank[ru] == rank[rv]
            if bumped:
                rank[ru] += 1
            chosen.append(edges[i])
            rec(i + 1)
            chosen.pop()
            parent[rv] = rv
            if bumped:
                rank[ru] -= 1

    rec(0)
    out.sort(key=lambda cf: sorted(cf.tree_edges))
    return tuple(out)


# ---------------------------------------------------------------------------
# symmetry action and canonical forest classes

def _edge_image(alpha: tuple[int, ...], e: Edge) -> Edge:
    return norm_edge(alpha[e[0]], alpha[e[1]])


def forest_image(alpha: tuple[int, ...], cf: ConsistentForest) -> frozenset[Edge]:
    return frozenset(_edge_image(alpha, e) for e in cf.tree_edges)


def canonical_forest_key(pair: TransformationPair, tree_edges: frozenset[Edge]) -> tuple:
    best = None
    for _, alpha_x, _ in pair_symmetries(pair):
        img = tuple(sorted(_edge_image(alpha_x, e) for e in tree_edges))
        if best is None or img < best:
            best = img
    return best


def forest_classes(pair: TransformationPair,
                   forests: Iterator[ConsistentForest]) -> dict[tuple, list[ConsistentForest]]:
    classes: dict[tuple, list[ConsistentForest]] = {}
    for cf in forests:
        classes.setdefault(canonical_forest_key(pair, cf.tree_edges), []).append(cf)
    return classes


# ---------------------------------------------------------------------------
# naive extendability

def is_naively_extendable(fx: ConsistentForest, y: TemplateGraph) -> Optional[ConsistentForest]:
    """A forest of y realising fx's assignment and outer partition, or None."""
    if len(fx.template.outer) != len(y.outer):
        raise DecompositionError("outer sets differ in size")
    if len(y.graph.edges()) <= 18:
        for cf in enumerate_consistent_forests(y):
            if cf.assignment == fx.assignment and cf.outer_partition == fx.outer_partition:
                return cf
        return None
    tree = search_consistent_forest(y, fx.assignment, fx.outer_partition)
    return classify_forest(y, tree) if tree is not None else None


def search_consistent_forest(y: TemplateGraph, assignment: tuple[str, ...],
                             partition: Optional[frozenset[frozenset[int]]] = None,
                             ) -> Optional[frozenset[Edge]]:
    """DFS for a 3-consistent forest of y realising the assignment.

    Used for templates too large to enumerate (realisability of generated
    gadget templates is NP-complete, but instances here are narrow once the
    forced structure is propagated).
    """
    g = y.graph
    n = g.n
    edges = g.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)
    outer_set = set(y.outer)
    state = [0] * len(edges)  # 0 undecided, 1 tree, 2 complement
    ndeg = [0] * n
    tdeg = [0] * n
    und = [g.degree(v) for v in range(n)]
    ncap = [2] * n  # complement degree cap; tightened at m-slot attachments
    parent = list(range(n))
    size = [1] * n
    # component bookkeeping: open endpoints, outer contact, members per root
    openc = [g.degree(v) for v in range(n)]
    hasout = [v in outer_set for v in range(n)]
    members = [[v] for v in range(n)]

    nfloor = [0] * n
    for j, w in enumerate(y.outer):
        a = y.attach(j)
        if assignment[j] == "m":
            ncap[a] = 1
        elif assignment[j] == "c":
            # a c-pendant lies on an outer path, which continues through a
            nfloor[a] = 2

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    trail: list = []

    def set_state(i: int, s: int) -> bool:
        u, v = edges[i]
        state[i] = s
        trail.append(("st", i))
        for w in (u, v):
            und[w] -= 1
            openc[find(w)] -= 1
        if s == 1:
            tdeg[u] += 1
            tdeg[v] += 1
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            openc[ru] += openc[rv]
            trail.append(("un", ru, rv, hasout[ru], len(members[ru])))
            members[ru].extend(members[rv])
            hasout[ru] = hasout[ru] or hasout[rv]
        else:
            ndeg[u] += 1
            ndeg[v] += 1
            for w in (u, v):
                if ndeg[w] > ncap[w]:
                    return False
        for w in (u, v):
            if w not in outer_set and tdeg[w] == 0 and und[w] == 0:
                return False
            if ndeg[w] + und[w] < nfloor[w]:
                return False
            r = find(w)
            if openc[r] == 0 and not hasout[r]:
                return False
        return True

    def undo(mark: int):
        while len(trail) > mark:
            item = trail.pop()
            if item[0] == "un":
                _, ru, rv, old, mlen = item
                hasout[ru] = old
                parent[rv] = rv
                size[ru] -= size[rv]
                openc[ru] -= openc[rv]
                del members[ru][mlen:]
            else:
                _, i = item
                s = state[i]
                u, v = edges[i]
                state[i] = 0
                for w in (u, v):
                    und[w] += 1
                    openc[find(w)] += 1
                if s == 1:
                    tdeg[u] -= 1
                    tdeg[v] -= 1
                else:
                    ndeg[u] -= 1
                    ndeg[v] -= 1

    def propagate(i: int, s: int) -> bool:
        queue = [(i, s)]
        while queue:
            j, sj = queue.pop()
            if state[j] != 0:
                if state[j] != sj:
                    return False
                continue
            if not set_state(j, sj):
                return False
            u, v = edges[j]
            for w in (u, v):
                if w in outer_set:
                    continue
                # an inner vertex at its complement cap sends the rest to the tree
                if ndeg[w] == ncap[w]:
                    for k in inc[w]:
                        if state[k] == 0:
                            queue.append((k, 1))
                # below its complement floor with no slack, the rest leaves the tree
                if ndeg[w] < nfloor[w] and ndeg[w] + und[w] == nfloor[w]:
                    for k in inc[w]:
                        if state[k] == 0:
                            queue.append((k, 2))
                # a decided complement-degree-1 inner vertex is an M-edge end:
                # its complement neighbour must also stop at degree 1
                if und[w] == 0 and ndeg[w] == 1:
                    k = next(kk for kk in inc[w] if state[kk] == 2)
                    a, b = edges[k]
                    o = a if b == w else b
                    if o not in outer_set:
                        for kk in inc[o]:
                            if state[kk] == 0:
                                queue.append((kk, 1))
                        if ndeg[o] > 1:
                            return False
                # a complement edge arriving from a path interior must keep
                # going: with one slot left it cannot stop at this vertex
                if ndeg[w] == 1 and und[w] == 1:
                    k = next(kk for kk in inc[w] if state[kk] == 2)
                    a, b = edges[k]
                    o = a if b == w else b
                    if o not in outer_set and ndeg[o] == 2:
                        queue.append((next(kk for kk in inc[w] if state[kk] == 0), 2))
            for w in (u, v):
                # a tree component without an outer vertex and a single open
                # endpoint can only survive by growing through that endpoint
                r = find(w)
                if openc[r] == 1 and not hasout[r]:
                    for x in members[r]:
                        for k in inc[x]:
                            if state[k] == 0:
                                queue.append((k, 1))
        return True

    def partition_ok_final() -> bool:
        groups: dict[int, set[int]] = {}
        for j, w in enumerate(y.outer):
            groups.setdefault(find(w), set()).add(j)
        got = frozenset(frozenset(s) for s in groups.values())
        return got == partition

    def leaf_ok() -> Optional[frozenset[Edge]]:
        tree = frozenset(e for e, s in zip(edges, state) if s == 1)
        cf = classify_forest(y, tree)
        if cf is None or cf.assignment != tuple(assignment):
            return None
        if partition is not None and not partition_ok_final():
            return None
        return tree

    # seed with the forced pendant labels
    mark0 = len(trail)
    for j in range(len(y.outer)):
        i = eidx[norm_edge(*y.pendant_edge(j))]
        want = 1 if assignment[j] == "t" else 2
        if not propagate(i, want):
            undo(mark0)
            return None

    def pick_edge() -> Optional[int]:
        # prefer closing an almost-decided vertex: its last edge fires the
        # strongest propagation rules either way
        fallback = None
        for k in range(len(edges)):
            if state[k] != 0:
                continue
            if fallback is None:
                fallback = k
            u, v = edges[k]
            if und[u] == 1 or und[v] == 1 or ndeg[u] == 1 or ndeg[v] == 1:
                return k
        return fallback

    def dfs() -> Optional[frozenset[Edge]]:
        i = pick_edge()
        if i is None:
            return leaf_ok()
        for s in (1, 2):
            mark = len(trail)
            if propagate(i, s):
                got = dfs()
                if got is not None:
                    return got
            undo(mark)
        return None

    result = dfs()
    undo(mark0)
    return result


# ---------------------------------------------------------------------------
# compatibility reports

@dataclass
class CompatReport:
    pair: TransformationPair
    naive: list[tuple[ConsistentForest, ConsistentForest]]
    manual: list[tuple[ConsistentForest, str]]
    incomplete: list[ConsistentForest]

    def manual_class_count(self) -> int:
        keys = {canonical_forest_key(self.pair, cf.tree_edges) for cf, _ in self.manual}
        return len(keys)

    def is_complete(self) -> bool:
        return not self.incomplete


def check_compatibility(pair: TransformationPair) -> CompatReport:
    """Classify every labelled 3-consistent forest of the pair's small side."""
    naive = []
    manual = []
    incomplete = []
    for fx in enumerate_consistent_forests(pair.x):
        witness = _naive_witness(pair, fx)
        if witness is not None:
            naive.append((fx, witness))
            continue
        rule = _manual_rule_for(pair, fx)
        if rule is not None:
            manual.append((fx, rule))
        else:
            incomplete.append(fx)
    return CompatReport(pair, naive, manual, incomplete)


@lru_cache(maxsize=None)
def _naive_witness_cached(pair: TransformationPair,
                          tree: frozenset[Edge]) -> Optional[ConsistentForest]:
    fx = classify_forest(pair.x, tree)
    assert fx is not None
    return is_naively_extendable(fx, pair.y)


def _naive_witness(pair: TransformationPair, fx: ConsistentForest) -> Optional[ConsistentForest]:
    return _naive_witness_cached(pair, fx.tree_edges)


# ---------------------------------------------------------------------------
# lifting decompositions through an extension

@dataclass(frozen=True)
class LiftResult:
    graph: Graph
    decomposition: ThreeDecomposition
    transform: TransformResult
    rule: str  # "naive" or the manual rule tag


def template_edge_image(x: TemplateGraph, emb: Embedding, e: Edge) -> Edge:
    """Host edge corresponding to a template edge under an embedding."""
    k = x.core_size()
    u, v = e
    if v < k:
        return norm_edge(emb.phi[u], emb.phi[v])
    j = x.slot_of(v)
    return norm_edge(emb.phi[x.attach(j)], emb.psi[j])


def restrict_forest(host: Graph, d: ThreeDecomposition, x: TemplateGraph,
                    emb: Embedding) -> ConsistentForest:
    """Restriction of the decomposition's tree to the embedded template."""
    labmap = d.label_map()
    tree = set()
    for e in x.edges():
        if labmap[template_edge_image(x, emb, e)] == T:
            tree.add(e)
    cf = classify_forest(x, tree)
    if cf is None:
        raise DecompositionError("restriction of a valid decomposition must be 3-consistent")
    return cf


def splice(host: Graph, d: ThreeDecomposition, pair: TransformationPair, emb: Embedding,
           y_labels: dict[Edge, str]) -> tuple[TransformResult, ThreeDecomposition]:
    """Transform the host and re-label: outside edges keep d, template edges get y_labels."""
    res = apply_transformation(host, pair, emb)
    removed = set(emb.phi)
    labels: dict[Edge, str] = {}
    for e, lab in zip(host.edges(), d.labels):
        u, v = e
        if u in removed or v in removed:
            continue
        labels[norm_edge(res.host_map[u], res.host_map[v])] = lab
    y = pair.y
    ky = y.core_size()
    for e in y.edges():
        u, v = e
        if v < ky:
            img = norm_edge(res.core_map[u], res.core_map[v])
        else:
            j = y.slot_of(v)
            img = norm_edge(res.core_map[y.attach(j)], res.host_map[emb.psi[j]])
        labels[img] = y_labels[norm_edge(u, v)]
    if set(labels) != set(res.graph.edges()):
        raise DecompositionError("splice did not cover the transformed edge set")
    return res, decomposition_from_map(res.graph, labels)


def lift_decomposition(host: Graph, d: ThreeDecomposition, pair: TransformationPair,
                       emb: Embedding) -> LiftResult:
    """Extend a verified decomposition of the host through pair.x -> pair.y."""
    fx = restrict_forest(host, d, pair.x, emb)
    witness = _naive_witness(pair, fx)
    if witness is not None:
        res, nd = splice(host, d, pair, emb, witness.label_map())
        ok, why = verify(res.graph, nd)
        if not ok:
            raise AssertionError(f"naive lift failed verification: {why}")
        return LiftResult(res.graph, nd, res, "naive")
    return _manual_lift(host, d, pair, emb, fx)


# --- manual special-case rules --------------------------------------------

_MANUAL_RULES: dict[tuple[str, tuple], str] = {}


def _register_manual_rules() -> None:
    from .templates import builtin_pairs
    pairs = builtin_pairs()
    petv = pairs["node-petv"]
    for fx in enumerate_consistent_forests(petv.x):
        if sorted(fx.assignment) == ["m", "t", "t"]:
            _MANUAL_RULES[("node-petv", canonical_forest_key(petv, fx.tree_edges))] = "petv-m"
    th = pairs["square-twin-house"]
    _MANUAL_RULES[("square-twin-house",
                   canonical_forest_key(th, frozenset(_B1_TREE)))] = "twin-house-opposite-m"
    _MANUAL_RULES[("square-twin-house",
                   canonical_forest_key(th, frozenset(_B2_TREE)))] = "twin-house-three-m"
    dom = pairs["square-domino"]
    _MANUAL_RULES[("square-domino",
                   canonical_forest_key(dom, frozenset(_BAD_TREE)))] = "domino-bad"


# square template: core u1..u4 = 0..3 (cycle 0-1-3-2), pendants (0,4),(1,5),(2,6),(3,7)
_B1_TREE = [(0, 1), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)]
_B2_TREE = [(0, 2), (2, 3), (1, 3), (0, 4), (1, 5)]
_BAD_TREE = [(0, 1), (0, 2), (2, 3), (1, 5), (3, 7)]


def _manual_rule_for(pair: TransformationPair, fx: ConsistentForest) -> Optional[str]:
    if not _MANUAL_RULES:
        _register_manual_rules()
    return _MANUAL_RULES.get((pair.name, canonical_forest_key(pair, fx.tree_edges)))


def _conjugate_to(pair: TransformationPair, fx: ConsistentForest, rep_tree: frozenset[Edge],
                  emb: Embedding) -> Embedding:
    """Embedding under which the restriction reads as the canonical rep forest."""
    x = pair.x
    k = x.core_size()
    for _, alpha_x, _ in pair_symmetries(pair):
        if frozenset(_edge_image(alpha_x, e) for e in rep_tree) == fx.tree_edges:
            phi = tuple(emb.phi[alpha_x[c]] for c in range(k))
            psi = tuple(emb.psi[x.slot_of(alpha_x[x.outer[j]])] for j in range(len(x.outer)))
            return Embedding(phi, psi)
    raise ManualCaseUnresolved("forest not conjugate to the rule's representative")


def _tree_components_after_cut(host: Graph, d: ThreeDecomposition,
                               cut: set[Edge]) -> dict[int, int]:
    """Vertex -> component id over the host tree minus the cut edges."""
    adj: dict[int, list[int]] = {v: [] for v in range(host.n)}
    for e in d.tree_edges():
        if e in cut:
            continue
        u, v = e
        adj[u].append(v)
        adj[v].append(u)
    comp = [-1] * host.n
    cid = 0
    for s in range(host.n):
        if comp[s] >= 0:
            continue
        stack = [s]
        comp[s] = cid
        while stack:
            x = stack.pop()
            for yv in adj[x]:
                if comp[yv] < 0:
                    comp[yv] = cid
                    stack.append(yv)
        cid += 1
    return {v: comp[v] for v in range(host.n)}


def _all_tree_labels(y: TemplateGraph, cycle: list[Edge] = (),
                     matching: list[Edge] = ()) -> dict[Edge, str]:
    labels = {norm_edge(*e): T for e in y.edges()}
    for e in cycle:
        labels[norm_edge(*e)] = C
    for e in matching:
        labels[norm_edge(*e)] = M
    return labels


@lru_cache(maxsize=None)
def _petv_cycle_for_slot(j: int) -> tuple[Edge, ...]:
    """Five-cycle through the m-slot's attachment whose removal leaves the
    other two attachments in one component and the m-attachment in the other."""
    from .templates import builtin_pairs
    y = builtin_pairs()["node-petv"].y
    core = y.core()
    a = y.attach(j)
    others = [y.attach(t) for t in range(3) if t != j]
    for cyc in _five_cycles_through(core, a):
        cyc_edges = {norm_edge(cyc[i], cyc[(i + 1) % 5]) for i in range(5)}
        comp = _components_without(core, cyc_edges)
        if comp[others[0]] == comp[others[1]] != comp[a]:
            return tuple(sorted(cyc_edges))
    raise AssertionError("no suitable five-cycle in the petv core")


def _five_cycles_through(g: Graph, a: int) -> Iterator[list[int]]:
    path = [a]

    def rec() -> Iterator[list[int]]:
        if len(path) == 5:
            if g.has_edge(path[-1], a):
                yield list(path)
            return
        for w in g.neighbors(path[-1]):
            if w not in path:
                path.append(w)
                yield from rec()
                path.pop()

    yield from rec()


def _components_without(g: Graph, removed: set[Edge]) -> list[int]:
    comp = [-1] * g.n
    cid = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = cid
        stack = [s]
        while stack:
            x = stack.pop()
            for yv in g.neighbors(x):
                if norm_edge(x, yv) in removed or comp[yv] >= 0:
                    continue
                comp[yv] = cid
                stack.append(yv)
        cid += 1
    return comp


def _manual_lift(host: Graph, d: ThreeDecomposition, pair: TransformationPair,
                 emb: Embedding, fx: ConsistentForest) -> LiftResult:
    rule = _manual_rule_for(pair, fx)
    if rule is None:
        raise ManualCaseUnresolved(
            f"forest {sorted(fx.tree_edges)} of {pair.name} has no registered rule")
    y = pair.y
    if rule == "petv-m":
        j = fx.assignment.index("m")
        # conjugation is unnecessary: the cycle is computed per m-slot
        cyc = _petv_cycle_for_slot(j)
        y_labels = _all_tree_labels(y, cycle=list(cyc))
        res, nd = splice(host, d, pair, emb, y_labels)
    elif rule == "twin-house-opposite-m":
        emb = _conjugate_to(pair, fx, frozenset(norm_edge(*e) for e in _B1_TREE), emb)
        cut = {norm_edge(emb.phi[0], emb.phi[1]), norm_edge(emb.phi[2], emb.phi[3])}
        comp = _tree_components_after_cut(host, d, cut)
        p1, p2 = comp[emb.phi[0]], comp[emb.phi[1]]
        if comp[emb.phi[2]] == p2 or comp[emb.phi[3]] == p1:
            y_labels = _all_tree_labels(y, matching=[(0, 1), (4, 3), (5, 2)])
        else:
            y_labels = _all_tree_labels(y, matching=[(0, 1), (4, 2), (5, 3)])
        res, nd = splice(host, d, pair, emb, y_labels)
    elif rule == "twin-house-three-m":
        emb = _conjugate_to(pair, fx, frozenset(norm_edge(*e) for e in _B2_TREE), emb)
        y_labels = _all_tree_labels(y, cycle=[(4, 2), (4, 3), (5, 2), (5, 3)])
        res, nd = splice(host, d, pair, emb, y_labels)
    elif rule == "domino-bad":
        emb = _conjugate_to(pair, fx, frozenset(norm_edge(*e) for e in _BAD_TREE), emb)
        cut = {norm_edge(emb.phi[0], emb.phi[1]), norm_edge(emb.phi[0], emb.phi[2]),
               norm_edge(emb.phi[2], emb.phi[3])}
        comp = _tree_components_after_cut(host, d, cut)
        h2, h4 = comp[emb.phi[1]], comp[emb.phi[3]]
        if comp[emb.psi[2]] == h2:
            y_labels = _all_tree_labels(y, cycle=[(0, 1), (1, 5), (4, 5), (0, 4)])
        elif comp[emb.psi[0]] == h4:
            y_labels = _all_tree_labels(y, cycle=[(4, 5), (5, 3), (2, 3), (2, 4)])
        else:
            raise ManualCaseUnresolved(
                "domino bad case with a 3-connected edge-reduction: pipeline ordering bug")
        res, nd = splice(host, d, pair, emb, y_labels)
    else:
        raise ManualCaseUnresolved(f"unknown rule tag {rule}")
    ok, why = verify(res.graph, nd)
    if not ok:
        raise AssertionError(f"manual lift ({rule}) failed verification: {why}")
    return LiftResult(res.graph, nd, res, rule)
