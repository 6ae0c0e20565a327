"""Template graphs and the transformation calculus over them.

A template graph partitions its vertices into degree-3 inner vertices and
degree-1 outer vertices; the core is the template minus the outer vertices.
Transformations replace an embedded copy of one core by another, re-attaching
along a shared, positionally identified outer set.

Convention here: inner (core) vertices are numbered 0..k-1, outer vertices
k..k+t-1, and the `outer` tuple lists outer vertex ids in slot order.  Slot j
of a pair's two templates refers to the same attachment.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .canon import automorphisms
from .graphs import Graph, find_all_subgraphs, is_three_connected

Edge = tuple[int, int]


class TemplateError(ValueError):
    pass


class NonSimpleResult(ValueError):
    """A transformation would produce a parallel edge; carries the collision."""

    def __init__(self, slot_a: int, slot_b: int, host_vertex: int):
        super().__init__(
            f"outer slots {slot_a} and {slot_b} both attach to host vertex "
            f"{host_vertex} at the same core vertex")
        self.collision = (slot_a, slot_b, host_vertex)


@dataclass(frozen=True)
class TemplateGraph:
    graph: Graph
    outer: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        k = self.core_size()
        if self.outer != tuple(range(k, self.graph.n)):
            raise TemplateError("outer vertices must be the trailing ids in slot order")
        for v in range(k):
            if self.graph.degree(v) != 3:
                raise TemplateError(f"inner vertex {v} has degree {self.graph.degree(v)}")
        for v in self.outer:
            if self.graph.degree(v) != 1:
                raise TemplateError(f"outer vertex {v} has degree {self.graph.degree(v)}")

    def core_size(self) -> int:
        return self.graph.n - len(self.outer)

    def core(self) -> Graph:
        k = self.core_size()
        return Graph.from_edges(k, [(u, v) for u, v in self.graph.edges() if v < k])

    def attach(self, slot: int) -> int:
        """Core vertex the given outer slot hangs from."""
        return self.graph.neighbors(self.outer[slot])[0]

    def pendant_edge(self, slot: int) -> Edge:
        w = self.outer[slot]
        return (self.attach(slot), w)

    def edges(self) -> list[Edge]:
        return self.graph.edges()

    def slot_of(self, outer_vertex: int) -> int:
        return self.outer.index(outer_vertex)


def make_template(core: Graph, name: str = "") -> TemplateGraph:
    """The unique template with the given core: degree-d vertices gain 3-d pendants."""
    if core.max_degree() > 3:
        raise TemplateError("core must be subcubic")
    edges = list(core.edges())
    outer = []
    nxt = core.n
    for v in range(core.n):
        for _ in range(3 - core.degree(v)):
            edges.append((v, nxt))
            outer.append(nxt)
            nxt += 1
    return TemplateGraph(Graph.from_edges(nxt, edges), tuple(outer), name)


@dataclass(frozen=True)
class TransformationPair:
    x: TemplateGraph
    y: TemplateGraph
    name: str

    def __post_init__(self):
        if len(self.x.outer) != len(self.y.outer):
            raise TemplateError("transformation pair must share its outer set")

    def slots(self) -> int:
        return len(self.x.outer)

    def reversed(self) -> "TransformationPair":
        return TransformationPair(self.y, self.x, self.name)

    def is_extension(self) -> bool:
        return self.x.graph.n < self.y.graph.n


@dataclass(frozen=True)
class Embedding:
    """phi embeds the core; psi records the host attachment of each outer slot."""
    phi: tuple[int, ...]
    psi: tuple[int, ...]


# ---------------------------------------------------------------------------
# builtin templates

def _node_template() -> TemplateGraph:
    return make_template(Graph(1, [0]), "node")


def _edge_template() -> TemplateGraph:
    # slots: v1, v3 at the left end, v2, v4 at the right end
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (0, 4), (1, 5)])
    return TemplateGraph(g, (2, 3, 4, 5), "edge")


def _triangle_template() -> TemplateGraph:
    return make_template(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), "triangle")


def _k23_template() -> TemplateGraph:
    core = Graph.from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    return make_template(core, "k23")


def _petv_template() -> TemplateGraph:
    # Petersen minus one rim vertex; the three degree-2 survivors take pendants
    pet = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
           (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
           (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]
    keep = {old: new for new, old in enumerate(range(1, 10))}
    edges = [(keep[u], keep[v]) for u, v in pet if u != 0 and v != 0]
    return make_template(Graph.from_edges(9, edges), "petv")


def _square_template() -> TemplateGraph:
    # corners u1..u4 = 0..3 around the cycle u1-u2-u4-u3
    core = Graph.from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)])
    return make_template(core, "square")


def _domino_template() -> TemplateGraph:
    # 2x3 grid: corners u1..u4 = 0..3, middles u5, u6 = 4, 5
    core = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5), (0, 4), (4, 2), (1, 5), (5, 3)])
    return make_template(core, "domino")


def _twin_house_template() -> TemplateGraph:
    # roof u1u2 on stilts u5, u6; twins u5, u6 both join u3 and u4
    core = Graph.from_edges(6, [(0, 1), (0, 4), (1, 5), (4, 2), (4, 3), (5, 2), (5, 3)])
    return make_template(core, "twin-house")


def _claw_square_template() -> TemplateGraph:
    # square 0-1-2-3 with a claw (centre 4, leaves 5,6,7) hooked onto 0,1,2;
    # outer attachments sit at corner 3 and at the three leaves
    core = Graph.from_edges(
        8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (4, 6), (4, 7), (5, 0), (6, 1), (7, 2)])
    return make_template(core, "claw-square")


# Outer-slot correspondence for square <-> claw-square, as slot order of the
# claw-square template (pendants added in ascending core-vertex order give
# slots 0..3 at core vertices 3, 5, 6, 7).  Square slots are v1..v4 at the
# corners u1..u4.  The correspondence below routes v1 to the free corner, v2
# and v3 to the leaves over opposite square corners, v4 to the middle leaf;
# it is the unique choice (up to the pair's own symmetry) under which every
# square behaviour extends naively.
_CLAW_SQUARE_SLOTS = (0, 1, 3, 2)


def _reorder_outer(t: TemplateGraph, slot_source: tuple[int, ...]) -> TemplateGraph:
    """Template equal to t but with outer slot j taken from t's slot slot_source[j]."""
    k = t.core_size()
    perm = list(range(t.graph.n))
    for j, src in enumerate(slot_source):
        perm[t.outer[src]] = k + j
    return TemplateGraph(t.graph.relabel(perm), tuple(range(k, t.graph.n)), t.name)


@lru_cache(maxsize=None)
def builtin_templates() -> dict[str, TemplateGraph]:
    ts = [_node_template(), _edge_template(), _triangle_template(), _k23_template(),
          _petv_template(), _square_template(), _domino_template(),
          _twin_house_template(), _claw_square_template()]
    return {t.name: t for t in ts}


@lru_cache(maxsize=None)
def builtin_pairs() -> dict[str, TransformationPair]:
    t = builtin_templates()
    claw = _reorder_outer(t["claw-square"], _CLAW_SQUARE_SLOTS)
    pairs = [
        TransformationPair(t["node"], t["triangle"], "node-triangle"),
        TransformationPair(t["node"], t["k23"], "node-k23"),
        TransformationPair(t["node"], t["petv"], "node-petv"),
        TransformationPair(t["square"], claw, "square-claw-square"),
        TransformationPair(t["square"], t["twin-house"], "square-twin-house"),
        TransformationPair(t["edge"], t["domino"], "edge-domino"),
        TransformationPair(t["square"], t["domino"], "square-domino"),
        TransformationPair(t["square"], t["edge"], "square-edge"),
    ]
    return {p.name: p for p in pairs}


# ---------------------------------------------------------------------------
# embeddings

def find_embeddings(host: Graph, template: TemplateGraph,
                    require_induced: bool = True) -> Iterator[Embedding]:
    """Embeddings of the template's core into the host, attachments resolved.

    Distinct assignments of parallel pendants to host neighbours are
    enumerated separately; order is deterministic.
    """
    core = template.core()
    k = core.n
    slots_at: dict[int, list[int]] = {}
    for j in range(len(template.outer)):
        slots_at.setdefault(template.attach(j), []).append(j)
    for match in find_all_subgraphs(host, core, require_induced):
        phi = match.vertex_map
        image = 0
        for hv in phi:
            image |= 1 << hv
        outside: dict[int, list[int]] = {}
        ok = True
        for v, slots in slots_at.items():
            free = [w for w in host.neighbors(phi[v]) if not image >> w & 1]
            if len(free) != len(slots):
                ok = False
                break
            outside[v] = free
        if not ok:
            continue
        yield from _assign_psi(template, phi, slots_at, outside)


def _assign_psi(template: TemplateGraph, phi, slots_at, outside) -> Iterator[Embedding]:
    from itertools import permutations

    items = sorted(slots_at.items())
    choices = [sorted(set(permutations(outside[v]))) for v, _ in items]

    def rec(i: int, psi: dict):
        if i == len(items):
            yield Embedding(tuple(phi), tuple(psi[j] for j in range(len(template.outer))))
            return
        v, slots = items[i]
        for perm in choices[i]:
            for j, w in zip(slots, perm):
                psi[j] = w
            yield from rec(i + 1, psi)

    yield from rec(0, {})


def core_is_induced(host: Graph, template: TemplateGraph, emb: Embedding) -> bool:
    core = template.core()
    k = core.n
    for a in range(k):
        for b in range(a + 1, k):
            if not core.has_edge(a, b) and host.has_edge(emb.phi[a], emb.phi[b]):
                return False
    return True


# ---------------------------------------------------------------------------
# applying transformations

@dataclass(frozen=True)
class TransformResult:
    graph: Graph
    host_map: dict[int, int]       # surviving host vertex -> new id
    core_map: tuple[int, ...]      # y core vertex -> new id
    embedding: Embedding           # y's core embedded in the result


def apply_transformation(host: Graph, pair: TransformationPair, emb: Embedding) -> TransformResult:
    """Replace the embedded copy of c(X) by c(Y), reattaching along psi.

    Never emits a multigraph: a colliding attachment raises NonSimpleResult.
    """
    x, y = pair.x, pair.y
    kx = x.core_size()
    if len(emb.phi) != kx or len(emb.psi) != pair.slots():
        raise TemplateError("embedding does not fit the pair")
    removed = set(emb.phi)
    kept = [v for v in range(host.n) if v not in removed]
    host_map = {v: i for i, v in enumerate(kept)}
    ky = y.core_size()
    core_map = tuple(len(kept) + c for c in range(ky))
    edges: list[Edge] = []
    for u, v in host.edges():
        if u in removed or v in removed:
            continue
        edges.append((host_map[u], host_map[v]))
    ycore = y.core()
    for a, b in ycore.edges():
        edges.append((core_map[a], core_map[b]))
    attach_edges: dict[Edge, int] = {}
    for j in range(pair.slots()):
        a = core_map[y.attach(j)]
        w = emb.psi[j]
        if w in removed:
            raise TemplateError(f"attachment psi[{j}] lies inside the removed core image")
        e = (min(a, host_map[w]), max(a, host_map[w]))
        if e in attach_edges:
            raise NonSimpleResult(attach_edges[e], j, w)
        attach_edges[e] = j
        edges.append(e)
    if len(set(edges)) != len(edges):
        # an attachment duplicated a surviving host edge
        dup = next(e for e in edges if edges.count(e) > 1)
        raise NonSimpleResult(-1, -1, dup[1])
    result = Graph.from_edges(len(kept) + ky, edges)
    if not result.is_cubic():
        raise TemplateError("transformation result is not cubic")
    new_psi = tuple(host_map[w] for w in emb.psi)
    return TransformResult(result, host_map, core_map,
                           Embedding(core_map, new_psi))


@dataclass(frozen=True)
class GateResult:
    passed: bool
    reason: str
    result: Optional[TransformResult] = None


def reduction_gate(host: Graph, pair: TransformationPair, emb: Embedding) -> GateResult:
    """Check a reduction directly: induced core, simple result, 3-connected result."""
    if pair.x.graph.n <= pair.y.graph.n:
        raise TemplateError("gate expects a reduction (larger template first)")
    if not core_is_induced(host, pair.x, emb):
        return GateResult(False, "core not induced")
    try:
        res = apply_transformation(host, pair, emb)
    except NonSimpleResult as exc:
        return GateResult(False, f"non-simple: {exc}")
    if not is_three_connected(res.graph):
        return GateResult(False, "result not 3-connected")
    return GateResult(True, "ok", res)


# ---------------------------------------------------------------------------
# symmetries of a transformation pair

def template_slot_symmetries(t: TemplateGraph) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Outer-slot permutations induced by template automorphisms.

    Returns slot permutation -> one witnessing vertex automorphism.
    """
    result: dict[tuple[int, ...], tuple[int, ...]] = {}
    k = t.core_size()
    for alpha in automorphisms(t.graph):
        sigma = tuple(alpha[t.outer[j]] - k for j in range(len(t.outer)))
        result.setdefault(sigma, alpha)
    return result


@lru_cache(maxsize=None)
def pair_symmetries(pair: TransformationPair) -> tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]:
    """(slot permutation, x automorphism, y automorphism) triples of the pair."""
    sx = template_slot_symmetries(pair.x)
    sy = template_slot_symmetries(pair.y)
    out = []
    for sigma in sorted(set(sx) & set(sy)):
        out.append((sigma, sx[sigma], sy[sigma]))
    return tuple(out)
