"""Small simple graphs on up to 64 vertices, stored as per-vertex adjacency bitsets.

Everything in this module is a pure function over immutable Graph values.
Vertex sets are always 0..n-1; edges are ordered pairs (u, v) with u < v.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

# hosts from the corpus stay tiny; the generous cap leaves room for the
# generated gadget templates, whose bitset rows are plain Python ints anyway
MAX_VERTICES = 4096


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple undirected graph with bitset adjacency rows."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} out of supported range 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"adjacency row of vertex {v} mentions vertices >= {n}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v in range(n):
            for u in _bits(adj[v]):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_cubic(self) -> bool:
        return self.n >= 4 and all(row.bit_count() == 3 for row in self.adj)

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return _reach(self.adj, 1, (1 << self.n) - 1) == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the vertex map v -> perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, adj)

    def with_edge(self, u: int, v: int) -> "Graph":
        if self.has_edge(u, v) or u == v:
            raise GraphError(f"cannot add edge ({u},{v})")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {self.edges()})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reach(adj: Sequence[int], start_mask: int, allowed: int) -> int:
    """Bitmask of vertices reachable from start_mask inside the allowed set."""
    seen = start_mask & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


# ---------------------------------------------------------------------------
# graph6 encoding (bias-63 sixbit packing of the upper adjacency triangle)

class Graph6Error(ValueError):
    """Malformed graph6 record; message carries the offending byte offset."""


def parse_graph6(line: str) -> Graph:
    s = line.rstrip("\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 record")
    data = s.encode("ascii", errors="replace")
    for off, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {off}: value {b} outside graph6 range 63..126")
    n, pos = _read_order(data)
    if n > MAX_VERTICES:
        raise Graph6Error(f"byte 0: order {n} exceeds supported maximum {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error(f"byte {len(data)}: truncated bit-stream, need {nbytes} data bytes")
    if len(data) - pos > nbytes:
        raise Graph6Error(f"byte {pos + nbytes}: trailing data after bit-stream")
    adj = [0] * n
    bit = 0
    for k in range(nbytes):
        group = data[pos + k] - 63
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if group >> shift & 1:
                    raise Graph6Error(f"byte {pos + k}: nonzero padding bit")
                continue
            if group >> shift & 1:
                i, j = _triangle_coords(bit)
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return Graph(n, adj)


def write_graph6(g: Graph) -> str:
    out = bytearray(_write_order(g.n))
    bits: list[int] = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        group = 0
        for b in bits[k:k + 6]:
            group = group << 1 | b
        out.append(group + 63)
    return out.decode("ascii")


def _read_order(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise Graph6Error("byte 0: long-form order header is truncated")
    if data[1] == 126:
        raise Graph6Error("byte 1: 36-bit orders are not supported")
    n = 0
    for k in range(1, 4):
        n = n << 6 | (data[k] - 63)
    return n, 4


def _write_order(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])


def _triangle_coords(bit: int) -> tuple[int, int]:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    j = 1
    while j * (j + 1) // 2 <= bit:
        j += 1
    i = bit - j * (j - 1) // 2
    return i, j


def read_graph6_file(path) -> list[Graph]:
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_graph6(line))
    return graphs


# ---------------------------------------------------------------------------
# connectivity

def is_three_connected(g: Graph) -> bool:
    """Vertex connectivity >= 3, decided by removing every vertex pair.

    Hosts here never exceed a few dozen vertices, so the quadratic
    brute force is both fast enough and trivially trustworthy.
    """
    n = g.n
    if n < 4:
        return False
    full = (1 << n) - 1
    if _reach(g.adj, 1, full) != full:
        return False
    for v in range(n):
        allowed = full & ~(1 << v)
        start = allowed & -allowed
        if _reach(g.adj, start, allowed) != allowed:
            return False
    for u in range(n):
        for v in range(u + 1, n):
            allowed = full & ~(1 << u) & ~(1 << v)
            start = allowed & -allowed
            if _reach(g.adj, start, allowed) != allowed:
                return False
    return True


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for forests."""
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in g.neighbors(v):
                if u == parent[v]:
                    continue
                if u in dist:
                    cycle = dist[v] + dist[u] + 1
                    if best is None or cycle < best:
                        best = cycle
                else:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
        # BFS from every root keeps this exact for even shortest cycles
    return best


# ---------------------------------------------------------------------------
# subgraph search

@dataclass(frozen=True)
class SubgraphMatch:
    vertex_map: tuple[int, ...]  # pattern vertex -> host vertex
    induced: bool


def find_subgraph(host: Graph, pattern: Graph, require_induced: bool = False) -> Optional[SubgraphMatch]:
    for match in find_all_subgraphs(host, pattern, require_induced):
        return match
    return None


def find_all_subgraphs(host: Graph, pattern: Graph, require_induced: bool = False) -> Iterator[SubgraphMatch]:
    """All injective maps sending pattern edges to host edges, backtracking.

    Deterministic: pattern vertices are matched in a connectivity-first
    order and host candidates are tried in ascending id order.
    """
    if pattern.n > host.n:
        return
    order = _match_order(pattern)
    assignment = [-1] * pattern.n
    used = 0

    def candidates(pv: int) -> Iterator[int]:
        anchor = -1
        for prev in _bits(pattern.adj[pv]):
            if assignment[prev] >= 0:
                anchor = assignment[prev]
                break
        pool = host.adj[anchor] if anchor >= 0 else (1 << host.n) - 1
        for hv in _bits(pool & ~used):
            yield hv

    def feasible(pv: int, hv: int) -> bool:
        if host.degree(hv) < pattern.degree(pv):
            return False
        for pu in _bits(pattern.adj[pv]):
            if assignment[pu] >= 0 and not host.has_edge(assignment[pu], hv):
                return False
        if require_induced:
            for pu in range(pattern.n):
                if assignment[pu] >= 0 and not pattern.has_edge(pu, pv):
                    if host.has_edge(assignment[pu], hv):
                        return False
        return True

    def extend(k: int) -> Iterator[SubgraphMatch]:
        nonlocal used
        if k == pattern.n:
            yield SubgraphMatch(tuple(assignment), require_induced)
            return
        pv = order[k]
        for hv in candidates(pv):
            if feasible(pv, hv):
                assignment[pv] = hv
                used |= 1 << hv
                yield from extend(k + 1)
                used &= ~(1 << hv)
                assignment[pv] = -1

    yield from extend(0)


def _match_order(pattern: Graph) -> list[int]:
    """Vertices ordered so each one (after the first of a component) touches a prior one."""
    order: list[int] = []
    placed = 0
    while len(order) < pattern.n:
        candidates = [v for v in range(pattern.n) if not placed >> v & 1]
        attached = [v for v in candidates if pattern.adj[v] & placed]
        pick = max(attached, key=lambda v: (pattern.adj[v] & placed).bit_count()) if attached \
            else max(candidates, key=pattern.degree)
        order.append(pick)
        placed |= 1 << pick
    return order


def count_subgraphs(host: Graph, pattern: Graph, require_induced: bool = False) -> int:
    return sum(1 for _ in find_all_subgraphs(host, pattern, require_induced))


# ---------------------------------------------------------------------------
# named small graphs used throughout the tests and the reduction tables

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, edges)


def prism_graph() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
