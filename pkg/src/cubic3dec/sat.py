"""3CNF formulas, a brute-force satisfiability oracle, and the gadget that
turns realisability of a 3-consistent forest assignment into SAT.

The gadget builds a template graph per formula: variable gadgets are pairs of
long paths tied together by forced tree-edges, clause gadgets are single
vertices with three forced tree-edges into the variable blocks, and a spine
of forced tree-edges collects the block heads.  A 3-consistent forest
realising the prescribed outer assignment exists iff the formula is
satisfiable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph
from .templates import TemplateGraph

Clause = tuple[int, int, int]


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) != 3:
                raise FormulaError(f"clause {cl} is not ternary")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"literal {lit} out of range")

    def occurrences(self, var: int) -> tuple[int, int]:
        pos = sum(1 for cl in self.clauses for lit in cl if lit == var)
        neg = sum(1 for cl in self.clauses for lit in cl if lit == -var)
        return pos, neg


def parse_dimacs(text: str) -> Formula:
    num_vars = None
    clauses: list[Clause] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        lits = [int(x) for x in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if not lits:
            continue
        if len(lits) != 3:
            raise FormulaError(f"clause {lits} is not ternary (3CNF required)")
        clauses.append(tuple(lits))
    if num_vars is None:
        raise FormulaError("missing problem line")
    return Formula(num_vars, tuple(clauses))


def format_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for cl in f.clauses:
        lines.append(" ".join(str(lit) for lit in cl) + " 0")
    return "\n".join(lines) + "\n"


def brute_force_sat(f: Formula) -> Optional[tuple[bool, ...]]:
    """First satisfying assignment in lexicographic order, or None."""
    for bits in range(1 << f.num_vars):
        value = tuple(bool(bits >> i & 1) for i in range(f.num_vars))
        if all(any(value[abs(l) - 1] == (l > 0) for l in cl) for cl in f.clauses):
            return value
    return None


def pad_balanced(f: Formula) -> Formula:
    """Equalise positive and negative occurrences of every variable.

    Adds clauses x|x|~x (net +1 positive) or x|~x|~x (net -1) as needed;
    a variable that never occurs is rejected.
    """
    clauses = list(f.clauses)
    for var in range(1, f.num_vars + 1):
        pos, neg = f.occurrences(var)
        if pos == 0 and neg == 0:
            raise FormulaError(f"variable {var} never occurs")
        while pos < neg:
            clauses.append((var, var, -var))
            pos += 2
            neg += 1
        while neg < pos:
            clauses.append((var, -var, -var))
            pos += 1
            neg += 2
    return Formula(f.num_vars, tuple(clauses))


class _GadgetBuilder:
    def __init__(self):
        self.next_id = 0
        self.edges: list[tuple[int, int]] = []
        self.outer: list[tuple[int, str]] = []  # (vertex, assignment letter)

    def vertex(self) -> int:
        v = self.next_id
        self.next_id += 1
        return v

    def edge(self, u: int, v: int):
        self.edges.append((u, v))

    def leaf(self, at: int, kind: str) -> int:
        w = self.vertex()
        self.edge(at, w)
        self.outer.append((w, kind))
        return w

    def forced_tree_edge(self, u: int, v: int):
        """Subdivision vertex with an m-leaf pins both halves into the tree."""
        w = self.vertex()
        self.edge(u, w)
        self.edge(v, w)
        self.leaf(w, "m")

    def finish(self) -> tuple[TemplateGraph, tuple[str, ...]]:
        outer_ids = [v for v, _ in self.outer]
        inner_ids = [v for v in range(self.next_id) if v not in set(outer_ids)]
        relabel = {v: i for i, v in enumerate(inner_ids)}
        for j, v in enumerate(outer_ids):
            relabel[v] = len(inner_ids) + j
        edges = [(relabel[u], relabel[v]) for u, v in self.edges]
        g = Graph.from_edges(self.next_id, edges)
        t = TemplateGraph(g, tuple(range(len(inner_ids), self.next_id)))
        return t, tuple(kind for _, kind in self.outer)


def sat_to_template(f: Formula) -> tuple[TemplateGraph, tuple[str, ...]]:
    """Template graph and outer assignment realisable iff the formula is satisfiable.

    The formula must be balanced (pad_balanced) and every variable must occur.
    """
    for var in range(1, f.num_vars + 1):
        pos, neg = f.occurrences(var)
        if pos == 0 and neg == 0:
            raise FormulaError(f"variable {var} never occurs")
        if pos != neg:
            raise FormulaError(f"variable {var} is unbalanced; pad first")
    b = _GadgetBuilder()
    ends: dict[int, tuple[int, int]] = {}
    # block bookkeeping: (var, sign, occurrence index) -> (first, third vertex)
    first_of: dict[tuple[int, bool, int], int] = {}
    third_of: dict[tuple[int, bool, int], int] = {}
    block_order: list[tuple[int, bool, int]] = []

    for var in range(1, f.num_vars + 1):
        ell = f.occurrences(var)[0]
        s = b.vertex()
        t = b.vertex()
        rails = {}
        for sign in (True, False):
            prev = s
            cells = []
            for k in range(4 * ell):
                v = b.vertex()
                b.edge(prev, v)
                cells.append(v)
                prev = v
            b.edge(prev, t)
            rails[sign] = cells
            for j in range(ell):
                key = (var, sign, j)
                first_of[key] = cells[4 * j]
                third_of[key] = cells[4 * j + 2]
                block_order.append(key)
        for k in range(1, 4 * ell, 2):
            # rungs at even path positions (cells are 0-indexed)
            b.forced_tree_edge(rails[True][k], rails[False][k])
        ends[var] = (s, t)

    counters: dict[tuple[int, bool], int] = {}
    for cl in f.clauses:
        c = b.vertex()
        for lit in cl:
            key = (abs(lit), lit > 0)
            j = counters.get(key, 0)
            counters[key] = j + 1
            b.forced_tree_edge(c, third_of[(abs(lit), lit > 0, j)])

    spine = [b.vertex() for _ in block_order]
    for p, q in zip(spine, spine[1:]):
        b.forced_tree_edge(p, q)
    for p, key in zip(spine, block_order):
        b.forced_tree_edge(p, first_of[key])
    b.leaf(spine[0], "t")
    b.leaf(spine[-1], "t")

    for i in range(1, f.num_vars):
        b.edge(ends[i][1], ends[i + 1][0])
    b.leaf(ends[1][0], "c")
    b.leaf(ends[f.num_vars][1], "c")
    return b.finish()


def is_realizable(template: TemplateGraph, assignment: tuple[str, ...]) -> bool:
    from .extend import search_consistent_forest
    return search_consistent_forest(template, assignment) is not None


def np_hardness_instance(f: Formula):
    """(X, T_X, Y) such that T_X is naively extendable to Y iff f is satisfiable.

    X realises the gadget assignment with the weakest possible partition: its
    only tree-linked outer vertices are the two spine leaves, joined in one
    component; every other outer vertex stands alone.
    """
    from .extend import classify_forest

    y, assignment = sat_to_template(f)
    t_slots = [j for j, a in enumerate(assignment) if a == "t"]
    c_slots = [j for j, a in enumerate(assignment) if a == "c"]
    m_slots = [j for j, a in enumerate(assignment) if a == "m"]
    if len(t_slots) != 2 or len(c_slots) != 2:
        raise FormulaError("gadget assignment shape changed unexpectedly")

    b = _GadgetBuilder()
    spine = [b.vertex() for _ in range(len(m_slots) + 1)]
    slot_vertex: dict[int, int] = {}
    hub = None
    attach_points = spine[:]
    hub_host = attach_points.pop()
    for p, q in zip(spine, spine[1:]):
        b.edge(p, q)
    hub = b.vertex()
    b.edge(hub_host, hub)
    for j, p in zip(m_slots, attach_points):
        slot_vertex[j] = b.leaf(p, "m")
    slot_vertex[t_slots[0]] = b.leaf(spine[0], "t")
    slot_vertex[t_slots[1]] = b.leaf(spine[-1], "t")
    for j in c_slots:
        slot_vertex[j] = b.leaf(hub, "c")
    # reorder the recorded outers into slot order before finishing
    b.outer = [(slot_vertex[j], assignment[j]) for j in range(len(assignment))]
    x, _ = b.finish()
    tree = set()
    for p, q in zip(spine, spine[1:]):
        tree.add((p, q))
    tree.add((hub_host, hub))
    tree.add(tuple(sorted((spine[0], slot_vertex[t_slots[0]]))))
    tree.add(tuple(sorted((spine[-1], slot_vertex[t_slots[1]]))))
    # translate through the same relabelling finish() used
    outer_ids = [v for v, _ in b.outer]
    inner_ids = [v for v in range(b.next_id) if v not in set(outer_ids)]
    relabel = {v: i for i, v in enumerate(inner_ids)}
    for j, v in enumerate(outer_ids):
        relabel[v] = len(inner_ids) + j
    tree = frozenset((min(relabel[u], relabel[v]), max(relabel[u], relabel[v]))
                     for u, v in tree)
    fx = classify_forest(x, tree)
    if fx is None or fx.assignment != assignment:
        raise AssertionError("hardness instance forest is not 3-consistent")
    return x, fx, y
