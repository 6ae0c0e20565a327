from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic3dec.decomp import (BudgetExceeded, DecompositionError, ThreeDecomposition,
                              check_certificate, decomposition_from_map, format_certificate,
                              from_tree, heuristic_solve, is_hist, iter_tree_sets, norm_edge,
                              parse_certificate, solve, solve_exhaustive, verify)
from cubic3dec.graphs import (Graph, complete_bipartite, complete_graph, petersen_graph,
                              prism_graph)


def spanning_tree_oracle(g):
    """All tree edge sets of valid decompositions, by enumerating spanning trees."""
    found = set()
    edges = g.edges()
    for tree in combinations(edges, g.n - 1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, v in tree:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if not ok:
            continue
        try:
            from_tree(g, tree)
        except DecompositionError:
            continue
        found.add(frozenset(tree))
    return found


def test_verify_k4_star():
    g = complete_graph(4)
    labels = {(0, 1): "T", (0, 2): "T", (0, 3): "T", (1, 2): "C", (1, 3): "C", (2, 3): "C"}
    ok, why = verify(g, decomposition_from_map(g, labels))
    assert ok, why


def test_verify_rejects_matching_violation():
    g = complete_graph(4)
    labels = {(0, 1): "T", (1, 2): "T", (2, 3): "T", (0, 2): "M", (0, 3): "M", (1, 3): "M"}
    ok, why = verify(g, decomposition_from_map(g, labels))
    assert not ok
    assert "matching" in why


def test_verify_rejects_all_tree():
    g = complete_graph(4)
    labels = {e: "T" for e in g.edges()}
    ok, why = verify(g, decomposition_from_map(g, labels))
    assert not ok


def test_verify_requires_total_labels():
    g = complete_graph(4)
    with pytest.raises(DecompositionError):
        decomposition_from_map(g, {(0, 1): "T"})


@pytest.mark.parametrize("g", [complete_graph(4), complete_bipartite(3, 3), petersen_graph()])
def test_solve_finds_verified_decomposition(g):
    d = solve(g)
    assert d is not None
    ok, why = verify(g, d)
    assert ok, why


def test_solve_rejects_disconnected():
    two_k4 = Graph.from_edges(8, [(i, j) for i in range(4) for j in range(i + 1, 4)]
                              + [(4 + i, 4 + j) for i in range(4) for j in range(i + 1, 4)])
    with pytest.raises(DecompositionError):
        solve(two_k4)


def test_exhaustive_matches_spanning_tree_oracle(corpus10):
    for n in (4, 6, 8):
        for g in corpus10[n]:
            assert set(iter_tree_sets(g)) == spanning_tree_oracle(g)


def test_every_small_graph_decomposes(corpus10):
    for n, graphs in corpus10.items():
        for g in graphs:
            d = solve(g, restarts=30)
            assert d is not None
            assert verify(g, d)[0]


def test_budget_raises():
    with pytest.raises(BudgetExceeded):
        solve_exhaustive(petersen_graph(), budget=1)


def test_heuristic_output_verifies():
    for g in (complete_graph(4), prism_graph(), petersen_graph()):
        d = heuristic_solve(g, restarts=200, seed=7)
        if d is not None:
            assert verify(g, d)[0]


def test_from_tree_rejects_long_path_complement():
    g = complete_graph(4)
    with pytest.raises(DecompositionError) as exc:
        from_tree(g, [(0, 1), (1, 2), (2, 3)])
    assert "path" in str(exc.value)


def test_is_hist():
    g = complete_graph(4)
    assert is_hist(g, [(0, 1), (0, 2), (0, 3)])
    assert not is_hist(g, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(DecompositionError):
        is_hist(g, [(0, 1), (0, 2)])


def test_hist_forces_empty_matching(corpus10):
    for n in (4, 6, 8):
        for g in corpus10[n]:
            for tree in iter_tree_sets(g):
                d = from_tree(g, tree)
                if is_hist(g, tree):
                    assert not d.edges_with_label("M")


def test_certificate_round_trip(corpus10):
    for g in corpus10[8]:
        d = solve(g, restarts=30)
        text = format_certificate(g, d)
        g2, tree = parse_certificate(text)
        assert g2 == g
        assert tree == d.tree_edges()
        assert check_certificate(g2, tree) == (True, "ok")


def test_certificate_mutation_fails():
    g = prism_graph()
    d = solve(g)
    tree = sorted(d.tree_edges())
    other = next(e for e in g.edges() if e not in d.tree_edges())
    mutated = frozenset(tree[1:] + [other])
    ok, why = check_certificate(g, mutated)
    assert not ok


def test_certificate_path_complement_diagnostic():
    g = complete_graph(4)
    ok, why = check_certificate(g, [(0, 1), (1, 2), (2, 3)])
    assert not ok and "path" in why


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=18), st.integers(min_value=0, max_value=10 ** 6))
def test_random_tree_certificates_never_misverify(idx, seed):
    # random spanning trees either decode to a verified decomposition or reject
    import random
    from cubic3dec.generate import connected_cubic_graphs
    g = connected_cubic_graphs(10)[idx % 19]
    rng = random.Random(seed)
    edges = list(g.edges())
    rng.shuffle(edges)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    tree = []
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
    try:
        d = from_tree(g, tree)
    except DecompositionError:
        return
    assert verify(g, d)[0]
