from itertools import combinations, permutations

from cubic3dec.generate import connected_cubic_graphs
from cubic3dec.graphs import (Graph, complete_bipartite, complete_graph, count_subgraphs,
                              cycle_graph, find_all_subgraphs, find_subgraph, girth,
                              is_three_connected, path_graph, petersen_graph, prism_graph)


def brute_force_three_connected(g):
    if g.n < 4 or not g.is_connected():
        return False
    for removal in list(combinations(range(g.n), 1)) + list(combinations(range(g.n), 2)):
        keep = [v for v in range(g.n) if v not in removal]
        relabel = {v: i for i, v in enumerate(keep)}
        sub = Graph.from_edges(len(keep), [(relabel[u], relabel[v]) for u, v in g.edges()
                                           if u in relabel and v in relabel])
        if not sub.is_connected():
            return False
    return True


def brute_force_girth(g):
    best = None
    for k in range(3, g.n + 1):
        for verts in permutations(range(g.n), k):
            if verts[0] != min(verts):
                continue
            if all(g.has_edge(verts[i], verts[(i + 1) % k]) for i in range(k)):
                best = k
                break
        if best:
            break
    return best


def test_three_connected_examples():
    assert is_three_connected(complete_graph(4))
    assert not is_three_connected(cycle_graph(4))
    assert is_three_connected(complete_bipartite(3, 3))
    assert is_three_connected(petersen_graph())


def test_three_connected_matches_brute_force(corpus10):
    cases = [cycle_graph(5), path_graph(6), prism_graph()]
    cases += [g for n in (4, 6, 8) for g in corpus10[n]]
    for g in cases:
        assert is_three_connected(g) == brute_force_three_connected(g)


def test_girth_examples():
    assert girth(complete_graph(4)) == 3
    assert girth(complete_bipartite(3, 3)) == 4
    assert girth(petersen_graph()) == 5
    assert girth(path_graph(5)) is None


def test_girth_matches_brute_force(corpus10):
    for n in (4, 6, 8):
        for g in corpus10[n]:
            assert girth(g) == brute_force_girth(g)


def test_find_subgraph_examples():
    assert find_subgraph(complete_graph(4), cycle_graph(3)) is not None
    # brute force: no 3-subset of the Petersen graph spans a triangle
    pet = petersen_graph()
    assert not any(pet.has_edge(a, b) and pet.has_edge(b, c) and pet.has_edge(a, c)
                   for a, b, c in combinations(range(10), 3))
    assert find_subgraph(pet, cycle_graph(3)) is None
    pet_minus = Graph.from_edges(9, [(u - 1, v - 1) for u, v in pet.edges()
                                     if u != 0 and v != 0])
    assert find_subgraph(pet, pet_minus) is not None


def brute_force_matches(host, pattern, induced):
    hits = 0
    for image in permutations(range(host.n), pattern.n):
        ok = True
        for a in range(pattern.n):
            for b in range(a + 1, pattern.n):
                has = host.has_edge(image[a], image[b])
                want = pattern.has_edge(a, b)
                if want and not has:
                    ok = False
                elif induced and not want and has:
                    ok = False
            if not ok:
                break
        hits += ok
    return hits


def test_find_subgraph_matches_injection_oracle(corpus10):
    patterns = [cycle_graph(3), cycle_graph(4), path_graph(4), complete_graph(4),
                Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])]
    hosts = [complete_graph(4), prism_graph(), complete_bipartite(3, 3)] + list(corpus10[8][:3])
    for host in hosts:
        for pattern in patterns:
            for induced in (False, True):
                expect = brute_force_matches(host, pattern, induced)
                got = count_subgraphs(host, pattern, induced)
                assert got == expect, (host, pattern.edges(), induced)


def test_find_subgraph_deterministic():
    host = petersen_graph()
    pattern = cycle_graph(5)
    first = [m.vertex_map for m in find_all_subgraphs(host, pattern)][:5]
    second = [m.vertex_map for m in find_all_subgraphs(host, pattern)][:5]
    assert first == second
