from itertools import combinations

import pytest

from cubic3dec.decomp import from_tree, iter_tree_sets, solve, verify
from cubic3dec.extend import (ConsistentForest, ManualCaseUnresolved, canonical_forest_key,
                              check_compatibility, classify_forest,
                              enumerate_consistent_forests, forest_classes,
                              is_naively_extendable, lift_decomposition, restrict_forest,
                              search_consistent_forest)
from cubic3dec.graphs import complete_graph
from cubic3dec.templates import (NonSimpleResult, builtin_pairs, builtin_templates,
                                 find_embeddings)


def subset_oracle(t):
    """3-consistent forests by brute force over every edge subset."""
    edges = t.graph.edges()
    out = set()
    for k in range(len(edges) + 1):
        for subset in combinations(edges, k):
            cf = classify_forest(t, subset)
            if cf is not None:
                out.add(cf.tree_edges)
    return out


def test_node_forest_census():
    node = builtin_templates()["node"]
    forests = enumerate_consistent_forests(node)
    assert len(forests) == 7
    kinds = sorted("".join(sorted(cf.assignment)) for cf in forests)
    assert kinds == ["cct"] * 3 + ["mtt"] * 3 + ["ttt"]


def test_square_forest_census():
    square = builtin_templates()["square"]
    assert len(enumerate_consistent_forests(square)) == 39


def test_edge_forest_census():
    pairs = builtin_pairs()
    edge = builtin_templates()["edge"]
    forests = enumerate_consistent_forests(edge)
    assert len(forests) == 20
    assert len(forest_classes(pairs["edge-domino"], forests)) == 9


def test_node_classes_up_to_rotation():
    pairs = builtin_pairs()
    node = builtin_templates()["node"]
    assert len(forest_classes(pairs["node-triangle"], enumerate_consistent_forests(node))) == 3


def test_enumeration_matches_subset_oracle():
    for name in ("node", "edge", "triangle", "square", "k23", "domino", "twin-house"):
        t = builtin_templates()[name]
        got = {cf.tree_edges for cf in enumerate_consistent_forests(t)}
        assert got == subset_oracle(t), name


def test_edge_c_path_forest_extends_to_domino():
    # C-path through the edge (one C-pendant per end), both other pendants T
    pairs = builtin_pairs()
    edge = pairs["edge-domino"].x
    fx = classify_forest(edge, [(0, 4), (1, 5)])
    assert fx is not None and fx.assignment.count("c") == 2
    witness = is_naively_extendable(fx, pairs["edge-domino"].y)
    assert witness is not None
    assert witness.assignment == fx.assignment
    assert witness.outer_partition == fx.outer_partition


def test_node_ttm_not_extendable_to_petv():
    pairs = builtin_pairs()
    node = pairs["node-petv"].x
    fx = classify_forest(node, [(0, 2), (0, 3)])  # M at slot 0
    assert fx.assignment == ("m", "t", "t")
    assert is_naively_extendable(fx, pairs["node-petv"].y) is None


def test_node_ttt_extendable_to_triangle():
    pairs = builtin_pairs()
    node = pairs["node-triangle"].x
    fx = classify_forest(node, [(0, 1), (0, 2), (0, 3)])
    assert fx.assignment == ("t", "t", "t")
    assert is_naively_extendable(fx, pairs["node-triangle"].y) is not None


def test_compatibility_counts_match_reducibility_proofs():
    pairs = builtin_pairs()
    expected = {"node-triangle": 0, "node-k23": 0, "node-petv": 1,
                "square-claw-square": 0, "square-twin-house": 2,
                "edge-domino": 0, "square-domino": 1}
    for name, want in expected.items():
        report = check_compatibility(pairs[name])
        assert report.is_complete(), name
        assert report.manual_class_count() == want, name


def test_restrictions_are_consistent(corpus10):
    # every valid decomposition restricts to a 3-consistent forest
    pairs = builtin_pairs()
    for n in (6, 8, 10):
        for g in corpus10[n][:4]:
            d = solve(g, restarts=30)
            for pair in pairs.values():
                for emb in find_embeddings(g, pair.x, require_induced=True):
                    fx = restrict_forest(g, d, pair.x, emb)
                    assert isinstance(fx, ConsistentForest)
                    break


def test_search_agrees_with_enumeration_on_small_templates():
    for name in ("edge", "square", "domino"):
        t = builtin_templates()[name]
        for cf in enumerate_consistent_forests(t):
            got = search_consistent_forest(t, cf.assignment, cf.outer_partition)
            assert got is not None
            back = classify_forest(t, got)
            assert back.assignment == cf.assignment
            assert back.outer_partition == cf.outer_partition


def test_search_rejects_unrealisable_assignment():
    node = builtin_templates()["node"]
    assert search_consistent_forest(node, ("m", "m", "m")) is None
    assert search_consistent_forest(node, ("c", "c", "c")) is None


def test_naive_lift_verifies(corpus10):
    pairs = builtin_pairs()
    checked = 0
    for g in corpus10[8]:
        for tree in list(iter_tree_sets(g))[:5]:
            d = from_tree(g, tree)
            for name in ("node-triangle", "node-k23", "edge-domino", "square-claw-square"):
                pair = pairs[name]
                for emb in find_embeddings(g, pair.x, require_induced=True):
                    try:
                        lift = lift_decomposition(g, d, pair, emb)
                    except NonSimpleResult:
                        continue
                    assert verify(lift.graph, lift.decomposition)[0]
                    checked += 1
                    break
    assert checked > 20


def test_manual_rules_fire_and_verify(corpus10):
    pairs = builtin_pairs()
    seen = set()
    for n in (8, 10):
        for g in corpus10[n]:
            for name in ("node-petv", "square-twin-house", "square-domino"):
                pair = pairs[name]
                embs = list(find_embeddings(g, pair.x, require_induced=True))
                if not embs:
                    continue
                for tree in iter_tree_sets(g):
                    d = from_tree(g, tree)
                    for emb in embs:
                        fx = restrict_forest(g, d, pair.x, emb)
                        if is_naively_extendable(fx, pair.y) is not None:
                            continue
                        try:
                            lift = lift_decomposition(g, d, pair, emb)
                        except (ManualCaseUnresolved, NonSimpleResult):
                            continue
                        assert verify(lift.graph, lift.decomposition)[0]
                        seen.add(lift.rule)
            if seen >= {"petv-m", "twin-house-opposite-m", "twin-house-three-m", "domino-bad"}:
                break
        if seen >= {"petv-m", "twin-house-opposite-m", "twin-house-three-m", "domino-bad"}:
            break
    assert seen >= {"petv-m", "twin-house-opposite-m", "twin-house-three-m", "domino-bad"}


def test_canonical_forest_key_invariance():
    pairs = builtin_pairs()
    pair = pairs["square-domino"]
    forests = enumerate_consistent_forests(pair.x)
    for cf in forests:
        key = canonical_forest_key(pair, cf.tree_edges)
        assert canonical_forest_key(pair, frozenset(key)) == key
