from cubic3dec.decomp import from_tree, iter_tree_sets, verify
from cubic3dec.extend import enumerate_consistent_forests, restrict_forest
from cubic3dec.generate import connected_cubic_graphs
from cubic3dec.switches import reduce_square_behaviour, switch_step
from cubic3dec.templates import builtin_templates, find_embeddings


def collect_behaviour_witnesses(max_order=12):
    """(host, decomposition, embedding) per labelled square behaviour."""
    square = builtin_templates()["square"]
    witness = {}
    for n in (8, 10, 12):
        if n > max_order:
            break
        for g in connected_cubic_graphs(n):
            embs = list(find_embeddings(g, square, require_induced=True))
            if not embs:
                continue
            for tree in iter_tree_sets(g):
                d = from_tree(g, tree)
                for emb in embs:
                    fx = restrict_forest(g, d, square, emb)
                    witness.setdefault(fx.tree_edges, (g, d, emb))
                if len(witness) == 39:
                    return witness
    return witness


def test_all_39_behaviours_realised_on_small_hosts():
    assert len(collect_behaviour_witnesses()) == 39


def test_switches_reach_exactly_18_representatives():
    square = builtin_templates()["square"]
    witness = collect_behaviour_witnesses()
    terminals = set()
    for tree, (g, d, emb) in witness.items():
        nd, terminal_fx, steps = reduce_square_behaviour(g, d, square, emb)
        ok, why = verify(g, nd)
        assert ok, why
        assert switch_step(g, nd, square, emb) is None
        terminals.add(terminal_fx.tree_edges)
        assert steps <= 2
    assert len(terminals) == 18


def test_terminal_behaviours_are_fixpoints():
    square = builtin_templates()["square"]
    witness = collect_behaviour_witnesses()
    all39 = {cf.tree_edges for cf in enumerate_consistent_forests(square)}
    assert set(witness) == all39
    fixpoints = sum(1 for tree, (g, d, emb) in witness.items()
                    if switch_step(g, d, square, emb) is None)
    assert fixpoints == 18
