"""cubic3dec: 3-decompositions of cubic graphs.

Verifies and constructs decompositions of cubic graphs into a spanning tree,
a 2-regular subgraph, and a matching; machine-checks the local reducibility
arguments behind them; and runs the constructive reduce-solve-lift pipeline.
"""

from .decomp import (ThreeDecomposition, from_tree, hist_reduce, is_hist, solve,
                     solve_exhaustive, verify)
from .graphs import Graph, girth, is_three_connected, parse_graph6, write_graph6
from .templates import builtin_pairs, make_template

__all__ = [
    "Graph", "ThreeDecomposition", "builtin_pairs", "from_tree", "girth",
    "hist_reduce", "is_hist", "is_three_connected", "make_template",
    "parse_graph6", "solve", "solve_exhaustive", "verify", "write_graph6",
]
