"""Host hypergraphs built from expanders."""

from __future__ import annotations

from .graph import Hypergraph
from .operators import blowup, clique_hypergraph, graph_power


def build_host(n: int, eps, k: int, b: int, r: int, seed: int) -> Hypergraph:
    """r-cliques of the b-blowup of the k-th power of a random expander on n vertices."""
    from ..expander import random_expander

    g, _ = random_expander(n, eps, seed)
    blown, _ = blowup(graph_power(g, k), b)
    return clique_hypergraph(blown, r)
