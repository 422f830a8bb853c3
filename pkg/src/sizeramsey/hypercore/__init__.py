"""Graphs, uniform hypergraphs, build traces and the basic constructions on them."""

from .graph import Graph, Hypergraph, VertexMap, is_graph_homomorphism, is_hypergraph_homomorphism
from .host import build_host
from .hypertrees import HyperTree, random_hypergraph_tree, tree_parents
from .operators import (blowup, clique_hypergraph, complete_bipartite, complete_graph, cycle_graph,
                        graph_power, hypergraph_power, iter_cliques, path_graph, subdivide,
                        tight_path, tight_path_power)
from .search import find_subhypergraph
from .traces import (AddLeaf, AddPath, BuildTrace, cycle_trace, path_trace, random_A_graph,
                     replay, trace_graph, verify_trace)

__all__ = [
    "AddLeaf", "AddPath", "BuildTrace", "Graph", "HyperTree", "Hypergraph", "VertexMap",
    "blowup", "build_host", "clique_hypergraph", "complete_bipartite", "complete_graph",
    "cycle_graph", "cycle_trace", "find_subhypergraph",
    "graph_power", "hypergraph_power", "is_graph_homomorphism", "is_hypergraph_homomorphism",
    "iter_cliques", "path_graph", "path_trace", "random_A_graph", "random_hypergraph_tree", "replay",
    "subdivide", "tight_path", "tight_path_power", "trace_graph", "tree_parents", "verify_trace",
]
