"""Tools for minor-closed graph properties: containment tests, the beta invariant,
adversary lower-bound quantities, walk cost models and a classical reference
subgraph detector."""
from .graph import Graph, GraphError, cycle_graph, path_graph, complete_graph
from .containment import is_minor, is_subgraph, is_topological_minor
from .minor_theory import beta, classify_edges

__all__ = [
    "Graph", "GraphError", "cycle_graph", "path_graph", "complete_graph",
    "is_minor", "is_subgraph", "is_topological_minor", "beta", "classify_edges",
]
__version__ = "0.1.0"
