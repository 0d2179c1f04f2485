"""
domainlab structure
===================
Adjacency graphs of a domain and the richness conditions that make it
unidimensional.

Layers
------
  adjacency — adjacency / weak-adjacency graphs, linked-domain order
  richness  — path-connectedness, diversity, leaf symmetry, unique seconds
"""

from structure.adjacency import (
    adjacency_graph, check_linked, check_weak_path_connected, weak_adjacency_graph,
)
from structure.richness import (
    LeafCheck, RichnessReport,
    check_diversity, check_leaf_symmetry, check_path_connected,
    check_unidimensional, leaf_symmetry_checks, richness_report, unique_seconds,
)

__all__ = [
    "LeafCheck", "RichnessReport", "adjacency_graph", "check_diversity",
    "check_leaf_symmetry", "check_linked", "check_path_connected",
    "check_unidimensional", "check_weak_path_connected", "leaf_symmetry_checks",
    "richness_report", "unique_seconds", "weak_adjacency_graph",
]
