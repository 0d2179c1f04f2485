"""
domainlab trees
===============
Undirected graphs and trees over a domain's alternatives.

Layers
------
  graph       — Graph / Tree, paths, projections, side sets, dual-thresholds
  enumeration — all labeled trees via Prüfer decoding
  io          — `edge:` files and DOT export
"""

from trees.graph import (
    Graph, Tree,
    induced_leaves, is_dual_thresholds, is_path_closed, leaves, line_tree,
    minimal_subtree, path, project, side_set, star_tree,
)
from trees.enumeration import count_trees, enumerate_trees, tree_from_prufer
from trees.io import dump_edges, load_tree, parse_edges, parse_tree, to_dot

__all__ = [
    "Graph", "Tree", "count_trees", "dump_edges", "enumerate_trees",
    "induced_leaves", "is_dual_thresholds", "is_path_closed", "leaves",
    "line_tree", "load_tree", "minimal_subtree", "parse_edges", "parse_tree",
    "path", "project", "side_set", "star_tree", "to_dot", "tree_from_prufer",
]
