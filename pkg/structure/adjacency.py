"""
Adjacency Graphs
================
  adjacency_graph      — a ~ b: two preferences swap a/b in the top two
                         positions and agree everywhere below
  weak_adjacency_graph — the same swap with no condition on the tails
  check_linked         — the relabelling a1 ≁ a2, each later a_k weakly
                         adjacent to two earlier alternatives
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional

from prefcore.preferences import Domain
from trees.graph import Graph


def adjacency_graph(d: Domain) -> Graph:
    by_tail: dict[tuple, set[tuple[int, int]]] = defaultdict(set)
    for p in d.prefs:
        if p.m >= 2:
            by_tail[p.ranking[2:]].add((p.top, p.second))
    edges = {
        (a, b)
        for pairs in by_tail.values()
        for a, b in pairs
        if a < b and (b, a) in pairs
    }
    return Graph(d.m, frozenset(edges))


def weak_adjacency_graph(d: Domain) -> Graph:
    pairs = {(p.top, p.second) for p in d.prefs if p.m >= 2}
    return Graph(d.m, frozenset((a, b) for a, b in pairs if a < b and (b, a) in pairs))


def check_weak_path_connected(d: Domain) -> bool:
    return weak_adjacency_graph(d).is_connected()


def check_linked(d: Domain) -> Optional[list[int]]:
    """
    A linking order of the alternatives, or None.

    Adding an alternative with two weakly adjacent predecessors never blocks
    a later one, so growing greedily from each starting edge is exhaustive.
    """
    g = weak_adjacency_graph(d)
    if d.m < 2:
        return list(range(d.m))
    for a, b in g.sorted_edges:
        order = [a, b]
        placed = {a, b}
        grew = True
        while grew and len(order) < d.m:
            grew = False
            for c in range(d.m):
                if c not in placed and len(g.neighbors(c) & placed) >= 2:
                    order.append(c)
                    placed.add(c)
                    grew = True
                    break
        if len(order) == d.m:
            return order
    return None
