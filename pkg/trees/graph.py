"""
Graphs & Trees over Alternatives
================================
Undirected graphs on the vertex set 0..m-1 and the tree queries the
preference families are defined with:

  path(t, x, y)             — the unique x→y vertex sequence
  project(t, a, B)          — entry point of a into a path-closed set B
  minimal_subtree(t, peaks) — union of pairwise paths between the peaks
  side_set(t, x, y)         — every z whose path to y runs through x
  is_dual_thresholds(t,a,b) — every off-path vertex projects to a or b

Trees cache all m² paths on first use; m stays small (≤ 8 by default for
anything enumerated), so the table is tiny and every membership test
becomes a dictionary lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from prefcore.errors import DomainError


Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    m:     int
    edges: frozenset[Edge]

    def __post_init__(self):
        canon = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop on vertex {u}")
            if not (0 <= u < self.m and 0 <= v < self.m):
                raise DomainError(f"edge ({u},{v}) outside 0..{self.m - 1}")
            canon.add(_canon(u, v))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(m, frozenset((int(u), int(v)) for u, v in edges))

    @property
    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.m))
        g.add_edges_from(self.edges)
        return g

    def neighbors(self, a: int) -> frozenset[int]:
        return frozenset(self.nx_graph.neighbors(a))

    def degree(self, a: int) -> int:
        return self.nx_graph.degree(a)

    def has_edge(self, a: int, b: int) -> bool:
        return _canon(a, b) in self.edges

    def is_connected(self) -> bool:
        return self.m <= 1 or nx.is_connected(self.nx_graph)

    def is_tree(self) -> bool:
        return len(self.edges) == self.m - 1 and self.is_connected()

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Same vertex count, keeping only edges with both ends in `vertices`."""
        keep = set(vertices)
        return Graph(self.m, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def is_connected_on(self, vertices: Iterable[int]) -> bool:
        vertices = list(vertices)
        if len(vertices) <= 1:
            return True
        return nx.is_connected(self.nx_graph.subgraph(vertices))

    def components_without(self, removed: Iterable[int]) -> list[frozenset[int]]:
        """Connected components after deleting `removed`, ordered by smallest vertex."""
        removed = set(removed)
        rest = self.nx_graph.subgraph([v for v in range(self.m) if v not in removed])
        return sorted((frozenset(c) for c in nx.connected_components(rest)), key=min)

    def as_tree(self) -> "Tree":
        return Tree(self.m, self.edges)

    def to_dict(self, labels: Sequence[str]) -> dict:
        return {"edges": [[labels[u], labels[v]] for u, v in self.sorted_edges]}


@dataclass(frozen=True)
class Tree(Graph):

    def __post_init__(self):
        super().__post_init__()
        if self.m < 1:
            raise DomainError("a tree needs at least one vertex")
        if not self.is_tree():
            raise DomainError(f"edge set {self.sorted_edges} is not a spanning tree on {self.m} vertices")

    @cached_property
    def _paths(self) -> dict[Edge, tuple[int, ...]]:
        table = {}
        for src, targets in nx.all_pairs_shortest_path(self.nx_graph):
            for dst, seq in targets.items():
                table[(src, dst)] = tuple(seq)
        return table

    @cached_property
    def distances(self) -> np.ndarray:
        dist = np.zeros((self.m, self.m), dtype=np.int64)
        for (x, y), seq in self._paths.items():
            dist[x, y] = len(seq) - 1
        return dist

    @cached_property
    def _side_sets(self) -> dict[Edge, frozenset[int]]:
        table = {}
        for x in range(self.m):
            for y in range(self.m):
                if x != y:
                    table[(x, y)] = frozenset(z for z in range(self.m) if x in self._paths[(z, y)])
        return table

    @cached_property
    def median_table(self) -> np.ndarray:
        """median_table[x, y, z] = the vertex where the paths between x, y, z meet."""
        d = self.distances
        total = d[:, :, None, None] + d[:, None, :, None] + d[:, None, None, :]
        return np.argmin(total, axis=0)

    @cached_property
    def _median_lists(self) -> list:
        return self.median_table.tolist()

    def path(self, x: int, y: int) -> tuple[int, ...]:
        return self._paths[(x, y)]

    def median(self, x: int, y: int, z: int) -> int:
        """Projection of z onto path(x, y) (symmetric in all three)."""
        return self._median_lists[x][y][z]

    def toward(self, src: int, dst: int) -> int:
        """The vertex just before dst on the path from src (dst itself if equal)."""
        seq = self._paths[(src, dst)]
        return seq[-2] if len(seq) > 1 else dst


# ── Tree queries ─────────────────────────────────────────────────────────────

def path(t: Tree, x: int, y: int) -> tuple[int, ...]:
    return t.path(x, y)


def is_path_closed(t: Tree, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    return all(set(t.path(u, v)) <= vs for u in vs for v in vs if u < v)


def project(t: Tree, a: int, subset: Iterable[int]) -> int:
    subset = set(subset)
    if not subset:
        raise ValueError("projection onto an empty set")
    if not is_path_closed(t, subset):
        raise ValueError(f"vertex set {sorted(subset)} is not path-closed")
    if a in subset:
        return a
    for v in t.path(a, next(iter(subset))):
        if v in subset:
            return v
    raise AssertionError("path into a non-empty set never entered it")


def minimal_subtree(t: Tree, peaks: Iterable[int]) -> frozenset[int]:
    peaks = list(dict.fromkeys(peaks))
    if not peaks:
        raise ValueError("minimal subtree of no peaks")
    covered = {peaks[0]}
    for p in peaks[1:]:
        covered.update(t.path(peaks[0], p))
    # paths from one anchor already span the union of all pairwise paths
    return frozenset(covered)


def side_set(t: Tree, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise ValueError("side_set needs two distinct vertices")
    return t._side_sets[(x, y)]


def is_dual_thresholds(t: Tree, a: int, b: int) -> bool:
    if a == b:
        raise ValueError("dual-thresholds must be distinct")
    interval = set(t.path(a, b))
    return all(project(t, c, interval) in (a, b) for c in range(t.m) if c not in interval)


def leaves(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.m) if g.degree(v) == 1)


def induced_leaves(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """Leaves of the subgraph of g induced on `vertices`."""
    vs = set(vertices)
    sub = g.nx_graph.subgraph(vs)
    return frozenset(v for v in vs if sub.degree(v) == 1)


# ── Builders ─────────────────────────────────────────────────────────────────

def line_tree(order: Sequence[int]) -> Tree:
    """The line visiting `order` left to right."""
    order = list(order)
    return Tree(len(order), frozenset(_canon(u, v) for u, v in zip(order, order[1:])))


def star_tree(m: int, center: int) -> Tree:
    return Tree(m, frozenset(_canon(center, v) for v in range(m) if v != center))
