"""
Labeled-tree enumeration by Prüfer decoding.

Sequences are visited in lexicographic order, so the stream (and any split of
it by sequence prefix) is deterministic.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Optional

import networkx as nx

from config import TREE_ENUM_CAP
from trees.graph import Tree


def count_trees(m: int) -> int:
    return 1 if m <= 2 else m ** (m - 2)


def tree_from_prufer(seq: tuple[int, ...], m: int) -> Tree:
    if m == 2:
        return Tree(2, frozenset({(0, 1)}))
    g = nx.from_prufer_sequence(list(seq))
    return Tree(m, frozenset(g.edges()))


def enumerate_trees(
    m: int,
    cap: Optional[int] = None,
    prefix: tuple[int, ...] = (),
) -> Iterator[Tree]:
    """
    Yield all m^(m-2) labeled trees on 0..m-1 exactly once.

    Parameters
    ----------
    m      : vertex count, 2 ≤ m ≤ cap
    cap    : override of TREE_ENUM_CAP (caller opt-in for larger m)
    prefix : only sequences starting with this prefix (work splitting)
    """
    cap = TREE_ENUM_CAP if cap is None else cap
    if m < 2:
        raise ValueError(f"tree enumeration needs m ≥ 2, got {m}")
    if m > cap:
        raise ValueError(f"m={m} above the tree enumeration cap {cap}")
    if m == 2:
        yield tree_from_prufer((), 2)
        return
    free = m - 2 - len(prefix)
    if free < 0:
        raise ValueError(f"prefix longer than a Prüfer sequence for m={m}")
    for tail in product(range(m), repeat=free):
        yield tree_from_prufer(tuple(prefix) + tail, m)
