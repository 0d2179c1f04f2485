from __future__ import annotations

from pathlib import Path

import pytest

from conftest import tree_path
from prefcore.errors import DomainError
from prefcore.preferences import Domain
from trees.enumeration import count_trees, enumerate_trees, tree_from_prufer
from trees.graph import (
    Graph, Tree,
    is_dual_thresholds, leaves, line_tree, minimal_subtree, path, project, side_set, star_tree,
)
from trees.io import dump_edges, load_tree, parse_edges, parse_tree, to_dot


def _l(d: Domain, seq) -> list[str]:
    return d.labels_of(seq)


def _ids(d: Domain, *labels: str) -> set[int]:
    return {d.index_of(lab) for lab in labels}


# ── paths / projections ──────────────────────────────────────────────────────

def test_path_on_line_and_star(ssp6: Domain, line6: Tree, star_asym: Domain, star: Tree) -> None:
    a2, a5 = ssp6.index_of("a2"), ssp6.index_of("a5")
    assert _l(ssp6, path(line6, a2, a5)) == ["a2", "a3", "a4", "a5"]
    assert _l(ssp6, path(line6, a5, a2)) == ["a5", "a4", "a3", "a2"]
    assert path(line6, a2, a2) == (a2,)
    assert _l(star_asym, path(star, star_asym.index_of("a"), star_asym.index_of("d"))) == ["a", "b", "d"]


def test_project(ssp6: Domain, line6: Tree, star_asym: Domain, star: Tree) -> None:
    a1 = ssp6.index_of("a1")
    assert ssp6.label(project(line6, a1, _ids(ssp6, "a3", "a4", "a5"))) == "a3"
    assert project(line6, a1, {a1, 1}) == a1
    assert star_asym.label(project(star, star_asym.index_of("c"), _ids(star_asym, "a", "b"))) == "b"


def test_project_needs_path_closed_set(ssp6: Domain, line6: Tree) -> None:
    with pytest.raises(ValueError, match="path-closed"):
        project(line6, 0, _ids(ssp6, "a2", "a5"))
    with pytest.raises(ValueError):
        project(line6, 0, set())


def test_minimal_subtree(ssp6: Domain, line6: Tree, star_asym: Domain, star: Tree) -> None:
    assert minimal_subtree(line6, _ids(ssp6, "a1", "a6")) == frozenset(range(6))
    assert minimal_subtree(line6, [3]) == frozenset({3})
    assert minimal_subtree(line6, [3, 3, 3]) == frozenset({3})
    assert minimal_subtree(star, _ids(star_asym, "a", "c", "d")) == frozenset(range(4))
    with pytest.raises(ValueError):
        minimal_subtree(line6, [])


def test_side_sets(ssp6: Domain, line6: Tree, ssp6_tree: Tree) -> None:
    a2, a5 = ssp6.index_of("a2"), ssp6.index_of("a5")
    assert set(_l(ssp6, side_set(line6, a2, a5))) == {"a1", "a2"}
    assert set(_l(ssp6, side_set(line6, ssp6.index_of("a1"), a2))) == {"a1"}
    a4 = ssp6.index_of("a4")
    assert set(_l(ssp6, side_set(ssp6_tree, a4, a2))) == {"a3", "a4", "a5", "a6"}
    with pytest.raises(ValueError):
        side_set(line6, a2, a2)


@pytest.mark.parametrize("x, y", [(0, 1), (1, 3), (0, 5), (2, 5), (3, 4)])
def test_side_sets_are_disjoint_and_cover_with_interior(ssp6_tree: Tree, x: int, y: int) -> None:
    sx, sy = side_set(ssp6_tree, x, y), side_set(ssp6_tree, y, x)
    interior = set(ssp6_tree.path(x, y)[1:-1])
    assert not sx & sy
    if ssp6_tree.has_edge(x, y):
        assert sx | sy == set(range(ssp6_tree.m))
    assert not (sx | sy) & interior


def test_dual_thresholds(ssp6: Domain, line6: Tree, ssp6_tree: Tree, star_asym: Domain, star: Tree) -> None:
    for u, v in ssp6_tree.sorted_edges:
        assert is_dual_thresholds(ssp6_tree, u, v)
    assert is_dual_thresholds(line6, 0, 5)
    # d hangs off the interior vertex b of path(a, c)
    assert not is_dual_thresholds(star, star_asym.index_of("a"), star_asym.index_of("c"))
    # a3 hangs off a4 inside path(a2, a5) on the adjacency tree
    assert not is_dual_thresholds(ssp6_tree, ssp6.index_of("a2"), ssp6.index_of("a5"))
    with pytest.raises(ValueError):
        is_dual_thresholds(line6, 2, 2)


def test_dual_thresholds_agree_with_projection(ssp6_tree: Tree) -> None:
    for a in range(ssp6_tree.m):
        for b in range(ssp6_tree.m):
            if a == b:
                continue
            interval = set(ssp6_tree.path(a, b))
            expected = all(project(ssp6_tree, c, interval) in (a, b) for c in range(ssp6_tree.m) if c not in interval)
            assert is_dual_thresholds(ssp6_tree, a, b) == expected


def test_median_table_matches_paths(ssp6_tree: Tree) -> None:
    M = ssp6_tree.median_table
    for x in range(ssp6_tree.m):
        for y in range(ssp6_tree.m):
            for z in range(ssp6_tree.m):
                assert M[x, y, z] == project(ssp6_tree, z, set(ssp6_tree.path(x, y)))


def test_leaves(ssp6: Domain, ssp6_tree: Tree, star_asym: Domain, star: Tree) -> None:
    assert set(_l(ssp6, leaves(ssp6_tree))) == {"a1", "a3", "a6"}
    assert set(_l(star_asym, leaves(star))) == {"a", "c", "d"}
    cycle = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert leaves(cycle) == frozenset()


# ── construction / validation ────────────────────────────────────────────────

def test_tree_validation() -> None:
    with pytest.raises(DomainError, match="spanning tree"):
        Tree(3, frozenset({(0, 1)}))
    with pytest.raises(DomainError, match="spanning tree"):
        Tree(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    with pytest.raises(DomainError, match="self-loop"):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(DomainError, match="outside"):
        Graph(3, frozenset({(1, 4)}))


def test_edges_are_canonical() -> None:
    g = Graph.from_edges(3, [(2, 1), (1, 0)])
    assert g.sorted_edges == [(0, 1), (1, 2)]
    assert line_tree([2, 0, 1]).edges == frozenset({(0, 2), (0, 1)})
    assert star_tree(4, 1).edges == frozenset({(0, 1), (1, 2), (1, 3)})


# ── enumeration ──────────────────────────────────────────────────────────────

@pytest.mark.parametrize("m, expected", [(2, 1), (3, 3), (4, 16), (5, 125)])
def test_enumerate_trees_counts(m: int, expected: int) -> None:
    trees = list(enumerate_trees(m))
    assert len(trees) == expected == count_trees(m)
    assert len({t.edges for t in trees}) == expected


def test_enumerate_trees_prefix_split_is_a_partition() -> None:
    whole = [t.edges for t in enumerate_trees(5)]
    parts = [t.edges for p in range(5) for t in enumerate_trees(5, prefix=(p,))]
    assert parts == whole


def test_enumerate_trees_caps() -> None:
    with pytest.raises(ValueError, match="cap"):
        list(enumerate_trees(5, cap=4))
    with pytest.raises(ValueError):
        list(enumerate_trees(1))


def test_tree_from_prufer() -> None:
    assert tree_from_prufer((1, 1), 4).edges == star_tree(4, 1).edges


# ── files / DOT ──────────────────────────────────────────────────────────────

def test_load_tree_files(ssp6: Domain, ssp6_tree: Tree) -> None:
    assert {frozenset(_l(ssp6, e)) for e in ssp6_tree.edges} == {
        frozenset(p) for p in (("a1", "a2"), ("a2", "a4"), ("a3", "a4"), ("a4", "a5"), ("a5", "a6"))
    }
    assert load_tree(tree_path("line6"), ssp6.labels).edges == line_tree(range(6)).edges


def test_parse_edges_errors(ssp6: Domain) -> None:
    with pytest.raises(DomainError, match="unknown alternative"):
        parse_edges("edge: a1 a9\n", ssp6.labels)
    with pytest.raises(DomainError, match="expected"):
        parse_edges("edge: a1\n", ssp6.labels)
    with pytest.raises(DomainError, match="spanning tree"):
        parse_tree("edge: a1 a2\n", ssp6.labels)


def test_tree_labels_may_contain_hash() -> None:
    labels = ["c#", "d", "f#"]
    g = parse_edges("# key graph\nedge: c# d  # first\nedge: d f#\n", labels)
    assert g.edges == frozenset({(0, 1), (1, 2)})


def test_missing_tree_file(tmp_path: Path, ssp6: Domain) -> None:
    with pytest.raises(FileNotFoundError):
        load_tree(tmp_path / "none.tree", ssp6.labels)


def test_dump_edges_reparses(ssp6: Domain, ssp6_tree: Tree) -> None:
    assert parse_tree(dump_edges(ssp6_tree, ssp6.labels), ssp6.labels).edges == ssp6_tree.edges


def test_dot_is_bit_exact(ssp6: Domain, ssp6_tree: Tree) -> None:
    assert to_dot(ssp6_tree, ssp6.labels) == (
        "graph G {\n"
        '  "a1";\n  "a2";\n  "a3";\n  "a4";\n  "a5";\n  "a6";\n'
        '  "a1" -- "a2";\n'
        '  "a2" -- "a4";\n'
        '  "a3" -- "a4";\n'
        '  "a4" -- "a5";\n'
        '  "a5" -- "a6";\n'
        "}\n"
    )
