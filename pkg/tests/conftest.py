"""
Shared fixtures: every file under datasets/ loaded once per session.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from prefcore.io import load_domain
from prefcore.preferences import Domain
from trees.graph import Tree
from trees.io import load_tree

ROOT = Path(__file__).resolve().parents[1]
DATASETS = ROOT / "datasets"
DOMAINS = DATASETS / "domains"
TREES = DATASETS / "trees"
RULES = DATASETS / "rules"

ZONE_PREF = ("a5", "a3", "a2", "a1", "a4", "a6")


def domain_path(name: str) -> Path:
    return DOMAINS / f"{name}.dom"


def tree_path(name: str) -> Path:
    return TREES / f"{name}.tree"


def rule_path(name: str) -> Path:
    return RULES / f"{name}.json"


@pytest.fixture(scope="session")
def ssp6() -> Domain:
    return load_domain(domain_path("ssp6"))


@pytest.fixture(scope="session")
def sh6() -> Domain:
    return load_domain(domain_path("sh6"))


@pytest.fixture(scope="session")
def two_blocks() -> Domain:
    return load_domain(domain_path("two_blocks"))


@pytest.fixture(scope="session")
def star_asym() -> Domain:
    return load_domain(domain_path("star_asym"))


@pytest.fixture(scope="session")
def cyclic4() -> Domain:
    return load_domain(domain_path("cyclic4"))


@pytest.fixture(scope="session")
def ssp6_tree(ssp6: Domain) -> Tree:
    return load_tree(tree_path("ssp6"), ssp6.labels)


@pytest.fixture(scope="session")
def line6(ssp6: Domain) -> Tree:
    return load_tree(tree_path("line6"), ssp6.labels)


@pytest.fixture(scope="session")
def line4(cyclic4: Domain) -> Tree:
    return load_tree(tree_path("line4"), cyclic4.labels)


@pytest.fixture(scope="session")
def star(star_asym: Domain) -> Tree:
    return load_tree(tree_path("star3"), star_asym.labels)


def labels_edges(d: Domain, g) -> set[frozenset[str]]:
    """Edge set of a graph as unordered label pairs."""
    return {frozenset((d.label(u), d.label(v))) for u, v in g.edges}


def edge_set(*pairs: str) -> set[frozenset[str]]:
    """edge_set("a1-a2", "a2-a4") -> {{a1, a2}, {a2, a4}}"""
    return {frozenset(p.split("-")) for p in pairs}
