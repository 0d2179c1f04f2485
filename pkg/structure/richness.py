"""
Richness Conditions
===================
Path-connectedness, diversity, leaf symmetry and the unique seconds
property, aggregated into a RichnessReport. A domain is unidimensional when
it is path-connected, diverse and leaf-symmetric.

Every witness is the first one in canonical order (alternative id, then
preference index), so reports are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from prefcore.preferences import Domain, is_complete_reversal, seconds_set
from structure.adjacency import adjacency_graph, check_linked, check_weak_path_connected
from trees.graph import leaves


@dataclass
class LeafCheck:
    leaf:     int
    seconds:  list[int]
    witness:  Optional[int]     # z ∈ S(D^leaf), not a neighbour, with leaf ∈ S(D^z)
    vacuous:  bool              # |S(D^leaf)| ≤ 1

    @property
    def ok(self) -> bool:
        return self.vacuous or self.witness is not None

    def to_dict(self, d: Domain) -> dict:
        return {
            "leaf":    d.label(self.leaf),
            "seconds": d.labels_of(self.seconds),
            "witness": d.label(self.witness) if self.witness is not None else None,
            "vacuous": self.vacuous,
            "ok":      self.ok,
        }


@dataclass
class RichnessReport:
    minimally_rich:      bool
    path_connected:      bool
    weak_path_connected: bool
    diversity_witness:   Optional[tuple[int, int]]
    leaf_symmetry:       bool
    leaf_checks:         list[LeafCheck] = field(default_factory=list)
    unique_seconds:      Optional[tuple[int, int]] = None
    linked_order:        Optional[list[int]] = None
    too_few_alternatives: bool = False      # m < 3: never unidimensional

    @property
    def unidimensional(self) -> bool:
        if self.too_few_alternatives:
            return False
        return self.path_connected and self.diversity_witness is not None and self.leaf_symmetry

    def to_dict(self, d: Domain) -> dict:
        return {
            "minimally_rich":      self.minimally_rich,
            "path_connected":      self.path_connected,
            "weak_path_connected": self.weak_path_connected,
            "diversity_witness":   list(self.diversity_witness) if self.diversity_witness else None,
            "leaf_symmetry":       self.leaf_symmetry,
            "leaf_checks":         [c.to_dict(d) for c in self.leaf_checks],
            "unique_seconds":      d.labels_of(self.unique_seconds) if self.unique_seconds else None,
            "linked":              self.linked_order is not None,
            "linked_order":        d.labels_of(self.linked_order) if self.linked_order else None,
            "too_few_alternatives": self.too_few_alternatives,
            "unidimensional":      self.unidimensional,
        }


def check_path_connected(d: Domain) -> bool:
    return adjacency_graph(d).is_connected()


def check_diversity(d: Domain) -> Optional[tuple[int, int]]:
    """First completely reversed pair (i < j) by preference index."""
    if d.m == 1 and len(d) >= 1:
        return (0, 0)
    for i, p in enumerate(d.prefs):
        for j in range(i + 1, len(d)):
            if is_complete_reversal(p, d.prefs[j]):
                return (i, j)
    return None


def leaf_symmetry_checks(d: Domain) -> list[LeafCheck]:
    g = adjacency_graph(d)
    checks = []
    for x in sorted(leaves(g)):
        seconds = seconds_set(d, x)
        if len(seconds) <= 1:
            checks.append(LeafCheck(x, sorted(seconds), None, vacuous=True))
            continue
        nbrs = g.neighbors(x)
        witness = next(
            (z for z in sorted(seconds) if z not in nbrs and x in seconds_set(d, z)),
            None,
        )
        checks.append(LeafCheck(x, sorted(seconds), witness, vacuous=False))
    return checks


def check_leaf_symmetry(d: Domain) -> tuple[bool, list[LeafCheck]]:
    checks = leaf_symmetry_checks(d)
    return all(c.ok for c in checks), checks


def unique_seconds(d: Domain) -> Optional[tuple[int, int]]:
    for x in range(d.m):
        seconds = seconds_set(d, x)
        if len(seconds) == 1:
            return (x, next(iter(seconds)))
    return None


def check_unidimensional(d: Domain) -> RichnessReport:
    if d.m < 3:
        raise ValueError(f"unidimensionality needs m ≥ 3, got m={d.m}")
    return richness_report(d)


def richness_report(d: Domain) -> RichnessReport:
    """Every richness condition on d, for any m. Fewer than three alternatives is never unidimensional."""
    symmetric, checks = check_leaf_symmetry(d)
    return RichnessReport(
        minimally_rich=d.is_minimally_rich(),
        path_connected=check_path_connected(d),
        weak_path_connected=check_weak_path_connected(d),
        diversity_witness=check_diversity(d),
        leaf_symmetry=symmetric,
        leaf_checks=checks,
        unique_seconds=unique_seconds(d),
        linked_order=check_linked(d),
        too_few_alternatives=d.m < 3,
    )
