"""
Rule Decomposition
==================
Matches a two-voter peak table against the canonical tops-only rules on
every labeled tree over the alternatives:

  Dictatorship(voter)          T[u][v] = u (voter 0) or v (voter 1)
  Projection(tree, x̄)          T[u][v] = median(u, v, x̄)
  HybridRule(tree, a, b, i)    dictator i's peak inside path(a, b), else the
                               median of both peaks and the near threshold;
                               a single-edge zone counts too

Median tables for all trees are computed once per m with numpy. Every match
is reported; the tag follows the precedence Dictatorship, Projection,
HybridRule, and Other only when nothing matches.

cross_check(d) runs the enumeration and classifies each rule, giving the
per-domain facts the classification predicts (no Other rules; on a
semi-single-peaked domain the invariant rules are exactly the projections;
on a semi-hybrid domain every rule is non-invariant and dictatorial on the
free zone).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Optional

import numpy as np

from config import TREE_ENUM_CAP
from enumeration.search import enum_topsonly_sp_rules
from membership.certify import certify_sh_domain, certify_ssp_domain
from prefcore.budget import Budget, ensure_budget
from prefcore.preferences import Domain
from rules.axioms import check_invariance, dictator_on
from rules.scf import PeakTable, Scf, make_dictatorship, make_hybrid, make_projection
from structure.richness import check_diversity
from trees.enumeration import enumerate_trees
from trees.graph import Tree, is_dual_thresholds, side_set

Tag = Literal["Dictatorship", "Projection", "HybridRule", "Other"]
PRECEDENCE: tuple[str, ...] = ("Dictatorship", "Projection", "HybridRule")


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[DECOMPOSE] {msg}", file=sys.stderr)


@dataclass(frozen=True)
class _TreeEntry:
    tree:    Tree
    medians: np.ndarray                                   # (m, m, m)
    hybrids: tuple[tuple[int, int, np.ndarray], ...]      # (a, b, voter-0 outcome table)


def _hybrid_table(t: Tree, a: int, b: int) -> np.ndarray:
    zone = set(t.path(a, b))
    side_a = side_set(t, a, b)
    M = t.median_table
    out = np.empty((t.m, t.m), dtype=np.int64)
    for u in range(t.m):
        if u in zone:
            out[u, :] = u
        else:
            out[u, :] = M[u, :, a if u in side_a else b]
    return out


@lru_cache(maxsize=4)
def tree_bank(m: int, cap: int = TREE_ENUM_CAP) -> tuple[_TreeEntry, ...]:
    """Every labeled tree on m vertices with its median table and hybrid tables (edge zones included)."""
    bank = []
    for t in enumerate_trees(m, cap):
        hybrids = []
        for a in range(m):
            for b in range(a + 1, m):
                if is_dual_thresholds(t, a, b):
                    hybrids.append((a, b, _hybrid_table(t, a, b)))
        bank.append(_TreeEntry(t, t.median_table, tuple(hybrids)))
    return tuple(bank)


@dataclass
class Decomposition:
    tag:     Tag
    matches: list[Scf] = field(default_factory=list)

    def to_dict(self, labels) -> dict:
        return {"tag": self.tag, "matches": [f.describe(labels) for f in self.matches]}


def decompose_rule(
    f: Scf,
    d: Domain,
    budget: Budget | int | None = None,
    verbose: bool = False,
) -> Decomposition:
    """Every canonical rule pointwise equal to the peak table f on d's peaks."""
    if not isinstance(f.body, PeakTable) or f.n != 2:
        raise ValueError("decomposition works on two-voter peak tables")
    table = f.body.array
    if table.shape != (d.m, d.m):
        raise ValueError(f"peak table is {table.shape[0]}×{table.shape[1]}, domain has m={d.m}")
    peaks = sorted(d.peak_set)
    ix = np.ix_(peaks, peaks)
    target = table[ix]
    budget = ensure_budget(budget)

    matches: dict[str, list[Scf]] = {tag: [] for tag in PRECEDENCE}
    rows = np.array(peaks)[:, None]
    cols = np.array(peaks)[None, :]
    for voter, source in ((0, rows), (1, cols)):
        if (target == source).all():
            matches["Dictatorship"].append(make_dictatorship(voter, 2))

    bank = tree_bank(d.m)
    budget.charge(len(bank) * len(peaks) ** 2 * (d.m + 1), "decompose")
    for entry in bank:
        sub = entry.medians[ix]                                  # (|P|, |P|, m)
        for x in np.flatnonzero((sub == target[:, :, None]).all(axis=(0, 1))):
            matches["Projection"].append(make_projection(entry.tree, int(x), 2))
        for a, b, h in entry.hybrids:
            h0 = h[ix]
            if (h0 == target).all():
                matches["HybridRule"].append(make_hybrid(entry.tree, a, b, 0, 2, min_zone=2))
            if (h0.T == target).all():
                matches["HybridRule"].append(make_hybrid(entry.tree, a, b, 1, 2, min_zone=2))

    ordered = [g for tag in PRECEDENCE for g in matches[tag]]
    tag = next((t for t in PRECEDENCE if matches[t]), "Other")
    _log(verbose, f"{f.name or 'rule'}: {tag} ({len(ordered)} match(es))")
    return Decomposition(tag, ordered)


@dataclass
class RuleCheck:
    rule:          Scf
    decomposition: Decomposition
    invariant:     Optional[bool] = None
    zone_dictator: Optional[int] = None

    def to_dict(self, d: Domain) -> dict:
        labels = d.labels
        table = self.rule.body.table
        return {
            "table":         [[labels[v] if v >= 0 else None for v in row] for row in table],
            "decomposition": self.decomposition.to_dict(labels),
            "invariant":     self.invariant,
            "zone_dictator": self.zone_dictator,
        }


@dataclass
class CrossCheck:
    domain:    str
    family:    Optional[str]                 # SSP | SH | None
    free_zone: Optional[list[int]]
    rules:     list[RuleCheck]

    @property
    def never_other(self) -> bool:
        return all(r.decomposition.tag != "Other" for r in self.rules)

    @property
    def invariant_are_projections(self) -> Optional[bool]:
        if any(r.invariant is None for r in self.rules):
            return None
        return all(r.invariant == any(g.kind == "Projection" for g in r.decomposition.matches)
                   for r in self.rules)

    @property
    def zone_dictatorial(self) -> Optional[bool]:
        if self.free_zone is None:
            return None
        return all(r.zone_dictator is not None and r.invariant is False for r in self.rules)

    def to_dict(self, d: Domain) -> dict:
        return {
            "domain":                    self.domain,
            "family":                    self.family,
            "free_zone":                 d.labels_of(self.free_zone) if self.free_zone else None,
            "rule_count":                len(self.rules),
            "never_other":               self.never_other,
            "invariant_are_projections": self.invariant_are_projections,
            "zone_dictatorial":          self.zone_dictatorial,
            "rules":                     [r.to_dict(d) for r in self.rules],
        }


def cross_check(
    d: Domain,
    budget: Budget | int | None = None,
    n_jobs: Optional[int] = None,
    verbose: bool = False,
) -> CrossCheck:
    """Enumerate every tops-only strategy-proof rule on d and decompose each one."""
    budget = ensure_budget(budget)
    rules = enum_topsonly_sp_rules(d, budget, n_jobs=n_jobs, verbose=verbose)

    family, free_zone = None, None
    ssp = certify_ssp_domain(d, budget, verbose=verbose)
    if ssp.found:
        family = "SSP"
    else:
        sh = certify_sh_domain(d, budget, verbose=verbose, n_jobs=n_jobs)
        if sh.found:
            family, free_zone = "SH", sh.certificate.free_zone

    reversible = check_diversity(d) is not None
    checks = []
    for f in rules:
        row = RuleCheck(f, decompose_rule(f, d, budget, verbose))
        if reversible:
            row.invariant = check_invariance(f, d, budget).holds
        if free_zone is not None:
            row.zone_dictator = dictator_on(f, d, free_zone, budget)
        checks.append(row)
    return CrossCheck(d.name, family, free_zone, checks)
