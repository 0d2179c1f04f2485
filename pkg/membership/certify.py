"""
Domain Certification
====================
Decides whether a whole domain is a single-peaked, hybrid, semi-single-peaked
or semi-hybrid domain and returns the witnessing tree and thresholds.

Search
------
A domain inside a family domain has an adjacency graph inside the family's
adjacency graph (SP / SSP: the tree itself; Hybrid / SH: side subtrees plus a
complete free zone). With a connected adjacency graph G this pins the cover:

  SP / SSP    — the only possible tree is G, so G must be a tree.
  Hybrid / SH — a cover is fixed by (a, b, free-zone set Z): every component
                of G − Z hangs off exactly one of a, b and forms a tree with
                it; the order of the free-zone interior never matters.

So the structural scan below is complete for every m. `exhaustive=True`
instead walks all labeled trees (m ≤ TREE_ENUM_CAP) and is kept as an oracle.

Selection
---------
Minimality compares free-zone vertex sets by strict inclusion only. Among
certificates passing every clause the first by
(diversity-peak pair first, threshold pair, sorted free zone) wins; the free
zone is laid out as a line ordered by the first preference of the diversity
witness (by id without one).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Optional

from membership.families import FamilyKind, is_sp_pref, is_ssp_pref
from prefcore.budget import Budget, ensure_budget
from prefcore.errors import BudgetExceeded
from prefcore.parallel import run_chunks, split
from prefcore.preferences import Domain
from structure.adjacency import adjacency_graph
from structure.richness import check_diversity
from trees.enumeration import enumerate_trees
from trees.graph import Graph, Tree, induced_leaves, is_dual_thresholds, leaves, side_set

Status = Literal["found", "absent", "inconclusive"]


@dataclass
class DomainCertificate:
    kind:             FamilyKind
    free_zone:        Optional[list[int]] = None
    degenerate:       Optional[bool] = None
    conditions:       dict[str, bool] = field(default_factory=dict)
    valid_thresholds: list[int] = field(default_factory=list)   # SSP: every threshold that works on the tree
    leaf_violations:  list[int] = field(default_factory=list)   # SH clause (iii) failures
    notes:            list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self, d: Domain) -> dict:
        out = self.kind.to_dict(d.labels)
        if self.free_zone is not None:
            out["free_zone"] = d.labels_of(self.free_zone)
            out["degenerate"] = self.degenerate
        if self.valid_thresholds:
            out["valid_thresholds"] = d.labels_of(self.valid_thresholds)
        out["conditions"] = dict(self.conditions)
        if self.leaf_violations:
            out["leaf_violations"] = d.labels_of(self.leaf_violations)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class CertificationResult:
    family:             str
    status:             Status
    certificate:        Optional[DomainCertificate] = None   # found, or the closest failing candidate
    candidates_checked: int = 0
    reason:             str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self, d: Domain) -> dict:
        return {
            "family":             self.family,
            "status":             self.status,
            "reason":             self.reason,
            "candidates_checked": self.candidates_checked,
            "certificate":        self.certificate.to_dict(d) if self.certificate else None,
        }


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[CERTIFY] {msg}", file=sys.stderr)


def _covers(kind: FamilyKind, d: Domain) -> bool:
    return kind.first_violation(d) is None


# ── Single-peaked / semi-single-peaked ───────────────────────────────────────

def certify_sp_domain(
    d: Domain,
    budget: Budget | int | None = None,
    exhaustive: bool = False,
    verbose: bool = False,
) -> CertificationResult:
    budget = ensure_budget(budget)
    g = adjacency_graph(d)
    if not g.is_connected():
        return CertificationResult("SP", "absent", reason="adjacency graph is not connected")
    try:
        for checked, t in enumerate(_tree_candidates(d, g, exhaustive), start=1):
            budget.charge(len(d), "certify_sp")
            if all(is_sp_pref(p, t) for p in d.prefs):
                _log(verbose, f"SP cover found after {checked} tree(s)")
                cert = DomainCertificate(FamilyKind("SP", t), conditions={"cover": True, "connected": True})
                return CertificationResult("SP", "found", cert, checked)
    except BudgetExceeded as exc:
        return CertificationResult("SP", "inconclusive", reason=str(exc))
    reason = ("no tree covers the domain" if exhaustive or g.is_tree()
              else "adjacency graph is not a tree, and any cover must equal it")
    return CertificationResult("SP", "absent", reason=reason, candidates_checked=1 if g.is_tree() else 0)


def certify_ssp_domain(
    d: Domain,
    budget: Budget | int | None = None,
    exhaustive: bool = False,
    verbose: bool = False,
) -> CertificationResult:
    budget = ensure_budget(budget)
    g = adjacency_graph(d)
    if not g.is_connected():
        return CertificationResult("SSP", "absent", reason="adjacency graph is not connected")
    checked = 0
    try:
        for t in _tree_candidates(d, g, exhaustive):
            checked += 1
            budget.charge(d.m * len(d), "certify_ssp")
            valid = [x for x in range(d.m) if all(is_ssp_pref(p, t, x) for p in d.prefs)]
            if not valid:
                continue
            tree_leaves = leaves(t)
            chosen = min(valid, key=lambda x: (x in tree_leaves, x))
            _log(verbose, f"SSP cover on tree #{checked}, thresholds {valid}, chose {chosen}")
            cert = DomainCertificate(
                FamilyKind("SSP", t, threshold=chosen),
                conditions={"cover": True, "connected": True},
                valid_thresholds=valid,
            )
            return CertificationResult("SSP", "found", cert, checked)
    except BudgetExceeded as exc:
        return CertificationResult("SSP", "inconclusive", reason=str(exc), candidates_checked=checked)
    reason = ("no tree and threshold cover the domain" if exhaustive or g.is_tree()
              else "adjacency graph is not a tree, and any cover must equal it")
    return CertificationResult("SSP", "absent", reason=reason, candidates_checked=checked)


def _tree_candidates(d: Domain, g: Graph, exhaustive: bool) -> Iterable[Tree]:
    if exhaustive:
        if d.m < 2:
            yield g.as_tree()
        else:
            yield from enumerate_trees(d.m)
    elif g.is_tree():
        yield g.as_tree()


# ── Hybrid / semi-hybrid ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class _ZoneCandidate:
    a:      int
    b:      int
    zone:   frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]
    tree:   Tree


def _is_subtree(g: Graph, vertices: frozenset[int]) -> bool:
    inner = sum(1 for u, v in g.edges if u in vertices and v in vertices)
    return inner == len(vertices) - 1 and g.is_connected_on(vertices)


def _attach_sides(g: Graph, zone: frozenset[int], a: int, b: int):
    side_a, side_b = {a}, {b}
    for comp in g.components_without(zone):
        hooks = {z for z in zone if any(g.has_edge(z, c) for c in comp)}
        if hooks == {a}:
            side_a |= comp
        elif hooks == {b}:
            side_b |= comp
        else:
            return None
    side_a, side_b = frozenset(side_a), frozenset(side_b)
    if not (_is_subtree(g, side_a) and _is_subtree(g, side_b)):
        return None
    return side_a, side_b


def _orient(a: int, b: int, preferred: Optional[tuple[int, int]]) -> tuple[int, int]:
    if preferred is not None and {a, b} == set(preferred):
        return preferred
    return (a, b)


def _layout(g: Graph, a: int, b: int, zone, side_a, side_b, zone_rank) -> Tree:
    interior = sorted((v for v in zone if v not in (a, b)), key=zone_rank)
    line = [a, *interior, b]
    edges = {e for e in g.edges if (e[0] in side_a and e[1] in side_a) or (e[0] in side_b and e[1] in side_b)}
    edges |= {(min(u, v), max(u, v)) for u, v in zip(line, line[1:])}
    return Tree(g.m, frozenset(edges))


def _structural_candidates(d: Domain, g: Graph, preferred, zone_rank) -> list[_ZoneCandidate]:
    out = []
    for lo, hi in combinations(range(d.m), 2):
        a, b = _orient(lo, hi, preferred)
        others = [v for v in range(d.m) if v not in (a, b)]
        for r in range(len(others) + 1):
            for interior in combinations(others, r):
                zone = frozenset((a, b, *interior))
                sides = _attach_sides(g, zone, a, b)
                if sides is None:
                    continue
                tree = _layout(g, a, b, zone, sides[0], sides[1], zone_rank)
                out.append(_ZoneCandidate(a, b, zone, sides[0], sides[1], tree))
    return out


def _exhaustive_candidates(d: Domain, preferred) -> list[_ZoneCandidate]:
    out = []
    for t in enumerate_trees(d.m):
        for lo, hi in combinations(range(d.m), 2):
            a, b = _orient(lo, hi, preferred)
            if is_dual_thresholds(t, a, b):
                out.append(_ZoneCandidate(a, b, frozenset(t.path(a, b)),
                                          side_set(t, a, b), side_set(t, b, a), t))
    return out


def _certify_zoned(
    d: Domain,
    tag: str,
    budget: Budget | int | None,
    exhaustive: bool,
    verbose: bool,
    n_jobs: Optional[int],
) -> CertificationResult:
    budget = ensure_budget(budget)
    g = adjacency_graph(d)
    if not g.is_connected():
        return CertificationResult(tag, "absent", reason="adjacency graph is not connected")

    # ── 1. candidate covers ──────────────────────────────────────────────
    witness = check_diversity(d)
    preferred = None
    first = None
    if witness is not None and d.m >= 2:
        first = d.prefs[witness[0]]
        preferred = (first.top, d.prefs[witness[1]].top)
    zone_rank = (lambda v: first.positions[v]) if first is not None else (lambda v: v)

    if exhaustive:
        candidates = _exhaustive_candidates(d, preferred)
    else:
        candidates = _structural_candidates(d, g, preferred, zone_rank)
    try:
        budget.charge(len(candidates) * max(len(d), 1), f"certify_{tag.lower()}")
    except BudgetExceeded as exc:
        return CertificationResult(tag, "inconclusive", reason=str(exc))
    _log(verbose, f"{tag}: {len(candidates)} candidate cover(s)")

    # ── 2. membership of every preference ───────────────────────────────
    def check(chunk: list[_ZoneCandidate]) -> list[_ZoneCandidate]:
        return [c for c in chunk if _covers(FamilyKind(tag, c.tree, thresholds=(c.a, c.b)), d)]

    valid = [c for part in run_chunks(check, split(candidates, 8), n_jobs) for c in part]
    if not valid:
        return CertificationResult(tag, "absent", reason=f"no {tag} cover exists",
                                   candidates_checked=len(candidates))

    # ── 3. minimal free zones (set inclusion) ────────────────────────────
    zones = {c.zone for c in valid}
    minimal = [c for c in valid if not any(z < c.zone for z in zones)]

    # ── 4. remaining clauses + deterministic pick ────────────────────────
    def key(c: _ZoneCandidate):
        return (0 if preferred is not None and {c.a, c.b} == set(preferred) else 1,
                tuple(sorted((c.a, c.b))), tuple(sorted(c.zone)))

    certs = []
    seen = set()
    for c in sorted(minimal, key=key):
        if (c.a, c.b, c.zone) in seen:
            continue
        seen.add((c.a, c.b, c.zone))
        certs.append(_finish(d, g, tag, c))

    passing = [cert for cert in certs if cert.holds]
    if passing:
        _log(verbose, f"{tag}: certificate thresholds {passing[0].kind.thresholds}")
        return CertificationResult(tag, "found", passing[0], len(candidates))
    failing = certs[0]
    clause = next(k for k, ok in failing.conditions.items() if not ok)
    return CertificationResult(tag, "absent", failing, len(candidates),
                               reason=f"every minimal cover fails clause ({clause})")


def _finish(d: Domain, g: Graph, tag: str, c: _ZoneCandidate) -> DomainCertificate:
    cert = DomainCertificate(
        FamilyKind(tag, c.tree, thresholds=(c.a, c.b)),
        free_zone=sorted(c.zone),
        degenerate=len(c.side_a) == 1 and len(c.side_b) == 1,
        conditions={"i": True, "ii": True},
    )
    if tag == "Hybrid":
        cert.conditions["iii"] = len(c.zone) >= 3
        return cert
    if g.is_tree():
        gt = g.as_tree()
        cert.leaf_violations = [
            x for x in sorted(induced_leaves(g, c.zone))
            if all(is_ssp_pref(p, gt, x) for p in d.prefs)
        ]
        cert.conditions["iii"] = not cert.leaf_violations
    else:
        cert.conditions["iii"] = True
        cert.notes.append("adjacency graph is not a tree: clause (iii) holds vacuously")
    return cert


def certify_hybrid_domain(
    d: Domain,
    budget: Budget | int | None = None,
    exhaustive: bool = False,
    verbose: bool = False,
    n_jobs: Optional[int] = None,
) -> CertificationResult:
    return _certify_zoned(d, "Hybrid", budget, exhaustive, verbose, n_jobs)


def certify_sh_domain(
    d: Domain,
    budget: Budget | int | None = None,
    exhaustive: bool = False,
    verbose: bool = False,
    n_jobs: Optional[int] = None,
) -> CertificationResult:
    return _certify_zoned(d, "SH", budget, exhaustive, verbose, n_jobs)


def certify_all(d: Domain, budget: Budget | int | None = None, verbose: bool = False) -> dict[str, CertificationResult]:
    """Every family certification, in the order SP, Hybrid, SSP, SH."""
    budget = ensure_budget(budget)
    return {
        "SP":     certify_sp_domain(d, budget, verbose=verbose),
        "Hybrid": certify_hybrid_domain(d, budget, verbose=verbose),
        "SSP":    certify_ssp_domain(d, budget, verbose=verbose),
        "SH":     certify_sh_domain(d, budget, verbose=verbose),
    }
