"""
Critical Spots
==============
An oriented tree edge (x, y) is a critical spot of a domain when

  (i)   every preference peaked on x's side is semi-single-peaked w.r.t. y,
  (ii)  every preference peaked on y's side ranks x best among x's side, and
  (iii) two preferences sharing a peak on y's side disagree on x vs y.

(i) and (ii) make the PNT rule on (x, y) strategy-proof; (iii) is what
makes it depend on more than peaks. A spot therefore certifies that the
domain is not a tops-only domain.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from membership.certify import DomainCertificate
from membership.families import is_hybrid_pref, is_sp_pref, is_ssp_pref, zones
from prefcore.budget import Budget, ensure_budget
from prefcore.errors import DomainError, VerificationFailed
from prefcore.preferences import Domain, best_in
from rules.axioms import AxiomResult, check_axioms
from rules.scf import Scf, make_pnt
from trees.graph import Tree, side_set


@dataclass(frozen=True)
class CriticalSpot:
    tree:      Tree
    x:         int
    y:         int
    witnesses: tuple[int, int]   # same peak on y's side: (ranks y above x, ranks x above y)

    @property
    def edge(self) -> tuple[int, int]:
        return (self.x, self.y)

    def to_dict(self, d: Domain) -> dict:
        return {
            "edge":      [d.label(self.x), d.label(self.y)],
            "witnesses": list(self.witnesses),
            "peak":      d.label(d.prefs[self.witnesses[0]].top),
        }


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[SPOTS] {msg}", file=sys.stderr)


def _disagreement(d: Domain, x: int, y: int, far_side: frozenset[int]) -> Optional[tuple[int, int]]:
    for k, p in enumerate(d.prefs):
        if p.top not in far_side or not p.prefers(y, x):
            continue
        for k2, q in enumerate(d.prefs):
            if q.top == p.top and q.prefers(x, y):
                return (k, k2)
    return None


def spot_at(d: Domain, t: Tree, x: int, y: int) -> Optional[CriticalSpot]:
    """The critical spot on oriented edge (x, y), or None when a condition fails."""
    near, far = side_set(t, x, y), side_set(t, y, x)
    for p in d.prefs:
        if p.top in near and not is_ssp_pref(p, t, y):
            return None
        if p.top in far and best_in(p, near) != x:
            return None
    pair = _disagreement(d, x, y, far)
    return CriticalSpot(t, x, y, pair) if pair is not None else None


def find_critical_spots(
    d: Domain,
    t: Tree,
    budget: Budget | int | None = None,
    verbose: bool = False,
) -> list[CriticalSpot]:
    """Every critical spot of t, edges in canonical order, (low, high) before (high, low)."""
    if not d.is_minimally_rich():
        raise DomainError(f"domain '{d.name}' is not minimally rich")
    if t.m != d.m:
        raise DomainError(f"tree has {t.m} vertices, domain has {d.m} alternatives")
    budget = ensure_budget(budget)
    budget.charge(2 * len(t.edges) * len(d), "critical_spots")
    spots = []
    for u, v in t.sorted_edges:
        for x, y in ((u, v), (v, u)):
            spot = spot_at(d, t, x, y)
            if spot is not None:
                spots.append(spot)
    _log(verbose, f"'{d.name}': {len(spots)} critical spot(s) "
                  f"{[(d.label(s.x), d.label(s.y)) for s in spots]}")
    return spots


def verify_prop1(
    d: Domain,
    cert: DomainCertificate,
    budget: Budget | int | None = None,
    verbose: bool = False,
) -> bool:
    """
    Both sides of the spot criterion on a certificate's tree:

      SSP / SP — d leaves the single-peaked domain ⇔ some critical spot exists
      SH       — d leaves the hybrid domain ⇔ some spot lies strictly inside
                 one side set (both ends off the threshold)
    """
    t = cert.kind.tree
    spots = find_critical_spots(d, t, budget, verbose)
    if cert.kind.tag in ("SP", "SSP"):
        outside = any(not is_sp_pref(p, t) for p in d.prefs)
        inside_spot = bool(spots)
    elif cert.kind.tag == "SH":
        a, b = cert.kind.thresholds
        zs = zones(t, a, b)
        outside = any(not is_hybrid_pref(p, t, a, b) for p in d.prefs)
        strict_a, strict_b = zs.side_a - {a}, zs.side_b - {b}
        inside_spot = any({s.x, s.y} <= strict_a or {s.x, s.y} <= strict_b for s in spots)
    else:
        raise ValueError(f"spot criterion covers SP, SSP and SH certificates, got {cert.kind.tag}")
    _log(verbose, f"{cert.kind.tag}: outside={outside} spot={inside_spot}")
    return outside == inside_spot


def build_verified_pnt(
    d: Domain,
    spot: CriticalSpot,
    i: int = 0,
    j: int = 1,
    n: int = 2,
    budget: Budget | int | None = None,
    n_jobs: Optional[int] = None,
    verbose: bool = False,
) -> tuple[Scf, dict[str, AxiomResult]]:
    """PNT rule on the spot's edge; raises VerificationFailed unless it is strategy-proof and not tops-only."""
    f = make_pnt(spot.tree, spot.edge, i, j, n)
    results = check_axioms(f, d, ("unanimity", "sp", "topsonly"), budget, n_jobs=n_jobs, verbose=verbose)
    if not results["unanimity"].holds or not results["sp"].holds:
        raise VerificationFailed(f"PNT rule on ({d.label(spot.x)}, {d.label(spot.y)}) is not a strategy-proof rule")
    if results["topsonly"].holds:
        raise VerificationFailed(f"PNT rule on ({d.label(spot.x)}, {d.label(spot.y)}) is tops-only")
    return f, results
