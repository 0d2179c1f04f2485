"""
Preference Families
===================
Per-preference membership tests for the four families on a tree:

  SP      single-peaked: ranks decline along every path away from the peak
  Hybrid  (a, b): single-peaked inside each side set, near threshold best in
          the free zone path(a, b) when the peak lies strictly on a side
  SSP     threshold x̄: single-peaked along path(peak, x̄), everything else
          below its projection onto that path
  SH      (a, b): side peaks are SSP w.r.t. the near threshold and rank the
          far threshold best on the far side; free-zone peaks rank each
          threshold best on its own side

Notation in code: side_a = A^{a⇀b} (contains a), side_b = A^{b⇀a},
zone = path(a, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional, Sequence

from prefcore.preferences import Domain, Preference, best_in
from trees.graph import Tree, is_dual_thresholds, side_set

FamilyTag = Literal["SP", "Hybrid", "SSP", "SH"]
FAMILY_TAGS: tuple[str, ...] = ("SP", "Hybrid", "SSP", "SH")


@dataclass(frozen=True)
class Zones:
    side_a: frozenset[int]
    zone:   frozenset[int]
    side_b: frozenset[int]

    @property
    def degenerate(self) -> bool:
        return len(self.side_a) == 1 and len(self.side_b) == 1


@lru_cache(maxsize=4096)
def zones(t: Tree, a: int, b: int) -> Zones:
    if not is_dual_thresholds(t, a, b):
        raise ValueError(f"({a}, {b}) are not dual-thresholds of the tree")
    return Zones(side_set(t, a, b), frozenset(t.path(a, b)), side_set(t, b, a))


# ── Membership tests ─────────────────────────────────────────────────────────

def is_sp_pref(p: Preference, t: Tree) -> bool:
    top = p.top
    return all(p.prefers(t.toward(top, z), z) for z in range(p.m) if z != top)


def is_ssp_pref(p: Preference, t: Tree, threshold: int) -> bool:
    top = p.top
    spine = t.path(top, threshold)
    if any(not p.prefers(u, v) for u, v in zip(spine, spine[1:])):
        return False
    on_spine = set(spine)
    return all(
        p.prefers(t.median(top, threshold, c), c)
        for c in range(p.m) if c not in on_spine
    )


def _single_peaked_within(p: Preference, t: Tree, side: frozenset[int]) -> bool:
    top = p.top
    for z in side:
        if z == top:
            continue
        prev = t.toward(top, z)
        if prev in side and not p.prefers(prev, z):
            return False
    return True


def is_hybrid_pref(p: Preference, t: Tree, a: int, b: int) -> bool:
    zs = zones(t, a, b)
    if not (_single_peaked_within(p, t, zs.side_a) and _single_peaked_within(p, t, zs.side_b)):
        return False
    top = p.top
    if top in zs.side_a and top != a:
        return best_in(p, zs.zone) == a
    if top in zs.side_b and top != b:
        return best_in(p, zs.zone) == b
    return True


def is_sh_pref(p: Preference, t: Tree, a: int, b: int) -> bool:
    zs = zones(t, a, b)
    top = p.top
    if top in zs.side_a and top != a:
        return is_ssp_pref(p, t, a) and best_in(p, zs.side_b) == b
    if top in zs.side_b and top != b:
        return is_ssp_pref(p, t, b) and best_in(p, zs.side_a) == a
    return best_in(p, zs.side_a) == a and best_in(p, zs.side_b) == b


# ── Family descriptor ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FamilyKind:
    tag:        FamilyTag
    tree:       Tree
    threshold:  Optional[int] = None                  # SSP
    thresholds: Optional[tuple[int, int]] = None      # Hybrid / SH

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family '{self.tag}'")
        if self.tag == "SSP":
            if self.threshold is None or not 0 <= self.threshold < self.tree.m:
                raise ValueError("SSP needs a threshold vertex")
        if self.tag in ("Hybrid", "SH"):
            if self.thresholds is None:
                raise ValueError(f"{self.tag} needs dual-thresholds (a, b)")
            a, b = self.thresholds
            zones(self.tree, a, b)

    @property
    def zones(self) -> Optional[Zones]:
        if self.thresholds is None:
            return None
        return zones(self.tree, *self.thresholds)

    def contains(self, p: Preference) -> bool:
        if self.tag == "SP":
            return is_sp_pref(p, self.tree)
        if self.tag == "SSP":
            return is_ssp_pref(p, self.tree, self.threshold)
        a, b = self.thresholds
        if self.tag == "Hybrid":
            return is_hybrid_pref(p, self.tree, a, b)
        return is_sh_pref(p, self.tree, a, b)

    def first_violation(self, d: Domain) -> Optional[int]:
        """Index of the first preference of d outside the family, or None."""
        return next((k for k, p in enumerate(d.prefs) if not self.contains(p)), None)

    def to_dict(self, labels: Sequence[str]) -> dict:
        out = {"family": self.tag, "tree": self.tree.to_dict(labels)}
        if self.threshold is not None:
            out["threshold"] = labels[self.threshold]
        if self.thresholds is not None:
            out["thresholds"] = [labels[v] for v in self.thresholds]
        return out


def sh_diversity_condition(t: Tree, a: int, b: int) -> bool:
    """
    Side-leaf condition under which gen(SH, t, a, b) contains a completely
    reversed pair: a non-trivial side must hang off its threshold as a leaf
    of the side subtree.
    """
    zs = zones(t, a, b)
    for thr, side in ((a, zs.side_a), (b, zs.side_b)):
        if len(side) > 1 and len(t.neighbors(thr) & side) != 1:
            return False
    return True
