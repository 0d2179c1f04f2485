"""
Canonical full-domain generators: every order over 0..m-1 passing a family's
membership test, in lexicographic order of id sequences.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial
from typing import Optional, Sequence

from config import FAMILY_GEN_CAP
from membership.families import FamilyKind
from prefcore.preferences import Alternative, Domain, Preference, default_labels


def gen_family(
    kind: FamilyKind,
    labels: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
    cap: Optional[int] = None,
) -> Domain:
    m = kind.tree.m
    cap = FAMILY_GEN_CAP if cap is None else cap
    if m > cap:
        raise ValueError(f"m={m} above the generator cap {cap} ({factorial(m):,} orders)")
    labels = list(labels) if labels is not None else default_labels(m)
    if len(labels) != m:
        raise ValueError(f"{len(labels)} labels for a tree on {m} vertices")
    prefs = [Preference(r) for r in permutations(range(m))]
    kept = tuple(p for p in prefs if kind.contains(p))
    alts = tuple(Alternative(i, lab) for i, lab in enumerate(labels))
    return Domain(alts, kept, name or _default_name(kind, labels))


def _default_name(kind: FamilyKind, labels: Sequence[str]) -> str:
    if kind.threshold is not None:
        return f"{kind.tag}_{labels[kind.threshold]}"
    if kind.thresholds is not None:
        a, b = kind.thresholds
        return f"{kind.tag}_{labels[a]}_{labels[b]}"
    return kind.tag
