"""
Preferences & Domains
=====================
Strict linear orders over a finite alternative set, the domains they form,
and the elementary order queries every other layer builds on.

Representation
--------------
- Alternatives are dense ids 0..m-1 in declaration order; labels are for display.
- A Preference stores its ranking best-first plus the inverse rank array, so
  "is a above b" is one comparison.
- A Domain keeps its preferences in file order; witnesses everywhere are
  reported as 0-based indices into that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from prefcore.errors import DomainError


@dataclass(frozen=True)
class Alternative:
    id:    int
    label: str


@dataclass(frozen=True)
class Preference:
    """A strict linear order, best first."""
    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(int(a) for a in self.ranking)
        object.__setattr__(self, "ranking", ranking)
        if sorted(ranking) != list(range(len(ranking))):
            raise DomainError(f"ranking {ranking} is not a permutation of 0..{len(ranking) - 1}")

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """positions[a] = 0-based rank of alternative a."""
        pos = [0] * len(self.ranking)
        for r, a in enumerate(self.ranking):
            pos[a] = r
        return tuple(pos)

    @property
    def m(self) -> int:
        return len(self.ranking)

    @property
    def top(self) -> int:
        return self.ranking[0]

    @property
    def second(self) -> Optional[int]:
        return self.ranking[1] if len(self.ranking) > 1 else None

    @property
    def bottom(self) -> int:
        return self.ranking[-1]

    def prefers(self, a: int, b: int) -> bool:
        """True iff a is ranked strictly above b."""
        return self.positions[a] < self.positions[b]

    def __len__(self) -> int:
        return len(self.ranking)


@dataclass(frozen=True)
class Profile:
    """One domain-preference index per voter."""
    voters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "voters", tuple(int(v) for v in self.voters))
        if not self.voters:
            raise ValueError("a profile needs at least one voter")

    @property
    def n(self) -> int:
        return len(self.voters)

    def validate(self, domain: "Domain") -> None:
        for v in self.voters:
            if not 0 <= v < len(domain.prefs):
                raise ValueError(f"profile index {v} outside domain of size {len(domain.prefs)}")


@dataclass(frozen=True)
class Domain:
    alternatives: tuple[Alternative, ...]
    prefs:        tuple[Preference, ...]
    name:         str = "domain"

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "prefs", tuple(self.prefs))
        if not self.alternatives:
            raise DomainError("empty alternative list")
        labels = [a.label for a in self.alternatives]
        if any(not lab for lab in labels):
            raise DomainError("alternative labels must be non-empty")
        if len(set(labels)) != len(labels):
            dup = next(lab for lab in labels if labels.count(lab) > 1)
            raise DomainError(f"duplicate label '{dup}'")
        if [a.id for a in self.alternatives] != list(range(len(labels))):
            raise DomainError("alternative ids must be 0..m-1 in declaration order")
        seen: set[tuple[int, ...]] = set()
        for k, p in enumerate(self.prefs):
            if p.m != len(labels):
                raise DomainError(f"preference {k} ranks {p.m} alternatives, expected {len(labels)}")
            if p.ranking in seen:
                raise DomainError(f"duplicate preference at index {k}")
            seen.add(p.ranking)

    # ── Construction ─────────────────────────────────────────────────────────

    @classmethod
    def from_labels(
        cls,
        labels: Iterable[str],
        rankings: Iterable[Iterable[str]],
        name: str = "domain",
    ) -> "Domain":
        """Build from label lists, e.g. from_labels(["a","b"], [["a","b"], ["b","a"]])."""
        labels = [str(lab) for lab in labels]
        alts = tuple(Alternative(i, lab) for i, lab in enumerate(labels))
        index = {lab: i for i, lab in enumerate(labels)}
        prefs = []
        for row in rankings:
            row = list(row)
            unknown = [lab for lab in row if lab not in index]
            if unknown:
                raise DomainError(f"unknown label(s) {unknown} in preference {row}")
            prefs.append(Preference(tuple(index[lab] for lab in row)))
        return cls(alts, tuple(prefs), name)

    def with_prefs(self, prefs: Iterable[Preference], name: Optional[str] = None) -> "Domain":
        return Domain(self.alternatives, tuple(prefs), name or self.name)

    def subdomain(self, indices: Iterable[int], name: Optional[str] = None) -> "Domain":
        return self.with_prefs([self.prefs[k] for k in indices], name)

    # ── Lookups ──────────────────────────────────────────────────────────────

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def labels(self) -> list[str]:
        return [a.label for a in self.alternatives]

    def label(self, a: int) -> str:
        return self.alternatives[a].label

    def labels_of(self, alts: Iterable[int]) -> list[str]:
        return [self.alternatives[a].label for a in alts]

    def index_of(self, label: str) -> int:
        for a in self.alternatives:
            if a.label == label:
                return a.id
        raise DomainError(f"unknown alternative '{label}'")

    def __len__(self) -> int:
        return len(self.prefs)

    @cached_property
    def rank_matrix(self) -> np.ndarray:
        """rank_matrix[k, a] = 0-based rank of a in preference k."""
        return np.array([p.positions for p in self.prefs], dtype=np.int64).reshape(len(self.prefs), self.m)

    @cached_property
    def tops(self) -> np.ndarray:
        return np.array([p.top for p in self.prefs], dtype=np.int64)

    @cached_property
    def peak_set(self) -> frozenset[int]:
        return frozenset(int(t) for t in self.tops)

    def with_peak(self, x: int) -> list[int]:
        """Indices of the preferences peaked at x (the set D^x)."""
        return [k for k, p in enumerate(self.prefs) if p.top == x]

    def is_minimally_rich(self) -> bool:
        return len(self.peak_set) == self.m

    def index_of_pref(self, p: Preference) -> int:
        for k, q in enumerate(self.prefs):
            if q.ranking == p.ranking:
                return k
        raise DomainError(f"preference {p.ranking} not in domain '{self.name}'")

    def render(self, p: Preference) -> str:
        return " ".join(self.labels_of(p.ranking))


# ── Order queries ────────────────────────────────────────────────────────────

def rank_of(p: Preference, a: int) -> int:
    """1-based rank of alternative a in p."""
    return p.positions[a] + 1


def is_complete_reversal(p: Preference, q: Preference) -> bool:
    if p.m != q.m:
        raise ValueError("preferences over different alternative sets")
    return p.ranking == q.ranking[::-1]


def best_in(p: Preference, subset: Iterable[int]) -> int:
    subset = list(subset)
    if not subset:
        raise ValueError("best_in of an empty set")
    return min(subset, key=lambda a: p.positions[a])


def worst_in(p: Preference, subset: Iterable[int]) -> int:
    subset = list(subset)
    if not subset:
        raise ValueError("worst_in of an empty set")
    return max(subset, key=lambda a: p.positions[a])


def restrict(p: Preference, subset: Iterable[int]) -> tuple[int, ...]:
    """p's relative order over `subset`, best first."""
    keep = set(subset)
    if not keep:
        raise ValueError("restrict to an empty set")
    return tuple(a for a in p.ranking if a in keep)


def seconds_set(d: Domain, x: int) -> frozenset[int]:
    """Second-ranked alternatives across the preferences peaked at x."""
    return frozenset(p.second for p in d.prefs if p.top == x and p.second is not None)


def universal_domain(labels: Iterable[str], name: str = "universal") -> Domain:
    """All m! orders in lexicographic order of id sequences."""
    from itertools import permutations

    labels = list(labels)
    alts = tuple(Alternative(i, lab) for i, lab in enumerate(labels))
    prefs = tuple(Preference(r) for r in permutations(range(len(labels))))
    return Domain(alts, prefs, name)


def default_labels(m: int) -> list[str]:
    return [f"a{i + 1}" for i in range(m)]
