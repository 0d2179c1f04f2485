"""
Social Choice Functions
=======================
Evaluable rules over a domain. An `Scf` pairs a voter count with a rule body:

- **Projection(tree, x̄)**
    f(P) = projection of x̄ onto the minimal subtree spanning all peaks.

- **HybridRule(tree, a, b, dictator)**
    dictator's peak when it lies in the free zone path(a, b); otherwise the
    projection of the near threshold onto the minimal subtree. The zone has
    at least 3 alternatives unless built with min_zone=2, the edge variant
    enumeration meets on single-peaked lines.

- **Pnt(tree, x, y, i, j)** (possibly non-tops-only, edge (x, y))
    r1(P_i) when it lies on y's side; the projection of x when both i and j
    peak on x's side; j's favourite of {x, y} when only i does.

- **Dictatorship(voter)**, **AlmostDictatorship(x, y, i, j)**
    the latter follows i except when i peaks at x, where j picks from {x, y}.

- **PeakTable** (two voters, m×m peak → outcome) and **FullTable**
    (outcome per domain profile).

`outcome_table(f, d)` evaluates f on every profile of d at once (an
n-dimensional numpy array indexed by preference indices); the axiom checks
work on that table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import ClassVar, Optional, Sequence

import numpy as np

from config import FULL_TABLE_CAP
from membership.families import zones
from prefcore.budget import Budget, ensure_budget
from prefcore.preferences import Domain, Profile, best_in
from trees.graph import Tree, minimal_subtree, side_set

UNDEFINED = -1


def project_onto_peaks(t: Tree, x: int, peaks: Sequence[int]) -> int:
    """Projection of x onto the minimal subtree spanning `peaks`."""
    span = minimal_subtree(t, peaks)
    if x in span:
        return x
    for v in t.path(x, peaks[0]):
        if v in span:
            return v
    raise AssertionError("path into the minimal subtree never entered it")


# ── Rule bodies ──────────────────────────────────────────────────────────────

class RuleBody:
    """Base class; tops-only bodies implement `peak_outcome`."""
    kind: ClassVar[str] = "Rule"
    tops_only: ClassVar[bool] = False

    def peak_outcome(self, peaks: Sequence[int]) -> int:
        raise NotImplementedError

    def outcome(self, d: Domain, voters: Sequence[int]) -> int:
        return self.peak_outcome([d.prefs[k].top for k in voters])

    def params(self, labels: Sequence[str]) -> dict:
        return {}


@dataclass(frozen=True)
class Projection(RuleBody):
    tree:      Tree
    threshold: int
    kind: ClassVar[str] = "Projection"
    tops_only: ClassVar[bool] = True

    def peak_outcome(self, peaks):
        return project_onto_peaks(self.tree, self.threshold, peaks)

    def params(self, labels):
        return {"tree": self.tree.to_dict(labels), "threshold": labels[self.threshold]}


@dataclass(frozen=True)
class HybridRule(RuleBody):
    tree:     Tree
    a:        int
    b:        int
    dictator: int
    kind: ClassVar[str] = "HybridRule"
    tops_only: ClassVar[bool] = True

    def peak_outcome(self, peaks):
        zs = zones(self.tree, self.a, self.b)
        lead = peaks[self.dictator]
        if lead in zs.zone:
            return lead
        near = self.a if lead in zs.side_a else self.b
        return project_onto_peaks(self.tree, near, peaks)

    def params(self, labels):
        return {"tree": self.tree.to_dict(labels), "thresholds": [labels[self.a], labels[self.b]],
                "dictator": self.dictator}


@dataclass(frozen=True)
class Pnt(RuleBody):
    tree: Tree
    x:    int
    y:    int
    i:    int
    j:    int
    kind: ClassVar[str] = "Pnt"

    def outcome(self, d, voters):
        prefs = [d.prefs[k] for k in voters]
        peaks = [p.top for p in prefs]
        if peaks[self.i] in side_set(self.tree, self.y, self.x):
            return peaks[self.i]
        if peaks[self.j] in side_set(self.tree, self.x, self.y):
            return project_onto_peaks(self.tree, self.x, peaks)
        return best_in(prefs[self.j], (self.x, self.y))

    def params(self, labels):
        return {"tree": self.tree.to_dict(labels), "edge": [labels[self.x], labels[self.y]],
                "i": self.i, "j": self.j}


@dataclass(frozen=True)
class Dictatorship(RuleBody):
    voter: int
    kind: ClassVar[str] = "Dictatorship"
    tops_only: ClassVar[bool] = True

    def peak_outcome(self, peaks):
        return peaks[self.voter]

    def params(self, labels):
        return {"voter": self.voter}


@dataclass(frozen=True)
class AlmostDictatorship(RuleBody):
    x: int
    y: int
    i: int
    j: int
    kind: ClassVar[str] = "AlmostDictatorship"

    def outcome(self, d, voters):
        lead = d.prefs[voters[self.i]]
        if lead.top != self.x:
            return lead.top
        return best_in(d.prefs[voters[self.j]], (self.x, self.y))

    def params(self, labels):
        return {"x": labels[self.x], "y": labels[self.y], "i": self.i, "j": self.j}


@dataclass(frozen=True, eq=False)
class PeakTable(RuleBody):
    """Two-voter tops-only rule: table[x][y] = outcome when voter 0 peaks at x, voter 1 at y."""
    table: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "PeakTable"
    tops_only: ClassVar[bool] = True

    def peak_outcome(self, peaks):
        value = self.table[peaks[0]][peaks[1]]
        if value == UNDEFINED:
            raise ValueError(f"peak table has no entry for peaks {tuple(peaks)}")
        return value

    @property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, PeakTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def params(self, labels):
        return {"table": [[labels[v] if v != UNDEFINED else None for v in row] for row in self.table]}


@dataclass(frozen=True, eq=False)
class FullTable(RuleBody):
    """Outcome per profile of one specific domain, indexed by preference indices."""
    outcomes: np.ndarray = field(repr=False)
    kind: ClassVar[str] = "FullTable"

    def outcome(self, d, voters):
        if self.outcomes.shape[0] != len(d):
            raise ValueError(f"full table built for a domain of size {self.outcomes.shape[0]}, got {len(d)}")
        return int(self.outcomes[tuple(voters)])

    def params(self, labels):
        return {"shape": list(self.outcomes.shape)}


@dataclass(frozen=True)
class Scf:
    n:    int
    body: RuleBody
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("an SCF needs at least one voter")

    @property
    def kind(self) -> str:
        return self.body.kind

    @property
    def tops_only_by_form(self) -> bool:
        return self.body.tops_only

    def describe(self, labels: Sequence[str]) -> dict:
        return {"rule": self.kind, "n": self.n, "name": self.name or self.kind, **self.body.params(labels)}


# ── Constructors ─────────────────────────────────────────────────────────────

def _check_voter(v: int, n: int, role: str = "voter") -> None:
    if not 0 <= v < n:
        raise ValueError(f"{role} {v} outside 0..{n - 1}")


def make_projection(t: Tree, threshold: int, n: int = 2) -> Scf:
    if not 0 <= threshold < t.m:
        raise ValueError(f"threshold {threshold} is not a vertex")
    return Scf(n, Projection(t, threshold))


def make_hybrid(t: Tree, a: int, b: int, voter: int = 0, n: int = 2, min_zone: int = 3) -> Scf:
    if min_zone not in (2, 3):
        raise ValueError(f"min_zone must be 2 or 3, got {min_zone}")
    zs = zones(t, a, b)
    if len(zs.zone) < min_zone:
        raise ValueError(f"hybrid rule needs a free zone of at least {min_zone} alternatives, got {len(zs.zone)}")
    _check_voter(voter, n)
    return Scf(n, HybridRule(t, a, b, voter))


def make_pnt(t: Tree, edge: tuple[int, int], i: int = 0, j: int = 1, n: int = 2) -> Scf:
    x, y = edge
    if not t.has_edge(x, y):
        raise ValueError(f"({x}, {y}) is not an edge of the tree")
    if i == j:
        raise ValueError("PNT voters must be distinct")
    _check_voter(i, n, "voter i")
    _check_voter(j, n, "voter j")
    return Scf(n, Pnt(t, x, y, i, j))


def make_dictatorship(voter: int = 0, n: int = 2) -> Scf:
    _check_voter(voter, n)
    return Scf(n, Dictatorship(voter))


def make_almost_dictatorship(x: int, y: int, i: int = 0, j: int = 1, n: int = 2) -> Scf:
    if x == y:
        raise ValueError("almost dictatorship needs x ≠ y")
    if i == j:
        raise ValueError("almost dictatorship voters must be distinct")
    _check_voter(i, n, "voter i")
    _check_voter(j, n, "voter j")
    return Scf(n, AlmostDictatorship(x, y, i, j))


def make_peak_table(table: Sequence[Sequence[int]], name: str = "") -> Scf:
    rows = tuple(tuple(int(v) for v in row) for row in table)
    m = len(rows)
    if any(len(row) != m for row in rows):
        raise ValueError("peak table must be square")
    for x in range(m):
        if rows[x][x] not in (x, UNDEFINED):
            raise ValueError(f"peak table breaks unanimity at ({x}, {x})")
    return Scf(2, PeakTable(rows), name)


def make_full_table(d: Domain, outcomes: np.ndarray, name: str = "") -> Scf:
    outcomes = np.asarray(outcomes, dtype=np.int64)
    if outcomes.size > FULL_TABLE_CAP:
        raise ValueError(f"full table with {outcomes.size:,} entries above cap {FULL_TABLE_CAP:,}")
    if any(s != len(d) for s in outcomes.shape):
        raise ValueError(f"full table shape {outcomes.shape} does not match a domain of size {len(d)}")
    return Scf(outcomes.ndim, FullTable(outcomes), name)


def full_table_from(d: Domain, n: int, fn, name: str = "") -> Scf:
    """Tabulate fn(prefs tuple) -> alternative over every profile of d."""
    if len(d) ** n > FULL_TABLE_CAP:
        raise ValueError(f"{len(d)}^{n} profiles above the full-table cap {FULL_TABLE_CAP:,}")
    out = np.empty((len(d),) * n, dtype=np.int64)
    for idx in np.ndindex(*out.shape):
        out[idx] = fn(tuple(d.prefs[k] for k in idx))
    return make_full_table(d, out, name)


# ── Evaluation ───────────────────────────────────────────────────────────────

def evaluate(f: Scf, d: Domain, profile: Profile | Sequence[int]) -> int:
    if not isinstance(profile, Profile):
        profile = Profile(tuple(profile))
    if profile.n != f.n:
        raise ValueError(f"profile has {profile.n} voters, rule expects {f.n}")
    profile.validate(d)
    return int(f.body.outcome(d, profile.voters))


def peak_outcomes(f: Scf, m: int, peaks: Optional[Sequence[int]] = None) -> np.ndarray:
    """Outcome per peak vector, shape (m,)*n; UNDEFINED outside `peaks`."""
    if not f.tops_only_by_form:
        raise ValueError(f"{f.kind} is not tops-only by form")
    support = sorted(set(range(m) if peaks is None else peaks))
    out = np.full((m,) * f.n, UNDEFINED, dtype=np.int64)
    for vec in product(support, repeat=f.n):
        try:
            out[vec] = f.body.peak_outcome(vec)
        except ValueError:
            out[vec] = UNDEFINED
    return out


def outcome_table(f: Scf, d: Domain, budget: Budget | int | None = None) -> np.ndarray:
    """f evaluated at every profile of d: array of shape (|d|,)*n."""
    budget = ensure_budget(budget)
    budget.charge(len(d) ** f.n, "outcome_table")
    if isinstance(f.body, FullTable):
        if f.body.outcomes.shape != (len(d),) * f.n:
            raise ValueError(f"full table shape {f.body.outcomes.shape} does not match the domain")
        return f.body.outcomes
    if f.tops_only_by_form:
        by_peaks = peak_outcomes(f, d.m, d.peak_set)
        table = by_peaks[np.ix_(*([d.tops] * f.n))]
        if (table == UNDEFINED).any():
            raise ValueError("rule undefined at some peak vector of the domain")
        return table
    out = np.empty((len(d),) * f.n, dtype=np.int64)
    for idx in np.ndindex(*out.shape):
        out[idx] = f.body.outcome(d, idx)
    return out
