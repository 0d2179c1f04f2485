"""
Tops-only Rule Enumeration
==========================
Every unanimous, tops-only, strategy-proof two-voter rule on a domain,
materialised as an m×m peak table (rows: voter 0's peak, columns: voter 1's).

Constraints
-----------
For a tops-only rule, strategy-proofness reduces to pairwise constraints
between cells sharing a column (voter 0 deviates) or a row (voter 1
deviates):

    T[u][v] = a, T[u'][v] = b  ⇒  every p peaked at u ranks a weakly above b
                                  and every p peaked at u' ranks b weakly above a

With W[u][a][b] = "all of D^u rank a weakly above b", each assignment
prunes the candidate sets of the other cells in its row and column
(forward checking on bitmasks). Since every constraint is binary, an
assignment drawn from a pruned set is consistent with all earlier ones.

Search
------
The diagonal is fixed (unanimity). Off-diagonal cells are filled nearest
first by adjacency-graph distance between the two peaks. The search tree is
split by prefix into joblib tasks; results are sorted, so output does not
depend on fill order or worker count. Work is charged in search nodes
against one shared budget: workers charge it every CHARGE_EVERY nodes, so
a run stops within a batch per worker of the limit whatever the chunk count.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np

from config import ENUM_MAX_DOMAIN, ENUM_MAX_M, N_JOBS
from prefcore.budget import Budget, ensure_budget
from prefcore.parallel import run_chunks
from prefcore.preferences import Domain
from rules.scf import UNDEFINED, Scf, make_peak_table
from structure.adjacency import adjacency_graph

Cell = tuple[int, int]

CHARGE_EVERY = 256


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[ENUM] {msg}", file=sys.stderr)


def _bits(mask: int):
    a = 0
    while mask:
        if mask & 1:
            yield a
        mask >>= 1
        a += 1


def weak_dominance(d: Domain) -> np.ndarray:
    """W[u, a, b] = every preference peaked at u ranks a weakly above b (True for absent peaks)."""
    R = d.rank_matrix
    W = np.ones((d.m, d.m, d.m), dtype=bool)
    for u in d.peak_set:
        rows = R[d.with_peak(u)]
        W[u] = (rows[:, :, None] <= rows[:, None, :]).all(axis=0)
    return W


@dataclass
class _Masks:
    below: list[list[int]]   # below[u][a]: b with W[u][a][b]
    above: list[list[int]]   # above[u][a]: b with W[u][b][a]

    @classmethod
    def of(cls, W: np.ndarray) -> "_Masks":
        m = W.shape[0]
        weights = 1 << np.arange(m, dtype=np.int64)
        below = [[int(weights[W[u, a]].sum()) for a in range(m)] for u in range(m)]
        above = [[int(weights[W[u, :, a]].sum()) for a in range(m)] for u in range(m)]
        return cls(below, above)


@dataclass
class PeakTableCandidate:
    table:    list[list[int]]   # UNDEFINED where not yet filled
    allowed:  list[list[int]]   # candidate bitmask per cell
    frontier: int = 0           # next position in the fill order

    def assign(self, u: int, v: int, a: int, peaks: list[int], masks: _Masks) -> Optional["PeakTableCandidate"]:
        """Copy with T[u][v] = a and its row / column pruned; None on a wipe-out."""
        table = [row[:] for row in self.table]
        allowed = [row[:] for row in self.allowed]
        table[u][v] = a
        allowed[u][v] = 1 << a
        for w in peaks:
            if w != u and table[w][v] == UNDEFINED:
                allowed[w][v] &= masks.below[u][a] & masks.above[w][a]
                if not allowed[w][v]:
                    return None
            if w != v and table[u][w] == UNDEFINED:
                allowed[u][w] &= masks.below[v][a] & masks.above[w][a]
                if not allowed[u][w]:
                    return None
        return PeakTableCandidate(table, allowed, self.frontier)


def fill_order(d: Domain) -> list[Cell]:
    """Off-diagonal peak pairs, nearest first by adjacency-graph distance, then by id."""
    g = adjacency_graph(d).nx_graph
    dist = dict(nx.all_pairs_shortest_path_length(g))
    peaks = sorted(d.peak_set)
    far = d.m + 1
    cells = [(u, v) for u in peaks for v in peaks if u != v]
    return sorted(cells, key=lambda c: (dist[c[0]].get(c[1], far), c))


def _root(d: Domain, masks: _Masks) -> Optional[PeakTableCandidate]:
    m = d.m
    peaks = sorted(d.peak_set)
    full = (1 << m) - 1
    cand = PeakTableCandidate(
        [[UNDEFINED] * m for _ in range(m)],
        [[full if (u in d.peak_set and v in d.peak_set) else 0 for v in range(m)] for u in range(m)],
    )
    for x in peaks:
        if not cand.allowed[x][x] & (1 << x):
            return None
        cand = cand.assign(x, x, x, peaks, masks)
        if cand is None:
            return None
    return cand


def _expand(
    cand: PeakTableCandidate,
    order: list[Cell],
    peaks: list[int],
    masks: _Masks,
    budget: Budget,
) -> list[tuple[tuple[int, ...], ...]]:
    """Depth-first completion of `cand`, charging visited nodes to `budget`."""
    out: list[tuple[tuple[int, ...], ...]] = []
    pending = 0
    stack = [cand]
    while stack:
        node = stack.pop()
        pending += 1
        if pending >= CHARGE_EVERY:
            budget.charge(pending, "enum_topsonly")
            pending = 0
        if node.frontier == len(order):
            out.append(tuple(tuple(row) for row in node.table))
            continue
        u, v = order[node.frontier]
        children = []
        for a in _bits(node.allowed[u][v]):
            child = node.assign(u, v, a, peaks, masks)
            if child is not None:
                child.frontier = node.frontier + 1
                children.append(child)
        stack.extend(reversed(children))
    budget.charge(pending, "enum_topsonly")
    return out


def _split(
    root: PeakTableCandidate,
    order: list[Cell],
    peaks: list[int],
    masks: _Masks,
    target: int,
    budget: Budget,
) -> list[PeakTableCandidate]:
    """Expand breadth-first until there are ≥ target open branches."""
    level = [root]
    while len(level) < target and level and level[0].frontier < len(order):
        nxt = []
        for node in level:
            budget.charge(1, "enum_topsonly")
            u, v = order[node.frontier]
            for a in _bits(node.allowed[u][v]):
                child = node.assign(u, v, a, peaks, masks)
                if child is not None:
                    child.frontier = node.frontier + 1
                    nxt.append(child)
        level = nxt
    return level


def enum_topsonly_sp_rules(
    d: Domain,
    budget: Budget | int | None = None,
    n_jobs: Optional[int] = None,
    max_m: int = ENUM_MAX_M,
    max_domain: int = ENUM_MAX_DOMAIN,
    verbose: bool = False,
) -> list[Scf]:
    """
    All unanimous tops-only strategy-proof two-voter rules on d, sorted by table.

    Raises BudgetExceeded rather than returning a partial list.
    """
    if d.m > max_m:
        raise ValueError(f"m={d.m} above the enumeration cap {max_m}")
    if len(d) > max_domain:
        raise ValueError(f"|D|={len(d)} above the enumeration cap {max_domain}")
    budget = ensure_budget(budget)
    masks = _Masks.of(weak_dominance(d))
    peaks = sorted(d.peak_set)
    order = fill_order(d)

    root = _root(d, masks)
    if root is None:
        return []
    jobs = N_JOBS if n_jobs is None else n_jobs
    branches = _split(root, order, peaks, masks, max(1, jobs) * 4, budget)
    _log(verbose, f"'{d.name}': {len(order)} cells, {len(branches)} branch(es)")

    def run(chunk: list[PeakTableCandidate]):
        tables = []
        for branch in chunk:
            tables.extend(_expand(branch, order, peaks, masks, budget))
        return tables

    parts = run_chunks(run, [[b] for b in branches], n_jobs)
    tables = sorted(t for found in parts for t in found)
    _log(verbose, f"'{d.name}': {len(tables)} rule(s)")
    return [make_peak_table(t, name=f"rule_{k}") for k, t in enumerate(tables)]
