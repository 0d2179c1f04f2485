"""
Micro Enumeration
=================
Every unanimous strategy-proof SCF on a tiny domain, tops-only or not,
as FullTables. Profiles are filled in lexicographic order; each assignment
f(P) = a prunes the candidate sets of every unilateral deviation P' of P
(bitmask forward checking with an undo trail):

    voter k truthful at P:   P_k ranks a weakly above f(P')
    voter k truthful at P':  P'_k ranks f(P') weakly above a
"""

from __future__ import annotations

import sys
from typing import Optional

import numpy as np

from config import MICRO_PROFILE_CAP
from prefcore.budget import Budget, ensure_budget
from prefcore.preferences import Domain
from rules.scf import Scf, make_full_table


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[ENUM] {msg}", file=sys.stderr)


def _rank_masks(d: Domain) -> tuple[list[list[int]], list[list[int]]]:
    """worse_eq[k][a]: alternatives ranked weakly below a in pref k; better_eq[k][a]: weakly above."""
    R = d.rank_matrix
    weights = 1 << np.arange(d.m, dtype=np.int64)
    worse_eq = [[int(weights[R[k] >= R[k, a]].sum()) for a in range(d.m)] for k in range(len(d))]
    better_eq = [[int(weights[R[k] <= R[k, a]].sum()) for a in range(d.m)] for k in range(len(d))]
    return worse_eq, better_eq


def enum_all_sp_rules_micro(
    d: Domain,
    n: int = 2,
    budget: Budget | int | None = None,
    cap: int = MICRO_PROFILE_CAP,
    verbose: bool = False,
) -> list[Scf]:
    """All unanimous strategy-proof SCFs on d^n, in lexicographic order of outcome tables."""
    if n < 1:
        raise ValueError("need at least one voter")
    size = len(d) ** n
    if size > cap:
        raise ValueError(f"{len(d)}^{n} = {size:,} profiles above the micro cap {cap:,}")
    budget = ensure_budget(budget)
    shape = (len(d),) * n
    profiles = list(np.ndindex(*shape))
    strides = [len(d) ** (n - 1 - k) for k in range(n)]
    worse_eq, better_eq = _rank_masks(d)
    tops = [p.top for p in d.prefs]

    full = (1 << d.m) - 1
    allowed = [full] * size
    for idx, prof in enumerate(profiles):
        peaks = {tops[k] for k in prof}
        if len(peaks) == 1:
            allowed[idx] = 1 << peaks.pop()

    outcome = [-1] * size
    trail: list[tuple[int, int]] = []
    results: list[np.ndarray] = []
    nodes = 0
    limit = budget.remaining

    def assign(idx: int, a: int) -> bool:
        prof = profiles[idx]
        for voter in range(n):
            own = prof[voter]
            base = idx - own * strides[voter]
            for q in range(len(d)):
                if q == own:
                    continue
                other = base + q * strides[voter]
                if outcome[other] >= 0:
                    continue
                narrowed = allowed[other] & worse_eq[own][a] & better_eq[q][a]
                if narrowed != allowed[other]:
                    trail.append((other, allowed[other]))
                    allowed[other] = narrowed
                    if not narrowed:
                        return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            other, old = trail.pop()
            allowed[other] = old

    # iterative depth-first search over profile positions
    next_alt = [0] * (size + 1)
    marks = [0] * size
    idx = 0
    while idx >= 0:
        if idx == size:
            results.append(np.array(outcome, dtype=np.int64).reshape(shape))
            idx -= 1
            continue
        if outcome[idx] >= 0:
            undo(marks[idx])
            outcome[idx] = -1
        a = next_alt[idx]
        mask = allowed[idx] >> a
        advanced = False
        while mask:
            if mask & 1:
                next_alt[idx] = a + 1
                nodes += 1
                if nodes > limit:
                    budget.charge(nodes, "enum_micro")
                marks[idx] = len(trail)
                outcome[idx] = a
                if assign(idx, a):
                    idx += 1
                    next_alt[idx] = 0
                    advanced = True
                    break
                undo(marks[idx])
                outcome[idx] = -1
            mask >>= 1
            a += 1
        if not advanced:
            next_alt[idx] = 0
            idx -= 1

    budget.charge(nodes, "enum_micro")
    _log(verbose, f"'{d.name}' n={n}: {len(results)} rule(s), {nodes:,} nodes")
    return [make_full_table(d, out, name=f"micro_{k}") for k, out in enumerate(results)]
