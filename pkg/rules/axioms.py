"""
Axiom Checks
============
Exhaustive checks of an SCF over every profile of a domain. Each check runs
on the outcome table O (shape (|d|,)*n, see rules.scf.outcome_table) and
returns an AxiomResult. A failing result carries the first counterexample
in canonical order: voter, then profile (lexicographic in preference
indices), then deviation.

Strategy-proofness is the expensive one (n·|d|^(n+1) comparisons). It is
scanned slice by slice along the first profile coordinate; slices are
split across joblib workers and the earliest hit wins, so the witness does
not depend on worker count.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from config import N_JOBS
from prefcore.budget import Budget, ensure_budget
from prefcore.errors import DomainError
from prefcore.parallel import run_chunks, split
from prefcore.preferences import Domain
from rules.scf import Scf, outcome_table
from structure.richness import check_diversity

AXIOMS: tuple[str, ...] = ("unanimity", "sp", "topsonly", "anon", "inv")

# witness keys holding alternatives (everything else is an index)
_ALT_KEYS = {"outcome", "expected", "truthful_outcome", "manipulated_outcome", "outcomes"}


@dataclass
class AxiomResult:
    axiom:   str
    holds:   bool
    witness: Optional[dict] = None
    checked: int = 0
    details: list[dict] = field(default_factory=list)   # strict invariance: one entry per reversed pair

    def to_dict(self, d: Domain) -> dict:
        out = {"axiom": self.axiom, "holds": self.holds, "checked": self.checked}
        out["witness"] = _render(self.witness, d) if self.witness else None
        if self.details:
            out["details"] = [_render(w, d) for w in self.details]
        return out


def _render(w: dict, d: Domain) -> dict:
    out = {}
    for k, v in w.items():
        if k in _ALT_KEYS:
            out[k] = d.labels_of(v) if isinstance(v, (list, tuple)) else d.label(v)
        else:
            out[k] = v
    return out


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[AXIOM] {msg}", file=sys.stderr)


def _table(f: Scf, d: Domain, budget: Budget, outcomes: Optional[np.ndarray]) -> np.ndarray:
    if outcomes is not None:
        return outcomes
    return outcome_table(f, d, budget)


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    """Index of the first True entry in C order, or None."""
    flat = mask.ravel()
    if flat.size == 0:
        return None
    k = int(flat.argmax())
    if not flat[k]:
        return None
    return tuple(int(i) for i in np.unravel_index(k, mask.shape))


def _peaks_of(d: Domain, n: int) -> list[np.ndarray]:
    """Voter-k peak of every profile, one broadcastable array per voter."""
    out = []
    for k in range(n):
        shape = [1] * n
        shape[k] = len(d)
        out.append(d.tops.reshape(shape))
    return out


# ── Unanimity ────────────────────────────────────────────────────────────────

def check_unanimity(f: Scf, d: Domain, budget=None, outcomes=None) -> AxiomResult:
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    budget.charge(O.size, "unanimity")
    peaks = _peaks_of(d, f.n)
    same = np.ones(O.shape, dtype=bool)
    for pk in peaks[1:]:
        same &= pk == peaks[0]
    hit = _first(same & (O != peaks[0]))
    if hit is None:
        return AxiomResult("unanimity", True, checked=O.size)
    return AxiomResult("unanimity", False, {
        "profile": list(hit), "outcome": int(O[hit]), "expected": int(d.tops[hit[0]]),
    }, O.size)


# ── Strategy-proofness ───────────────────────────────────────────────────────

def _gains(O: np.ndarray, R: np.ndarray, voter: int, p0: int) -> np.ndarray:
    """
    Boolean array over (other coordinates of the profile, deviation): True
    where `voter` strictly gains by reporting the deviation instead at the
    profile whose first coordinate is p0.
    """
    if voter == 0:
        truth = np.asarray(R[p0][O[p0]])
        dev = R[p0][np.moveaxis(O, 0, -1)]
        return dev < truth[..., None]
    sub = O[p0]
    axis = voter - 1
    shape = [1] * sub.ndim
    shape[axis] = sub.shape[axis]
    own = np.arange(sub.shape[axis]).reshape(shape)
    truth = R[own, sub]
    dev_out = np.expand_dims(np.moveaxis(sub, axis, -1), axis)
    dev = R[own[..., None], dev_out]
    return dev < truth[..., None]


def check_strategy_proof(
    f: Scf,
    d: Domain,
    budget=None,
    outcomes=None,
    n_jobs: Optional[int] = None,
    verbose: bool = False,
) -> AxiomResult:
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    work = f.n * len(d) ** (f.n + 1)
    budget.charge(work, "strategy_proof")
    R = d.rank_matrix
    jobs = N_JOBS if n_jobs is None else n_jobs
    chunks = split(list(range(len(d))), max(1, jobs))

    for voter in range(f.n):
        def scan(chunk: list[int], voter=voter):
            for p0 in chunk:
                hit = _first(_gains(O, R, voter, p0))
                if hit is not None:
                    return (p0, hit)
            return None

        hits = [h for h in run_chunks(scan, chunks, n_jobs) if h is not None]
        if not hits:
            continue
        p0, hit = hits[0]
        profile = (p0, *hit[:-1])
        deviation = hit[-1]
        swapped = list(profile)
        swapped[voter] = deviation
        _log(verbose, f"voter {voter} manipulates at profile {profile} via {deviation}")
        return AxiomResult("sp", False, {
            "voter": voter,
            "profile": list(profile),
            "deviation": int(deviation),
            "truthful_outcome": int(O[profile]),
            "manipulated_outcome": int(O[tuple(swapped)]),
        }, work)
    return AxiomResult("sp", True, checked=work)


# ── Tops-only ────────────────────────────────────────────────────────────────

def check_tops_only(f: Scf, d: Domain, budget=None, outcomes=None) -> AxiomResult:
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    budget.charge(O.size, "tops_only")
    code = np.zeros(O.shape, dtype=np.int64)
    for pk in _peaks_of(d, f.n):
        code = code * d.m + pk
    flat_code = code.ravel()
    flat_out = O.ravel()
    _, first_idx, inverse = np.unique(flat_code, return_index=True, return_inverse=True)
    ref = first_idx[inverse.ravel()]
    mismatch = flat_out != flat_out[ref]
    if not mismatch.any():
        return AxiomResult("topsonly", True, checked=O.size)
    k = int(mismatch.argmax())
    earlier = tuple(int(i) for i in np.unravel_index(int(ref[k]), O.shape))
    later = tuple(int(i) for i in np.unravel_index(k, O.shape))
    return AxiomResult("topsonly", False, {
        "profiles": [list(earlier), list(later)],
        "outcomes": [int(O[earlier]), int(O[later])],
    }, O.size)


# ── Anonymity ────────────────────────────────────────────────────────────────

def check_anonymity(f: Scf, d: Domain, budget=None, outcomes=None) -> AxiomResult:
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    orders = [s for s in permutations(range(f.n)) if list(s) != list(range(f.n))]
    budget.charge(O.size * max(len(orders), 1), "anonymity")
    best = None
    for sigma in orders:
        hit = _first(O != np.transpose(O, sigma))
        if hit is not None and (best is None or hit < best[0]):
            best = (hit, sigma)
    if best is None:
        return AxiomResult("anon", True, checked=O.size * len(orders))
    hit, sigma = best
    permuted = [0] * f.n
    for k, s in enumerate(sigma):
        permuted[s] = hit[k]
    permuted = tuple(permuted)
    return AxiomResult("anon", False, {
        "profile": list(hit),
        "permuted_profile": list(permuted),
        "outcomes": [int(O[hit]), int(O[permuted])],
    }, O.size * len(orders))


# ── Invariance ───────────────────────────────────────────────────────────────

def reversed_pairs(d: Domain) -> list[tuple[int, int]]:
    """Every completely reversed pair (i < j), in index order."""
    rev = {p.ranking[::-1]: k for k, p in enumerate(d.prefs)}
    out = []
    for i, p in enumerate(d.prefs):
        j = rev.get(p.ranking)
        if j is not None and i <= j:
            out.append((i, j))
    return out


def check_invariance(
    f: Scf,
    d: Domain,
    budget=None,
    outcomes=None,
    strict: bool = False,
) -> AxiomResult:
    if f.n != 2:
        raise ValueError(f"invariance is defined for two voters, rule has {f.n}")
    pairs = reversed_pairs(d) if strict else [check_diversity(d)]
    if not pairs or pairs[0] is None:
        raise DomainError(f"domain '{d.name}' has no completely reversed pair")
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    budget.charge(2 * len(pairs), "invariance")
    details = []
    for i, j in pairs:
        details.append({
            "profiles": [[i, j], [j, i]],
            "outcomes": [int(O[i, j]), int(O[j, i])],
            "holds": bool(O[i, j] == O[j, i]),
        })
    failing = next((w for w in details if not w["holds"]), None)
    return AxiomResult(
        "inv", failing is None, failing, 2 * len(pairs),
        details if strict else [],
    )


# ── Dictatorship on a subset ─────────────────────────────────────────────────

def dictator_on(
    f: Scf,
    d: Domain,
    subset: Iterable[int],
    budget=None,
    outcomes=None,
) -> Optional[int]:
    """Lowest voter whose peak is chosen at every profile with all peaks in `subset`."""
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    budget.charge(O.size * f.n, "dictator_on")
    inside = np.isin(d.tops, sorted(set(subset)))
    peaks = _peaks_of(d, f.n)
    region = np.ones(O.shape, dtype=bool)
    for k in range(f.n):
        shape = [1] * f.n
        shape[k] = len(d)
        region &= inside.reshape(shape)
    for voter in range(f.n):
        if not (region & (O != peaks[voter])).any():
            return voter
    return None


def non_dictatorship_witnesses(f: Scf, d: Domain, budget=None, outcomes=None) -> dict[int, Optional[list[int]]]:
    """Per voter, the first profile where f does not pick that voter's peak (None: voter is a dictator)."""
    budget = ensure_budget(budget)
    O = _table(f, d, budget, outcomes)
    budget.charge(O.size * f.n, "non_dictatorship")
    out = {}
    for voter, pk in enumerate(_peaks_of(d, f.n)):
        hit = _first(O != pk)
        out[voter] = list(hit) if hit is not None else None
    return out


# ── Batch ────────────────────────────────────────────────────────────────────

def check_axioms(
    f: Scf,
    d: Domain,
    axioms: Sequence[str] = AXIOMS,
    budget=None,
    n_jobs: Optional[int] = None,
    strict_invariance: bool = False,
    verbose: bool = False,
) -> dict[str, AxiomResult]:
    """Run the named checks on one shared outcome table, in the order given."""
    unknown = [a for a in axioms if a not in AXIOMS]
    if unknown:
        raise ValueError(f"unknown axiom(s) {unknown}; expected a subset of {list(AXIOMS)}")
    budget = ensure_budget(budget)
    O = outcome_table(f, d, budget)
    results: dict[str, AxiomResult] = {}
    for name in axioms:
        if name == "unanimity":
            res = check_unanimity(f, d, budget, O)
        elif name == "sp":
            res = check_strategy_proof(f, d, budget, O, n_jobs=n_jobs, verbose=verbose)
        elif name == "topsonly":
            res = check_tops_only(f, d, budget, O)
        elif name == "anon":
            res = check_anonymity(f, d, budget, O)
        else:
            res = check_invariance(f, d, budget, O, strict=strict_invariance)
        _log(verbose, f"{f.kind} on '{d.name}': {name} {'holds' if res.holds else 'fails'}")
        results[name] = res
    return results
