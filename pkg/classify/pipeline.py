"""
Classification Pipeline
=======================
Call `classify(d)` on a domain over m ≥ 3 alternatives and get a `Verdict`:

  NotUnidimensional  richness fails (family certificates still reported as advisory)
  Dictatorial        unidimensional without the unique seconds property
  SemiSinglePeaked   SSP certificate; the two-voter projection rule is built and checked
  SemiHybrid         SH certificate (degenerate flag); the hybrid rule is built and checked
  Inconclusive       budget ran out, or no family certificate could be produced

Every non-dictatorial verdict also carries the almost dictatorship built from
the unique-seconds witness, and the critical spots of the certificate tree
(each backed by a verified non-tops-only PNT rule).

Quick-start
-----------
  from prefcore import load_domain
  from classify import classify
  v = classify(load_domain("datasets/domains/ssp6.dom"))
  print(v.taxonomy, v.certificate.kind.threshold)
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Literal, Optional

from config import DEFAULT_PNT_VOTERS
from classify.spots import CriticalSpot, build_verified_pnt, find_critical_spots
from membership.certify import CertificationResult, DomainCertificate, certify_all, certify_sh_domain, certify_ssp_domain
from prefcore.budget import Budget, ensure_budget
from prefcore.errors import BudgetExceeded
from prefcore.preferences import Domain
from rules.axioms import AXIOMS, AxiomResult, check_axioms, dictator_on, non_dictatorship_witnesses
from rules.scf import Scf, make_almost_dictatorship, make_hybrid, make_projection, outcome_table
from structure.richness import RichnessReport, check_unidimensional, unique_seconds

Taxonomy = Literal["NotUnidimensional", "Dictatorial", "SemiSinglePeaked", "SemiHybrid", "Inconclusive"]


@dataclass
class ConstructedRule:
    role:             str                     # almost_dictatorship | projection | hybrid | pnt
    scf:              Scf
    results:          dict[str, AxiomResult]
    dictator_on_zone: Optional[int] = None
    non_dictatorship: dict[int, Optional[list[int]]] = field(default_factory=dict)

    def to_dict(self, d: Domain) -> dict:
        out = {
            "role":   self.role,
            "rule":   self.scf.describe(d.labels),
            "axioms": {name: r.to_dict(d) for name, r in self.results.items()},
        }
        if self.role == "hybrid":
            out["dictator_on_free_zone"] = self.dictator_on_zone
        if self.non_dictatorship:
            out["non_dictatorship_witnesses"] = {str(v): w for v, w in self.non_dictatorship.items()}
        return out


@dataclass
class Verdict:
    domain:                str
    richness:              RichnessReport
    taxonomy:              Taxonomy
    usp:                   Optional[tuple[int, int]] = None
    certificate:           Optional[DomainCertificate] = None
    reason:                str = ""
    constructed_rules:     list[ConstructedRule] = field(default_factory=list)
    critical_spots:        list[CriticalSpot] = field(default_factory=list)
    advisory:              dict[str, CertificationResult] = field(default_factory=dict)
    admits_anonymous_rule: Optional[bool] = None
    tops_only_domain:      Optional[bool] = None
    notes:                 list[str] = field(default_factory=list)
    budget_spent:          int = 0

    @property
    def degenerate(self) -> Optional[bool]:
        return self.certificate.degenerate if self.taxonomy == "SemiHybrid" else None

    @property
    def exit_code(self) -> int:
        return 2 if self.taxonomy == "Inconclusive" else 0

    def rule(self, role: str) -> Optional[ConstructedRule]:
        return next((r for r in self.constructed_rules if r.role == role), None)

    def to_dict(self, d: Domain) -> dict:
        return {
            "domain":                self.domain,
            "taxonomy":              self.taxonomy,
            "reason":                self.reason,
            "richness":              self.richness.to_dict(d),
            "usp":                   d.labels_of(self.usp) if self.usp else None,
            "certificate":           self.certificate.to_dict(d) if self.certificate else None,
            "degenerate":            self.degenerate,
            "constructed_rules":     [r.to_dict(d) for r in self.constructed_rules],
            "critical_spots":        [s.to_dict(d) for s in self.critical_spots],
            "advisory":              {k: v.to_dict(d) for k, v in self.advisory.items()},
            "admits_anonymous_rule": self.admits_anonymous_rule,
            "tops_only_domain":      self.tops_only_domain,
            "notes":                 list(self.notes),
            "budget_spent":          self.budget_spent,
        }


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[CLASSIFY] {msg}", file=sys.stderr)


def _build(role: str, f: Scf, d: Domain, axioms, budget: Budget, n_jobs, verbose) -> ConstructedRule:
    results = check_axioms(f, d, axioms, budget, n_jobs=n_jobs, verbose=verbose)
    return ConstructedRule(role, f, results)


def classify(
    d: Domain,
    *,
    budget:     Budget | int | None = None,
    n_jobs:     Optional[int] = None,
    pnt_voters: tuple[int, int] = DEFAULT_PNT_VOTERS,
    verbose:    bool = False,
) -> Verdict:
    """
    Full pipeline. Budget exhaustion at any stage yields an Inconclusive
    verdict holding whatever was established before it.

    budget     : evaluation budget shared by every stage (int or Budget)
    n_jobs     : joblib workers for certification and strategy-proofness scans
    pnt_voters : (i, j) for the PNT rules built on critical spots
    """
    if d.m < 3:
        raise ValueError(f"classification needs m ≥ 3 alternatives, got {d.m}")
    budget = ensure_budget(budget)

    # ── 1. Richness ───────────────────────────────────────────────────────
    richness = check_unidimensional(d)
    verdict = Verdict(d.name, richness, "Inconclusive")
    _log(verbose, f"'{d.name}': m={d.m} |D|={len(d)} unidimensional={richness.unidimensional}")
    try:
        if not richness.unidimensional:
            verdict.taxonomy = "NotUnidimensional"
            verdict.reason = _richness_failure(richness)
            verdict.advisory = certify_all(d, budget, verbose)
            return _done(verdict, budget, verbose)

        # ── 2. Unique seconds → almost dictatorship ───────────────────────
        verdict.usp = unique_seconds(d)
        if verdict.usp is None:
            verdict.taxonomy = "Dictatorial"
            verdict.reason = "unidimensional without the unique seconds property"
            verdict.admits_anonymous_rule = False
            return _done(verdict, budget, verbose)
        x, y = verdict.usp
        almost = make_almost_dictatorship(x, y, 0, 1, 2)
        built = _build("almost_dictatorship", almost, d, ("unanimity", "sp", "topsonly"), budget, n_jobs, verbose)
        built.non_dictatorship = non_dictatorship_witnesses(almost, d, budget)
        verdict.constructed_rules.append(built)
        if not (built.results["unanimity"].holds and built.results["sp"].holds):
            verdict.notes.append("almost dictatorship failed verification")

        # ── 3. Semi-single-peaked certificate ─────────────────────────────
        ssp = certify_ssp_domain(d, budget, verbose=verbose)
        if ssp.status == "inconclusive":
            verdict.reason = ssp.reason
            return _done(verdict, budget, verbose)
        if ssp.found:
            cert = ssp.certificate
            verdict.taxonomy = "SemiSinglePeaked"
            verdict.certificate = cert
            proj = make_projection(cert.kind.tree, cert.kind.threshold, 2)
            built = _build("projection", proj, d, AXIOMS, budget, n_jobs, verbose)
            verdict.constructed_rules.append(built)
            verdict.admits_anonymous_rule = all(r.holds for r in built.results.values())
        else:
            # ── 4. Semi-hybrid certificate ────────────────────────────────
            sh = certify_sh_domain(d, budget, verbose=verbose, n_jobs=n_jobs)
            if not sh.found:
                verdict.reason = sh.reason or "no semi-single-peaked or semi-hybrid certificate"
                verdict.advisory = {"SSP": ssp, "SH": sh}
                return _done(verdict, budget, verbose)
            cert = sh.certificate
            verdict.taxonomy = "SemiHybrid"
            verdict.certificate = cert
            verdict.admits_anonymous_rule = False
            verdict.notes.extend(cert.notes)
            verdict.notes.append("dictatorship verified on the free zone only, not on a larger superset")
            if len(cert.free_zone) >= 3:
                a, b = cert.kind.thresholds
                hyb = make_hybrid(cert.kind.tree, a, b, 0, 2)
                built = _build("hybrid", hyb, d, AXIOMS, budget, n_jobs, verbose)
                built.dictator_on_zone = dictator_on(hyb, d, cert.free_zone, budget,
                                                     outcome_table(hyb, d, budget))
                verdict.constructed_rules.append(built)

        # ── 5. Critical spots on the certificate tree ─────────────────────
        verdict.critical_spots = find_critical_spots(d, verdict.certificate.kind.tree, budget, verbose)
        if verdict.critical_spots:
            i, j = pnt_voters
            f, results = build_verified_pnt(d, verdict.critical_spots[0], i, j, 2, budget, n_jobs, verbose)
            verdict.constructed_rules.append(ConstructedRule("pnt", f, results))
            verdict.tops_only_domain = False
        else:
            verdict.notes.append("no critical spot on the certificate tree; tops-only domain status not decided")
    except BudgetExceeded as exc:
        verdict.taxonomy = "Inconclusive"
        verdict.certificate = None
        verdict.reason = str(exc)
    return _done(verdict, budget, verbose)


def _richness_failure(r: RichnessReport) -> str:
    failed = []
    if not r.path_connected:
        failed.append("path-connectedness")
    if r.diversity_witness is None:
        failed.append("diversity")
    if not r.leaf_symmetry:
        failed.append("leaf symmetry")
    return "fails " + ", ".join(failed)


def _done(verdict: Verdict, budget: Budget, verbose: bool) -> Verdict:
    verdict.budget_spent = budget.spent
    _log(verbose, f"verdict {verdict.taxonomy} ({verdict.reason or 'ok'}), {budget.spent:,} units")
    return verdict
