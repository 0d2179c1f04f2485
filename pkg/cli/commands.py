"""
Subcommand handlers. Each takes a RunConfig plus parsed arguments and returns
an Outcome (report dict, text rendering, exit code); main.py prints it.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Literal, Optional

from classify.pipeline import classify
from classify.spots import build_verified_pnt, find_critical_spots
from cli.report import (
    axiom_frame, build_report, render_cross_check, render_rules, render_verdict,
)
from config import DEFAULT_PNT_VOTERS, EVAL_BUDGET, N_JOBS
from enumeration.decompose import cross_check, decompose_rule
from enumeration.micro import enum_all_sp_rules_micro
from enumeration.search import enum_topsonly_sp_rules
from membership.certify import (
    certify_hybrid_domain, certify_sh_domain, certify_sp_domain, certify_ssp_domain,
)
from membership.families import FamilyKind
from membership.generators import gen_family
from prefcore.budget import Budget
from prefcore.io import domain_to_dict, dump_domain, load_domain
from prefcore.preferences import Domain, default_labels
from rules.axioms import AXIOMS, check_axioms
from rules.rulefile import load_rule
from structure.adjacency import adjacency_graph, weak_adjacency_graph
from structure.richness import richness_report
from trees.io import dump_edges, load_tree, to_dot

OutputFormat = Literal["text", "json", "dot"]


@dataclass
class RunConfig:
    command:   str
    inputs:    list[str] = field(default_factory=list)
    budget:    int = EVAL_BUDGET
    output:    OutputFormat = "json"
    threads:   int = N_JOBS
    verbose:   bool = False
    json_path: Optional[str] = None

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.output not in ("text", "json", "dot"):
            raise ValueError(f"unknown output format '{self.output}'")
        if self.threads < 1:
            raise ValueError(f"threads must be at least 1, got {self.threads}")

    def new_budget(self) -> Budget:
        return Budget(limit=self.budget)


@dataclass
class Outcome:
    report: dict
    text:   str
    code:   int = 0


def log(cfg: RunConfig, msg: str) -> None:
    if cfg.verbose:
        print(f"[CLI] {msg}", file=sys.stderr)


def _domain(cfg: RunConfig, path: str) -> Domain:
    d = load_domain(path)
    log(cfg, f"loaded '{d.name}': m={d.m}, |D|={len(d)}")
    return d


# ── check / graph ────────────────────────────────────────────────────────────

def cmd_check(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    report = richness_report(d)
    if report.too_few_alternatives:
        log(cfg, f"'{d.name}' has m={d.m} < 3 alternatives: not unidimensional")
    body = report.to_dict(d)
    text = "\n".join(f"{k:<20}: {v}" for k, v in body.items() if k != "leaf_checks") + "\n"
    return Outcome(build_report("richness", {"domain": d.name, **body}), text)


def cmd_graph(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    g = weak_adjacency_graph(d) if args.weak else adjacency_graph(d)
    body = {"domain": d.name, "weak": bool(args.weak), **g.to_dict(d.labels),
            "connected": g.is_connected(), "tree": g.is_tree()}
    text = to_dot(g, d.labels, name=d.name.replace("-", "_")) if cfg.output == "dot" else dump_edges(g, d.labels)
    return Outcome(build_report("graph", body), text)


# ── classify / classify-family ───────────────────────────────────────────────

def cmd_classify(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    voters = tuple(args.pnt_voters) if args.pnt_voters else DEFAULT_PNT_VOTERS
    verdict = classify(d, budget=cfg.new_budget(), n_jobs=cfg.threads, pnt_voters=voters, verbose=cfg.verbose)
    return Outcome(build_report("verdict", verdict.to_dict(d)), render_verdict(verdict, d), verdict.exit_code)


_CERTIFIERS = {
    "SP":     certify_sp_domain,
    "Hybrid": certify_hybrid_domain,
    "SSP":    certify_ssp_domain,
    "SH":     certify_sh_domain,
}


def cmd_classify_family(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    result = _CERTIFIERS[args.family](d, cfg.new_budget(), exhaustive=args.exhaustive, verbose=cfg.verbose)
    body = {"domain": d.name, **result.to_dict(d)}
    text = f"{args.family}: {result.status}" + (f" ({result.reason})" if result.reason else "") + "\n"
    return Outcome(build_report("certification", body), text, 2 if result.status == "inconclusive" else 0)


# ── gen ──────────────────────────────────────────────────────────────────────

def cmd_gen(cfg: RunConfig, args) -> Outcome:
    labels = args.alternatives.split(",") if args.alternatives else default_labels(args.m)
    t = load_tree(args.tree, labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def alt(label: str) -> int:
        if label not in index:
            raise ValueError(f"unknown alternative '{label}'")
        return index[label]

    threshold = alt(args.threshold) if args.threshold else None
    thresholds = tuple(alt(v) for v in args.thresholds) if args.thresholds else None
    kind = FamilyKind(args.family, t, threshold=threshold, thresholds=thresholds)
    d = gen_family(kind, labels)
    log(cfg, f"generated '{d.name}' with {len(d)} preferences")
    return Outcome(build_report("domain", {"family": kind.to_dict(labels), **domain_to_dict(d)}), dump_domain(d))


# ── rule verify ──────────────────────────────────────────────────────────────

def cmd_rule_verify(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    f = load_rule(args.rule, d)
    axioms = [a.strip() for a in args.axioms.split(",") if a.strip()] if args.axioms else list(AXIOMS)
    results = check_axioms(f, d, axioms, cfg.new_budget(), n_jobs=cfg.threads,
                           strict_invariance=args.strict_invariance, verbose=cfg.verbose)
    body = {
        "domain": d.name,
        "rule":   f.describe(d.labels),
        "axioms": {name: r.to_dict(d) for name, r in results.items()},
    }
    return Outcome(build_report("axioms", body), axiom_frame(results).to_string(index=False) + "\n")


# ── enum ─────────────────────────────────────────────────────────────────────

def cmd_enum(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    budget = cfg.new_budget()
    if args.decompose:
        cc = cross_check(d, budget, n_jobs=cfg.threads, verbose=cfg.verbose)
        return Outcome(build_report("cross_check", cc.to_dict(d)), render_cross_check(cc, d))
    if args.micro:
        rules = enum_all_sp_rules_micro(d, args.n, budget, verbose=cfg.verbose)
        body = {
            "domain":     d.name,
            "n":          args.n,
            "rule_count": len(rules),
            "outcomes":   [d.labels_of(f.body.outcomes.ravel().tolist()) for f in rules],
        }
        return Outcome(build_report("micro_enumeration", body), f"{len(rules)} rule(s)\n")
    rules = enum_topsonly_sp_rules(d, budget, n_jobs=cfg.threads, verbose=cfg.verbose)
    body = {
        "domain":     d.name,
        "rule_count": len(rules),
        "rules":      [f.describe(d.labels) for f in rules],
    }
    return Outcome(build_report("enumeration", body), render_rules(rules, d))


# ── spots ────────────────────────────────────────────────────────────────────

def cmd_spots(cfg: RunConfig, args) -> Outcome:
    d = _domain(cfg, args.domain)
    t = load_tree(args.tree, d.labels)
    budget = cfg.new_budget()
    spots = find_critical_spots(d, t, budget, cfg.verbose)
    body = {"domain": d.name, "tree": t.to_dict(d.labels), "critical_spots": [s.to_dict(d) for s in spots]}
    lines = [f"({d.label(s.x)}, {d.label(s.y)})  witnesses {s.witnesses}" for s in spots] or ["no critical spot"]
    if args.build_pnt and spots:
        i, j = args.voters
        f, results = build_verified_pnt(d, spots[0], i, j, args.n, budget, cfg.threads, cfg.verbose)
        body["pnt"] = {"rule": f.describe(d.labels), "axioms": {k: r.to_dict(d) for k, r in results.items()}}
        lines += ["", axiom_frame(results).to_string(index=False)]
    return Outcome(build_report("critical_spots", body), "\n".join(lines) + "\n")


def cmd_rule_decompose(cfg: RunConfig, args) -> Outcome:
    """Decompose one two-voter peak-table rule file against a domain."""
    d = _domain(cfg, args.domain)
    f = load_rule(args.rule, d)
    dec = decompose_rule(f, d, cfg.new_budget(), cfg.verbose)
    return Outcome(build_report("decomposition", {"domain": d.name, **dec.to_dict(d.labels)}), f"{dec.tag}\n")
