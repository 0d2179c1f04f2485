"""
Report Serialisation & Rendering
================================
JSON reports (versioned, labels for alternatives, 0-based preference
indices) and plain-text renderings built on pandas frames.

Reports carry no timestamps or run ids, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import pandas as pd

from config import SCHEMA_VERSION
from prefcore.preferences import Domain
from rules.axioms import AxiomResult
from rules.scf import UNDEFINED, Scf, peak_outcomes

if TYPE_CHECKING:
    from classify.pipeline import Verdict
    from enumeration.decompose import CrossCheck


# ── JSON ─────────────────────────────────────────────────────────────────────

def build_report(kind: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "report": kind, **body}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def save_report(report: dict, path: str | Path) -> Path:
    """Write a report as UTF-8 JSON; parent directories are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(report), encoding="utf-8")
    return path


def load_report(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No report at '{path}'")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


# ── Frames ───────────────────────────────────────────────────────────────────

def peak_table_frame(f: Scf, d: Domain) -> pd.DataFrame:
    """m×m label matrix over d's peaks: row = voter-1 peak, column = voter-2 peak."""
    table = peak_outcomes(f, d.m, d.peak_set)
    peaks = sorted(d.peak_set)
    labels = d.labels
    data = [[labels[table[u, v]] if table[u, v] != UNDEFINED else "-" for v in peaks] for u in peaks]
    return pd.DataFrame(data, index=d.labels_of(peaks), columns=d.labels_of(peaks))


def axiom_frame(results: dict[str, AxiomResult]) -> pd.DataFrame:
    rows = [{"axiom": name, "holds": r.holds, "checked": r.checked} for name, r in results.items()]
    return pd.DataFrame(rows, columns=["axiom", "holds", "checked"])


def cross_check_frame(cc: "CrossCheck") -> pd.DataFrame:
    rows = [{
        "rule":          r.rule.name,
        "tag":           r.decomposition.tag,
        "matches":       len(r.decomposition.matches),
        "invariant":     r.invariant,
        "zone_dictator": r.zone_dictator,
    } for r in cc.rules]
    return pd.DataFrame(rows, columns=["rule", "tag", "matches", "invariant", "zone_dictator"])


def tag_counts(cc: "CrossCheck") -> pd.Series:
    return cross_check_frame(cc).groupby("tag")["rule"].count()


# ── Text ─────────────────────────────────────────────────────────────────────

def render_rules(rules: Sequence[Scf], d: Domain) -> str:
    blocks = []
    for f in rules:
        blocks.append(f"{f.name or f.kind}\n{peak_table_frame(f, d).to_string()}")
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def render_cross_check(cc: "CrossCheck", d: Domain) -> str:
    lines = [
        f"domain        : {cc.domain}",
        f"family        : {cc.family or '-'}",
        f"free zone     : {' '.join(d.labels_of(cc.free_zone)) if cc.free_zone else '-'}",
        f"rules         : {len(cc.rules)}",
        f"never Other   : {cc.never_other}",
        f"inv = proj    : {cc.invariant_are_projections}",
        f"zone dictator : {cc.zone_dictatorial}",
    ]
    if cc.rules:
        lines += ["", tag_counts(cc).to_string(), "", cross_check_frame(cc).to_string(index=False)]
    return "\n".join(lines) + "\n"


def render_verdict(v: "Verdict", d: Domain) -> str:
    lines = [f"domain   : {v.domain}  (m={d.m}, |D|={len(d)})", f"taxonomy : {v.taxonomy}"]
    if v.reason:
        lines.append(f"reason   : {v.reason}")
    if v.usp:
        lines.append(f"usp      : {d.label(v.usp[0])} -> {d.label(v.usp[1])}")
    if v.certificate is not None:
        kind = v.certificate.kind
        lines.append(f"tree     : {' '.join(f'{d.label(a)}-{d.label(b)}' for a, b in kind.tree.sorted_edges)}")
        if kind.threshold is not None:
            lines.append(f"threshold: {d.label(kind.threshold)}")
        if kind.thresholds is not None:
            lines.append(f"zone     : {' '.join(d.labels_of(v.certificate.free_zone))}"
                         f"  (degenerate={v.certificate.degenerate})")
    for r in v.constructed_rules:
        lines += ["", f"[{r.role}]", axiom_frame(r.results).to_string(index=False)]
    if v.critical_spots:
        spots = ", ".join(f"({d.label(s.x)},{d.label(s.y)})" for s in v.critical_spots)
        lines += ["", f"critical spots: {spots}"]
    for note in v.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"
