"""
Rule spec files: JSON naming a constructor and its parameters, with
alternatives given by label and voters as 0-based indices.

    {"rule": "projection",   "tree": [["a1","a2"], ...], "threshold": "a2", "n": 2}
    {"rule": "hybrid",       "tree": [...], "thresholds": ["a2","a5"], "voter": 0}
    {"rule": "pnt",          "tree": [...], "edge": ["a2","a3"], "i": 0, "j": 1}
    {"rule": "dictatorship", "voter": 0, "n": 2}
    {"rule": "almost_dictatorship", "x": "a4", "y": "a3", "i": 0, "j": 1}
    {"rule": "peak_table",   "table": [["a1","a2"], ["a2","a2"]]}
    {"rule": "catalog",      "name": "star_exceptions"}

"tree" may instead be "tree_file": a path to an edge-list file, resolved
relative to the rule file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from prefcore.errors import DomainError
from prefcore.preferences import Domain
from rules.catalog import build_catalog_rule
from rules.scf import (
    UNDEFINED, Scf, make_almost_dictatorship, make_dictatorship, make_hybrid,
    make_peak_table, make_pnt, make_projection,
)
from trees.graph import Graph, Tree
from trees.io import load_tree

RULE_KINDS = ("projection", "hybrid", "pnt", "dictatorship", "almost_dictatorship", "peak_table", "catalog")


def _tree(spec: dict, d: Domain, base: Optional[Path]) -> Tree:
    if "tree_file" in spec:
        path = Path(spec["tree_file"])
        if base is not None and not path.is_absolute():
            path = base / path
        return load_tree(path, d.labels)
    if "tree" not in spec:
        raise DomainError("rule spec needs 'tree' or 'tree_file'")
    edges = [(d.index_of(u), d.index_of(v)) for u, v in spec["tree"]]
    return Graph.from_edges(d.m, edges).as_tree()


def build_rule(spec: dict, d: Domain, base: Optional[Path] = None) -> Scf:
    """Factory: rule-spec dict → Scf over the alternatives of d."""
    kind = spec.get("rule")
    if kind not in RULE_KINDS:
        raise DomainError(f"unknown rule '{kind}'; expected one of {list(RULE_KINDS)}")
    n = int(spec.get("n", 2))
    alt = d.index_of
    try:
        if kind == "projection":
            return make_projection(_tree(spec, d, base), alt(spec["threshold"]), n)
        if kind == "hybrid":
            a, b = (alt(v) for v in spec["thresholds"])
            return make_hybrid(_tree(spec, d, base), a, b, int(spec.get("voter", 0)), n)
        if kind == "pnt":
            x, y = (alt(v) for v in spec["edge"])
            return make_pnt(_tree(spec, d, base), (x, y), int(spec.get("i", 0)), int(spec.get("j", 1)), n)
        if kind == "dictatorship":
            return make_dictatorship(int(spec.get("voter", 0)), n)
        if kind == "almost_dictatorship":
            return make_almost_dictatorship(
                alt(spec["x"]), alt(spec["y"]), int(spec.get("i", 0)), int(spec.get("j", 1)), n,
            )
        if kind == "peak_table":
            table = [[UNDEFINED if v is None else alt(v) for v in row] for row in spec["table"]]
            return make_peak_table(table, spec.get("name", ""))
        return build_catalog_rule(spec["name"], d)
    except KeyError as exc:
        raise DomainError(f"rule spec '{kind}' is missing field {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"invalid '{kind}' rule: {exc}") from exc


def load_rule(path: str | Path, d: Domain) -> Scf:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"rule file not found: {path}")
    try:
        spec = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(spec, dict):
        raise DomainError(f"{path}: rule spec must be a JSON object")
    return build_rule(spec, d, base=path.parent)
