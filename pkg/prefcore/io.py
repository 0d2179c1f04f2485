"""
Domain Files
============
Line-based domain files:

    # comment
    alternatives: a1 a2 a3
    pref: a1 a2 a3
    pref: a3 a2 a1

or the JSON equivalent `{"alternatives": [...], "prefs": [[...], ...]}` when
the file ends in `.json`.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Optional

from prefcore.errors import DomainError
from prefcore.preferences import Domain


_COMMENT = re.compile(r"(?:^|\s)#")


def strip_comment(line: str) -> str:
    """Drop a `#` comment. `#` opens one only at line start or after whitespace, so labels may contain it."""
    return _COMMENT.split(line, maxsplit=1)[0].strip()


def parse_domain(text: str, name: str = "domain") -> Domain:
    labels: Optional[list[str]] = None
    rankings: list[list[str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise DomainError(f"line {lineno}: expected 'alternatives:' or 'pref:', got '{line}'")
        tokens = rest.split()
        if labels is None:
            if key != "alternatives":
                raise DomainError(f"line {lineno}: first entry must be 'alternatives:'")
            if not tokens:
                raise DomainError(f"line {lineno}: empty alternative list")
            labels = tokens
            continue
        if key != "pref":
            raise DomainError(f"line {lineno}: unexpected key '{key}'")
        if sorted(tokens) != sorted(labels) or len(set(tokens)) != len(tokens):
            raise DomainError(f"line {lineno}: ranking is not a permutation of the alternatives")
        rankings.append(tokens)

    if labels is None:
        raise DomainError("empty alternative list")
    return Domain.from_labels(labels, rankings, name=name)


def parse_domain_json(text: str, name: str = "domain") -> Domain:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from exc
    labels = payload.get("alternatives") or []
    if not labels:
        raise DomainError("empty alternative list")
    rankings = payload.get("prefs", [])
    for k, row in enumerate(rankings):
        if sorted(map(str, row)) != sorted(map(str, labels)) or len(set(row)) != len(row):
            raise DomainError(f"preference {k}: ranking is not a permutation of the alternatives")
    return Domain.from_labels(labels, rankings, name=payload.get("name", name))


def load_domain(path: str | Path) -> Domain:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No domain file at '{path}'")
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return parse_domain_json(text, name=path.stem)
    return parse_domain(text, name=path.stem)


def dump_domain(d: Domain) -> str:
    lines = [f"# {d.name}: {d.m} alternatives, {len(d)} preferences",
             "alternatives: " + " ".join(d.labels)]
    lines += ["pref: " + d.render(p) for p in d.prefs]
    return "\n".join(lines) + "\n"


def domain_to_dict(d: Domain) -> dict:
    return {
        "name":         d.name,
        "alternatives": d.labels,
        "prefs":        [d.labels_of(p.ranking) for p in d.prefs],
    }
