"""
Tree / graph files and DOT export.

    # comment
    edge: a1 a2
    edge: a2 a3

Labels are resolved against a domain's alternatives (or a plain label list).
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from prefcore.errors import DomainError
from prefcore.io import strip_comment
from trees.graph import Graph, Tree


def parse_edges(text: str, labels: Sequence[str]) -> Graph:
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        key, sep, rest = line.partition(":")
        tokens = rest.split()
        if not sep or key.strip().lower() != "edge" or len(tokens) != 2:
            raise DomainError(f"line {lineno}: expected 'edge: <label> <label>'")
        try:
            edges.append((index[tokens[0]], index[tokens[1]]))
        except KeyError as exc:
            raise DomainError(f"line {lineno}: unknown alternative {exc}") from None
    return Graph.from_edges(len(labels), edges)


def parse_tree(text: str, labels: Sequence[str]) -> Tree:
    return parse_edges(text, labels).as_tree()


def load_tree(path: str | Path, labels: Sequence[str]) -> Tree:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No tree file at '{path}'")
    return parse_tree(path.read_text(encoding="utf-8"), labels)


def dump_edges(g: Graph, labels: Sequence[str]) -> str:
    return "".join(f"edge: {labels[u]} {labels[v]}\n" for u, v in g.sorted_edges)


def to_dot(g: Graph, labels: Sequence[str], name: str = "G") -> str:
    """DOT text; vertices in id order, then edges in canonical order."""
    lines = [f"graph {name} {{"]
    lines += [f'  "{labels[v]}";' for v in range(g.m)]
    lines += [f'  "{labels[u]}" -- "{labels[v]}";' for u, v in g.sorted_edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
