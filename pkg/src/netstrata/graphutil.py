"""Small shared graph helpers (undirected, name-keyed)."""

from __future__ import annotations

from typing import Iterable


def component_labels(
    nodes: Iterable[str], links: Iterable[tuple[str, str]]
) -> dict[str, int]:
    """Connected-component label per node, via union-find."""
    parent: dict[str, str] = {n: n for n in nodes}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    labels: dict[str, int] = {}
    next_label = 0
    out: dict[str, int] = {}
    for n in parent:
        root = find(n)
        if root not in labels:
            labels[root] = next_label
            next_label += 1
        out[n] = labels[root]
    return out
