"""Static per-layer structural metrics aimed at dependability analysis:
density, degrees, component structure, diameter, and single points of
failure (articulation points and bridges)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import multiplex
from .model import Layer, Link, MultilayerNetwork


@dataclass(frozen=True)
class LayerMetrics:
    node_count: int
    link_count: int
    density: float
    degree_min: int
    degree_mean: float
    degree_max: int
    connected_components: int
    largest_component_fraction: float
    diameter_of_largest_component: int
    articulation_points: tuple[str, ...]
    bridges: tuple[Link, ...]


def _diameter(nodes: list[str], links: Iterable[Link]) -> int:
    """Exact unweighted diameter; all-pairs BFS in compiled code."""
    if len(nodes) <= 1:
        return 0
    index = {n: i for i, n in enumerate(nodes)}
    rows, cols = [], []
    for a, b in links:
        rows += [index[a], index[b]]
        cols += [index[b], index[a]]
    mat = csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(len(nodes), len(nodes))
    )
    dist = shortest_path(mat, method="D", unweighted=True)
    return int(dist[np.isfinite(dist)].max())


def graph_metrics(nodes: Iterable[str], links: Iterable[Link]) -> LayerMetrics:
    """Metrics of an undirected simple graph given by name lists."""
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(links)
    n = graph.number_of_nodes()
    m = graph.number_of_edges()

    degrees = [d for _, d in graph.degree()]
    components = sorted(nx.connected_components(graph), key=len, reverse=True)
    largest = components[0] if components else set()
    sub_links = [
        (a, b) for a, b in graph.edges() if a in largest and b in largest
    ]
    return LayerMetrics(
        node_count=n,
        link_count=m,
        density=(2.0 * m / (n * (n - 1))) if n >= 2 else 0.0,
        degree_min=min(degrees) if degrees else 0,
        degree_mean=(2.0 * m / n) if n else 0.0,
        degree_max=max(degrees) if degrees else 0,
        connected_components=len(components),
        largest_component_fraction=(len(largest) / n) if n else 0.0,
        diameter_of_largest_component=_diameter(sorted(largest), sub_links),
        articulation_points=tuple(sorted(nx.articulation_points(graph))),
        bridges=tuple(sorted(tuple(sorted(e)) for e in nx.bridges(graph))),
    )


def layer_metrics(layer: Layer) -> LayerMetrics:
    return graph_metrics(layer.component_names, layer.links)


def sublayer_metrics(layer: Layer) -> dict[str, LayerMetrics]:
    """Metrics per protocol sub-layer, computed over the full layer vertex
    set so protocol reachability gaps show up as extra components."""
    return {
        sub.protocol: graph_metrics(layer.component_names, sub.links)
        for sub in multiplex.decompose_layer(layer)
    }


@dataclass(frozen=True)
class InterlayerDegreeStats:
    """Projection-degree histograms of one cross-layer, keyed degree -> node
    count; the weighted sum of either side equals the projection count."""

    upper_index: int
    upper: Mapping[int, int]
    lower: Mapping[int, int]


def interlayer_degree_stats(
    network: MultilayerNetwork, upper_index: int
) -> InterlayerDegreeStats:
    cross = network.cross_layer(upper_index)
    upper_deg = Counter(len(v) for v in cross.supporters_by_upper.values())
    lower_deg = Counter(len(v) for v in cross.dependents_by_lower.values())
    return InterlayerDegreeStats(upper_index, dict(upper_deg), dict(lower_deg))
