"""Protocol-induced decomposition of a layer into multiplex sub-layers.

A link belongs to the sub-layer of protocol p iff both endpoints support p,
so the same link can live in several sub-layers at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Layer, Link


@dataclass(frozen=True)
class ProtocolSubLayer:
    layer_index: int
    protocol: str
    links: tuple[Link, ...]


def _shared_protocols(layer: Layer, link: Link) -> frozenset[str]:
    a, b = link
    return (
        frozenset(layer.by_name[a].protocols)
        & frozenset(layer.by_name[b].protocols)
        & frozenset(layer.protocols)
    )


def decompose_layer(layer: Layer) -> list[ProtocolSubLayer]:
    """Split a layer into one sub-layer per protocol that induces at least
    one link. Protocols inducing nothing are reported by `unused_protocols`,
    not emitted here."""
    by_protocol: dict[str, list[Link]] = {}
    for link in layer.links:
        for p in _shared_protocols(layer, link):
            by_protocol.setdefault(p, []).append(link)
    return [
        ProtocolSubLayer(layer.index, p, tuple(sorted(by_protocol[p])))
        for p in sorted(by_protocol)
    ]


def unused_protocols(layer: Layer) -> list[str]:
    """Declared protocols that induce no link at all."""
    induced = {sub.protocol for sub in decompose_layer(layer)}
    return sorted(set(layer.protocols) - induced)


def check_cover(layer: Layer) -> list[Link]:
    """Links whose endpoints share no protocol; these links are lost by the
    decomposition, so an empty result means the sub-layer union reproduces
    the layer's link set exactly."""
    return sorted(
        link for link in layer.links if not _shared_protocols(layer, link)
    )


def multiplex_multiplicity(layer: Layer) -> dict[Link, int]:
    """How many sub-layers each linked pair appears in; bounded by the size
    of the layer's protocol set."""
    return {link: len(_shared_protocols(layer, link)) for link in layer.links}
