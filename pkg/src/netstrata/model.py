"""Core domain types for hierarchical multilayer network models.

A network is an ordered stack of layers (bottom = physical reality, higher =
virtual strata) plus one bipartite cross-layer between each adjacent pair.
All types are frozen dataclasses; `build_network` canonicalizes its inputs so
structurally equal networks compare equal with `==`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class ModelError(ValueError):
    """Structural problem detected while assembling a network."""


class EmptyLayerSet(ModelError):
    """No layers at all, or a layer with an empty component set."""


class DuplicateComponentName(ModelError):
    pass


class DanglingLinkEndpoint(ModelError):
    """A link or projection references a component that does not exist."""


class SelfLoopLink(ModelError):
    pass


class CrossLayerIndexMismatch(ModelError):
    """Cross-layer declared for a nonexistent or duplicated adjacent pair."""


class MissingCrossLayer(ModelError):
    """An adjacent layer pair has no cross-layer."""


class EmptyEdgeSet(ModelError):
    """Empty link or projection set rejected in strict mode."""


class EmptySpecSet(ModelError):
    """A component declares no supported protocols."""


class UndeclaredProtocol(ModelError):
    """A component uses a protocol missing from its layer's declared set."""


class LayerIndexGap(ModelError):
    """Layer indices are not exactly 1..N."""


class Mode(str, Enum):
    """Validation strictness. Strict enforces every non-emptiness rule;
    relaxed downgrades empty link/projection sets to warnings."""

    STRICT = "strict"
    RELAXED = "relaxed"


class ComponentKind(str, Enum):
    HARDWARE = "hardware"
    SOFTWARE = "software"
    PERSON = "person"
    ENGINEERING_SYSTEM = "engineering-system"


class LayerRole(str, Enum):
    ENGINEERING_ENVIRONMENT = "engineering-environment"
    PHYSICAL = "physical"
    LOGICAL = "logical"
    SERVICE = "service"
    FUNCTIONAL = "functional"
    SOCIAL_ENVIRONMENT = "social-environment"
    CUSTOM = "custom"


@dataclass(frozen=True, order=True)
class ComponentId:
    """Identity of a component: (layer index, name unique within the layer)."""

    layer_index: int
    local_name: str

    def __str__(self) -> str:
        return f"{self.layer_index}/{self.local_name}"


@dataclass(frozen=True)
class SpecSet:
    """Component specification label: supported protocols plus free-form
    key/value attributes, both kept sorted for canonical equality."""

    protocols: tuple[str, ...]
    attributes: tuple[tuple[str, str], ...] = ()

    @staticmethod
    def of(
        protocols: Iterable[str],
        attributes: Mapping[str, str] | Iterable[tuple[str, str]] = (),
    ) -> "SpecSet":
        attrs = dict(attributes)
        return SpecSet(
            protocols=tuple(sorted(set(protocols))),
            attributes=tuple(sorted(attrs.items())),
        )


@dataclass(frozen=True)
class Component:
    name: str
    kind: ComponentKind
    spec: SpecSet

    @property
    def protocols(self) -> tuple[str, ...]:
        return self.spec.protocols


Link = tuple[str, str]


def canonical_link(a: str, b: str) -> Link:
    """Undirected link as a sorted name pair."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Layer:
    """One stratum: components, intralayer links, and its protocol set."""

    index: int
    role: LayerRole
    components: tuple[Component, ...]
    links: tuple[Link, ...]
    protocols: tuple[str, ...]

    @staticmethod
    def of(
        index: int,
        components: Iterable[Component],
        links: Iterable[tuple[str, str]] = (),
        role: LayerRole = LayerRole.CUSTOM,
        protocols: Iterable[str] | None = None,
    ) -> "Layer":
        """Canonical constructor: sorts everything; protocols default to the
        union of the components' supported protocols."""
        comps = tuple(sorted(components, key=lambda c: c.name))
        canon_links = tuple(sorted({canonical_link(a, b) for a, b in links}))
        if protocols is None:
            protos: set[str] = set()
            for c in comps:
                protos.update(c.protocols)
        else:
            protos = set(protocols)
        return Layer(index, role, comps, canon_links, tuple(sorted(protos)))

    @cached_property
    def by_name(self) -> dict[str, Component]:
        return {c.name: c for c in self.components}

    @cached_property
    def component_names(self) -> frozenset[str]:
        return frozenset(c.name for c in self.components)

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {c.name: [] for c in self.components}
        for a, b in self.links:
            adj[a].append(b)
            adj[b].append(a)
        return {n: tuple(ns) for n, ns in adj.items()}

    def component_id(self, name: str) -> ComponentId:
        return ComponentId(self.index, name)


Projection = tuple[str, str]  # (upper component name, lower component name)


@dataclass(frozen=True)
class CrossLayer:
    """Bipartite projection graph from layer `upper_index` down to the layer
    directly below it."""

    upper_index: int
    projections: tuple[Projection, ...]

    @staticmethod
    def of(upper_index: int, projections: Iterable[tuple[str, str]]) -> "CrossLayer":
        return CrossLayer(upper_index, tuple(sorted(set(projections))))

    @cached_property
    def supporters_by_upper(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for up, low in self.projections:
            out.setdefault(up, []).append(low)
        return {n: tuple(v) for n, v in out.items()}

    @cached_property
    def dependents_by_lower(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for up, low in self.projections:
            out.setdefault(low, []).append(up)
        return {n: tuple(v) for n, v in out.items()}


@dataclass(frozen=True)
class FlatEdge:
    """Edge of the flattened network, tagged with its origin."""

    source: ComponentId
    target: ComponentId
    interlayer: bool


@dataclass(frozen=True)
class FlatGraph:
    vertices: frozenset[ComponentId]
    edges: frozenset[FlatEdge]


@dataclass(frozen=True)
class MultilayerNetwork:
    """Validated, immutable multilayer model. Build via `build_network`."""

    layers: tuple[Layer, ...]
    cross_layers: tuple[CrossLayer, ...]
    mode: Mode
    warnings: tuple[str, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.layers)

    def layer(self, index: int) -> Layer:
        if not 1 <= index <= len(self.layers):
            raise KeyError(f"no layer with index {index}")
        return self.layers[index - 1]

    def cross_layer(self, upper_index: int) -> CrossLayer:
        if not 2 <= upper_index <= len(self.layers):
            raise KeyError(f"no cross-layer with upper index {upper_index}")
        return self.cross_layers[upper_index - 2]

    def flatten(self) -> FlatGraph:
        """Disjoint union of all layer vertex sets, plus every intralayer link
        and interlayer projection as tagged edges."""
        vertices: set[ComponentId] = set()
        edges: set[FlatEdge] = set()
        for layer in self.layers:
            for comp in layer.components:
                vertices.add(ComponentId(layer.index, comp.name))
            for a, b in layer.links:
                edges.add(
                    FlatEdge(
                        ComponentId(layer.index, a),
                        ComponentId(layer.index, b),
                        interlayer=False,
                    )
                )
        for cross in self.cross_layers:
            for up, low in cross.projections:
                edges.add(
                    FlatEdge(
                        ComponentId(cross.upper_index, up),
                        ComponentId(cross.upper_index - 1, low),
                        interlayer=True,
                    )
                )
        return FlatGraph(frozenset(vertices), frozenset(edges))


def _check_layer(layer: Layer, mode: Mode, warnings: list[str]) -> None:
    if not layer.components:
        raise EmptyLayerSet(f"layer {layer.index} has no components")
    names: set[str] = set()
    for comp in layer.components:
        if not comp.name:
            raise DuplicateComponentName(
                f"layer {layer.index}: component name must be non-empty"
            )
        if comp.name in names:
            raise DuplicateComponentName(
                f"layer {layer.index}: duplicate component name {comp.name!r}"
            )
        names.add(comp.name)
        if not comp.spec.protocols:
            raise EmptySpecSet(
                f"layer {layer.index}: component {comp.name!r} declares no protocols"
            )
        undeclared = set(comp.protocols) - set(layer.protocols)
        if undeclared:
            raise UndeclaredProtocol(
                f"layer {layer.index}: component {comp.name!r} uses protocols "
                f"{sorted(undeclared)} missing from the layer protocol set"
            )
    for a, b in layer.links:
        if a == b:
            raise SelfLoopLink(f"layer {layer.index}: self-loop on {a!r}")
        for endpoint in (a, b):
            if endpoint not in names:
                raise DanglingLinkEndpoint(
                    f"layer {layer.index}: link ({a!r}, {b!r}) references "
                    f"unknown component {endpoint!r}"
                )
    if not layer.links:
        if mode is Mode.STRICT:
            raise EmptyEdgeSet(f"layer {layer.index} has no links (strict mode)")
        warnings.append(f"layer {layer.index} has no links")
    used = {p for c in layer.components for p in c.protocols}
    unused = set(layer.protocols) - used
    if unused:
        warnings.append(
            f"layer {layer.index}: declared protocols {sorted(unused)} are "
            "supported by no component"
        )


def _check_cross_layer(
    cross: CrossLayer,
    upper: Layer,
    lower: Layer,
    mode: Mode,
    warnings: list[str],
) -> None:
    if not cross.projections:
        if mode is Mode.STRICT:
            raise EmptyEdgeSet(
                f"cross-layer {cross.upper_index}->{cross.upper_index - 1} has "
                "no projections (strict mode)"
            )
        warnings.append(
            f"cross-layer {cross.upper_index}->{cross.upper_index - 1} has no projections"
        )
    for up, low in cross.projections:
        if up not in upper.component_names:
            raise DanglingLinkEndpoint(
                f"cross-layer {cross.upper_index}->{cross.upper_index - 1}: "
                f"projection ({up!r}, {low!r}) references unknown upper component {up!r}"
            )
        if low not in lower.component_names:
            raise DanglingLinkEndpoint(
                f"cross-layer {cross.upper_index}->{cross.upper_index - 1}: "
                f"projection ({up!r}, {low!r}) references unknown lower component {low!r}"
            )


def build_network(
    layers: Sequence[Layer],
    cross_layers: Sequence[CrossLayer] = (),
    mode: Mode | str = Mode.STRICT,
) -> MultilayerNetwork:
    """Assemble and eagerly validate a multilayer network.

    Inputs are canonicalized (sorted components, links, projections), so the
    same model handed over in any order builds a structurally equal network.
    """
    mode = Mode(mode)
    if not layers:
        raise EmptyLayerSet("a network needs at least one layer")
    layers = tuple(
        Layer.of(l.index, l.components, l.links, l.role, l.protocols)
        for l in sorted(layers, key=lambda l: l.index)
    )
    indices = [l.index for l in layers]
    if indices != list(range(1, len(layers) + 1)):
        raise LayerIndexGap(f"layer indices must be exactly 1..N, got {indices}")

    warnings: list[str] = []
    for layer in layers:
        _check_layer(layer, mode, warnings)

    by_upper: dict[int, CrossLayer] = {}
    for cross in cross_layers:
        if not 2 <= cross.upper_index <= len(layers):
            raise CrossLayerIndexMismatch(
                f"cross-layer upper index {cross.upper_index} is outside 2..{len(layers)}"
            )
        if cross.upper_index in by_upper:
            raise CrossLayerIndexMismatch(
                f"duplicate cross-layer for upper index {cross.upper_index}"
            )
        by_upper[cross.upper_index] = CrossLayer.of(cross.upper_index, cross.projections)
    for alpha in range(2, len(layers) + 1):
        if alpha not in by_upper:
            raise MissingCrossLayer(
                f"no cross-layer between layer {alpha} and layer {alpha - 1}"
            )
    ordered_cross = tuple(by_upper[a] for a in range(2, len(layers) + 1))
    for cross in ordered_cross:
        _check_cross_layer(
            cross, layers[cross.upper_index - 1], layers[cross.upper_index - 2],
            mode, warnings,
        )

    return MultilayerNetwork(layers, ordered_cross, mode, tuple(warnings))
