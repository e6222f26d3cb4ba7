"""Top-down consistency checks across adjacent layers.

Two rules are enforced: every node above the bottom layer must project onto
at least one supporter below, and every intralayer link must be backed by a
lower-layer path between some supporter pair of its endpoints (a shared
supporter counts). Cross-layer degrees additionally classify the technology
each projection pattern represents.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from . import multiplex
from .graphutil import component_labels
from .model import ComponentId, Link, Mode, MultilayerNetwork


class BottomLayerHasNoSupporters(LookupError):
    """Supporters were requested for a bottom-layer component."""


class ViolationKind(str, Enum):
    UNSUPPORTED_NODE = "unsupported-node"
    CARDINALITY = "cardinality"
    PATH_INCONSISTENCY = "path-inconsistency"
    UNCOVERED_LINK = "uncovered-link"
    ROLE_KIND_MISMATCH = "role-kind-mismatch"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    layer_index: int
    subject: ComponentId | Link | None
    detail: str

    def sort_key(self) -> tuple:
        return (self.layer_index, self.kind.value, str(self.subject), self.detail)


class NodeClass(str, Enum):
    CLUSTERING = "clustering"
    VIRTUALIZATION_REPLICATION = "virtualization-replication"
    DEDICATED = "dedicated"
    MIXED = "mixed"


@dataclass(frozen=True)
class InterlayerClass:
    """Per-node technology classification for one cross-layer."""

    upper_index: int
    classes: Mapping[ComponentId, NodeClass]


@dataclass(frozen=True)
class ValidationReport:
    mode: Mode
    violations: tuple[Violation, ...]
    warnings: tuple[str, ...]
    interlayer_classes: tuple[InterlayerClass, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def supporters(network: MultilayerNetwork, component: ComponentId) -> set[ComponentId]:
    """Lower-layer components this component projects onto."""
    if component.layer_index == 1:
        raise BottomLayerHasNoSupporters(
            f"{component} is on the bottom layer; nothing lies below it"
        )
    cross = network.cross_layer(component.layer_index)
    lows = cross.supporters_by_upper.get(component.local_name, ())
    return {ComponentId(component.layer_index - 1, low) for low in lows}


def check_node_support(network: MultilayerNetwork) -> list[Violation]:
    """Unsupported-node and cardinality violations for every cross-layer."""
    out: list[Violation] = []
    for cross in network.cross_layers:
        alpha = cross.upper_index
        upper = network.layer(alpha)
        for comp in upper.components:
            if comp.name not in cross.supporters_by_upper:
                out.append(
                    Violation(
                        ViolationKind.UNSUPPORTED_NODE,
                        alpha,
                        ComponentId(alpha, comp.name),
                        f"{alpha}/{comp.name} has no supporter on layer {alpha - 1}",
                    )
                )
        if len(upper.components) > len(cross.projections):
            out.append(
                Violation(
                    ViolationKind.CARDINALITY,
                    alpha,
                    None,
                    f"layer {alpha} has {len(upper.components)} components but only "
                    f"{len(cross.projections)} projections to layer {alpha - 1}",
                )
            )
    return sorted(out, key=Violation.sort_key)


def check_path_consistency(network: MultilayerNetwork) -> list[Violation]:
    """Every upper-layer link needs some supporter pair of its endpoints to be
    connected within the layer below; checking links suffices because upper
    multi-hop paths concatenate from supported links."""
    out: list[Violation] = []
    for cross in network.cross_layers:
        alpha = cross.upper_index
        upper = network.layer(alpha)
        lower = network.layer(alpha - 1)
        labels = component_labels(lower.component_names, lower.links)
        for a, b in upper.links:
            sup_a = cross.supporters_by_upper.get(a, ())
            sup_b = cross.supporters_by_upper.get(b, ())
            comps_a = {labels[s] for s in sup_a}
            comps_b = {labels[s] for s in sup_b}
            if not (comps_a & comps_b):
                out.append(
                    Violation(
                        ViolationKind.PATH_INCONSISTENCY,
                        alpha,
                        (a, b),
                        f"link ({a}, {b}) on layer {alpha} has no supporter pair "
                        f"connected within layer {alpha - 1}",
                    )
                )
    return sorted(out, key=Violation.sort_key)


def classify_interlayer(network: MultilayerNetwork, upper_index: int) -> InterlayerClass:
    """Classify every node incident to a cross-layer by the technology its
    projection pattern represents. Each projection carries the labels implied
    by its endpoint degrees and both endpoints inherit them; a node collecting
    more than one distinct label is mixed."""
    cross = network.cross_layer(upper_index)
    deg_up: dict[str, int] = {}
    deg_low: dict[str, int] = {}
    for up, low in cross.projections:
        deg_up[up] = deg_up.get(up, 0) + 1
        deg_low[low] = deg_low.get(low, 0) + 1

    labels: dict[ComponentId, set[NodeClass]] = {}
    for up, low in cross.projections:
        edge_labels: set[NodeClass] = set()
        if deg_up[up] > 1:
            edge_labels.add(NodeClass.CLUSTERING)
        if deg_low[low] > 1:
            edge_labels.add(NodeClass.VIRTUALIZATION_REPLICATION)
        if deg_up[up] == 1 and deg_low[low] == 1:
            edge_labels.add(NodeClass.DEDICATED)
        for node in (ComponentId(upper_index, up), ComponentId(upper_index - 1, low)):
            labels.setdefault(node, set()).update(edge_labels)

    classes = {
        node: (next(iter(ls)) if len(ls) == 1 else NodeClass.MIXED)
        for node, ls in labels.items()
    }
    return InterlayerClass(upper_index, classes)


def validate(network: MultilayerNetwork) -> ValidationReport:
    """Bundle node-support, cardinality, path-consistency and multiplex-cover
    checks plus per-cross-layer classification into one report."""
    violations: list[Violation] = []
    warnings: list[str] = list(network.warnings)

    violations.extend(check_node_support(network))
    violations.extend(check_path_consistency(network))

    for layer in network.layers:
        for link in multiplex.check_cover(layer):
            finding = Violation(
                ViolationKind.UNCOVERED_LINK,
                layer.index,
                link,
                f"link ({link[0]}, {link[1]}) on layer {layer.index} has no "
                "protocol shared by both endpoints",
            )
            if network.mode is Mode.STRICT:
                violations.append(finding)
            else:
                warnings.append(finding.detail)
        for p in multiplex.unused_protocols(layer):
            warnings.append(f"layer {layer.index}: protocol {p!r} induces no links")

    classes = tuple(
        classify_interlayer(network, cross.upper_index)
        for cross in network.cross_layers
    )
    return ValidationReport(
        mode=network.mode,
        violations=tuple(sorted(violations, key=Violation.sort_key)),
        warnings=tuple(warnings),
        interlayer_classes=classes,
    )
