"""Fault-injection cascades.

Failures propagate strictly upward: a component above the bottom layer fails
once every one of its supporters is gone (redundancy semantics), and a link
goes inactive once no pair of surviving supporters of its endpoints remains
connected in the layer below. Propagation iterates to a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graphutil import component_labels
from .model import (
    ComponentId,
    Layer,
    LayerRole,
    Link,
    MultilayerNetwork,
    canonical_link,
)

LinkRef = tuple[int, Link]  # (layer index, canonical name pair)


class UnknownScenarioElement(ValueError):
    """Scenario references a node or link absent from the network."""


@dataclass(frozen=True)
class FaultScenario:
    failed_nodes: frozenset[ComponentId] = frozenset()
    failed_links: frozenset[LinkRef] = frozenset()
    label: str = ""

    @staticmethod
    def of(
        nodes: Iterable[ComponentId] = (),
        links: Iterable[tuple[int, tuple[str, str]]] = (),
        label: str = "",
    ) -> "FaultScenario":
        return FaultScenario(
            frozenset(nodes),
            frozenset((idx, canonical_link(*pair)) for idx, pair in links),
            label,
        )

    def issubset(self, other: "FaultScenario") -> bool:
        return (
            self.failed_nodes <= other.failed_nodes
            and self.failed_links <= other.failed_links
        )


@dataclass(frozen=True)
class CascadeRound:
    failed_nodes: frozenset[ComponentId]
    inactive_links: frozenset[LinkRef]


@dataclass(frozen=True)
class CascadeResult:
    scenario: FaultScenario
    rounds: tuple[CascadeRound, ...]
    final_failed_nodes: frozenset[ComponentId]
    final_inactive_links: frozenset[LinkRef]
    per_layer_survival: Mapping[int, float]
    per_layer_largest_component_fraction: Mapping[int, float]
    functional_alive: bool

    @property
    def total_failed(self) -> int:
        return len(self.final_failed_nodes)


def _check_scenario(network: MultilayerNetwork, scenario: FaultScenario) -> None:
    for node in scenario.failed_nodes:
        try:
            layer = network.layer(node.layer_index)
        except KeyError:
            raise UnknownScenarioElement(f"no layer {node.layer_index} for node {node}")
        if node.local_name not in layer.component_names:
            raise UnknownScenarioElement(f"unknown component {node}")
    for idx, link in scenario.failed_links:
        try:
            layer = network.layer(idx)
        except KeyError:
            raise UnknownScenarioElement(f"no layer {idx} for link {link}")
        if link not in set(layer.links):
            raise UnknownScenarioElement(f"unknown link {link} on layer {idx}")


def _active_lower_state(
    layer: Layer,
    failed: frozenset[ComponentId],
    inactive: frozenset[LinkRef],
) -> dict[str, int]:
    """Component labels of a layer restricted to survivors and active links."""
    survivors = [
        n for n in layer.component_names
        if ComponentId(layer.index, n) not in failed
    ]
    active = [
        (a, b)
        for a, b in layer.links
        if (layer.index, (a, b)) not in inactive
        and ComponentId(layer.index, a) not in failed
        and ComponentId(layer.index, b) not in failed
    ]
    return component_labels(survivors, active)


def run_cascade(network: MultilayerNetwork, scenario: FaultScenario) -> CascadeResult:
    """Propagate an injected fault set upward to its fixed point.

    Each round re-evaluates both rules against the state at the start of the
    round; bottom-layer elements fail only by injection. The recorded rounds
    exclude the injection itself.
    """
    _check_scenario(network, scenario)
    failed = frozenset(scenario.failed_nodes)
    inactive = frozenset(scenario.failed_links)
    rounds: list[CascadeRound] = []

    while True:
        new_failed: set[ComponentId] = set()
        new_inactive: set[LinkRef] = set()

        for cross in network.cross_layers:
            alpha = cross.upper_index
            upper = network.layer(alpha)
            for name, sups in cross.supporters_by_upper.items():
                node = ComponentId(alpha, name)
                if node in failed:
                    continue
                if all(ComponentId(alpha - 1, s) in failed for s in sups):
                    new_failed.add(node)

        lower_labels: dict[int, dict[str, int]] = {}
        for layer in network.layers:
            for a, b in layer.links:
                ref: LinkRef = (layer.index, (a, b))
                if ref in inactive:
                    continue
                if (
                    ComponentId(layer.index, a) in failed
                    or ComponentId(layer.index, b) in failed
                ):
                    new_inactive.add(ref)
                    continue
                if layer.index == 1:
                    continue
                if layer.index not in lower_labels:
                    lower_labels[layer.index] = _active_lower_state(
                        network.layer(layer.index - 1), failed, inactive
                    )
                labels = lower_labels[layer.index]
                cross = network.cross_layer(layer.index)
                comps_a = {
                    labels[s]
                    for s in cross.supporters_by_upper.get(a, ())
                    if s in labels
                }
                comps_b = {
                    labels[s]
                    for s in cross.supporters_by_upper.get(b, ())
                    if s in labels
                }
                if not (comps_a & comps_b):
                    new_inactive.add(ref)

        if not new_failed and not new_inactive:
            break
        rounds.append(CascadeRound(frozenset(new_failed), frozenset(new_inactive)))
        failed |= new_failed
        inactive |= new_inactive

    survival: dict[int, float] = {}
    largest_fraction: dict[int, float] = {}
    functional_alive = True
    has_functional = any(l.role is LayerRole.FUNCTIONAL for l in network.layers)
    if has_functional:
        functional_alive = False
    for layer in network.layers:
        total = len(layer.components)
        labels = _active_lower_state(layer, failed, inactive)
        survivors = len(labels)
        survival[layer.index] = survivors / total
        if survivors:
            sizes: dict[int, int] = {}
            for lab in labels.values():
                sizes[lab] = sizes.get(lab, 0) + 1
            largest_fraction[layer.index] = max(sizes.values()) / survivors
        else:
            largest_fraction[layer.index] = 0.0
        if layer.role is LayerRole.FUNCTIONAL and survivors:
            functional_alive = True

    return CascadeResult(
        scenario=scenario,
        rounds=tuple(rounds),
        final_failed_nodes=failed,
        final_inactive_links=inactive,
        per_layer_survival=survival,
        per_layer_largest_component_fraction=largest_fraction,
        functional_alive=functional_alive,
    )


@dataclass(frozen=True)
class ImpactEntry:
    node: ComponentId
    result: CascadeResult


def exhaustive_single_faults(network: MultilayerNetwork) -> list[ImpactEntry]:
    """One cascade per single bottom-layer node failure, ranked by severity:
    functional-layer kills first, then total failed nodes, ties by name."""
    entries = [
        ImpactEntry(
            ComponentId(1, comp.name),
            run_cascade(
                network,
                FaultScenario.of([ComponentId(1, comp.name)], label=f"fail {comp.name}"),
            ),
        )
        for comp in network.layer(1).components
    ]
    return sorted(
        entries,
        key=lambda e: (
            e.result.functional_alive,
            -e.result.total_failed,
            e.node.local_name,
        ),
    )
