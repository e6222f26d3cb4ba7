"""Model document IO.

Models live in a single JSON document (extension .mln.json) with a closed
schema; serialization is canonical, so structurally equal models produce
byte-identical files. Every rejection carries a position: line/column for
malformed JSON, a JSON path for schema and reference errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from . import analysis, multiplex
from .consistency import ValidationReport
from .faults import CascadeResult, FaultScenario
from .model import (
    Component,
    ComponentId,
    ComponentKind,
    CrossLayer,
    Layer,
    LayerRole,
    Mode,
    ModelError,
    MultilayerNetwork,
    SpecSet,
    build_network,
    canonical_link,
)
from .reference import ConformanceReport

FORMAT_VERSION = "1"
REPORT_VERSION = "1"


class ModelParseError(ValueError):
    """Document rejected; `position` pinpoints where."""

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


class ModelSyntaxError(ModelParseError):
    pass


class UnknownFieldError(ModelParseError):
    pass


class DanglingReferenceError(ModelParseError):
    pass


class UnsupportedFormatVersionError(ModelParseError):
    pass


@dataclass(frozen=True)
class ModelDocument:
    format_version: str
    network: MultilayerNetwork
    scenarios: tuple[FaultScenario, ...] = ()

    def scenario(self, label: str) -> FaultScenario:
        for s in self.scenarios:
            if s.label == label:
                return s
        raise KeyError(f"no scenario named {label!r}")


def _expect(value: Any, typ: type, path: str, what: str) -> Any:
    if typ is float and isinstance(value, int):
        return float(value)
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise ModelParseError(
            f"expected {what}, got {type(value).__name__}", path
        )
    return value


def _closed(obj: Mapping[str, Any], allowed: set[str], required: set[str], path: str) -> None:
    _expect(obj, dict, path, "an object")
    for key in obj:
        if key not in allowed:
            raise UnknownFieldError(f"unknown field {key!r}", path)
    for key in required:
        if key not in obj:
            raise ModelParseError(f"missing required field {key!r}", path)


def _string_pair(value: Any, path: str) -> tuple[str, str]:
    _expect(value, list, path, "a two-element array")
    if len(value) != 2:
        raise ModelParseError("expected a two-element array", path)
    return (
        _expect(value[0], str, f"{path}[0]", "a string"),
        _expect(value[1], str, f"{path}[1]", "a string"),
    )


def _parse_component(obj: Any, path: str) -> Component:
    _closed(obj, {"name", "kind", "protocols", "attributes"}, {"name", "kind", "protocols"}, path)
    name = _expect(obj["name"], str, f"{path}.name", "a string")
    kind_raw = _expect(obj["kind"], str, f"{path}.kind", "a string")
    try:
        kind = ComponentKind(kind_raw)
    except ValueError:
        raise ModelParseError(
            f"unknown component kind {kind_raw!r}", f"{path}.kind"
        )
    protocols = _expect(obj["protocols"], list, f"{path}.protocols", "an array")
    for i, p in enumerate(protocols):
        _expect(p, str, f"{path}.protocols[{i}]", "a string")
    attributes = obj.get("attributes", {})
    _expect(attributes, dict, f"{path}.attributes", "an object")
    for k, v in attributes.items():
        _expect(v, str, f"{path}.attributes.{k}", "a string")
    return Component(name, kind, SpecSet.of(protocols, attributes))


def _parse_layer(obj: Any, index: int, path: str) -> Layer:
    _closed(obj, {"role", "protocols", "components", "links"}, {"role", "components"}, path)
    role_raw = _expect(obj["role"], str, f"{path}.role", "a string")
    try:
        role = LayerRole(role_raw)
    except ValueError:
        raise ModelParseError(f"unknown layer role {role_raw!r}", f"{path}.role")
    comps_raw = _expect(obj["components"], list, f"{path}.components", "an array")
    components = [
        _parse_component(c, f"{path}.components[{i}]") for i, c in enumerate(comps_raw)
    ]
    names = {c.name for c in components}
    links = []
    for i, link_raw in enumerate(_expect(obj.get("links", []), list, f"{path}.links", "an array")):
        a, b = _string_pair(link_raw, f"{path}.links[{i}]")
        for endpoint in (a, b):
            if endpoint not in names:
                raise DanglingReferenceError(
                    f"link endpoint {endpoint!r} is not a component of this layer",
                    f"{path}.links[{i}]",
                )
        links.append((a, b))
    protocols = None
    if "protocols" in obj:
        protocols = _expect(obj["protocols"], list, f"{path}.protocols", "an array")
        for i, p in enumerate(protocols):
            _expect(p, str, f"{path}.protocols[{i}]", "a string")
    return Layer.of(index, components, links, role, protocols)


def _parse_cross_layer(obj: Any, layers: list[Layer], path: str) -> CrossLayer:
    _closed(obj, {"upper_index", "projections"}, {"upper_index", "projections"}, path)
    upper_index = _expect(obj["upper_index"], int, f"{path}.upper_index", "an integer")
    if not 2 <= upper_index <= len(layers):
        raise ModelParseError(
            f"upper_index {upper_index} is outside 2..{len(layers)}",
            f"{path}.upper_index",
        )
    upper_names = layers[upper_index - 1].component_names
    lower_names = layers[upper_index - 2].component_names
    projections = []
    raw = _expect(obj["projections"], list, f"{path}.projections", "an array")
    for i, pair in enumerate(raw):
        up, low = _string_pair(pair, f"{path}.projections[{i}]")
        if up not in upper_names:
            raise DanglingReferenceError(
                f"projection upper endpoint {up!r} is not on layer {upper_index}",
                f"{path}.projections[{i}]",
            )
        if low not in lower_names:
            raise DanglingReferenceError(
                f"projection lower endpoint {low!r} is not on layer {upper_index - 1}",
                f"{path}.projections[{i}]",
            )
        projections.append((up, low))
    return CrossLayer.of(upper_index, projections)


def _parse_node_ref(obj: Any, layers: list[Layer], path: str) -> ComponentId:
    _closed(obj, {"layer", "name"}, {"layer", "name"}, path)
    layer = _expect(obj["layer"], int, f"{path}.layer", "an integer")
    name = _expect(obj["name"], str, f"{path}.name", "a string")
    if not 1 <= layer <= len(layers):
        raise DanglingReferenceError(f"no layer {layer}", f"{path}.layer")
    if name not in layers[layer - 1].component_names:
        raise DanglingReferenceError(
            f"no component {name!r} on layer {layer}", f"{path}.name"
        )
    return ComponentId(layer, name)


def _parse_scenario(obj: Any, layers: list[Layer], path: str) -> FaultScenario:
    _closed(obj, {"label", "failed_nodes", "failed_links"}, {"label"}, path)
    label = _expect(obj["label"], str, f"{path}.label", "a string")
    nodes = [
        _parse_node_ref(n, layers, f"{path}.failed_nodes[{i}]")
        for i, n in enumerate(
            _expect(obj.get("failed_nodes", []), list, f"{path}.failed_nodes", "an array")
        )
    ]
    links: list[tuple[int, tuple[str, str]]] = []
    raw_links = _expect(obj.get("failed_links", []), list, f"{path}.failed_links", "an array")
    for i, entry in enumerate(raw_links):
        lpath = f"{path}.failed_links[{i}]"
        _closed(entry, {"layer", "link"}, {"layer", "link"}, lpath)
        layer = _expect(entry["layer"], int, f"{lpath}.layer", "an integer")
        if not 1 <= layer <= len(layers):
            raise DanglingReferenceError(f"no layer {layer}", f"{lpath}.layer")
        a, b = _string_pair(entry["link"], f"{lpath}.link")
        if canonical_link(a, b) not in set(layers[layer - 1].links):
            raise DanglingReferenceError(
                f"no link ({a!r}, {b!r}) on layer {layer}", f"{lpath}.link"
            )
        links.append((layer, (a, b)))
    return FaultScenario.of(nodes, links, label)


def parse_model(text: str) -> ModelDocument:
    """Parse and fully validate a model document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, f"line {exc.lineno}, column {exc.colno}")

    _closed(
        data,
        {"format_version", "mode", "layers", "cross_layers", "scenarios"},
        {"format_version", "layers"},
        "$",
    )
    version = _expect(data["format_version"], str, "$.format_version", "a string")
    if version != FORMAT_VERSION:
        raise UnsupportedFormatVersionError(
            f"unsupported format version {version!r} (expected {FORMAT_VERSION!r})",
            "$.format_version",
        )
    mode_raw = _expect(data.get("mode", "strict"), str, "$.mode", "a string")
    try:
        mode = Mode(mode_raw)
    except ValueError:
        raise ModelParseError(f"unknown mode {mode_raw!r}", "$.mode")

    layers_raw = _expect(data["layers"], list, "$.layers", "an array")
    if not layers_raw:
        raise ModelParseError("at least one layer is required", "$.layers")
    layers = [
        _parse_layer(obj, i + 1, f"$.layers[{i}]") for i, obj in enumerate(layers_raw)
    ]
    cross_raw = _expect(data.get("cross_layers", []), list, "$.cross_layers", "an array")
    cross_layers = [
        _parse_cross_layer(obj, layers, f"$.cross_layers[{i}]")
        for i, obj in enumerate(cross_raw)
    ]
    try:
        network = build_network(layers, cross_layers, mode)
    except ModelError as exc:
        raise ModelParseError(str(exc), "$")

    scenarios_raw = _expect(data.get("scenarios", []), list, "$.scenarios", "an array")
    scenarios = []
    seen_labels: set[str] = set()
    for i, obj in enumerate(scenarios_raw):
        scenario = _parse_scenario(obj, layers, f"$.scenarios[{i}]")
        if scenario.label in seen_labels:
            raise ModelParseError(
                f"duplicate scenario label {scenario.label!r}", f"$.scenarios[{i}].label"
            )
        seen_labels.add(scenario.label)
        scenarios.append(scenario)
    scenarios.sort(key=lambda s: s.label)
    return ModelDocument(version, network, tuple(scenarios))


def serialize_model(doc: ModelDocument) -> str:
    """Canonical document text: layers bottom-to-top, everything sorted,
    byte-identical for structurally equal documents."""
    network = doc.network
    data: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "mode": network.mode.value,
        "layers": [
            {
                "role": layer.role.value,
                "protocols": list(layer.protocols),
                "components": [
                    {
                        "name": comp.name,
                        "kind": comp.kind.value,
                        "protocols": list(comp.spec.protocols),
                        **(
                            {"attributes": dict(comp.spec.attributes)}
                            if comp.spec.attributes
                            else {}
                        ),
                    }
                    for comp in layer.components
                ],
                "links": [list(link) for link in layer.links],
            }
            for layer in network.layers
        ],
        "cross_layers": [
            {
                "upper_index": cross.upper_index,
                "projections": [list(p) for p in cross.projections],
            }
            for cross in network.cross_layers
        ],
    }
    if doc.scenarios:
        data["scenarios"] = [
            {
                "label": s.label,
                "failed_nodes": [
                    {"layer": n.layer_index, "name": n.local_name}
                    for n in sorted(s.failed_nodes)
                ],
                "failed_links": [
                    {"layer": idx, "link": list(link)}
                    for idx, link in sorted(s.failed_links)
                ],
            }
            for s in sorted(doc.scenarios, key=lambda s: s.label)
        ]
    return json.dumps(data, indent=2) + "\n"


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(network: MultilayerNetwork, view: str = "flatten") -> str:
    """Render the network as DOT. Views: flatten (layer clusters plus dashed
    interlayer edges), layers (clusters only), sublayers (one cluster per
    protocol sub-layer)."""
    if view not in ("flatten", "layers", "sublayers"):
        raise ValueError(f"unknown view {view!r}")
    lines = ["graph multilayer {"]
    if view in ("flatten", "layers"):
        for layer in network.layers:
            lines.append(f"  subgraph cluster_layer_{layer.index} {{")
            lines.append(f"    label={_dot_quote(f'L{layer.index} ({layer.role.value})')};")
            for comp in layer.components:
                node_id = f"{layer.index}/{comp.name}"
                lines.append(
                    f"    {_dot_quote(node_id)} [label={_dot_quote(comp.name)}];"
                )
            for a, b in layer.links:
                lines.append(
                    f"    {_dot_quote(f'{layer.index}/{a}')} -- "
                    f"{_dot_quote(f'{layer.index}/{b}')};"
                )
            lines.append("  }")
        if view == "flatten":
            for cross in network.cross_layers:
                for up, low in cross.projections:
                    lines.append(
                        f"  {_dot_quote(f'{cross.upper_index}/{up}')} -- "
                        f"{_dot_quote(f'{cross.upper_index - 1}/{low}')} [style=dashed];"
                    )
    else:
        for layer in network.layers:
            for sub in multiplex.decompose_layer(layer):
                cluster = f"cluster_layer_{layer.index}_{sub.protocol}"
                lines.append(f"  subgraph {_dot_quote(cluster)} {{")
                lines.append(
                    f"    label={_dot_quote(f'L{layer.index}:{sub.protocol}')};"
                )
                names = sorted({n for link in sub.links for n in link})
                for name in names:
                    node_id = f"{layer.index}/{sub.protocol}/{name}"
                    lines.append(
                        f"    {_dot_quote(node_id)} [label={_dot_quote(name)}];"
                    )
                for a, b in sub.links:
                    lines.append(
                        f"    {_dot_quote(f'{layer.index}/{sub.protocol}/{a}')} -- "
                        f"{_dot_quote(f'{layer.index}/{sub.protocol}/{b}')};"
                    )
                lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _violation_dict(v) -> dict[str, Any]:
    subject: Any = None
    if v.subject is not None:
        subject = str(v.subject) if isinstance(v.subject, ComponentId) else list(v.subject)
    return {
        "kind": v.kind.value,
        "layer": v.layer_index,
        "subject": subject,
        "detail": v.detail,
    }


def _metrics_dict(m: analysis.LayerMetrics) -> dict[str, Any]:
    return {
        "node_count": m.node_count,
        "link_count": m.link_count,
        "density": m.density,
        "degree_min": m.degree_min,
        "degree_mean": m.degree_mean,
        "degree_max": m.degree_max,
        "connected_components": m.connected_components,
        "largest_component_fraction": m.largest_component_fraction,
        "diameter_of_largest_component": m.diameter_of_largest_component,
        "articulation_points": list(m.articulation_points),
        "bridges": [list(b) for b in m.bridges],
    }


def report_payload(report: Any) -> dict[str, Any]:
    """Machine-format dictionary for any report type."""
    if isinstance(report, ValidationReport):
        return {
            "report_version": REPORT_VERSION,
            "kind": "validation",
            "passed": report.passed,
            "mode": report.mode.value,
            "violations": [_violation_dict(v) for v in report.violations],
            "warnings": list(report.warnings),
            "interlayer_classes": [
                {
                    "upper_index": ic.upper_index,
                    "classes": {
                        str(node): cls.value
                        for node, cls in sorted(ic.classes.items())
                    },
                }
                for ic in report.interlayer_classes
            ],
        }
    if isinstance(report, ConformanceReport):
        return {
            "report_version": REPORT_VERSION,
            "kind": "conformance",
            "model_kind": report.model_kind,
            "conforms": report.conforms,
            "missing_roles": [r.value for r in report.missing_roles],
            "order_violations": list(report.order_violations),
            "extras": list(report.extras),
        }
    if isinstance(report, CascadeResult):
        return {
            "report_version": REPORT_VERSION,
            "kind": "cascade",
            "scenario": report.scenario.label,
            "rounds": [
                {
                    "failed_nodes": sorted(str(n) for n in r.failed_nodes),
                    "inactive_links": [
                        [idx, list(link)] for idx, link in sorted(r.inactive_links)
                    ],
                }
                for r in report.rounds
            ],
            "final_failed_nodes": sorted(str(n) for n in report.final_failed_nodes),
            "final_inactive_links": [
                [idx, list(link)] for idx, link in sorted(report.final_inactive_links)
            ],
            "per_layer_survival": {
                str(k): v for k, v in sorted(report.per_layer_survival.items())
            },
            "per_layer_largest_component_fraction": {
                str(k): v
                for k, v in sorted(report.per_layer_largest_component_fraction.items())
            },
            "functional_alive": report.functional_alive,
        }
    if isinstance(report, dict):  # metrics bundle: layer index -> LayerMetrics
        return {
            "report_version": REPORT_VERSION,
            "kind": "metrics",
            "layers": {
                str(idx): _metrics_dict(m) for idx, m in sorted(report.items())
            },
        }
    raise TypeError(f"cannot emit report for {type(report).__name__}")


def _human_lines(report: Any) -> list[str]:
    if isinstance(report, ValidationReport):
        lines = [f"validation: {'PASSED' if report.passed else 'FAILED'} ({report.mode.value} mode)"]
        for v in report.violations:
            lines.append(f"violation [{v.kind.value}] layer {v.layer_index}: {v.detail}")
        for w in report.warnings:
            lines.append(f"warning: {w}")
        return lines
    if isinstance(report, ConformanceReport):
        lines = [
            f"conformance ({report.model_kind}): "
            f"{'CONFORMS' if report.conforms else 'DOES NOT CONFORM'}"
        ]
        for r in report.missing_roles:
            lines.append(f"missing role: {r.value}")
        for o in report.order_violations:
            lines.append(f"order violation: {o}")
        for idx in report.extras:
            lines.append(f"extra layer: {idx}")
        return lines
    if isinstance(report, CascadeResult):
        lines = [
            f"cascade '{report.scenario.label}': {report.total_failed} nodes failed "
            f"in {len(report.rounds)} rounds, functional layer "
            f"{'alive' if report.functional_alive else 'DOWN'}"
        ]
        for idx in sorted(report.per_layer_survival):
            lines.append(
                f"layer {idx}: survival {report.per_layer_survival[idx]:.3f}, "
                "largest component "
                f"{report.per_layer_largest_component_fraction[idx]:.3f}"
            )
        return lines
    if isinstance(report, dict):
        lines = []
        for idx, m in sorted(report.items()):
            lines.append(
                f"layer {idx}: {m.node_count} nodes, {m.link_count} links, "
                f"density {m.density:.3f}, degrees {m.degree_min}/"
                f"{m.degree_mean:.2f}/{m.degree_max}, "
                f"{m.connected_components} components, "
                f"diameter {m.diameter_of_largest_component}, "
                f"{len(m.articulation_points)} articulation points, "
                f"{len(m.bridges)} bridges"
            )
        return lines
    raise TypeError(f"cannot emit report for {type(report).__name__}")


def emit_report(report: Any, format: str = "human") -> str:
    """Render a report. Machine format is versioned JSON; human format is one
    finding per line."""
    if format == "machine":
        return json.dumps(report_payload(report), indent=2) + "\n"
    if format == "human":
        return "\n".join(_human_lines(report)) + "\n"
    raise ValueError(f"unknown report format {format!r}")
