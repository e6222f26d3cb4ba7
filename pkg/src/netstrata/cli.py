"""Command-line front-end.

Exit codes: 0 success / conforming, 1 violations found, 2 usage or parse
error. Diagnostics go to stderr; data goes to stdout.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import analysis, consistency, faults, model_io, multiplex
from .model import ComponentId, Mode, ModelError, MultilayerNetwork, build_network
from .model_io import ModelDocument, ModelParseError, REPORT_VERSION


def _load(path: str, mode: str | None) -> ModelDocument:
    """Parse a model file; an explicit --mode (or NETSTRATA_MODE) overrides
    the mode declared in the file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    try:
        doc = model_io.parse_model(text)
        if mode is not None and Mode(mode) is not doc.network.mode:
            network = build_network(
                doc.network.layers, doc.network.cross_layers, Mode(mode)
            )
            doc = ModelDocument(doc.format_version, network, doc.scenarios)
        return doc
    except (ModelParseError, ModelError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


mode_option = click.option(
    "--mode",
    type=click.Choice(["strict", "relaxed"]),
    default=None,
    envvar="NETSTRATA_MODE",
    help="Override the mode declared in the model file.",
)
format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["human", "machine"]),
    default="human",
    show_default=True,
)


@click.group()
@click.version_option()
def main() -> None:
    """Model, validate, analyze, and fault-simulate hierarchical multilayer
    networks."""


@main.command()
@click.argument("model", type=click.Path())
@mode_option
@format_option
def validate(model: str, mode: str | None, fmt: str) -> None:
    """Run the top-down consistency checks."""
    doc = _load(model, mode)
    report = consistency.validate(doc.network)
    click.echo(model_io.emit_report(report, fmt), nl=False)
    sys.exit(0 if report.passed else 1)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--layer", "layer_index", type=int, required=True)
@mode_option
def decompose(model: str, layer_index: int, mode: str | None) -> None:
    """List the protocol sub-layers of one layer."""
    doc = _load(model, mode)
    try:
        layer = doc.network.layer(layer_index)
    except KeyError as exc:
        click.echo(f"error: {exc.args[0]}", err=True)
        sys.exit(2)
    for sub in multiplex.decompose_layer(layer):
        links = ", ".join(f"({a}, {b})" for a, b in sub.links)
        click.echo(f"protocol {sub.protocol}: {links}")
    for p in multiplex.unused_protocols(layer):
        click.echo(f"unused protocol: {p}")
    uncovered = multiplex.check_cover(layer)
    for a, b in uncovered:
        click.echo(f"uncovered link: ({a}, {b})")
    if uncovered and doc.network.mode is Mode.STRICT:
        sys.exit(1)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--layer", "layer_index", type=int, default=None)
@mode_option
@format_option
def metrics(model: str, layer_index: int | None, mode: str | None, fmt: str) -> None:
    """Per-layer structural metrics."""
    doc = _load(model, mode)
    if layer_index is not None:
        try:
            layers = [doc.network.layer(layer_index)]
        except KeyError as exc:
            click.echo(f"error: {exc.args[0]}", err=True)
            sys.exit(2)
    else:
        layers = list(doc.network.layers)
    bundle = {layer.index: analysis.layer_metrics(layer) for layer in layers}
    click.echo(model_io.emit_report(bundle, fmt), nl=False)


def _parse_node_spec(network: MultilayerNetwork, spec: str) -> ComponentId:
    """'layer/name' or bare name (assumed bottom layer)."""
    if "/" in spec:
        raw_layer, name = spec.split("/", 1)
        try:
            layer_index = int(raw_layer)
        except ValueError:
            raise faults.UnknownScenarioElement(f"bad node spec {spec!r}")
    else:
        layer_index, name = 1, spec
    return ComponentId(layer_index, name)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--fail", "fail_spec", default=None, help="Comma-separated nodes, e.g. h1 or 2/s1.")
@click.option("--scenario", "scenario_name", default=None, help="Named scenario from the model file.")
@click.option("--exhaustive", is_flag=True, help="One cascade per bottom-layer node, ranked by impact.")
@mode_option
@format_option
def simulate(
    model: str,
    fail_spec: str | None,
    scenario_name: str | None,
    exhaustive: bool,
    mode: str | None,
    fmt: str,
) -> None:
    """Fault-injection cascade simulation."""
    chosen = sum(x is not None for x in (fail_spec, scenario_name)) + int(exhaustive)
    if chosen != 1:
        click.echo("error: pass exactly one of --fail, --scenario, --exhaustive", err=True)
        sys.exit(2)
    doc = _load(model, mode)

    if exhaustive:
        ranking = faults.exhaustive_single_faults(doc.network)
        if fmt == "machine":
            payload = {
                "report_version": REPORT_VERSION,
                "kind": "campaign",
                "entries": [
                    {
                        "node": str(e.node),
                        "functional_alive": e.result.functional_alive,
                        "failed_count": e.result.total_failed,
                    }
                    for e in ranking
                ],
            }
            click.echo(json.dumps(payload, indent=2))
        else:
            for e in ranking:
                state = "alive" if e.result.functional_alive else "DOWN"
                click.echo(
                    f"{e.node}: {e.result.total_failed} failed, functional {state}"
                )
        return

    try:
        if scenario_name is not None:
            scenario = doc.scenario(scenario_name)
        else:
            nodes = [
                _parse_node_spec(doc.network, s)
                for s in fail_spec.split(",")
                if s.strip()
            ]
            scenario = faults.FaultScenario.of(nodes, label=f"fail {fail_spec}")
        result = faults.run_cascade(doc.network, scenario)
    except (faults.UnknownScenarioElement, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(model_io.emit_report(result, fmt), nl=False)


@main.command()
@click.argument("model", type=click.Path())
@click.option(
    "--view",
    type=click.Choice(["flatten", "layers", "sublayers"]),
    default="flatten",
    show_default=True,
)
@click.option("-o", "--output", type=click.Path(), default=None, help="Output file (default stdout).")
@mode_option
def export(model: str, view: str, output: str | None, mode: str | None) -> None:
    """Export the network as Graphviz DOT."""
    doc = _load(model, mode)
    dot = model_io.export_dot(doc.network, view)
    if output is None:
        click.echo(dot, nl=False)
    else:
        Path(output).write_text(dot)


if __name__ == "__main__":
    main()
