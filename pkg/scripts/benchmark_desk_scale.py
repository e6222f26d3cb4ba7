#!/usr/bin/env python3
"""Time validation, metrics, and a single cascade on the 10,000-component,
30,000-edge desk-scale model."""

import time

from netstrata import analysis, consistency, faults
from netstrata.generators import desk_model
from netstrata.model import ComponentId


def timed(label, fn):
    start = time.perf_counter()
    result = fn()
    print(f"{label:<12} {time.perf_counter() - start:6.2f}s")
    return result


def main() -> None:
    net = timed("build", desk_model)
    flat = net.flatten()
    print(f"model: {len(flat.vertices)} components, {len(flat.edges)} edges")
    report = timed("validate", lambda: consistency.validate(net))
    print(f"validation passed: {report.passed}")
    timed("metrics", lambda: {l.index: analysis.layer_metrics(l) for l in net.layers})
    result = timed(
        "cascade",
        lambda: faults.run_cascade(
            net, faults.FaultScenario.of([ComponentId(1, "n00000")])
        ),
    )
    print(f"cascade: {result.total_failed} failed in {len(result.rounds)} rounds")


if __name__ == "__main__":
    main()
