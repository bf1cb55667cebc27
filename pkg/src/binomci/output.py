"""Stable text renderings of analysis results.

CSV is UTF-8, comma separated, dot decimal, LF line endings, with the schema
named and versioned in a leading comment line.  JSON uses sorted keys.  Float
cells use the shortest round-trip decimal form, so identical inputs render to
identical bytes.
"""

from __future__ import annotations

import json

from .coverage import CoverageCurve
from .simulate import SimulationReport

__all__ = [
    "SCHEMA_VERSION",
    "fmt",
    "coverage_csv",
    "coverage_json",
    "simulation_csv",
    "simulation_json",
    "compare_csv",
]

SCHEMA_VERSION = 1


def fmt(x) -> str:
    """Shortest decimal string that round-trips the float."""
    return repr(float(x))


def _csv_lines(schema: str, header: list[str], rows) -> str:
    lines = [f"# binomci {schema} schema={SCHEMA_VERSION}", ",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def coverage_csv(curve: CoverageCurve) -> str:
    rows = (
        [fmt(t), fmt(u), fmt(l), fmt(el)]
        for t, u, l, el in zip(curve.thetas, curve.upper_noncoverage,
                               curve.lower_noncoverage, curve.expected_length)
    )
    return _csv_lines(
        "coverage",
        ["theta", "upper_noncoverage", "lower_noncoverage", "expected_length"],
        rows,
    )


def coverage_json(curve: CoverageCurve) -> str:
    payload = {
        "schema": {"name": "coverage", "version": SCHEMA_VERSION},
        "method": curve.method,
        "n": curve.n,
        "alpha": curve.alpha,
        "params": curve.params,
        "theta": [float(t) for t in curve.thetas],
        "upper_noncoverage": [float(x) for x in curve.upper_noncoverage],
        "lower_noncoverage": [float(x) for x in curve.lower_noncoverage],
        "expected_length": [float(x) for x in curve.expected_length],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def simulation_csv(report: SimulationReport) -> str:
    rows = (
        [str(int(k)), fmt(u), fmt(l), fmt(el)]
        for k, u, l, el in zip(report.checkpoints, report.upper_proportions,
                               report.lower_proportions, report.running_lengths)
    )
    return _csv_lines(
        "simulation",
        ["k", "upper_proportion", "lower_proportion", "average_length"],
        rows,
    )


def simulation_json(report: SimulationReport) -> str:
    payload = {
        "schema": {"name": "simulation", "version": SCHEMA_VERSION},
        "source": report.source,
        "n": report.n,
        "alpha": report.alpha,
        "theta": report.theta,
        "m": report.m,
        "seed": report.seed,
        "final_upper_proportion": report.final_upper_proportion,
        "final_lower_proportion": report.final_lower_proportion,
        "average_length": report.average_length,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def compare_csv(curves: list[CoverageCurve]) -> str:
    """Side-by-side curves on a shared theta grid, one column trio per method."""
    if not curves:
        raise ValueError("need at least one curve")
    thetas = curves[0].thetas
    for c in curves[1:]:
        if len(c.thetas) != len(thetas) or not (c.thetas == thetas).all():
            raise ValueError("compared curves must share one theta grid")
    header = ["theta"]
    for c in curves:
        header += [f"{c.method}_upper_noncoverage",
                   f"{c.method}_lower_noncoverage",
                   f"{c.method}_expected_length"]
    rows = []
    for i, t in enumerate(thetas):
        row = [fmt(t)]
        for c in curves:
            row += [fmt(c.upper_noncoverage[i]), fmt(c.lower_noncoverage[i]),
                    fmt(c.expected_length[i])]
        rows.append(row)
    return _csv_lines("compare", header, rows)
