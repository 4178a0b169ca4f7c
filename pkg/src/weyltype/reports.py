"""Deterministic probe execution and JSON report assembly for a scenario.

Identical inputs produce identical report bytes: every collection that is
derived from a set or dict is sorted before serialization, and no clocks,
paths, or environment data enter the report.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coefficients import format_a_element
from .operators import format_weyl
from .probes import (
    ProbeVerdict,
    compute_f1,
    a_from_coords,
    assoc_ideal_closure_probe,
    d_simplicity_probe,
    lie_ideal_closure_probe,
    theta_kernel,
)
from .scenario import ProbeRequest, Scenario


def fraction_text(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def run_probe(scenario: Scenario, k: int, request: ProbeRequest, f1) -> ProbeVerdict:
    ctx, window = scenario.ctx, scenario.window
    if request.kind == "theta_kernel":
        return theta_kernel(ctx, window, restrict_to_f1=request.restrict_to_f1, f1=f1)
    seed = scenario.seeds[k]
    if request.kind == "d_simplicity":
        return d_simplicity_probe(ctx, seed.a_part(), window)
    if request.kind == "assoc_closure":
        return assoc_ideal_closure_probe(ctx, seed, window)
    if request.kind == "lie_closure":
        return lie_ideal_closure_probe(ctx, seed, window, f1, margin=scenario.margin)
    raise AssertionError(f"unhandled probe kind {request.kind}")


def _format_witness(verdict: ProbeVerdict) -> list[str]:
    out = []
    for elem in verdict.witness:
        out.append(format_weyl(elem) if hasattr(elem, "a_part") else format_a_element(elem))
    return out


def build_report(scenario: Scenario) -> dict:
    ctx, window = scenario.ctx, scenario.window
    f1 = compute_f1(ctx, window)
    report: dict = {
        "scenario": scenario.name,
        "description": scenario.description,
        "field": str(ctx.spec),
        "window": {
            "max_level": window.max_level,
            "bounds": {
                ctx.variables[i].name: [lo, hi] for i, lo, hi in window.bounds
            },
            "basis_cap": window.basis_cap,
        },
        "margin": fraction_text(scenario.margin),
        "f1": {
            "dimension": f1.dim,
            "basis": [
                format_a_element(a_from_coords(ctx, f1.labels, vec))
                for vec in f1.vectors()
            ],
        },
        "probes": [],
    }
    all_expected = True
    for k, request in enumerate(scenario.probes):
        verdict = run_probe(scenario, k, request, f1)
        entry: dict = {
            "kind": request.kind,
            "verdict": verdict.kind,
            "coverage": fraction_text(verdict.coverage),
        }
        if request.seed_text is not None:
            entry["seed"] = request.seed_text
        if request.kind == "theta_kernel" and request.restrict_to_f1:
            entry["restrict_to_f1"] = True
        entry["witness"] = _format_witness(verdict)
        if verdict.unreached:
            entry["unreached"] = verdict.unreached
        if verdict.note:
            entry["note"] = verdict.note
        if request.expect is not None:
            entry["expected"] = request.expect
            entry["matches_expected"] = verdict.kind == request.expect
            all_expected = all_expected and entry["matches_expected"]
        report["probes"].append(entry)
    report["all_expected"] = all_expected
    return report


def report_bytes(report: dict) -> bytes:
    return (json.dumps(report, indent=2, ensure_ascii=True) + "\n").encode("ascii")
