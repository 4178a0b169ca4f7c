"""Scenario files: JSON descriptions of a field, a coefficient algebra, a
derivation family, a truncation window, and a list of probe requests.

Schema (all keys lowercase):

    name            string
    description     string, optional
    field           {"kind": "rational"} or {"kind": "prime", "p": <prime>}
    variables       [{"name": str, "kind": "polynomial"|"laurent"}, ...]
    derivations     [{"name": str, "images": {var: expr, ...}}              |
                     {"name": str, "shift_prefix": str}                     |
                     {"name": str, "euler_weights": {var: int, ...}}, ...]
    variable_cap    int, optional (lazy shift-variable hard cap, default 64)
    window          {"max_level": int, "bounds": {var: [lo, hi], ...}}
    basis_cap       int, optional (default 5000)
    margin          exact fraction string, optional (default "1/2")
    group_algebra   bool, optional; when true the scenario models a group
                    algebra on Laurent variables and every derivation must be
                    an euler_weights derivation whose integer weight matrix
                    has trivial kernel
    sample          {"max_degree": int, "max_level": int, "max_terms": int},
                    optional bounds for the randomized verification suites
    probes          [{"kind": "theta_kernel", "restrict_to_f1": bool?,
                      "expect": verdict?}                                   |
                     {"kind": "d_simplicity"|"assoc_closure"|"lie_closure",
                      "seed": expr, "expect": verdict?}, ...]

Derivation images and probe seeds are expression strings evaluated by the
package's own parser, so one grammar serves both the CLI and configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .coefficients import Context, LAURENT, POLYNOMIAL, DEFAULT_VARIABLE_CAP
from .errors import ValidationError, WeylTypeError
from .fields import FieldSpec, PRIME_KIND, RATIONAL_KIND
from .linalg import RowReducer
from .operators import WeylElement
from .parser import evaluate_text
from .probes import (
    DEFAULT_BASIS_CAP,
    DEFAULT_MARGIN,
    FULL_SPAN_MOD_F1,
    KERNEL_NONZERO,
    KERNEL_ZERO,
    PROPER_INVARIANT_SUBSPACE,
    REACHES_IDENTITY,
    Window,
)

PROBE_KINDS = ("theta_kernel", "d_simplicity", "assoc_closure", "lie_closure")
VERDICT_KINDS = (
    REACHES_IDENTITY,
    FULL_SPAN_MOD_F1,
    PROPER_INVARIANT_SUBSPACE,
    KERNEL_NONZERO,
    KERNEL_ZERO,
)


@dataclass(frozen=True)
class SampleConfig:
    max_degree: int = 4
    max_level: int = 3
    max_terms: int = 3


@dataclass(frozen=True)
class ProbeRequest:
    kind: str
    seed_text: str | None = None
    expect: str | None = None
    restrict_to_f1: bool = False


@dataclass
class Scenario:
    name: str
    description: str
    ctx: Context
    window: Window
    margin: Fraction
    probes: list[ProbeRequest]
    sample: SampleConfig
    initial_variable_count: int
    group_algebra: bool = False
    seeds: dict[int, WeylElement] = field(default_factory=dict)


def _require(cond: bool, violations: list[str], message: str):
    if not cond:
        violations.append(message)


def load_scenario_mapping(data: dict, name_hint: str = "scenario") -> Scenario:
    violations: list[str] = []
    name = data.get("name", name_hint)
    description = data.get("description", "")

    field_data = data.get("field")
    spec = None
    if not isinstance(field_data, dict):
        violations.append("missing or malformed 'field'")
    else:
        try:
            kind = field_data.get("kind")
            if kind == RATIONAL_KIND:
                spec = FieldSpec(RATIONAL_KIND)
            elif kind == PRIME_KIND:
                spec = FieldSpec(PRIME_KIND, int(field_data.get("p")))
            else:
                violations.append(f"unknown field kind {kind!r}")
        except (WeylTypeError, TypeError, ValueError) as exc:
            violations.append(f"field: {exc}")
    if spec is None:
        raise ValidationError(violations)

    cap = int(data.get("variable_cap", DEFAULT_VARIABLE_CAP))
    ctx = Context(spec, variable_cap=cap)
    for vdata in data.get("variables", []):
        try:
            ctx.add_variable(vdata["name"], vdata.get("kind", POLYNOMIAL))
        except (WeylTypeError, KeyError, TypeError) as exc:
            violations.append(f"variable {vdata!r}: {exc}")

    euler_rows: list[list[int]] = []
    all_euler = True
    for ddata in data.get("derivations", []):
        dname = ddata.get("name")
        try:
            if "shift_prefix" in ddata:
                all_euler = False
                ctx.add_derivation(dname, shift_prefix=ddata["shift_prefix"])
            elif "euler_weights" in ddata:
                weights = ddata["euler_weights"]
                row = []
                images = {}
                for var in ctx.variables:
                    w = int(weights.get(var.name, 0))
                    row.append(w)
                    images[var.name] = ctx.var(var.name) * w
                euler_rows.append(row)
                ctx.add_derivation(dname, images=images)
            elif "images" in ddata:
                all_euler = False
                images = {}
                for var_name, expr in ddata["images"].items():
                    elem = evaluate_text(expr, ctx)
                    if not elem.is_a_only():
                        raise ValidationError(
                            [f"image of {var_name} in {dname} contains derivations"]
                        )
                    images[var_name] = elem.a_part()
                ctx.add_derivation(dname, images=images)
            else:
                violations.append(f"derivation {dname!r}: no images, shift_prefix, or euler_weights")
        except WeylTypeError as exc:
            violations.append(f"derivation {dname!r}: {exc}")

    if not ctx.derivations:
        violations.append("at least one derivation is required")

    if data.get("group_algebra", False):
        _require(
            all(v.kind == LAURENT for v in ctx.variables),
            violations,
            "group_algebra scenarios require all variables to be laurent",
        )
        _require(
            all_euler and len(euler_rows) == len(ctx.derivations),
            violations,
            "group_algebra scenarios require euler_weights derivations only",
        )
        if euler_rows and not violations:
            # Trivial integer kernel of the weight matrix <=> full column rank
            # over the rationals.
            red = RowReducer(FieldSpec(RATIONAL_KIND))
            rat = FieldSpec(RATIONAL_KIND)
            for row in euler_rows:
                red.add({j: rat.from_int(w) for j, w in enumerate(row) if w})
            _require(
                red.rank == len(ctx.variables),
                violations,
                "the euler weight matrix has a nontrivial integer kernel",
            )

    try:
        ctx.freeze()
    except ValidationError as exc:
        violations.extend(exc.violations)

    window = None
    wdata = data.get("window")
    if not isinstance(wdata, dict) or "max_level" not in wdata:
        violations.append("missing or malformed 'window'")
    else:
        try:
            bounds = {
                name: (int(pair[0]), int(pair[1]))
                for name, pair in wdata.get("bounds", {}).items()
            }
            window = Window.for_context(
                ctx,
                bounds,
                int(wdata["max_level"]),
                basis_cap=int(data.get("basis_cap", DEFAULT_BASIS_CAP)),
            )
        except ValidationError as exc:
            violations.extend(exc.violations)
        except (WeylTypeError, TypeError, ValueError) as exc:
            violations.append(f"window: {exc}")

    try:
        margin = Fraction(data.get("margin", "1/2"))
        if not (0 <= margin < 1):
            violations.append("margin must satisfy 0 <= margin < 1")
    except (ValueError, ZeroDivisionError):
        violations.append(f"malformed margin {data.get('margin')!r}")
        margin = DEFAULT_MARGIN

    sdata = data.get("sample", {})
    sample = SampleConfig(
        max_degree=int(sdata.get("max_degree", 4)),
        max_level=int(sdata.get("max_level", 3)),
        max_terms=int(sdata.get("max_terms", 3)),
    )

    probes: list[ProbeRequest] = []
    seeds: dict[int, WeylElement] = {}
    for k, pdata in enumerate(data.get("probes", [])):
        kind = pdata.get("kind")
        if kind not in PROBE_KINDS:
            violations.append(f"probe {k}: unknown kind {kind!r}")
            continue
        expect = pdata.get("expect")
        if expect is not None and expect not in VERDICT_KINDS:
            violations.append(f"probe {k}: unknown expected verdict {expect!r}")
        seed_text = pdata.get("seed")
        if kind == "theta_kernel":
            if seed_text is not None:
                violations.append(f"probe {k}: theta_kernel takes no seed")
        elif seed_text is None:
            violations.append(f"probe {k}: {kind} requires a seed expression")
        else:
            try:
                seed = evaluate_text(seed_text, ctx)
                if kind == "d_simplicity" and not seed.is_a_only():
                    violations.append(f"probe {k}: d_simplicity seed must be coefficient-only")
                elif seed.is_zero():
                    violations.append(f"probe {k}: seed evaluates to zero")
                else:
                    seeds[k] = seed
            except WeylTypeError as exc:
                violations.append(f"probe {k}: seed {seed_text!r}: {exc}")
        probes.append(
            ProbeRequest(
                kind=kind,
                seed_text=seed_text,
                expect=expect,
                restrict_to_f1=bool(pdata.get("restrict_to_f1", False)),
            )
        )

    if violations:
        raise ValidationError(violations)
    assert window is not None
    return Scenario(
        name=name,
        description=description,
        ctx=ctx,
        window=window,
        margin=margin,
        probes=probes,
        sample=sample,
        initial_variable_count=len(ctx.variables),
        group_algebra=bool(data.get("group_algebra", False)),
        seeds=seeds,
    )


def load_scenario(path) -> Scenario:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except FileNotFoundError:
        raise ValidationError([f"scenario file not found: {p}"])
    except json.JSONDecodeError as exc:
        raise ValidationError([f"scenario file is not valid JSON: {exc}"])
    return load_scenario_mapping(data, name_hint=p.stem)


def bundled_scenario_names() -> list[str]:
    root = resources.files("weyltype").joinpath("scenarios")
    return sorted(
        p.name[: -len(".json")]
        for p in root.iterdir()
        if p.name.endswith(".json")
    )


def bundled_scenario_path(name: str) -> Path:
    return Path(str(resources.files("weyltype").joinpath("scenarios", f"{name}.json")))


def load_bundled(name: str) -> Scenario:
    return load_scenario(bundled_scenario_path(name))
