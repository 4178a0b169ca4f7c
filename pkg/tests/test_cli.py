import json

import pytest

from weyltype.cli import main
from weyltype.errors import ValidationError
from weyltype.scenario import (
    bundled_scenario_names,
    bundled_scenario_path,
    load_bundled,
    load_scenario_mapping,
)

ALL_SCENARIOS = bundled_scenario_names()


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def s_weyl():
    return str(bundled_scenario_path("weyl_polynomial"))


def test_bundled_scenarios_exist():
    assert ALL_SCENARIOS == [
        "char2_poly",
        "char5_laurent_euler",
        "group_algebra_z2",
        "laurent_euler",
        "mixed_flavors",
        "nonsimple_euler",
        "shift_family",
        "weyl_polynomial",
    ]


@pytest.mark.parametrize("name", ALL_SCENARIOS)
def test_bundled_scenarios_validate(name):
    scenario = load_bundled(name)
    assert scenario.probes
    assert scenario.window.max_level >= 0


def test_normalize(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "normalize", "d1*t", "--scenario", s_weyl)
    assert code == 0
    assert out.strip() == "t*d1 + 1"


def test_normalize_laurent(capsys):
    s = str(bundled_scenario_path("laurent_euler"))
    code, out, _ = run_cli(capsys, "normalize", "t^-1*t", "--scenario", s)
    assert code == 0
    assert out.strip() == "1"


def test_normalize_error_exit(capsys, s_weyl):
    code, out, err = run_cli(capsys, "normalize", "d1*x", "--scenario", s_weyl)
    assert code == 2
    assert "x" in err


def test_act(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "act", "d1^2", "t^3", "--scenario", s_weyl)
    assert code == 0
    assert out.strip() == "6*t"
    code, out, _ = run_cli(capsys, "act", "1", "t^2 + 3", "--scenario", s_weyl)
    assert code == 0
    assert out.strip() == "t^2 + 3"


def test_act_euler_eigenvalue(capsys, s_weyl):
    for m in (1, 2, 5):
        code, out, _ = run_cli(capsys, "act", "t*d1", f"t^{m}", "--scenario", s_weyl)
        assert code == 0
        assert out.strip() == (f"{m}*t^{m}" if m > 1 else "t")


def test_act_rejects_operator_element(capsys, s_weyl):
    code, _, err = run_cli(capsys, "act", "d1", "t + d1", "--scenario", s_weyl)
    assert code == 2
    assert "derivation" in err


def test_bracket(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "bracket", "d1", "t", "--scenario", s_weyl)
    assert code == 0
    assert out.strip() == "1"


def test_json_output_mode(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "normalize", "d1*t", "--scenario", s_weyl, "--json")
    assert code == 0
    assert json.loads(out) == {"normal_form": "t*d1 + 1"}


@pytest.mark.parametrize("name", ALL_SCENARIOS)
def test_probe_matches_bundled_expected_report_bytes(capsys, name):
    path = str(bundled_scenario_path(name))
    code, out, _ = run_cli(capsys, "probe", "--scenario", path)
    assert code == 0, f"scenario {name} has an unexpected probe verdict"
    expected = bundled_scenario_path(name).parent / "expected" / f"{name}.report.json"
    assert out.encode("ascii") == expected.read_bytes()


@pytest.mark.parametrize("name", ALL_SCENARIOS)
def test_probe_byte_determinism(capsys, name):
    path = str(bundled_scenario_path(name))
    _, first, _ = run_cli(capsys, "probe", "--scenario", path)
    _, second, _ = run_cli(capsys, "probe", "--scenario", path)
    assert first == second


def test_probe_text_mode(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "probe", "--scenario", s_weyl, "--text")
    assert code == 0
    assert "lie_closure" in out and "full_span_mod_f1" in out


def test_probe_margin_override_changes_interior(capsys):
    # a wider interior (smaller margin) judges more boundary monomials, so the
    # reported coverage of the non-simple control drops
    path = str(bundled_scenario_path("nonsimple_euler"))
    coverages = {}
    for margin in ("0", "1/2"):
        _, out, _ = run_cli(capsys, "probe", "--scenario", path, "--margin", margin)
        report = json.loads(out)
        assert report["margin"] == (margin if "/" in margin else f"{margin}/1")
        lie = [p for p in report["probes"] if p["kind"] == "lie_closure"][0]
        coverages[margin] = lie["coverage"]
    assert coverages == {"0": "5/7", "1/2": "1/2"}

    code, _, err = run_cli(
        capsys, "probe", "--scenario", str(bundled_scenario_path("nonsimple_euler")), "--margin", "7/2"
    )
    assert code == 2


def test_verify_passes(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "verify", "--scenario", s_weyl, "--trials", "25", "--seed", "42")
    assert code == 0
    assert out.count("pass") == 6


def test_verify_mixed_scenario_200_trials(capsys):
    path = str(bundled_scenario_path("mixed_flavors"))
    code, out, _ = run_cli(capsys, "verify", "--scenario", path, "--trials", "200", "--seed", "42")
    assert code == 0
    assert out.count("pass") == 6


def test_verify_zero_trials_vacuous(capsys, s_weyl):
    code, out, _ = run_cli(capsys, "verify", "--scenario", s_weyl, "--trials", "0")
    assert code == 0


def test_missing_scenario_file_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "probe", "--scenario", "/nonexistent.json")
    assert code == 2
    assert "not found" in err


def _scenario_dict(**overrides):
    base = {
        "name": "inline",
        "field": {"kind": "rational"},
        "variables": [{"name": "t", "kind": "polynomial"}],
        "derivations": [{"name": "d1", "images": {"t": "1"}}],
        "window": {"max_level": 2, "bounds": {"t": [0, 4]}},
        "probes": [{"kind": "theta_kernel"}],
    }
    base.update(overrides)
    return base


def test_noncommuting_derivations_fail_validation_before_probes():
    data = _scenario_dict(
        derivations=[
            {"name": "d1", "images": {"t": "1"}},
            {"name": "d2", "images": {"t": "t"}},
        ]
    )
    with pytest.raises(ValidationError, match="do not commute"):
        load_scenario_mapping(data)


def test_cli_verify_rejects_corrupted_scenario_before_trials(capsys, tmp_path):
    bad = tmp_path / "corrupted.json"
    bad.write_text(json.dumps(_scenario_dict(
        derivations=[
            {"name": "d1", "images": {"t": "1"}},
            {"name": "d2", "images": {"t": "t"}},
        ]
    )))
    code, out, err = run_cli(capsys, "verify", "--scenario", str(bad), "--trials", "100")
    assert code == 2
    assert "do not commute" in err
    assert "pass" not in out  # no suite ran


def test_validation_collects_all_violations():
    data = _scenario_dict(
        window={"max_level": 2, "bounds": {}},
        probes=[
            {"kind": "mystery"},
            {"kind": "d_simplicity", "seed": "d1"},
            {"kind": "lie_closure"},
        ],
    )
    with pytest.raises(ValidationError) as err:
        load_scenario_mapping(data)
    text = str(err.value)
    assert "no bounds" in text
    assert "unknown kind" in text
    assert "coefficient-only" in text
    assert "requires a seed" in text


def test_group_algebra_weight_matrix_must_be_injective():
    data = _scenario_dict(
        group_algebra=True,
        variables=[
            {"name": "g1", "kind": "laurent"},
            {"name": "g2", "kind": "laurent"},
        ],
        derivations=[
            {"name": "d1", "euler_weights": {"g1": 1, "g2": 1}},
            {"name": "d2", "euler_weights": {"g1": 2, "g2": 2}},
        ],
        window={"max_level": 1, "bounds": {"g1": [-1, 1], "g2": [-1, 1]}},
    )
    with pytest.raises(ValidationError, match="nontrivial integer kernel"):
        load_scenario_mapping(data)


def test_group_algebra_requires_laurent_and_euler():
    data = _scenario_dict(group_algebra=True)
    with pytest.raises(ValidationError, match="laurent"):
        load_scenario_mapping(data)


def test_bad_margin_rejected():
    data = _scenario_dict(margin="3/2")
    with pytest.raises(ValidationError, match="margin"):
        load_scenario_mapping(data)


def test_composite_field_rejected():
    data = _scenario_dict(field={"kind": "prime", "p": 6})
    with pytest.raises(ValidationError, match="prime"):
        load_scenario_mapping(data)
