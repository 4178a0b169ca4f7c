"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  All equalities are exact; there are no tolerances anywhere.
"""

import contextlib
import random
import time
from fractions import Fraction

from weyltype import (
    Context,
    FieldSpec,
    MultiIndex,
    RATIONAL,
    Window,
    assoc_ideal_closure_probe,
    compute_f1,
    d_simplicity_probe,
    evaluate_text,
    lie_ideal_closure_probe,
    p_adic_factor,
    theta_kernel,
    w_mul,
    wbasis,
    widentity,
)
from weyltype.checks import (
    SampleBounds,
    check_action_homomorphism,
    check_associativity,
    check_commutativity,
    check_leibniz,
    check_level_arithmetic,
    check_lie_axioms,
    random_weyl,
)
from weyltype.cli import main as cli_main
from weyltype.linalg import RowReducer
from weyltype.operators import format_weyl
from weyltype.probes import (
    FULL_SPAN_MOD_F1,
    KERNEL_NONZERO,
    KERNEL_ZERO,
    PROPER_INVARIANT_SUBSPACE,
    REACHES_IDENTITY,
    a_from_coords,
    weyl_coords,
)
from weyltype.scenario import bundled_scenario_names, bundled_scenario_path, load_bundled

mk = MultiIndex.make


@contextlib.contextmanager
def criterion(num: int, label: str):
    info = {}
    try:
        yield info
    except BaseException:
        print(f"ACCEPTANCE {num:02d} {label}: FAIL")
        raise
    detail = info.get("detail", "")
    print(f"ACCEPTANCE {num:02d} {label}: PASS" + (f" ({detail})" if detail else ""))


def scenario_bounds(scenario) -> SampleBounds:
    return SampleBounds(
        max_degree=4,
        max_level=3,
        max_terms=scenario.sample.max_terms,
        n_variables=scenario.initial_variable_count,
    )


def test_criterion_01_associativity_per_scenario():
    with criterion(1, "associativity of the product") as info:
        times = []
        for name in bundled_scenario_names():
            scenario = load_bundled(name)
            rng = random.Random(f"acc1:{name}")
            started = time.monotonic()
            result = check_associativity(scenario.ctx, 500, rng, scenario_bounds(scenario))
            elapsed = time.monotonic() - started
            assert result.passed, f"{name}: {result.failures}"
            assert elapsed < 10.0, f"{name} took {elapsed:.1f}s"
            times.append(f"{name}={elapsed:.1f}s")
        info["detail"] = "500 triples each; " + " ".join(times)


def test_criterion_02_action_homomorphism():
    with criterion(2, "action is an algebra homomorphism") as info:
        scenario = load_bundled("mixed_flavors")
        rng = random.Random("acc2")
        result = check_action_homomorphism(scenario.ctx, 500, rng, scenario_bounds(scenario))
        assert result.passed, result.failures
        info["detail"] = "500 samples on the mixed scenario"


def test_criterion_03_lie_axioms():
    with criterion(3, "alternating bracket and Jacobi") as info:
        scenario = load_bundled("weyl_polynomial")
        rng = random.Random("acc3")
        result = check_lie_axioms(scenario.ctx, 500, rng, scenario_bounds(scenario))
        assert result.passed, result.failures
        info["detail"] = "500 triples"


def test_criterion_04_leibniz_and_commutativity_per_family():
    families = ("weyl_polynomial", "mixed_flavors", "shift_family", "group_algebra_z2")
    with criterion(4, "Leibniz and pairwise commutativity") as info:
        for name in families:
            scenario = load_bundled(name)
            bounds = scenario_bounds(scenario)
            leib = check_leibniz(scenario.ctx, 200, random.Random(f"acc4L:{name}"), bounds)
            comm = check_commutativity(scenario.ctx, 200, random.Random(f"acc4C:{name}"), bounds)
            assert leib.passed, f"{name}: {leib.failures}"
            assert comm.passed, f"{name}: {comm.failures}"
        info["detail"] = "200 pairs per derivation family"


def test_criterion_05_level_arithmetic():
    with criterion(5, "level and degree arithmetic") as info:
        for name in ("weyl_polynomial", "mixed_flavors"):
            scenario = load_bundled(name)
            rng = random.Random(f"acc5:{name}")
            result = check_level_arithmetic(scenario.ctx, 500, rng, scenario_bounds(scenario))
            assert result.passed, f"{name}: {result.failures}"
        info["detail"] = "500 nonzero pairs, product and bracket-drop laws"


def test_criterion_06_f1_regressions():
    with criterion(6, "derivation-kernel regressions") as info:
        f5 = Context(FieldSpec("prime", 5))
        f5.add_variable("t")
        f5.add_derivation("d1", images={"t": f5.one()})
        f5.freeze()
        w = Window.for_context(f5, {"t": (0, 12)}, max_level=2)
        basis = compute_f1(f5, w)
        found = [str(a_from_coords(f5, basis.labels, v)) for v in basis.vectors()]
        assert found == ["1", "t^5", "t^10"]

        q = Context(RATIONAL)
        q.add_variable("t")
        q.add_derivation("d1", images={"t": q.one()})
        q.freeze()
        wq = Window.for_context(q, {"t": (0, 12)}, max_level=2)
        bq = compute_f1(q, wq)
        assert [str(a_from_coords(q, bq.labels, v)) for v in bq.vectors()] == ["1"]

        le = Context(RATIONAL)
        le.add_variable("t", "laurent")
        le.add_derivation("d1", images={"t": le.var("t")})
        le.freeze()
        wl = Window.for_context(le, {"t": (-5, 5)}, max_level=2)
        bl = compute_f1(le, wl)
        assert [str(a_from_coords(le, bl.labels, v)) for v in bl.vectors()] == ["1"]
        info["detail"] = "char 5 gives 1, t^5, t^10; both rational cases give 1"


def _kernel_span_contains(ctx, window, witness, target) -> bool:
    index = {lab: j for j, lab in enumerate(window.ad_basis(ctx))}
    red = RowReducer(ctx.spec)
    for e in witness:
        red.add(weyl_coords(e, index))
    return red.contains(weyl_coords(target, index))


def test_criterion_07_faithfulness_counterexamples():
    with criterion(7, "action-kernel witnesses in characteristic p") as info:
        s2 = load_bundled("char2_poly")
        v2 = theta_kernel(s2.ctx, s2.window)
        assert v2.kind == KERNEL_NONZERO
        assert _kernel_span_contains(s2.ctx, s2.window, v2.witness, evaluate_text("d1^2", s2.ctx))

        s5 = load_bundled("char5_laurent_euler")
        v5 = theta_kernel(s5.ctx, s5.window)
        assert v5.kind == KERNEL_NONZERO
        assert _kernel_span_contains(
            s5.ctx, s5.window, v5.witness, evaluate_text("d1^5 - d1", s5.ctx)
        )

        q = load_bundled("weyl_polynomial")
        wq = Window.for_context(q.ctx, {"t": (0, 8)}, max_level=4)
        vq = theta_kernel(q.ctx, wq)
        assert vq.kind == KERNEL_ZERO
        info["detail"] = "witnesses d1^2 (char 2) and d1^5 - d1 (char 5); rational kernel empty"


def test_criterion_08_desk_scale_verdicts():
    with criterion(8, "simplicity verdicts at desk scale") as info:
        started = time.monotonic()
        simple = load_bundled("weyl_polynomial")
        ctx, window = simple.ctx, simple.window
        assert window.max_level == 3 and window.bound_for(0) == (0, 6)
        for seed_text in ("d1", "t^2", "t*d1"):
            verdict = assoc_ideal_closure_probe(ctx, evaluate_text(seed_text, ctx), window)
            assert verdict.kind == REACHES_IDENTITY, seed_text
        f1 = compute_f1(ctx, window)
        lie = lie_ideal_closure_probe(
            ctx, evaluate_text("t*d1", ctx), window, f1, Fraction(1, 2)
        )
        assert lie.kind == FULL_SPAN_MOD_F1

        control = load_bundled("nonsimple_euler")
        cctx = control.ctx
        verdict = d_simplicity_probe(cctx, cctx.var("t"), control.window)
        assert verdict.kind == PROPER_INVARIANT_SUBSPACE
        for u in verdict.witness:
            for m, _ in u.terms.items():
                assert m.exponent(0) >= 1  # symbolic divisibility by t
        elapsed = time.monotonic() - started
        assert elapsed < 60.0
        info["detail"] = f"elapsed {elapsed:.1f}s"


def test_criterion_09_p_adic_recomposition():
    with criterion(9, "base-p factor recomposition") as info:
        count = 0
        for p in (2, 3, 5):
            ctx = Context(FieldSpec("prime", p))
            ctx.add_variable("t")
            ctx.add_derivation("d1", images={"t": ctx.one()})
            ctx.freeze()
            for e in range(0, 7):
                alpha = mk({0: e})
                product = widentity(ctx)
                for factor in p_adic_factor(alpha, p):
                    assert 1 <= factor.multiplicity <= p - 1
                    piece = wbasis(ctx, mk({factor.index: factor.power}))
                    for _ in range(factor.multiplicity):
                        product = w_mul(product, piece)
                assert product == wbasis(ctx, alpha)
                count += 1
        info["detail"] = f"{count} exponents over p in 2, 3, 5"


def test_criterion_10_parser_roundtrip_and_goldens():
    with criterion(10, "parser round-trip and normalization goldens") as info:
        total = 0
        for name in ("weyl_polynomial", "mixed_flavors"):
            scenario = load_bundled(name)
            ctx = scenario.ctx
            rng = random.Random(f"acc10:{name}")
            bounds = scenario_bounds(scenario)
            for _ in range(250):
                x = random_weyl(rng, ctx, bounds)
                assert evaluate_text(format_weyl(x), ctx) == x
                total += 1

        golden = Context(RATIONAL)
        golden.add_variable("t")
        golden.add_derivation("d", images={"t": golden.one()})
        golden.freeze()
        assert format_weyl(evaluate_text("d*t", golden)) == "t*d + 1"
        assert format_weyl(evaluate_text("(d+t)^2", golden)) == "d^2 + 2*t*d + t^2 + 1"

        laurent = Context(RATIONAL)
        laurent.add_variable("t", "laurent")
        laurent.add_derivation("d", images={"t": laurent.var("t")})
        laurent.freeze()
        assert format_weyl(evaluate_text("t^-1*t", laurent)) == "1"
        info["detail"] = f"{total} round-trips plus three goldens"


def test_criterion_11_cli_byte_determinism(capsys):
    with criterion(11, "probe reports are byte-deterministic") as info:
        for name in bundled_scenario_names():
            path = str(bundled_scenario_path(name))
            code1 = cli_main(["probe", "--scenario", path])
            first = capsys.readouterr().out
            code2 = cli_main(["probe", "--scenario", path])
            second = capsys.readouterr().out
            assert code1 == code2 == 0
            assert first == second, name
            expected = bundled_scenario_path(name).parent / "expected" / f"{name}.report.json"
            assert first.encode("ascii") == expected.read_bytes(), name
        info["detail"] = f"{len(bundled_scenario_names())} scenarios, two runs each"
