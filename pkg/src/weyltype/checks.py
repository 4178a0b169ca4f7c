"""Seeded randomized verification suites for the exact algebra identities:
associativity of the normal-ordering product, the action homomorphism,
Lie axioms, Leibniz and commutativity of the derivation family, and the
leading-level arithmetic.

All equalities are exact; a single violation fails the suite and the
violating inputs are reported verbatim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coefficients import AElement, Context, LAURENT
from .fields import RATIONAL_KIND, Scalar
from .multiindex import MultiIndex
from .operators import (
    WeylElement,
    act,
    format_weyl,
    leading,
    lie_bracket,
    w_mul,
    wfrom_a,
)


@dataclass(frozen=True)
class SampleBounds:
    max_degree: int = 4
    max_level: int = 3
    max_terms: int = 3
    n_variables: int | None = None  # restrict to the first n declared variables


def random_scalar(rng: random.Random, ctx: Context, nonzero: bool = False) -> Scalar:
    while True:
        if ctx.spec.kind == RATIONAL_KIND:
            s = ctx.scalar(rng.randint(-6, 6)) / ctx.scalar(rng.randint(1, 4))
        else:
            s = ctx.spec.from_int(rng.randrange(ctx.spec.p))  # type: ignore[arg-type]
        if s or not nonzero:
            return s


def random_monomial_element(rng: random.Random, ctx: Context, bounds: SampleBounds) -> AElement:
    nvars = bounds.n_variables or len(ctx.variables)
    out = ctx.one()
    for _ in range(rng.randint(0, bounds.max_degree)):
        var = ctx.variables[rng.randrange(nvars)]
        e = rng.choice((-1, 1)) if var.kind == LAURENT else 1
        out = out * ctx.monomial({var.name: e})
    return out


def random_a(rng: random.Random, ctx: Context, bounds: SampleBounds, nonzero: bool = False) -> AElement:
    while True:
        total = ctx.zero()
        for _ in range(rng.randint(0 if not nonzero else 1, bounds.max_terms)):
            total = total + random_monomial_element(rng, ctx, bounds) * random_scalar(rng, ctx)
        if total or not nonzero:
            return total


def random_multi_index(rng: random.Random, ctx: Context, bounds: SampleBounds) -> MultiIndex:
    n = len(ctx.derivations)
    exps: dict[int, int] = {}
    for _ in range(rng.randint(0, bounds.max_level)):
        i = rng.randrange(n)
        exps[i] = exps.get(i, 0) + 1
    return MultiIndex.make(exps)


def random_weyl(rng: random.Random, ctx: Context, bounds: SampleBounds, nonzero: bool = False) -> WeylElement:
    while True:
        terms: dict[MultiIndex, AElement] = {}
        for _ in range(rng.randint(0 if not nonzero else 1, bounds.max_terms)):
            alpha = random_multi_index(rng, ctx, bounds)
            u = random_a(rng, ctx, bounds)
            cur = terms.get(alpha)
            terms[alpha] = u if cur is None else cur + u
        x = WeylElement(ctx, terms)
        if x or not nonzero:
            return x


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _run(name: str, trials: int, one_trial) -> CheckResult:
    result = CheckResult(name=name, trials=trials)
    for k in range(trials):
        message = one_trial(k)
        if message:
            result.failures.append(message)
            break
    return result


def check_associativity(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(_k):
        x = random_weyl(rng, ctx, bounds)
        y = random_weyl(rng, ctx, bounds)
        z = random_weyl(rng, ctx, bounds)
        if w_mul(w_mul(x, y), z) != w_mul(x, w_mul(y, z)):
            return f"(x*y)*z != x*(y*z) for x={format_weyl(x)} y={format_weyl(y)} z={format_weyl(z)}"
        return None

    return _run("associativity", trials, trial)


def check_action_homomorphism(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(_k):
        x = random_weyl(rng, ctx, bounds)
        y = random_weyl(rng, ctx, bounds)
        a = random_a(rng, ctx, bounds)
        if act(w_mul(x, y), a) != act(x, act(y, a)):
            return f"act(x*y, a) != act(x, act(y, a)) for x={format_weyl(x)} y={format_weyl(y)} a={a}"
        return None

    return _run("action_homomorphism", trials, trial)


def check_lie_axioms(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(k):
        x = random_weyl(rng, ctx, bounds)
        y = random_weyl(rng, ctx, bounds)
        z = random_weyl(rng, ctx, bounds)
        if not lie_bracket(x, x).is_zero():
            return f"[x, x] != 0 for x={format_weyl(x)}"
        jac = (
            lie_bracket(lie_bracket(x, y), z)
            + lie_bracket(lie_bracket(y, z), x)
            + lie_bracket(lie_bracket(z, x), y)
        )
        if not jac.is_zero():
            return f"Jacobi fails for x={format_weyl(x)} y={format_weyl(y)} z={format_weyl(z)}"
        c = random_scalar(rng, ctx)
        lhs = lie_bracket(x.scale(c) + y, z)
        rhs = lie_bracket(x, z).scale(c) + lie_bracket(y, z)
        if lhs != rhs:
            return f"bilinearity fails for c={c} x={format_weyl(x)} y={format_weyl(y)} z={format_weyl(z)}"
        return None

    return _run("lie_axioms", trials, trial)


def check_leibniz(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(_k):
        for d in ctx.derivations:
            u = random_a(rng, ctx, bounds)
            v = random_a(rng, ctx, bounds)
            du, dv = ctx.apply_derivation(d, u), ctx.apply_derivation(d, v)
            if ctx.apply_derivation(d, u * v) != du * v + u * dv:
                return f"Leibniz fails for {d.name} on u={u} v={v}"
            c = random_scalar(rng, ctx)
            if ctx.apply_derivation(d, u * c + v) != du * c + dv:
                return f"linearity fails for {d.name} on u={u} v={v} c={c}"
        return None

    return _run("leibniz", trials, trial)


def check_commutativity(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(_k):
        u = random_a(rng, ctx, bounds)
        for i in range(len(ctx.derivations)):
            for j in range(i + 1, len(ctx.derivations)):
                d1, d2 = ctx.derivations[i], ctx.derivations[j]
                lhs = ctx.apply_derivation(d1, ctx.apply_derivation(d2, u))
                rhs = ctx.apply_derivation(d2, ctx.apply_derivation(d1, u))
                if lhs != rhs:
                    return f"{d1.name} and {d2.name} do not commute on u={u}"
        return None

    return _run("commutativity", trials, trial)


def check_level_arithmetic(ctx: Context, trials: int, rng: random.Random, bounds: SampleBounds) -> CheckResult:
    def trial(_k):
        x = random_weyl(rng, ctx, bounds, nonzero=True)
        y = random_weyl(rng, ctx, bounds, nonzero=True)
        lx, ly = leading(x), leading(y)
        product = w_mul(x, y)
        lp = leading(product)
        if lp.lev != lx.lev + ly.lev:
            return f"lev(x*y) != lev(x)+lev(y) for x={format_weyl(x)} y={format_weyl(y)}"
        if lp.deg != lx.deg.add(ly.deg):
            return f"deg(x*y) != deg(x)+deg(y) for x={format_weyl(x)} y={format_weyl(y)}"
        a = random_a(rng, ctx, bounds)
        drop = leading(lie_bracket(x, wfrom_a(a)))
        if not drop.lev <= lx.lev - 1:
            return f"lev([x, a]) > lev(x)-1 for x={format_weyl(x)} a={a}"
        return None

    return _run("level_arithmetic", trials, trial)


ALL_SUITES = (
    check_associativity,
    check_action_homomorphism,
    check_lie_axioms,
    check_leibniz,
    check_commutativity,
    check_level_arithmetic,
)


def run_all_checks(ctx: Context, trials: int, seed: int, bounds: SampleBounds) -> list[CheckResult]:
    results = []
    for suite in ALL_SUITES:
        rng = random.Random(f"{seed}:{suite.__name__}")
        results.append(suite(ctx, trials, rng, bounds))
    return results
