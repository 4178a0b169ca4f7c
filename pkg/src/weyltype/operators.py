"""Elements of the operator algebra built from coefficients and derivation
powers, with the normal-ordering product, the induced Lie bracket, the action
on the coefficient algebra, and the leading-term toolkit.

Every element is kept in normal form: a finite map from derivation
multi-indices to coefficient-algebra elements.  The product of two basis
terms is

    (u, alpha) * (v, beta) =
        sum over gamma <= alpha of
            C(alpha, gamma) * u * d^gamma(v)  at index  alpha + beta - gamma

where d^gamma is the iterated application of the registered derivations.
Extending bilinearly gives an associative product, and the natural action on
the coefficient algebra becomes an algebra homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import AElement, Context, format_a_element, _signed_monomial_term, join_signed
from .errors import UsageError
from .multiindex import MINUS_INFINITY, MultiIndex, ZERO_INDEX, binom_product, compare, lower_set


class WeylElement:
    """Sparse normal-form operator: multi-index -> coefficient element."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[MultiIndex, AElement]):
        self.ctx = ctx
        self.terms = {a: u for a, u in terms.items() if not u.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "WeylElement"):
        if not isinstance(other, WeylElement):
            raise UsageError(f"expected an operator element, got {other!r}")
        if other.ctx is not self.ctx:
            raise UsageError("mixed contexts in operator arithmetic")

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        out = dict(self.terms)
        for a, u in other.terms.items():
            cur = out.get(a)
            out[a] = u if cur is None else cur + u
        return WeylElement(self.ctx, out)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.ctx, {a: -u for a, u in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return w_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, WeylElement):
            return w_mul(other, self)
        return self.scale(other)

    def scale(self, c) -> "WeylElement":
        s = self.ctx.scalar(c)
        return WeylElement(self.ctx, {a: u * s for a, u in self.terms.items()})

    def __pow__(self, n: int) -> "WeylElement":
        if n < 0:
            raise UsageError("negative operator powers are undefined")
        out = widentity(self.ctx)
        for _ in range(n):
            out = w_mul(out, self)
        return out

    def a_part(self) -> AElement:
        """Coefficient at the zero multi-index."""
        return self.terms.get(ZERO_INDEX, self.ctx.zero())

    def is_a_only(self) -> bool:
        return all(a.is_zero() for a in self.terms)

    def sorted_terms(self) -> list[tuple[MultiIndex, AElement]]:
        """Descending graded order on the derivation part; deterministic."""
        return sorted(
            self.terms.items(),
            key=lambda t: (t[0].level(), tuple(t[0].entries)),
            reverse=True,
        )

    def __str__(self) -> str:
        return format_weyl(self)

    def __repr__(self) -> str:
        return f"<W {format_weyl(self)}>"


def wzero(ctx: Context) -> WeylElement:
    return WeylElement(ctx, {})


def widentity(ctx: Context) -> WeylElement:
    return WeylElement(ctx, {ZERO_INDEX: ctx.one()})


def wfrom_a(u: AElement) -> WeylElement:
    return WeylElement(u.ctx, {ZERO_INDEX: u})


def wbasis(ctx: Context, alpha: MultiIndex, coefficient: AElement | None = None) -> WeylElement:
    u = coefficient if coefficient is not None else ctx.one()
    return WeylElement(ctx, {alpha: u})


def wderivation(ctx: Context, name: str) -> WeylElement:
    d = ctx.derivation(name)
    return wbasis(ctx, MultiIndex.single(ctx.derivation_index(d)))


def apply_multi(ctx: Context, gamma: MultiIndex, a: AElement) -> AElement:
    """Iterated derivation d^gamma applied to a coefficient element.

    Derivations are applied in declaration order; they commute (validated at
    context freeze), so the order does not affect the value.
    """
    out = a
    for i, e in gamma.entries:
        d = ctx.derivations[i]
        for _ in range(e):
            if out.is_zero():
                return out
            out = ctx.apply_derivation(d, out)
    return out


def w_mul(x: WeylElement, y: WeylElement) -> WeylElement:
    """Normal-ordering product; the result is again in normal form."""
    x._check(y)
    ctx = x.ctx
    out: dict[MultiIndex, AElement] = {}
    for alpha, u in x.terms.items():
        weighted = [
            (gamma, binom_product(alpha, gamma, ctx.spec)) for gamma in lower_set(alpha)
        ]
        for beta, v in y.terms.items():
            for gamma, c in weighted:
                if c.is_zero():
                    continue
                dv = apply_multi(ctx, gamma, v)
                if dv.is_zero():
                    continue
                coeff = u * dv * c
                idx = alpha.add(beta).sub(gamma)
                cur = out.get(idx)
                out[idx] = coeff if cur is None else cur + coeff
    return WeylElement(ctx, out)


def lie_bracket(x: WeylElement, y: WeylElement) -> WeylElement:
    """Commutator induced by the associative product."""
    return w_mul(x, y) - w_mul(y, x)


def act(x: WeylElement, a: AElement) -> AElement:
    """Natural action on the coefficient algebra; an algebra homomorphism."""
    if a.ctx is not x.ctx:
        raise UsageError("mixed contexts in action")
    out = x.ctx.zero()
    for alpha, u in x.terms.items():
        da = apply_multi(x.ctx, alpha, a)
        if not da.is_zero():
            out = out + u * da
    return out


@dataclass(frozen=True)
class LeadingData:
    """Leading term, leading degree, leading level; level is -inf for zero."""

    ld: tuple[MultiIndex, AElement] | None
    deg: MultiIndex | None
    lev: object


def leading(x: WeylElement) -> LeadingData:
    if x.is_zero():
        return LeadingData(ld=None, deg=None, lev=MINUS_INFINITY)
    beta = None
    for alpha in x.terms:
        if beta is None or compare(beta, alpha) < 0:
            beta = alpha
    return LeadingData(ld=(beta, x.terms[beta]), deg=beta, lev=beta.level())


def support(x: WeylElement) -> set[MultiIndex]:
    return set(x.terms)


def split_constant(y: WeylElement) -> tuple[WeylElement, AElement]:
    """Split off the zero-index coefficient: y = y_star + y0."""
    y0 = y.a_part()
    y_star = WeylElement(y.ctx, {a: u for a, u in y.terms.items() if not a.is_zero()})
    return y_star, y0


# -- printing ---------------------------------------------------------------


def format_multi_index(ctx: Context, alpha: MultiIndex) -> str:
    if alpha.is_zero():
        return "1"
    parts = []
    for i, e in alpha.entries:
        name = ctx.derivations[i].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_weyl(x: WeylElement) -> str:
    """Canonical textual form; round-trips exactly through the parser."""
    ctx = x.ctx
    parts: list[tuple[bool, str]] = []
    for alpha, u in x.sorted_terms():
        if alpha.is_zero():
            parts.extend(_signed_monomial_term(ctx, m, c) for m, c in u.sorted_terms())
            continue
        dpart = format_multi_index(ctx, alpha)
        single = u.single_term()
        if single is None:
            parts.append((False, f"({format_a_element(u)})*{dpart}"))
        else:
            m, c = single
            negative = c.is_negative()
            mag = c.abs()
            pieces = []
            if not mag.is_one():
                pieces.append(str(mag))
            if not m.is_one():
                pieces.append(ctx_format_monomial(ctx, m))
            pieces.append(dpart)
            parts.append((negative, "*".join(pieces)))
    return join_signed(parts)


def ctx_format_monomial(ctx: Context, m) -> str:
    from .coefficients import format_monomial

    return format_monomial(ctx, m)
