"""The commutative coefficient algebra: sparse multivariate polynomial and
Laurent arithmetic over an exact field, plus derivations given by images on
generators and extended by the Leibniz rule.

A Context owns the field, the declared variables, and the registered
derivations.  Contexts are frozen after validation; the only mutation ever
allowed afterwards is the lazy, append-only registration of new variables by
a shift-rule derivation (bounded by a hard cap).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import UsageError, ValidationError, VariableCapError
from .fields import FieldSpec, Scalar

POLYNOMIAL = "polynomial"
LAURENT = "laurent"

DEFAULT_VARIABLE_CAP = 64


@dataclass(frozen=True, slots=True)
class VariableSpec:
    name: str
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (POLYNOMIAL, LAURENT):
            raise UsageError(f"unknown variable kind {self.kind!r}")


@dataclass(frozen=True, slots=True)
class Monomial:
    """Sorted tuple of (variable index, nonzero exponent) pairs; () is 1."""

    exps: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def make(mapping) -> "Monomial":
        items = dict(mapping)
        return Monomial(tuple((int(i), int(e)) for i, e in sorted(items.items()) if e))

    def to_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def exponent(self, index: int) -> int:
        for i, e in self.exps:
            if i == index:
                return e
        return 0

    def is_one(self) -> bool:
        return not self.exps

    def degree(self) -> int:
        """Total degree with Laurent exponents contributing absolute values."""
        return sum(abs(e) for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = self.to_dict()
        for i, e in other.exps:
            d[i] = d.get(i, 0) + e
        return Monomial.make(d)

    def __repr__(self):
        return f"Monomial({dict(self.exps)})"


ONE_MONOMIAL = Monomial(())


def monomial_sort_key(m: Monomial) -> tuple:
    """Graded key: (total |degree|, dense-ish exponent listing)."""
    return (m.degree(), m.exps)


_SHIFT_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(\d+)$")


@dataclass
class Derivation:
    """A derivation of the coefficient algebra, given by generator images.

    Either an explicit image per covered variable, or a shift rule sending
    the k-th variable of a named family to the (k + shift_offset)-th one, or
    both (explicit images for variables outside the family).
    """

    name: str
    images: dict[int, "AElement"] = field(default_factory=dict)
    shift_prefix: str | None = None
    shift_offset: int = 1

    def shift_target(self, var: VariableSpec) -> int | None:
        """Family position this derivation shifts `var` to, if covered by the rule."""
        if self.shift_prefix is None:
            return None
        m = _SHIFT_NAME_RE.match(var.name)
        if not m or m.group(1) != self.shift_prefix:
            return None
        return int(m.group(2)) + self.shift_offset

    def covers(self, var: VariableSpec) -> bool:
        return var.index in self.images or self.shift_target(var) is not None


class Context:
    """Field + variables + commuting derivations; frozen after validation."""

    def __init__(self, spec: FieldSpec, variable_cap: int = DEFAULT_VARIABLE_CAP):
        self.spec = spec
        self.variable_cap = variable_cap
        self.variables: list[VariableSpec] = []
        self.derivations: list[Derivation] = []
        self._by_name: dict[str, VariableSpec] = {}
        self._der_by_name: dict[str, Derivation] = {}
        self._frozen = False
        self._dcache: dict[tuple[str, Monomial], "AElement"] = {}

    # -- declaration ------------------------------------------------------

    def add_variable(self, name: str, kind: str = POLYNOMIAL) -> VariableSpec:
        if self._frozen:
            raise UsageError("context is frozen; cannot declare variables")
        return self._register_variable(name, kind)

    def _register_variable(self, name: str, kind: str) -> VariableSpec:
        if name in self._by_name:
            raise UsageError(f"variable {name!r} already declared")
        if name in self._der_by_name:
            raise UsageError(f"name {name!r} already used by a derivation")
        if len(self.variables) >= self.variable_cap:
            raise VariableCapError(
                f"variable cap {self.variable_cap} reached while declaring {name!r}"
            )
        var = VariableSpec(name=name, kind=kind, index=len(self.variables))
        self.variables.append(var)
        self._by_name[name] = var
        return var

    def add_derivation(
        self,
        name: str,
        images: dict[str, "AElement"] | None = None,
        shift_prefix: str | None = None,
        shift_offset: int = 1,
    ) -> Derivation:
        if self._frozen:
            raise UsageError("context is frozen; cannot add derivations")
        if name in self._der_by_name or name in self._by_name:
            raise UsageError(f"name {name!r} already in use")
        image_by_index: dict[int, AElement] = {}
        for var_name, u in (images or {}).items():
            var = self.variable(var_name)
            if not isinstance(u, AElement) or u.ctx is not self:
                raise UsageError(f"image of {var_name!r} is not an element of this algebra")
            image_by_index[var.index] = u
        d = Derivation(
            name=name,
            images=image_by_index,
            shift_prefix=shift_prefix,
            shift_offset=shift_offset,
        )
        self.derivations.append(d)
        self._der_by_name[name] = d
        return d

    def freeze(self) -> "Context":
        """Validate coverage and pairwise commutativity, then freeze."""
        violations = []
        for d in self.derivations:
            for var in self.variables:
                if not d.covers(var):
                    violations.append(f"derivation {d.name} has no image for {var.name}")
        if not violations:
            for a in range(len(self.derivations)):
                for b in range(a + 1, len(self.derivations)):
                    d1, d2 = self.derivations[a], self.derivations[b]
                    if not self.check_commuting(d1, d2):
                        violations.append(f"derivations {d1.name} and {d2.name} do not commute")
        if violations:
            raise ValidationError(violations)
        self._frozen = True
        return self

    # -- lookup -----------------------------------------------------------

    def variable(self, name: str) -> VariableSpec:
        var = self._by_name.get(name)
        if var is None:
            raise UsageError(f"unknown variable {name!r}")
        return var

    def has_variable(self, name: str) -> bool:
        return name in self._by_name

    def has_derivation(self, name: str) -> bool:
        return name in self._der_by_name

    def derivation(self, name: str) -> Derivation:
        d = self._der_by_name.get(name)
        if d is None:
            raise UsageError(f"unknown derivation {name!r}")
        return d

    def derivation_index(self, d: Derivation) -> int:
        for i, known in enumerate(self.derivations):
            if known is d:
                return i
        raise UsageError(f"derivation {d.name!r} is not registered in this context")

    # -- element factories --------------------------------------------------

    def scalar(self, value) -> Scalar:
        return self.spec.scalar(value)

    def zero(self) -> "AElement":
        return AElement(self, {})

    def one(self) -> "AElement":
        return AElement(self, {ONE_MONOMIAL: self.spec.one()})

    def constant(self, value) -> "AElement":
        c = self.scalar(value)
        return AElement(self, {ONE_MONOMIAL: c} if c else {})

    def var(self, name: str, exponent: int = 1) -> "AElement":
        return self.monomial({name: exponent})

    def monomial(self, exponents: dict[str, int], coefficient=1) -> "AElement":
        by_index = {}
        for name, e in exponents.items():
            var = self.variable(name)
            if e < 0 and var.kind == POLYNOMIAL:
                raise UsageError(f"negative power of polynomial variable {name!r}")
            by_index[var.index] = e
        c = self.scalar(coefficient)
        if not c:
            return self.zero()
        return AElement(self, {Monomial.make(by_index): c})

    # -- derivation application --------------------------------------------

    def _image(self, d: Derivation, var: VariableSpec) -> "AElement":
        explicit = d.images.get(var.index)
        if explicit is not None:
            return explicit
        target = d.shift_target(var)
        if target is None:
            raise UsageError(f"derivation {d.name} does not cover variable {var.name}")
        target_name = f"{d.shift_prefix}{target}"
        if target_name not in self._by_name:
            # The shift family auto-extends; intermediate members are created
            # too so family positions always match declaration order.
            base = _SHIFT_NAME_RE.match(var.name)
            pos = int(base.group(2)) + 1  # type: ignore[union-attr]
            while f"{d.shift_prefix}{pos}" in self._by_name:
                pos += 1
            while pos <= target:
                self._register_variable(f"{d.shift_prefix}{pos}", POLYNOMIAL)
                pos += 1
        return self.var(target_name)

    def _monomial_derivative(self, d: Derivation, m: Monomial) -> "AElement":
        cached = None
        key = None
        if d is self._der_by_name.get(d.name):
            key = (d.name, m)
            cached = self._dcache.get(key)
        if cached is not None:
            return cached
        total = self.zero()
        for i, e in m.exps:
            var = self.variables[i]
            rest = m.to_dict()
            rest[i] = e - 1
            factor = AElement(self, {Monomial.make(rest): self.spec.from_int(e)})
            total = total + factor * self._image(d, var)
        if key is not None:
            self._dcache[key] = total
        return total

    def apply_derivation(self, d: Derivation, u: "AElement") -> "AElement":
        """Leibniz-linear extension of the generator images to all of A."""
        if u.ctx is not self:
            raise UsageError("element belongs to a different context")
        total = self.zero()
        for m, c in u.terms.items():
            total = total + self._monomial_derivative(d, m) * c
        return total

    def check_commuting(self, d1: Derivation, d2: Derivation, variables=None) -> bool:
        """True iff the commutator vanishes on every generator.

        The commutator of two derivations is again a derivation, so vanishing
        on generators forces vanishing on the whole generated subalgebra.
        """
        for var in list(variables if variables is not None else self.variables):
            x = self.var(var.name)
            lhs = self.apply_derivation(d1, self.apply_derivation(d2, x))
            rhs = self.apply_derivation(d2, self.apply_derivation(d1, x))
            if lhs != rhs:
                return False
        return True


class AElement:
    """Sparse element of the coefficient algebra: monomial -> scalar."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[Monomial, Scalar]):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "AElement"):
        if not isinstance(other, AElement):
            raise UsageError(f"expected a coefficient-algebra element, got {other!r}")
        if other.ctx is not self.ctx:
            raise UsageError("mixed contexts in coefficient arithmetic")

    def __eq__(self, other):
        if not isinstance(other, AElement):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __add__(self, other: "AElement") -> "AElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            out[m] = c if cur is None else cur + c
        return AElement(self.ctx, out)

    def __neg__(self) -> "AElement":
        return AElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AElement") -> "AElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AElement):
            self._check(other)
            out: dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 * m2
                    c = c1 * c2
                    cur = out.get(m)
                    out[m] = c if cur is None else cur + c
            return AElement(self.ctx, out)
        c = self.ctx.scalar(other)
        return AElement(self.ctx, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def scale(self, c) -> "AElement":
        return self * c

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in descending graded print order; deterministic."""
        return sorted(self.terms.items(), key=lambda t: monomial_sort_key(t[0]), reverse=True)

    def single_term(self) -> tuple[Monomial, Scalar] | None:
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def __str__(self) -> str:
        return format_a_element(self)

    def __repr__(self) -> str:
        return f"<A {format_a_element(self)}>"


# -- printing ---------------------------------------------------------------


def format_monomial(ctx: Context, m: Monomial) -> str:
    if m.is_one():
        return "1"
    parts = []
    for i, e in sorted(m.exps):
        name = ctx.variables[i].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _signed_monomial_term(ctx: Context, m: Monomial, c: Scalar) -> tuple[bool, str]:
    """(is_negative, unsigned text) for one scalar*monomial term."""
    negative = c.is_negative()
    mag = c.abs()
    pieces = []
    if not (mag.is_one() and not m.is_one()):
        pieces.append(str(mag))
    if not m.is_one():
        pieces.append(format_monomial(ctx, m))
    return negative, "*".join(pieces)


def join_signed(parts: list[tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for k, (negative, text) in enumerate(parts):
        if k == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


def format_a_element(u: AElement) -> str:
    parts = [_signed_monomial_term(u.ctx, m, c) for m, c in u.sorted_terms()]
    return join_signed(parts)
