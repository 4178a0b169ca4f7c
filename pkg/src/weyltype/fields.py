"""Exact scalar arithmetic over the rationals and over prime residue fields.

Every scalar is an immutable value in canonical form: rationals are kept in
lowest terms with a positive denominator, prime residues in [0, p).  There is
no floating point anywhere in this package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import UsageError

RATIONAL_KIND = "rational"
PRIME_KIND = "prime"


def is_prime(n: int) -> bool:
    """Trial-division primality check; adequate for the moduli used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """Which exact field scalars live in: the rationals, or F_p for prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONAL_KIND:
            if self.p is not None:
                raise UsageError("rational field spec takes no modulus")
        elif self.kind == PRIME_KIND:
            if self.p is None or not is_prime(self.p):
                raise UsageError(f"modulus {self.p!r} is not prime")
        else:
            raise UsageError(f"unknown field kind {self.kind!r}")

    def characteristic(self) -> int:
        return 0 if self.kind == RATIONAL_KIND else int(self.p)  # type: ignore[arg-type]

    def from_int(self, n: int) -> "Scalar":
        if self.kind == RATIONAL_KIND:
            return Scalar(self, Fraction(n))
        return Scalar(self, n % self.p)  # type: ignore[operator]

    def from_fraction(self, q: Fraction) -> "Scalar":
        if self.kind == RATIONAL_KIND:
            return Scalar(self, q)
        num = self.from_int(q.numerator)
        return num * self.from_int(q.denominator).inverse()

    def zero(self) -> "Scalar":
        return self.from_int(0)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, str, or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.spec != self:
                raise UsageError("scalar belongs to a different field")
            return value
        if isinstance(value, bool):
            raise UsageError("booleans are not scalars")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, str):
            return parse_scalar(value, self)
        raise UsageError(f"cannot coerce {value!r} into {self}")

    def __str__(self) -> str:
        return "Q" if self.kind == RATIONAL_KIND else f"F_{self.p}"


RATIONAL = FieldSpec(RATIONAL_KIND)


@dataclass(frozen=True, slots=True)
class Scalar:
    """An element of a FieldSpec's field, always stored in canonical form."""

    spec: FieldSpec
    value: object  # Fraction for rational, int residue for prime

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.spec != self.spec:
                raise UsageError("mixed field specs in scalar arithmetic")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.spec.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return bool(self.value)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.spec.kind == RATIONAL_KIND:
            return Scalar(self.spec, self.value + o.value)
        return Scalar(self.spec, (self.value + o.value) % self.spec.p)

    __radd__ = __add__

    def __neg__(self):
        if self.spec.kind == RATIONAL_KIND:
            return Scalar(self.spec, -self.value)
        return Scalar(self.spec, (-self.value) % self.spec.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.spec.kind == RATIONAL_KIND:
            return Scalar(self.spec, self.value * o.value)
        return Scalar(self.spec, (self.value * o.value) % self.spec.p)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("scalar 0 has no inverse")
        if self.spec.kind == RATIONAL_KIND:
            return Scalar(self.spec, 1 / self.value)
        return Scalar(self.spec, pow(self.value, -1, self.spec.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def is_negative(self) -> bool:
        """True for rationals below zero; prime residues are never negative."""
        return self.spec.kind == RATIONAL_KIND and self.value < 0

    def abs(self) -> "Scalar":
        return -self if self.is_negative() else self

    def is_one(self) -> bool:
        return self.value == 1

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({self.spec}, {self.value})"


def binom_scalar(n: int, k: int, spec: FieldSpec) -> Scalar:
    """C(n, k) computed over the integers, then mapped into the field.

    Computing over Z first is what makes the normal-ordering product correct
    in characteristic p.
    """
    if k < 0 or n < 0 or k > n:
        raise UsageError(f"binomial C({n}, {k}) outside 0 <= k <= n")
    return spec.from_int(comb(n, k))


_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_RESIDUE_RE = re.compile(r"^\d+$")


def parse_scalar(text: str, spec: FieldSpec) -> Scalar:
    """Parse the canonical textual scalar form, bit-exactly."""
    text = text.strip()
    if spec.kind == RATIONAL_KIND:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise UsageError(f"not a rational literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return Scalar(spec, Fraction(num, den))
    if not _RESIDUE_RE.match(text):
        raise UsageError(f"not a residue literal: {text!r}")
    n = int(text)
    if n >= spec.p:  # type: ignore[operator]
        raise UsageError(f"residue {n} not reduced mod {spec.p}")
    return Scalar(spec, n)


def format_scalar(s: Scalar) -> str:
    if s.spec.kind == RATIONAL_KIND:
        q: Fraction = s.value  # type: ignore[assignment]
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return str(s.value)
