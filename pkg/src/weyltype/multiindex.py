"""Multi-indices over the derivation index set.

A multi-index is a finite-support map from derivation indices (declaration
order) to positive exponents; it labels the basis monomial of the polynomial
algebra generated by the derivations.  The total order is graded: first by
level (the exponent sum), then lexicographically on the smallest differing
index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

from .errors import UsageError
from .fields import FieldSpec, Scalar, binom_scalar


class _MinusInfinity:
    """Sentinel below every integer; the level of the zero element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return not isinstance(other, _MinusInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _MinusInfinity)

    def __eq__(self, other):
        return isinstance(other, _MinusInfinity)

    def __hash__(self):
        return hash("minus-infinity")

    def __repr__(self):
        return "-inf"


MINUS_INFINITY = _MinusInfinity()

Level = Union[int, _MinusInfinity]  # MINUS_INFINITY is the level of zero


@total_ordering
@dataclass(frozen=True, slots=True)
class MultiIndex:
    """Sorted tuple of (derivation index, positive exponent) pairs."""

    entries: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def make(mapping) -> "MultiIndex":
        if isinstance(mapping, MultiIndex):
            return mapping
        items = dict(mapping)
        out = []
        for i, e in sorted(items.items()):
            if e < 0:
                raise UsageError(f"negative exponent {e} at index {i}")
            if e:
                out.append((int(i), int(e)))
        return MultiIndex(tuple(out))

    @staticmethod
    def single(index: int, exponent: int = 1) -> "MultiIndex":
        return MultiIndex.make({index: exponent})

    def to_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def get(self, index: int) -> int:
        for i, e in self.entries:
            if i == index:
                return e
        return 0

    def level(self) -> int:
        return sum(e for _, e in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def supp(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def top_index(self):
        return self.entries[-1][0] if self.entries else MINUS_INFINITY

    def add(self, other: "MultiIndex") -> "MultiIndex":
        d = self.to_dict()
        for i, e in other.entries:
            d[i] = d.get(i, 0) + e
        return MultiIndex.make(d)

    def sub(self, other: "MultiIndex") -> "MultiIndex":
        d = self.to_dict()
        for i, e in other.entries:
            d[i] = d.get(i, 0) - e
            if d[i] < 0:
                raise UsageError("multi-index subtraction went negative")
        return MultiIndex.make(d)

    def le_componentwise(self, other: "MultiIndex") -> bool:
        o = other.to_dict()
        return all(e <= o.get(i, 0) for i, e in self.entries)

    def __lt__(self, other: "MultiIndex") -> bool:
        return compare(self, other) < 0

    def __repr__(self):
        return f"MultiIndex({dict(self.entries)})"


ZERO_INDEX = MultiIndex(())


def compare(a: MultiIndex, b: MultiIndex) -> int:
    """Graded order: by level first, then by the smallest index where they differ."""
    la, lb = a.level(), b.level()
    if la != lb:
        return -1 if la < lb else 1
    da, db = a.to_dict(), b.to_dict()
    for i in sorted(set(da) | set(db)):
        va, vb = da.get(i, 0), db.get(i, 0)
        if va != vb:
            return -1 if va < vb else 1
    return 0


def level(alpha: MultiIndex):
    """Exponent sum; callers treat the zero element separately as -inf."""
    return alpha.level()


def lower_set(alpha: MultiIndex) -> list[MultiIndex]:
    """All componentwise-smaller multi-indices, ascending in the graded order."""
    idxs = alpha.supp()
    ranges = [range(alpha.get(i) + 1) for i in idxs]
    out = [
        MultiIndex.make(dict(zip(idxs, choice)))
        for choice in itertools.product(*ranges)
    ]
    out.sort(key=lambda g: (g.level(), tuple(g.get(i) for i in idxs)))
    return out


def binom_product(alpha: MultiIndex, gamma: MultiIndex, spec: FieldSpec) -> Scalar:
    """Product of componentwise binomial coefficients, in the field."""
    if not gamma.le_componentwise(alpha):
        raise UsageError("gamma is not componentwise below alpha")
    out = spec.one()
    for i, g in gamma.entries:
        out = out * binom_scalar(alpha.get(i), g, spec)
    return out


@dataclass(frozen=True, slots=True)
class PAdicFactor:
    """One factor d^(p^s) raised to a base-p digit, 1 <= multiplicity <= p-1."""

    index: int
    power: int
    multiplicity: int


def p_adic_factor(alpha: MultiIndex, p: int) -> list[PAdicFactor]:
    """Factor each exponent into base-p digits.

    Each emitted factor stands for the derivation obtained by iterating the
    index-th generator p^s times; recomposing the factors multiplicatively
    reproduces the original basis monomial exactly.
    """
    if not is_prime_int(p):
        raise UsageError(f"{p} is not prime")
    out = []
    for i, e in alpha.entries:
        s = 0
        while e:
            digit = e % p
            if digit:
                out.append(PAdicFactor(index=i, power=p**s, multiplicity=digit))
            e //= p
            s += 1
    return out


def is_prime_int(p: int) -> bool:
    from .fields import is_prime

    return is_prime(p)
