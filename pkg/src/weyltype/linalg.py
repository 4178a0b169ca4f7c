"""Exact row reduction over a scalar field, on sparse coordinate vectors.

Vectors are dicts column -> nonzero scalar.  The reducer keeps its rows in
reduced row-echelon form at all times; since RREF is unique for a given row
space, the stored basis does not depend on insertion order.
"""

from __future__ import annotations

from .fields import FieldSpec, Scalar

SparseVec = "dict[int, Scalar]"


def axpy_into(target: dict, c: Scalar, row: dict) -> None:
    """target -= c * row, dropping entries that cancel to zero."""
    for j, v in row.items():
        cur = target.get(j)
        nv = -(c * v) if cur is None else cur - c * v
        if nv.is_zero():
            target.pop(j, None)
        else:
            target[j] = nv


class RowReducer:
    """Incremental RREF builder with exact membership tests."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.rows: list[tuple[int, dict]] = []  # (pivot column, row), pivot ascending

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return [p for p, _ in self.rows]

    def reduce(self, vec: dict) -> dict:
        """Return vec reduced against the current basis (a fresh dict)."""
        work = dict(vec)
        for p, row in self.rows:
            c = work.get(p)
            if c is not None:
                axpy_into(work, c, row)
        return work

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert vec's residue as a new pivot row; False if already in span."""
        work = self.reduce(vec)
        if not work:
            return False
        pivot = min(work)
        inv = work[pivot].inverse()
        row = {j: v * inv for j, v in work.items()}
        for _, existing in self.rows:
            c = existing.get(pivot)
            if c is not None:
                axpy_into(existing, c, row)
        self.rows.append((pivot, row))
        self.rows.sort(key=lambda t: t[0])
        return True

    def copy(self) -> "RowReducer":
        out = RowReducer(self.spec)
        out.rows = [(p, dict(row)) for p, row in self.rows]
        return out

    def vectors(self) -> list[dict]:
        return [dict(row) for _, row in self.rows]


def nullspace(constraints, ncols: int, spec: FieldSpec) -> list[dict]:
    """Canonical (RREF) basis of {x : Mx = 0} for sparse constraint rows."""
    red = RowReducer(spec)
    for row in constraints:
        red.add(row)
    pivot_set = set(red.pivots())
    one = spec.one()
    kernel = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: one}
        for p, row in red.rows:
            c = row.get(f)
            if c is not None:
                vec[p] = -c
        kernel.append(vec)
    canon = RowReducer(spec)
    for vec in kernel:
        canon.add(vec)
    return canon.vectors()
