"""Exact linear algebra over the rationals.

Sparse matrices with `fractions.Fraction` entries plus the row-reduction
toolkit (RREF, rank, nullspace, span membership) that backs every kernel
and span computation in this package.  All arithmetic is exact; nothing
here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = tuple[Fraction, ...]


def _as_q(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


def as_vector(values: Iterable[int | Fraction]) -> Vector:
    return tuple(_as_q(v) for v in values)


class QMatrix:
    """Immutable sparse matrix over the rationals.

    Only nonzero entries are stored, keyed by ``(row, col)``.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Mapping[tuple[int, int], int | Fraction] | None = None,
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        clean: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), raw in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols} matrix")
                value = _as_q(raw)
                if value:
                    clean[(r, c)] = value
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int | Fraction]]) -> "QMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries: dict[tuple[int, int], Fraction] = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, raw in enumerate(row):
                value = _as_q(raw)
                if value:
                    entries[(r, c)] = value
        return cls(rows, cols, entries)

    def entry(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), Fraction(0))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def mul_vec(self, v: Sequence[int | Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        vec = as_vector(v)
        acc = [Fraction(0)] * self.rows
        for (r, c), a in self.entries.items():
            if vec[c]:
                acc[r] += a * vec[c]
        return tuple(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _primitive(row: dict[int, Fraction]) -> dict[int, Fraction]:
    """Scale a sparse row to integer entries with content 1."""
    if not row:
        return row
    from math import gcd, lcm

    denom = 1
    for v in row.values():
        denom = lcm(denom, v.denominator)
    numer = 0
    for v in row.values():
        numer = gcd(numer, abs(v.numerator * (denom // v.denominator)))
    scale = Fraction(denom, numer)
    return {c: v * scale for c, v in row.items()}


def _echelon(rows: list[dict[int, Fraction]], cols: int):
    """Fraction-free forward elimination on sparse rows.

    Returns the echelon rows paired with their pivot columns, in pivot
    order.  Pivot choice is the first remaining row with a nonzero entry
    in the current column, so the result is deterministic.
    """
    pending = [_primitive(dict(r)) for r in rows if r]
    placed: list[tuple[int, dict[int, Fraction]]] = []
    for col in range(cols):
        piv_idx = None
        for idx, row in enumerate(pending):
            if row.get(col):
                piv_idx = idx
                break
        if piv_idx is None:
            continue
        piv = pending.pop(piv_idx)
        pv = piv[col]
        reduced: list[dict[int, Fraction]] = []
        for row in pending:
            rv = row.get(col)
            if rv:
                new: dict[int, Fraction] = {}
                for c, v in row.items():
                    nv = v * pv - piv.get(c, Fraction(0)) * rv
                    if nv:
                        new[c] = nv
                for c, v in piv.items():
                    if c not in row:
                        nv = -v * rv
                        if nv:
                            new[c] = nv
                row = _primitive(new)
            if row:
                reduced.append(row)
        pending = reduced
        placed.append((col, piv))
    return placed


def rref(m: QMatrix) -> tuple[QMatrix, tuple[int, ...]]:
    """Reduced row echelon form of ``m`` together with its pivot columns."""
    placed = _echelon(m.sparse_rows(), m.cols)
    # back-substitution: monic pivots, zeros above each pivot
    for k in range(len(placed) - 1, -1, -1):
        col, row = placed[k]
        pv = row[col]
        if pv != 1:
            row = {c: v / pv for c, v in row.items()}
            placed[k] = (col, row)
        for j in range(k):
            jcol, jrow = placed[j]
            factor = jrow.get(col)
            if factor:
                new = dict(jrow)
                for c, v in row.items():
                    nv = new.get(c, Fraction(0)) - factor * v
                    if nv:
                        new[c] = nv
                    else:
                        new.pop(c, None)
                placed[j] = (jcol, new)
    entries: dict[tuple[int, int], Fraction] = {}
    for r, (_, row) in enumerate(placed):
        for c, v in row.items():
            entries[(r, c)] = v
    pivots = tuple(col for col, _ in placed)
    return QMatrix(m.rows, m.cols, entries), pivots


def rank(m: QMatrix) -> int:
    return len(_echelon(m.sparse_rows(), m.cols))


def nullspace(m: QMatrix) -> list[Vector]:
    """A basis of ``{v : m v = 0}``; count equals cols - rank.

    Every returned vector is verified by multiplication before being
    handed back.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    rows = reduced.sparse_rows()[: len(pivots)]
    basis: list[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for (col, row) in zip(pivots, rows):
            coeff = row.get(free)
            if coeff:
                vec[col] = -coeff
        v = tuple(vec)
        if any(m.mul_vec(v)):
            raise ArithmeticError("internal error: nullspace vector fails m*v = 0")
        basis.append(v)
    return basis


def span_membership(
    basis: Sequence[Sequence[int | Fraction]],
    target: Sequence[int | Fraction],
) -> Vector | None:
    """Coefficients expressing ``target`` in ``basis``, or None if outside.

    All vectors must share one length; a mismatch raises ``ValueError``.
    """
    tgt = as_vector(target)
    n = len(tgt)
    cols = len(basis)
    vecs = [as_vector(b) for b in basis]
    for v in vecs:
        if len(v) != n:
            raise ValueError("span_membership: dimension mismatch")
    entries: dict[tuple[int, int], Fraction] = {}
    for c, v in enumerate(vecs):
        for r, x in enumerate(v):
            if x:
                entries[(r, c)] = x
    for r, x in enumerate(tgt):
        if x:
            entries[(r, cols)] = x
    reduced, pivots = rref(QMatrix(n, cols + 1, entries))
    if cols in pivots:
        return None
    coeffs = [Fraction(0)] * cols
    for row_idx, col in enumerate(pivots):
        coeffs[col] = reduced.entry(row_idx, cols)
    return tuple(coeffs)


class IncrementalSpan:
    """A growing row space with incremental sparse reduction.

    Rows are stored monic, keyed by their leading (smallest) column.
    Supports rank queries and membership tests without recomputing a
    full RREF for every insertion.
    """

    def __init__(self) -> None:
        self._rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        residual = {c: v for c, v in vec.items() if v}
        while residual:
            lead = min(residual)
            row = self._rows.get(lead)
            if row is None:
                break
            factor = residual[lead]
            for c, v in row.items():
                nv = residual.get(c, Fraction(0)) - factor * v
                if nv:
                    residual[c] = nv
                else:
                    residual.pop(c, None)
        return residual

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; True if it enlarged the span."""
        residual = self.reduce(vec)
        if not residual:
            return False
        lead = min(residual)
        pivot = residual[lead]
        self._rows[lead] = {c: v / pivot for c, v in residual.items()}
        return True
