"""Exact integer and rational matrix primitives.

All arithmetic is arbitrary precision: integer matrices hold Python ints,
rational matrices hold ``fractions.Fraction`` values (always in lowest terms,
positive denominators). Matrices are immutable value objects; every operation
returns a new value, so everything here is safe to use concurrently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "InvariantFactors",
    "SmithDecomposition",
    "snf",
    "rank",
    "compound",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        """Build from a list of rows; ``cols`` is required when there are no rows."""
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            cols = 0
        return cls(len(rows), cols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        ent = tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows))
        return IntMatrix(self.cols, self.rows, ent)

    def mul(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        ent = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                ent.append(sum(ri[k] * other.at(k, j) for k in range(self.cols) if ri[k]))
        return IntMatrix(self.rows, other.cols, tuple(ent))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def to_rational(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, tuple(Fraction(e) for e in self.entries))


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix; entries are Fractions in lowest terms."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, Fraction) for e in self.entries):
            object.__setattr__(
                self, "entries", tuple(Fraction(e) for e in self.entries)
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Fraction | int]], cols: int | None = None
    ) -> RatMatrix:
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            cols = 0
        return cls(len(rows), cols, tuple(Fraction(e) for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RatMatrix:
        ent = tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows))
        return RatMatrix(self.cols, self.rows, ent)

    def mul(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        ocols = other.cols
        ent = [Fraction(0)] * (self.rows * ocols)
        for i in range(self.rows):
            ri = self.row(i)
            base = i * ocols
            for k in range(self.cols):
                a = ri[k]
                if a:
                    orow = other.row(k)
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            ent[base + j] += a * b
        return RatMatrix(self.rows, ocols, tuple(ent))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def inverse(self) -> RatMatrix:
        """Exact inverse by Gauss-Jordan; raises ValueError when singular."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        a = self.to_lists()
        inv = RatMatrix.identity(n).to_lists()
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            p = a[c][c]
            a[c] = [e / p for e in a[c]]
            inv[c] = [e / p for e in inv[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [e - f * g for e, g in zip(a[i], a[c])]
                    inv[i] = [e - f * g for e, g in zip(inv[i], inv[c])]
        return RatMatrix.from_rows(inv, cols=n)

    def det(self) -> Fraction:
        """Exact determinant by elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        return _det_lists(self.to_lists(), self.rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> RatMatrix:
        ent = tuple(self.at(i, j) for i in row_idx for j in col_idx)
        return RatMatrix(len(row_idx), len(col_idx), ent)


@dataclass(frozen=True)
class InvariantFactors:
    """Nontrivial invariant factors of a finitely generated abelian group.

    Only factors >= 2 are kept (1's carry no torsion); consecutive factors
    satisfy the divisibility chain factors[i] | factors[i+1].
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(f < 2 for f in self.factors):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain violated: {a} does not divide {b}")

    def order(self) -> int:
        """Order of the torsion group (1 when there is no torsion)."""
        return math.prod(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors


@dataclass(frozen=True)
class SmithDecomposition:
    """Result of `snf`: torsion factors, integer kernel basis, rank."""

    factors: InvariantFactors
    kernel: IntMatrix  # columns form a basis of the integer kernel
    rank: int


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form data of an integer matrix.

    Returns the nontrivial invariant factors of coker(m) (acting on row
    vectors: Z^cols / row-span), a basis of the integer kernel
    {x : m x = 0} as matrix columns, and the rank.
    """
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    # v accumulates the column operations; its trailing columns end up
    # spanning the integer kernel.
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        piv = _smallest_nonzero(a, nr, nc, t)
        if piv is None:
            break
        _move_pivot(a, v, nr, t, piv)
        while True:
            changed = False
            if a[t][t] < 0:
                a[t] = [-e for e in a[t]]
            # clear column t below the pivot
            for i in range(t + 1, nr):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                if q:
                    at_row = a[t]
                    a[i] = [e - q * f for e, f in zip(a[i], at_row)]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]  # remainder is a strictly smaller pivot
                    changed = True
            # clear row t right of the pivot
            for j in range(t + 1, nc):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(nr):
                        if a[i][t]:
                            a[i][j] -= q * a[i][t]
                    for i in range(nc):
                        if v[i][t]:
                            v[i][j] -= q * v[i][t]
                if a[t][j]:
                    for i in range(nr):
                        a[i][t], a[i][j] = a[i][j], a[i][t]
                    for i in range(nc):
                        v[i][t], v[i][j] = v[i][j], v[i][t]
                    changed = True
            if changed:
                continue
            # pivot must divide every entry of the trailing block
            bad = _nondivisible(a, nr, nc, t)
            if bad is None:
                break
            a[t] = [e + f for e, f in zip(a[t], a[bad])]
        diag.append(a[t][t])
        t += 1
    rank_ = len(diag)
    kernel_cols = [[v[i][j] for j in range(rank_, nc)] for i in range(nc)]
    kernel = IntMatrix.from_rows(kernel_cols, cols=nc - rank_)
    factors = InvariantFactors(tuple(d for d in diag if d >= 2))
    return SmithDecomposition(factors, kernel, rank_)


def _smallest_nonzero(a, nr, nc, t):
    best = None
    best_abs = None
    for i in range(t, nr):
        for j in range(t, nc):
            e = a[i][j]
            if e and (best is None or abs(e) < best_abs):
                best, best_abs = (i, j), abs(e)
                if best_abs == 1:
                    return best
    return best


def _move_pivot(a, v, nr, t, piv):
    pi, pj = piv
    if pi != t:
        a[t], a[pi] = a[pi], a[t]
    if pj != t:
        for i in range(nr):
            a[i][t], a[i][pj] = a[i][pj], a[i][t]
        for i in range(len(v)):
            v[i][t], v[i][pj] = v[i][pj], v[i][t]


def _nondivisible(a, nr, nc, t):
    d = a[t][t]
    for i in range(t + 1, nr):
        for j in range(t + 1, nc):
            if a[i][j] % d:
                return i
    return None


def rank(m: RatMatrix | IntMatrix) -> int:
    """Rank over the rationals, via fraction-free (Bareiss) elimination."""
    if isinstance(m, IntMatrix):
        a = m.to_lists()
    else:
        # row scaling by the common denominator preserves rank
        a = []
        for i in range(m.rows):
            row = m.row(i)
            den = math.lcm(*(e.denominator for e in row)) if row else 1
            a.append([int(e * den) for e in row])
    return _bareiss_rank(a, m.rows, m.cols)


def _bareiss_rank(a: list[list[int]], nr: int, nc: int) -> int:
    if nr == 0 or nc == 0:
        return 0
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            e = a[i][c]
            ai, ar = a[i], a[r]
            if e:
                for j in range(c + 1, nc):
                    ai[j] = (p * ai[j] - e * ar[j]) // prev
            elif prev != 1 or p != 1:
                for j in range(c + 1, nc):
                    ai[j] = (p * ai[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r


def compound(m: RatMatrix, k: int) -> RatMatrix:
    """k-th compound matrix: the exterior power on lexicographic subset bases.

    Entry at (row-subset I, column-subset J) is the minor det(m[I, J]);
    subsets of size k are ordered lexicographically. k = 0 gives the 1x1
    identity; k exceeding a dimension gives an empty matrix.
    """
    if k < 0:
        raise ValueError("exterior degree must be nonnegative")
    if k == 0:
        return RatMatrix.identity(1)
    row_subsets = list(itertools.combinations(range(m.rows), k))
    col_subsets = list(itertools.combinations(range(m.cols), k))
    ent = []
    for idx_r in row_subsets:
        for idx_c in col_subsets:
            sub = [[m.at(i, j) for j in idx_c] for i in idx_r]
            ent.append(_det_lists(sub, k))
    return RatMatrix(len(row_subsets), len(col_subsets), tuple(ent))


def _det_lists(a: list[list[Fraction]], n: int) -> Fraction:
    """Determinant of a square list-of-lists by exact elimination (destructive)."""
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / p
                a[i] = [e - f * g for e, g in zip(a[i], a[c])]
    return det
