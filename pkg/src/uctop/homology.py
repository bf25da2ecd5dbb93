"""Cech homology of the boundary manifold of a universal centralizer.

The boundary manifold fibers over a simplex with vertex set the simple roots;
its homology is the homotopy colimit, over proper subsets S of the simple
roots, of the exterior algebras on the Levi-center cocharacter spaces, with
transition maps the Killing-orthogonal projections. That colimit is realized
here as the Cech complex of the face cover indexed by nonempty subsets A of
the simple roots (the stalk at A lives on the Levi set S = Pi - A):

    term_p  =  direct sum over |A| = p + 1 of  Lambda^w  V_(Pi - A),

one chain complex per exterior degree w, with the block of the differential
from A to A - {a} equal to (-1)^pos(a, A) times the w-th compound of the
projection arrow. Every stalk is a homology object, so the rows never
interact and the Betti number in total degree m is the sum over w + p = m of
the row homology dimensions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import FunctorialityViolation, NontrivialPi0
from .matrices import IntMatrix, RatMatrix, compound, rank
from .rootdata import (
    RootDatum,
    all_levi_subsets,
    center_of_levi,
    killing_projection,
    proper_pi0_witness,
)

__all__ = [
    "CenterDiagram",
    "CechComplex",
    "CechRow",
    "BettiTable",
    "build_center_diagram",
    "build_cech_complex",
    "boundary_homology",
    "total_euler",
]


@dataclass(frozen=True)
class BettiTable:
    """Graded dimensions of rational homology, trailing zeros trimmed."""

    betti: tuple[int, ...]

    def __post_init__(self) -> None:
        bs = list(self.betti)
        while bs and bs[-1] == 0:
            bs.pop()
        if any(b < 0 for b in bs):
            raise ValueError("Betti numbers must be nonnegative")
        object.__setattr__(self, "betti", tuple(bs))

    @classmethod
    def sphere(cls, dim: int) -> BettiTable:
        """Betti table of the sphere S^dim."""
        if dim == 0:
            return cls((2,))
        return cls((1,) + (0,) * (dim - 1) + (1,))

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def total(self) -> int:
        return sum(self.betti)


@dataclass
class CenterDiagram:
    """Levi-center cocharacter spaces and projection arrows, over S properly
    inside Pi ordered by inclusion.

    `spaces` maps each proper subset (sorted tuple) to (dimension, cocharacter
    basis); `arrows` maps each nested pair (S, S') to the projection matrix in
    those bases. Arrow composition is exact: arrow(S', S'') . arrow(S, S') ==
    arrow(S, S'').
    """

    datum: RootDatum
    spaces: dict[tuple[int, ...], tuple[int, IntMatrix]]
    arrows: dict[tuple[tuple[int, ...], tuple[int, ...]], RatMatrix]

    def arrow(self, s: tuple[int, ...], sp: tuple[int, ...]) -> RatMatrix:
        return self.arrows[(s, sp)]


def build_center_diagram(d: RootDatum) -> CenterDiagram:
    """Populate all spaces and arrows; verify functoriality on covering squares.

    Checking the generating triangles S -> S + {a} -> S + {a, b} against the
    long arrow S -> S + {a, b} pins down every composite, since any inclusion
    factors through single-element steps.
    """
    n = d.rank
    subsets = all_levi_subsets(n, proper=True)
    spaces: dict[tuple[int, ...], tuple[int, IntMatrix]] = {}
    for s in subsets:
        c = center_of_levi(d, s)
        spaces[s] = (c.dim, c.cochar_basis)
    arrows: dict[tuple[tuple[int, ...], tuple[int, ...]], RatMatrix] = {}
    for sp in subsets:
        sp_set = set(sp)
        for s in subsets:
            if set(s) <= sp_set:
                arrows[(s, sp)] = killing_projection(d, s, sp)
    diagram = CenterDiagram(d, spaces, arrows)
    _check_covering_squares(diagram, n)
    return diagram


def _check_covering_squares(diagram: CenterDiagram, n: int) -> None:
    full = set(range(1, n + 1))
    for s in diagram.spaces:
        outside = sorted(full - set(s))
        for a, b in itertools.combinations(outside, 2):
            sab = tuple(sorted(s + (a, b)))
            if len(sab) == n:
                continue  # objects stop short of the full set
            sa = tuple(sorted(s + (a,)))
            via = diagram.arrow(sa, sab).mul(diagram.arrow(s, sa))
            if via != diagram.arrow(s, sab):
                raise FunctorialityViolation(
                    f"projection composite through {sa} disagrees with the "
                    f"direct arrow {s} -> {sab}"
                )


@dataclass
class CechRow:
    """One exterior degree w of the Cech complex.

    `blocks[p]` lists the nonempty index sets A with |A| = p + 1 in
    lexicographic order, `dims[p]` is the total dimension of term_p, and
    `diffs[p]` (for p >= 1) is the differential term_p -> term_(p-1).
    """

    w: int
    blocks: list[list[tuple[int, ...]]]
    dims: list[int]
    diffs: dict[int, RatMatrix]


@dataclass
class CechComplex:
    """Rows of chain complexes indexed by exterior degree w = 0..n."""

    n: int
    rows: list[CechRow]


def build_cech_complex(diagram: CenterDiagram) -> CechComplex:
    """Assemble the block differentials for every exterior degree; check d.d = 0."""
    n = diagram.datum.rank
    full = tuple(range(1, n + 1))
    blocks = [
        list(itertools.combinations(full, p + 1)) for p in range(n)
    ]
    index_of = [
        {a: i for i, a in enumerate(level)} for level in blocks
    ]
    rows: list[CechRow] = []
    for w in range(n + 1):
        width = [math.comb(p + 1, w) for p in range(n)]
        dims = [width[p] * len(blocks[p]) for p in range(n)]
        diffs: dict[int, RatMatrix] = {}
        for p in range(1, n):
            diffs[p] = _assemble_differential(
                diagram, blocks, index_of, full, w, p, width, dims
            )
        row = CechRow(w, blocks, dims, diffs)
        _check_square_zero(row, n)
        rows.append(row)
    return CechComplex(n, rows)


def _assemble_differential(diagram, blocks, index_of, full, w, p, width, dims):
    nrows, ncols = dims[p - 1], dims[p]
    ent = [Fraction(0)] * (nrows * ncols)
    hi, lo = width[p], width[p - 1]
    full_set = set(full)
    for ci, a in enumerate(blocks[p]):
        s = tuple(sorted(full_set - set(a)))
        col0 = ci * hi
        for pos, elt in enumerate(a):
            target = tuple(x for x in a if x != elt)
            sp = tuple(sorted(full_set - set(target)))
            block = compound(diagram.arrow(s, sp), w)
            sign = -1 if pos % 2 else 1
            row0 = index_of[p - 1][target] * lo
            for i in range(block.rows):
                base = (row0 + i) * ncols + col0
                brow = block.row(i)
                for j in range(block.cols):
                    if brow[j]:
                        ent[base + j] = sign * brow[j]
    return RatMatrix(nrows, ncols, tuple(ent))


def _check_square_zero(row: CechRow, n: int) -> None:
    for p in range(2, n):
        d_hi = row.diffs[p]
        d_lo = row.diffs[p - 1]
        if d_hi.rows and d_hi.cols and d_lo.rows:
            if not d_lo.mul(d_hi).is_zero():
                raise FunctorialityViolation(
                    f"d.d != 0 in exterior degree {row.w} at level {p}"
                )


def _row_homology(row: CechRow, n: int) -> dict[int, int]:
    """Dimension of H_p for each Cech level p of one row."""
    ranks = {p: rank(m) for p, m in row.diffs.items()}
    out: dict[int, int] = {}
    for p in range(n):
        h = row.dims[p] - ranks.get(p, 0) - ranks.get(p + 1, 0)
        if h < 0:
            raise ArithmeticError("negative homology dimension: rank bookkeeping bug")
        if h:
            out[p] = h
    return out


@lru_cache(maxsize=None)
def boundary_homology(d: RootDatum) -> BettiTable:
    """Rational Betti numbers of the boundary manifold.

    Requires every proper Levi center to be connected (trivial pi0); raises
    NontrivialPi0 naming a witness subset otherwise, because the stalk
    identification used by this computation fails there.
    """
    witness = proper_pi0_witness(d)
    if witness is not None:
        factors = center_of_levi(d, witness).pi0.factors
        raise NontrivialPi0(witness, factors)
    complex_ = build_cech_complex(build_center_diagram(d))
    return _betti_from_complex(complex_)


def _betti_from_complex(complex_: CechComplex, row_order=None) -> BettiTable:
    n = complex_.n
    betti = [0] * (2 * n)
    rows = complex_.rows if row_order is None else [complex_.rows[w] for w in row_order]
    for row in rows:
        for p, h in _row_homology(row, n).items():
            betti[row.w + p] += h
    return BettiTable(tuple(betti))


def total_euler(complex_: CechComplex) -> int:
    """Alternating sum of raw term dimensions over total degree w + p."""
    total = 0
    for row in complex_.rows:
        for p, dim in enumerate(row.dims):
            total += (-1) ** (row.w + p) * dim
    return total
