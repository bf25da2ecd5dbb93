"""Root systems, isogeny lattices, Levi centers and Killing-orthogonal projections.

Conventions, fixed once for the whole library:

* Simple roots are numbered 1..n, Bourbaki labels inside each simple factor,
  factors concatenated in the order given.
* The Cartan matrix row A[i] holds the fundamental-weight coordinates of the
  simple root alpha_i, i.e. A[i][j] = <alpha_i, alpha_j^vee>.
* A root datum is a Cartan type plus a basis of the character lattice written
  in fundamental-weight coordinates (rows of `char_lattice`): the adjoint
  form uses the Cartan matrix rows, the simply connected form the identity.
* Cocharacters are written in the basis of the cocharacter lattice dual to
  the `char_lattice` rows, so <char-basis row i, cochar coordinate vector c>
  is simply c[i].
* The invariant form on the cocharacter space is the symmetrized Cartan
  matrix D.A (minimal positive integer D per simple factor), expressed in the
  simple-coroot basis. Orthogonal projections are insensitive to the
  per-factor scaling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .matrices import IntMatrix, InvariantFactors, RatMatrix, snf

__all__ = [
    "CartanType",
    "RootDatum",
    "CenterData",
    "Form",
    "LeviSet",
    "cartan_matrix",
    "build_datum",
    "center_of_levi",
    "center_order",
    "invariant_form",
    "killing_projection",
    "weyl_order",
    "levi_root_matrix",
    "proper_pi0_witness",
    "all_levi_subsets",
]

LeviSet = frozenset[int]

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class CartanType:
    """A product of simple Cartan types, e.g. (('A', 1), ('A', 2))."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("a Cartan type needs at least one simple factor")
        for letter, rk in self.factors:
            if letter not in _RANK_BOUNDS:
                raise ValueError(f"unknown Cartan letter {letter!r}")
            lo, hi = _RANK_BOUNDS[letter]
            if rk < lo or (hi is not None and rk > hi):
                bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
                raise ValueError(f"type {letter} requires rank {bound}, got {rk}")

    @property
    def rank(self) -> int:
        return sum(rk for _, rk in self.factors)

    def __str__(self) -> str:
        return "x".join(f"{letter}{rk}" for letter, rk in self.factors)


def cartan_matrix(t: CartanType) -> IntMatrix:
    """Block-diagonal Cartan matrix, Bourbaki labeling within each factor."""
    n = t.rank
    a = [[0] * n for _ in range(n)]
    off = 0
    for letter, rk in t.factors:
        block = _simple_cartan_block(letter, rk)
        for i in range(rk):
            for j in range(rk):
                a[off + i][off + j] = block[i][j]
        off += rk
    return IntMatrix.from_rows(a, cols=n)


def _simple_cartan_block(letter: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i: int, j: int) -> None:
        a[i][j] = -1
        a[j][i] = -1

    if letter in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if letter == "B":
            a[n - 2][n - 1] = -2  # alpha_n is the short root
        elif letter == "C":
            a[n - 1][n - 2] = -2  # alpha_n is the long root
    elif letter == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif letter == "E":
        chain = [0] + list(range(2, n))
        for x, y in zip(chain, chain[1:]):
            edge(x, y)
        edge(1, 3)  # node 2 hangs off node 4
    elif letter == "F":
        edge(0, 1)
        edge(1, 2)
        edge(2, 3)
        a[1][2] = -2  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
    elif letter == "G":
        edge(0, 1)
        a[1][0] = -3  # alpha_1 short, alpha_2 long
    return a


_WEYL_SIMPLE = {
    "E": {6: 51840, 7: 2903040, 8: 696729600},
    "F": {4: 1152},
    "G": {2: 12},
}


def weyl_order(t: CartanType) -> int:
    """Order of the Weyl group: product of the classical per-factor orders."""
    total = 1
    for letter, rk in t.factors:
        if letter == "A":
            total *= math.factorial(rk + 1)
        elif letter in ("B", "C"):
            total *= 2**rk * math.factorial(rk)
        elif letter == "D":
            total *= 2 ** (rk - 1) * math.factorial(rk)
        else:
            total *= _WEYL_SIMPLE[letter][rk]
    return total


@dataclass(frozen=True)
class RootDatum:
    """Cartan type plus a character-lattice basis in fundamental-weight coordinates."""

    cartan_type: CartanType
    char_lattice: IntMatrix

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def is_adjoint(self) -> bool:
        """True when the character lattice is the root lattice (any basis)."""
        det = self.char_lattice.to_rational().det()
        return abs(det) == abs(cartan_matrix(self.cartan_type).to_rational().det())

    def is_simply_connected(self) -> bool:
        """True when the character lattice is the full weight lattice (any basis)."""
        return abs(self.char_lattice.to_rational().det()) == 1


def build_datum(t: CartanType, isogeny: str | IntMatrix) -> RootDatum:
    """Construct a root datum for the named isogeny type or an explicit lattice.

    `isogeny` is "adjoint", "sc", or an n x n integer basis matrix (rows in
    fundamental-weight coordinates) that must sit between the root lattice
    and the weight lattice.
    """
    n = t.rank
    if isinstance(isogeny, str):
        if isogeny == "adjoint":
            return RootDatum(t, cartan_matrix(t))
        if isogeny == "sc":
            return RootDatum(t, IntMatrix.identity(n))
        raise ValueError(f"unknown isogeny {isogeny!r}")
    lat = isogeny
    if lat.rows != n or lat.cols != n:
        raise ValueError(f"lattice basis must be {n}x{n} for this type")
    try:
        lat_inv = lat.to_rational().inverse()
    except ValueError:
        raise ValueError("lattice basis matrix is singular") from None
    roots_in_basis = cartan_matrix(t).to_rational().mul(lat_inv)
    if any(e.denominator != 1 for e in roots_in_basis.entries):
        raise ValueError(
            "lattice does not contain the root lattice: some simple root is "
            "not an integer combination of the basis rows"
        )
    return RootDatum(t, lat)


@dataclass(frozen=True)
class CenterData:
    """Invariants of the center Z(L_S) of a standard Levi subgroup.

    `pi0` is the component group (as invariant factors), `cochar_basis` holds
    a basis of the cocharacter lattice of the center as columns (coordinates
    dual to the char-lattice rows), and `dim` is its dimension n - |S|.
    """

    pi0: InvariantFactors
    cochar_basis: IntMatrix
    dim: int


def _normalize_levi(d: RootDatum, levi: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(set(levi)))
    n = d.rank
    if any(i < 1 or i > n for i in s):
        raise ValueError(f"Levi set {s} not contained in {{1..{n}}}")
    return s


@lru_cache(maxsize=None)
def _lattice_inverse(d: RootDatum) -> RatMatrix:
    return d.char_lattice.to_rational().inverse()


@lru_cache(maxsize=None)
def _levi_root_matrix_cached(d: RootDatum, s: tuple[int, ...]) -> IntMatrix:
    a = cartan_matrix(d.cartan_type)
    rows = [a.row(i - 1) for i in s]
    sel = RatMatrix.from_rows(rows, cols=d.rank)
    m = sel.mul(_lattice_inverse(d))
    # integral because the char lattice contains the root lattice
    return IntMatrix(
        m.rows, m.cols, tuple(_as_int(e) for e in m.entries)
    )


def _as_int(e: Fraction) -> int:
    if e.denominator != 1:
        raise ArithmeticError("expected an integral matrix entry")
    return e.numerator


def levi_root_matrix(d: RootDatum, levi: Iterable[int]) -> IntMatrix:
    """Rows: the simple roots indexed by `levi` written in the char-lattice basis."""
    return _levi_root_matrix_cached(d, _normalize_levi(d, levi))


@lru_cache(maxsize=None)
def _center_of_levi_cached(d: RootDatum, s: tuple[int, ...]) -> CenterData:
    m = _levi_root_matrix_cached(d, s)
    dec = snf(m)
    if dec.rank != len(s):
        raise ArithmeticError("simple roots must be linearly independent")
    return CenterData(pi0=dec.factors, cochar_basis=dec.kernel, dim=d.rank - len(s))


def center_of_levi(d: RootDatum, levi: Iterable[int]) -> CenterData:
    """Component group and cocharacter basis of Z(L_S) for S = `levi`."""
    return _center_of_levi_cached(d, _normalize_levi(d, levi))


def center_order(d: RootDatum) -> int:
    """Order of the center of the group (the S = Pi component group)."""
    return center_of_levi(d, range(1, d.rank + 1)).pi0.order()


@dataclass(frozen=True)
class Form:
    """Symmetric positive definite Gram matrix on the cocharacter space."""

    gram: IntMatrix

    def __post_init__(self) -> None:
        g = self.gram
        if g.rows != g.cols:
            raise ValueError("Gram matrix must be square")
        if g != g.transpose():
            raise ValueError("Gram matrix must be symmetric")
        rat = g.to_rational()
        for k in range(1, g.rows + 1):
            idx = range(k)
            if rat.submatrix(idx, idx).det() <= 0:
                raise ValueError("Gram matrix must be positive definite")


@lru_cache(maxsize=None)
def invariant_form(d: RootDatum) -> Form:
    """Invariant form as the minimally symmetrized Cartan matrix, per factor.

    On each simple factor any invariant form is a positive multiple of the
    Killing form, so the minimal integer symmetrizer D with D.A symmetric
    represents it faithfully for every projection computed here.
    """
    t = d.cartan_type
    n = t.rank
    a = cartan_matrix(t).to_lists()
    gram = [[0] * n for _ in range(n)]
    off = 0
    for _, rk in t.factors:
        ds = _block_symmetrizer(a, off, rk)
        for i in range(rk):
            for j in range(rk):
                gram[off + i][off + j] = ds[i] * a[off + i][off + j]
        off += rk
    return Form(IntMatrix.from_rows(gram, cols=n))


def _block_symmetrizer(a: list[list[int]], off: int, rk: int) -> list[int]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji on one factor block."""
    ds: list[Fraction | None] = [None] * rk
    ds[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(rk):
            if j != i and a[off + i][off + j] and ds[j] is None:
                # d_j = d_i * a_ij / a_ji along each Dynkin edge
                ds[j] = ds[i] * a[off + i][off + j] / a[off + j][off + i]
                queue.append(j)
    vals = [v for v in ds]
    if any(v is None for v in vals):
        raise ArithmeticError("Dynkin diagram of a simple factor must be connected")
    den = math.lcm(*(v.denominator for v in vals))
    nums = [int(v * den) for v in vals]
    g = math.gcd(*nums)
    return [v // g for v in nums]


@lru_cache(maxsize=None)
def _dual_gram(d: RootDatum) -> RatMatrix:
    """Gram matrix rewritten in the basis dual to the char-lattice rows."""
    linv = _lattice_inverse(d)
    g = invariant_form(d).gram.to_rational()
    return linv.transpose().mul(g).mul(linv)


@lru_cache(maxsize=None)
def _killing_projection_cached(
    d: RootDatum, s: tuple[int, ...], sp: tuple[int, ...]
) -> RatMatrix:
    b = center_of_levi(d, s).cochar_basis.to_rational()
    bp = center_of_levi(d, sp).cochar_basis.to_rational()
    gt = _dual_gram(d)
    bp_t_g = bp.transpose().mul(gt)
    return bp_t_g.mul(bp).inverse().mul(bp_t_g.mul(b))


def killing_projection(
    d: RootDatum, levi: Iterable[int], levi_prime: Iterable[int]
) -> RatMatrix:
    """Matrix of the orthogonal projection between Levi-center cocharacter spaces.

    For S contained in S', the cocharacter space of Z(L_{S'}) sits inside that
    of Z(L_S); this returns the orthogonal projection of the larger space onto
    the smaller one (with respect to the invariant form), written in the two
    cached cocharacter bases. Shape: (n - |S'|) x (n - |S|).
    """
    s = _normalize_levi(d, levi)
    sp = _normalize_levi(d, levi_prime)
    if not set(s) <= set(sp):
        raise ValueError(f"Levi set {s} is not contained in {sp}")
    return _killing_projection_cached(d, s, sp)


def all_levi_subsets(n: int, proper: bool = False) -> list[tuple[int, ...]]:
    """All subsets of {1..n} ordered by (size, lex); `proper` drops {1..n} itself."""
    kmax = n - 1 if proper else n
    out: list[tuple[int, ...]] = []
    for k in range(kmax + 1):
        out.extend(itertools.combinations(range(1, n + 1), k))
    return out


def proper_pi0_witness(d: RootDatum) -> tuple[int, ...] | None:
    """First proper Levi set (by size, then lex) whose center has nontrivial pi0."""
    for s in all_levi_subsets(d.rank, proper=True):
        if not center_of_levi(d, s).pi0.is_trivial():
            return s
    return None
