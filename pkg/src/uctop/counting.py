"""Point counts over finite fields, E-polynomials and purity Poincare polynomials.

The count is a polynomial identity in q: q^n times the sum, over all subsets
S of the simple roots, of |pi0(Z(L_S))| (q-1)^(n-|S|). The E-polynomial is
the same polynomial read in the variable uv, and under purity the Poincare
polynomial is recovered by substituting u = v = -1/t and multiplying by
t^(4n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeCoefficient, NonPolynomialResult
from .rootdata import RootDatum, all_levi_subsets, center_of_levi

__all__ = [
    "QPolynomial",
    "TPolynomial",
    "point_count_poly",
    "e_polynomial",
    "poincare_from_purity",
    "purity_poincare_coeffs",
    "format_poly",
]


def _trim(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


def _padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ppow(a, k):
    out = [1]
    for _ in range(k):
        out = _pmul(out, a)
    return out


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in q; `variable` is "q" or "uv" (with q = uv)."""

    coeffs: tuple[int, ...]
    variable: str = "q"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def evaluate(self, x: int | Fraction):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return format_poly(self.coeffs, self.variable)


@dataclass(frozen=True)
class TPolynomial:
    """Integer polynomial in t (graded Betti data when produced by purity)."""

    coeffs: tuple[int, ...]
    variable: str = "t"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int | Fraction):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return format_poly(self.coeffs, self.variable)


def point_count_poly(d: RootDatum) -> QPolynomial:
    """Number of points over F_q as a polynomial in q (monic, degree 2n)."""
    n = d.rank
    q_minus_1 = [-1, 1]
    powers = [[1]]
    for _ in range(n):
        powers.append(_pmul(powers[-1], q_minus_1))
    total: list[int] = []
    for s in all_levi_subsets(n):
        weight = center_of_levi(d, s).pi0.order()
        term = powers[n - len(s)]
        total = _padd(total, [weight * c for c in term])
    shifted = [0] * n + total  # multiply by q^n
    return QPolynomial(tuple(shifted))


def e_polynomial(d: RootDatum) -> QPolynomial:
    """E-polynomial: the point count read in the variable uv."""
    return QPolynomial(point_count_poly(d).coeffs, variable="uv")


def purity_poincare_coeffs(e_coeffs: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Coefficients of t^(4n) E(-1/t, -1/t) for an E-polynomial in q = uv.

    Raises NonPolynomialResult if a negative power of t survives and
    NegativeCoefficient if any resulting coefficient is negative.
    """
    out = [0] * (4 * n + 1)
    for k, c in enumerate(e_coeffs):
        if c == 0:
            continue
        exponent = 4 * n - 2 * k  # (uv)^k -> t^(-2k), then shift by t^(4n)
        if exponent < 0:
            raise NonPolynomialResult(
                f"term of degree {k} exceeds 2n = {2 * n}; the substitution "
                "does not yield a polynomial"
            )
        out[exponent] += c
    bad = next((k for k, c in enumerate(out) if c < 0), None)
    if bad is not None:
        raise NegativeCoefficient(
            f"purity substitution gives coefficient {out[bad]} at t^{bad}"
        )
    return tuple(out)


def poincare_from_purity(d: RootDatum) -> TPolynomial:
    """Purity-predicted Poincare polynomial (sum of b_k t^k).

    The prediction assumes the cohomology carries a pure Hodge structure; the
    result is reported as a prediction, not a theorem, for inputs where the
    assembly route refuses.
    """
    e = e_polynomial(d)
    return TPolynomial(purity_poincare_coeffs(e.coeffs, d.rank))


def format_poly(coeffs: tuple[int, ...], variable: str) -> str:
    """Render in descending powers: e.g. "q^2 + q", "(uv)^4", "1 + 0" never."""
    if not coeffs:
        return "0"
    var = f"({variable})" if len(variable) > 1 else variable
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            pw = var if k == 1 else f"{var}^{k}"
            body = pw if mag == 1 else f"{mag}{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
