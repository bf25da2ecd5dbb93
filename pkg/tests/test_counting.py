"""Point counts, E-polynomials and the purity substitution."""

from __future__ import annotations

from fractions import Fraction

import pytest

from uctop.counting import (
    QPolynomial,
    TPolynomial,
    e_polynomial,
    format_poly,
    point_count_poly,
    poincare_from_purity,
    purity_poincare_coeffs,
)
from uctop.errors import NegativeCoefficient, NonPolynomialResult
from uctop.matrices import IntMatrix
from uctop.rootdata import CartanType, build_datum, center_order


def ct(*factors):
    return CartanType(tuple(factors))


DATA_MATRIX = [
    build_datum(ct(("A", 1)), "adjoint"),
    build_datum(ct(("A", 1)), "sc"),
    build_datum(ct(("A", 2)), "sc"),
    build_datum(ct(("A", 3)), "sc"),
    build_datum(ct(("A", 4)), "sc"),
    build_datum(ct(("B", 3)), "sc"),
    build_datum(ct(("C", 3)), "sc"),
    build_datum(ct(("D", 4)), "sc"),
    build_datum(ct(("E", 6)), "sc"),
    build_datum(ct(("F", 4)), "adjoint"),
    build_datum(ct(("G", 2)), "adjoint"),
    build_datum(ct(("A", 1), ("A", 2)), "sc"),
    build_datum(ct(("A", 3)), IntMatrix.from_rows([[1, 0, 1], [0, 1, 0], [2, 0, 0]])),
    build_datum(
        ct(("D", 4)),
        IntMatrix.from_rows([[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]]),
    ),
]

ADJOINT_TYPES = (
    [ct(("A", n)) for n in range(1, 9)]
    + [ct(("B", n)) for n in range(2, 9)]
    + [ct(("C", n)) for n in range(3, 9)]
    + [ct(("D", n)) for n in range(4, 9)]
    + [
        ct(("E", 6)), ct(("E", 7)), ct(("E", 8)), ct(("F", 4)), ct(("G", 2)),
        ct(("A", 1), ("A", 1)), ct(("A", 1), ("A", 2)), ct(("B", 2), ("G", 2)),
    ]
)


def test_adjoint_count_is_q_to_2n():
    for t in ADJOINT_TYPES:
        d = build_datum(t, "adjoint")
        poly = point_count_poly(d)
        assert poly.coeffs == (0,) * (2 * t.rank) + (1,), str(t)


def test_count_a1_sc():
    poly = point_count_poly(build_datum(ct(("A", 1)), "sc"))
    assert poly.coeffs == (0, 1, 1)
    assert str(poly) == "q^2 + q"


def test_count_monic_degree_2n():
    for d in DATA_MATRIX:
        poly = point_count_poly(d)
        assert poly.degree == 2 * d.rank
        assert poly.coeffs[-1] == 1


def test_count_at_one_is_center_order():
    for d in DATA_MATRIX:
        assert point_count_poly(d).evaluate(1) == center_order(d)


def test_e_polynomial_same_coefficients_uv_variable():
    for d in DATA_MATRIX:
        e = e_polynomial(d)
        assert e.coeffs == point_count_poly(d).coeffs
        assert e.variable == "uv"
        assert e.evaluate(1) == center_order(d)


def test_e_polynomial_examples():
    assert str(e_polynomial(build_datum(ct(("A", 2)), "adjoint"))) == "(uv)^4"
    assert e_polynomial(build_datum(ct(("A", 1)), "sc")).coeffs == (0, 1, 1)
    assert e_polynomial(build_datum(ct(("A", 2)), "sc")).evaluate(1) == 3


def test_poincare_adjoint_is_one():
    for t in ADJOINT_TYPES:
        poly = poincare_from_purity(build_datum(t, "adjoint"))
        assert poly.coeffs == (1,), str(t)


def test_poincare_sl_p():
    for p in (2, 3, 5, 7):
        d = build_datum(ct(("A", p - 1)), "sc")
        poly = poincare_from_purity(d)
        want = [0] * (2 * (p - 1) + 1)
        want[0] = 1
        want[2 * (p - 1)] = p - 1
        assert poly.coeffs == tuple(want), p


def test_poincare_a1_sc():
    assert poincare_from_purity(build_datum(ct(("A", 1)), "sc")).coeffs == (1, 0, 1)


def test_substitution_identity():
    for d in DATA_MATRIX:
        n = d.rank
        e = e_polynomial(d).coeffs
        p = list(poincare_from_purity(d).coeffs)
        p += [0] * (4 * n + 1 - len(p))
        for k in range(2 * n + 1):
            ek = e[k] if k < len(e) else 0
            assert p[4 * n - 2 * k] == ek, (d.cartan_type, k)
        assert all(p[j] == 0 for j in range(1, 4 * n + 1, 2))


def test_purity_substitution_error_paths():
    with pytest.raises(NegativeCoefficient):
        purity_poincare_coeffs((0, -1, 1), 1)  # q^2 - q is not pure
    with pytest.raises(NonPolynomialResult):
        purity_poincare_coeffs((0, 0, 0, 1), 1)  # degree 3 > 2n for n = 1


def test_polynomial_normalization_and_eval():
    p = QPolynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert p.evaluate(3) == 7
    assert p.evaluate(Fraction(1, 2)) == 2
    z = QPolynomial(())
    assert z.coeffs == () and z.degree == -1 and z.evaluate(5) == 0
    assert TPolynomial((0, 0)).coeffs == ()


def test_format_poly():
    assert format_poly((), "q") == "0"
    assert format_poly((1,), "q") == "1"
    assert format_poly((0, 1, 1), "q") == "q^2 + q"
    assert format_poly((2, -3, 1), "q") == "q^2 - 3q + 2"
    assert format_poly((-1,), "t") == "-1"
    assert format_poly((0, 1), "uv") == "(uv)"
    assert format_poly((0, 0, 0, 0, 1), "uv") == "(uv)^4"
