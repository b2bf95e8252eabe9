"""Laurent polynomials in z and the small exact matrix layer."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tsysteme import (
    LaurentPoly,
    PolyMatrix,
    RationalMatrix,
    parse_laurent,
    z_integer,
)
from tsysteme.laurent import SingularMatrixError, dagger, eval_at_one


coeffs = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
)
polys = coeffs.map(LaurentPoly)


def test_constructors_and_access():
    f = LaurentPoly({2: 1, 0: 1, -1: 3, 5: 0})
    assert f.coeff(-1) == 3
    assert f.coeff(5) == 0  # zero coefficients are dropped
    assert f.min_exp() == -1
    assert f.max_exp() == 2
    assert f.coeff_list() == [3, 1, 0, 1]
    assert LaurentPoly.z(3) == LaurentPoly({3: 1})
    assert LaurentPoly.const(Fraction(1, 2)).eval_one() == Fraction(1, 2)
    assert LaurentPoly.from_coeffs([1, 0, 2], start=-1) == LaurentPoly({-1: 1, 1: 2})
    assert LaurentPoly.zero().is_zero
    assert not LaurentPoly.one().is_zero


def test_arithmetic_known_values():
    f = parse_laurent("1-2*z^2+z^4")
    g = parse_laurent("1+z^2")
    assert f + g == parse_laurent("2-z^2+z^4")
    assert f - f == LaurentPoly.zero()
    assert g * g == parse_laurent("1+2*z^2+z^4")
    assert g**3 == parse_laurent("1+3*z^2+3*z^4+z^6")
    assert g**0 == LaurentPoly.one()
    assert f.eval_one() == 0
    assert g.shift(-2) == parse_laurent("z^-2+1")
    assert f.scale(2) == parse_laurent("2-4*z^2+2*z^4")


def test_parse_rejects_garbage():
    for bad in ("", "z^", "1++z", "q+1"):
        with pytest.raises(ValueError):
            parse_laurent(bad)


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)


@given(polys)
def test_invert_z_is_involutive_and_multiplicative(f):
    assert f.invert_z().invert_z() == f
    g = LaurentPoly({1: 2, -3: 1})
    assert (f * g).invert_z() == f.invert_z() * g.invert_z()


@given(polys)
def test_positive_part_splits_by_coefficient_sign(f):
    plus = f.positive_part()
    minus = (-f).positive_part()
    assert plus - minus == f
    assert all(c > 0 for _, c in plus.items())
    assert all(c > 0 for _, c in minus.items())


@given(polys)
def test_str_parse_roundtrip(f):
    assert parse_laurent(str(f)) == f


def test_z_integer():
    assert z_integer(1) == LaurentPoly.one()
    assert z_integer(2) == parse_laurent("z+z^-1")
    assert z_integer(3, 2) == parse_laurent("z^4+1+z^-4")
    assert z_integer(4).eval_one() == 4
    # palindromic under z -> 1/z
    for k in range(1, 6):
        assert z_integer(k, 3).invert_z() == z_integer(k, 3)


def test_poly_matrix_algebra():
    a = PolyMatrix([["1+z^2", "-z"], ["-z", "1+z^2"]])
    i = PolyMatrix.identity(2)
    assert a * i == a
    assert (a - a).is_zero()
    assert a.transpose() == a
    b = PolyMatrix([["z", "0"], ["1", "z^-1"]])
    # dagger = transpose + z -> 1/z, an antihomomorphism
    assert dagger(a * b) == dagger(b) * dagger(a)
    assert dagger(dagger(b)) == b
    assert eval_at_one(a) == RationalMatrix([[2, -1], [-1, 2]])
    assert a.positive_part() == PolyMatrix([["1+z^2", "0"], ["0", "1+z^2"]])
    two = PolyMatrix.diagonal([LaurentPoly.const(2)] * 2)
    assert two * a == a + a


def test_poly_matrix_scaling():
    a = PolyMatrix([["1", "z"], ["z^2", "1"]])
    d = [LaurentPoly.const(2), LaurentPoly.const(3)]
    assert a.scale_rows(d)[1, 0] == parse_laurent("3*z^2")
    assert a.scale_cols(d)[1, 0] == parse_laurent("2*z^2")


def test_rational_matrix_exact_linear_algebra():
    m = RationalMatrix([[2, 1], [1, 2]])
    assert m.det() == 3
    assert m.leading_principal_minors() == [2, 3]
    assert m.is_symmetric()
    assert m.inverse() * m == RationalMatrix.identity(2)
    assert m.apply([1, 1]) == [3, 3]
    assert not m.inverse().is_integral()
    skew = RationalMatrix([[0, 1], [-1, 0]])
    assert not skew.is_symmetric()
    with pytest.raises(SingularMatrixError):
        RationalMatrix([[1, 2], [2, 4]]).inverse()


def test_rational_matrix_det_oracle():
    # cofactor expansion by hand for a 3x3 with fractions
    m = RationalMatrix(
        [
            [Fraction(1, 2), 1, 0],
            [1, 2, 3],
            [0, Fraction(1, 3), 1],
        ]
    )
    expected = (
        Fraction(1, 2) * (2 * 1 - 3 * Fraction(1, 3))
        - 1 * (1 * 1 - 3 * 0)
        + 0
    )
    assert m.det() == expected


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rational_matrix_inverse_property(rows):
    m = RationalMatrix(rows)
    if m.det() == 0:
        with pytest.raises(SingularMatrixError):
            m.inverse()
    else:
        assert m * m.inverse() == RationalMatrix.identity(3)
        assert m.inverse().det() * m.det() == 1
