"""Simultaneous positivity, the palindromic predicate, and the form K."""

from fractions import Fraction

import pytest

from tsysteme import (
    PolyMatrix,
    RationalMatrix,
    build_cartan_pair,
    build_size1,
    build_tadpole,
    cartan_matrix,
    compute_K,
    evaluated_pair,
    is_cartan_like,
    parse_laurent,
    quadratic_form,
    simultaneous_positivity,
    two_identity,
    validate,
)
from tsysteme.laurent import SingularMatrixError


def test_evaluated_pair():
    plus, minus = evaluated_pair(build_size1([-1, 2, -1]))
    assert plus == RationalMatrix([[0]])
    assert minus == RationalMatrix([[0]])
    plus, minus = evaluated_pair(
        build_cartan_pair(two_identity(2), cartan_matrix("A2"))
    )
    assert plus == RationalMatrix([[2, 0], [0, 2]])
    assert minus == RationalMatrix([[2, -1], [-1, 2]])


def recheck_witness(alpha, witness):
    plus, minus = evaluated_pair(alpha)
    r = alpha.r
    for v in witness:
        assert v >= 1
    for mat in (plus, minus):
        for i in range(r):
            assert sum(mat[j, i] * witness[j] for j in range(r)) >= 1


def recheck_certificate(alpha, pi):
    """Farkas: a nonnegative combination of the constraint rows that is
    nonpositive in every column rules out any solution of M v >= 1."""
    plus, minus = evaluated_pair(alpha)
    r = alpha.r
    rows = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    rows += [[plus[j, i] for j in range(r)] for i in range(r)]
    rows += [[minus[j, i] for j in range(r)] for i in range(r)]
    assert all(p >= 0 for p in pi) and sum(pi) > 0
    for j in range(r):
        assert sum(rows[i][j] * pi[i] for i in range(len(rows))) <= 0


def test_positivity_feasible_families():
    for alpha in (
        build_size1([]),
        build_size1([0]),
        build_size1([0, 1, 0]),
        build_cartan_pair(cartan_matrix("A3"), two_identity(3)),
        build_tadpole(3),
    ):
        report = simultaneous_positivity(alpha)
        assert report.feasible and bool(report)
        recheck_witness(alpha, report.witness)
        integral = report.integer_witness()
        assert all(x.denominator == 1 for x in map(Fraction, integral))
        recheck_witness(alpha, integral)
        assert report.certificate is None


def test_positivity_infeasible_families():
    for alpha in (
        build_size1([-1, 2, -1]),
        build_size1([1, 1]),
        build_size1([2]),
    ):
        report = simultaneous_positivity(alpha)
        assert not report.feasible and not bool(report)
        assert report.witness is None
        recheck_certificate(alpha, report.certificate)


def test_report_repr():
    assert repr(simultaneous_positivity(build_size1([]))).startswith(
        "PositivityReport(feasible"
    )
    assert "infeasible" in repr(simultaneous_positivity(build_size1([-1, 2, -1])))


def test_is_cartan_like():
    assert is_cartan_like(build_size1([-1, 2, -1]))
    assert is_cartan_like(build_cartan_pair(cartan_matrix("G2"), two_identity(2)))
    swap = PolyMatrix([[parse_laurent("1"), parse_laurent("z")],
                       [parse_laurent("z"), parse_laurent("1")]])
    assert not is_cartan_like(validate(swap, swap, [1, 1]))


def test_quadratic_form_known_values():
    form = quadratic_form(build_cartan_pair(cartan_matrix("A2"), two_identity(2)))
    third = Fraction(1, 3)
    assert form.K == RationalMatrix([[4 * third, 2 * third], [2 * third, 4 * third]])
    assert form.K_dual == form.K  # D = I
    assert form.symmetric and form.positive_definite
    assert form.dual_symmetric and form.dual_positive_definite

    mirror = quadratic_form(build_cartan_pair(two_identity(2), cartan_matrix("A2")))
    assert mirror.K == RationalMatrix(
        [[1, Fraction(-1, 2)], [Fraction(-1, 2), 1]]
    )
    assert mirror.KD.leading_principal_minors() == [1, Fraction(3, 4)]


def test_quadratic_form_weighted():
    form = quadratic_form(build_cartan_pair(cartan_matrix("B2"), two_identity(2)))
    assert form.K == RationalMatrix([[2, 1], [2, 2]])
    assert form.KD == RationalMatrix([[2, 2], [2, 4]])
    assert form.K_dual == RationalMatrix([[2, 2], [1, 2]])
    assert form.KdDd == RationalMatrix([[4, 2], [2, 2]])
    assert form.symmetric and form.positive_definite
    assert form.dual_symmetric and form.dual_positive_definite
    assert compute_K is quadratic_form


def test_quadratic_form_needs_invertible_plus_part():
    with pytest.raises(SingularMatrixError):
        quadratic_form(build_size1([-1, 2, -1]))
