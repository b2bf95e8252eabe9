"""Series enumeration, sector groups, and the modular oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tsysteme import (
    QExpansion,
    andrew_gordon_oracle,
    andrew_gordon_series,
    build_cartan_pair,
    build_size1,
    cartan_matrix,
    dedekind_eta,
    eta_product,
    eta_theta_oracle,
    partition_series,
    sector_group,
    sector_series,
    smith_normal_form,
    theta_sum,
    total_series,
    two_identity,
)


def naive_product(step, order):
    """Direct truncated expansion of prod_{n >= 1} (1 - q^(step n))."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    n = 1
    while step * n <= order:
        for k in range(order - step * n, -1, -1):
            coeffs[k + step * n] -= coeffs[k]
        n += 1
    return coeffs


def test_eta_product_matches_naive_expansion():
    for step in (1, 2, 5):
        series = eta_product(step, 40)
        for n, c in enumerate(naive_product(step, 40)):
            assert series.coefficient(n) == c


def test_dedekind_eta_is_the_shifted_product():
    eta = dedekind_eta(1, 30)
    product = eta_product(1, 30)
    assert eta == product.shift(Fraction(1, 24))
    assert eta.coefficient(Fraction(1, 24)) == 1
    assert eta.coefficient(Fraction(25, 24)) == -1


def test_pentagonal_theta_identity():
    """The sign pattern of the pentagonal numbers, packaged as a theta sum
    over n = 6k - 1 with sign (-1)^k, reproduces the eta function."""
    left = theta_sum(1, 24, 12, {11}, {5}, 20)
    assert left == dedekind_eta(1, 20)


def test_qexpansion_arithmetic():
    one = QExpansion.one(10)
    geo = QExpansion({n: 1 for n in range(11)}, 10)
    assert one * geo == geo
    assert (geo - geo) == QExpansion.zero(10)
    square = geo * geo
    assert [square.coefficient(n) for n in range(5)] == [1, 2, 3, 4, 5]
    assert geo.truncated(3).terms() == [(0, 1), (1, 1), (2, 1), (3, 1)]
    assert geo.scale(2).coefficient(4) == 2
    assert geo.shift(Fraction(1, 2)).coefficient(Fraction(3, 2)) == 1
    value = geo.evaluate(0.5)
    assert value == pytest.approx(sum(0.5**n for n in range(11)))


@settings(max_examples=40)
@given(
    st.lists(
        st.lists(st.integers(-9, 9), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_smith_normal_form_properties(rows):
    u, s, v = smith_normal_form(rows)

    def matmul(a, b):
        return [
            [sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)
        ]

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    assert matmul(matmul(u, rows), v) == s
    assert abs(det3(u)) == 1 and abs(det3(v)) == 1
    for i in range(3):
        for j in range(3):
            if i != j:
                assert s[i][j] == 0
        assert s[i][i] >= 0
    for i in range(2):
        if s[i + 1][i + 1]:
            assert s[i + 1][i + 1] % max(s[i][i], 1) == 0


def test_sector_groups_of_the_three_families():
    g1 = sector_group(build_size1([0]))
    assert g1.order == 2 and g1.describe() == "Z/2"
    assert g1.class_of((0,)) == (0,) and g1.class_of((1,)) == (1,)
    assert g1.class_of((7,)) == (1,)
    g2 = sector_group(build_size1([1]))
    assert g2.order == 1 and g2.describe() == "0"
    assert g2.elements == [()]
    g3 = sector_group(build_size1([-1]))
    assert g3.order == 2 and g3.describe() == "Z/2"


def test_sector_group_of_a_cartan_pair():
    g = sector_group(build_cartan_pair(cartan_matrix("A2"), two_identity(2)))
    assert g.order == 3
    assert g.describe() == "Z/3"
    assert "order=3" in repr(g)


def test_sector_group_needs_invertible_plus_part():
    with pytest.raises(ValueError):
        sector_group(build_size1([-1, 2, -1]))


def test_partition_series_level_one():
    """The central-coefficient family at p = 2 counts partitions into parts
    avoiding 0, +-2 (mod 5)."""
    series = partition_series(build_size1([1]), (), 12)
    assert [series.coefficient(n) for n in range(13)] == [
        1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9,
    ]
    direct = andrew_gordon_series(1, 12)
    assert [direct.coefficient(n) for n in range(13)] == [
        series.coefficient(n) for n in range(13)
    ]


def test_sector_series_sum_to_the_total():
    alpha = build_size1([0])
    group, table = sector_series(alpha, 8)
    summed = table[(0,)] + table[(1,)]
    total = total_series(alpha, 8)
    assert summed == total
    assert group.M == total.M == 2


def test_sector_series_track_nonintegral_partners():
    alpha = build_cartan_pair(cartan_matrix("A2"), two_identity(2))
    _, table = sector_series(alpha, 6)
    flagged = [s for s in table.values() if s.notes]
    assert flagged
    for series in flagged:
        assert series.notes["nonintegral_partner"]


def test_eta_theta_oracle_spot():
    results = eta_theta_oracle("alpha2", d=1, order=60)
    assert results == {(): True}


def test_andrew_gordon_oracle_spot():
    assert andrew_gordon_oracle(2, 40)


def test_andrew_gordon_series_row_two():
    """Double-sum enumeration, checked against the product over parts not
    0, +-3 (mod 7) by clearing every retained factor."""
    order = 24
    series = andrew_gordon_series(2, order)
    acc = series
    for n in range(1, order + 1):
        if n % 7 not in {0, 3, 4}:
            acc = acc * QExpansion({0: 1, n: -1}, order, 1)
    assert acc == QExpansion.one(order)
