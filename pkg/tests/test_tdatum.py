"""Validation, duality, equivalence, serialization, and the constructors."""

import itertools

import pytest
from hypothesis import given, strategies as st

from tsysteme import (
    ConsistentSubset,
    LaurentPoly,
    PolyMatrix,
    TDatumError,
    apply_permutation,
    build_cartan_pair,
    build_size1,
    build_tadpole,
    build_tensor,
    cartan_matrix,
    decompose,
    direct_sum,
    dual_coeff,
    dump_json,
    find_equivalence,
    from_json_dict,
    langlands_dual,
    load_json,
    parse_laurent,
    permute_subset,
    size1_coefficients,
    to_json_dict,
    two_identity,
    validate,
    validate_consistent,
)
from tsysteme.tdatum import left_symmetrizer, right_symmetrizer


def pm(*rows):
    return PolyMatrix([[parse_laurent(cell) for cell in row] for row in rows])


def somos4():
    return build_size1([-1, 2, -1])


# ---------------------------------------------------------------------------
# Axioms


def axiom_of(excinfo):
    return excinfo.value.axiom


def test_validate_accepts_somos4():
    alpha = validate(pm(["1-2*z^2+z^4"]), pm(["1-z-z^3+z^4"]), [1])
    assert alpha.r == 1
    assert alpha.p == (4,)
    assert alpha.sigma == (0,)
    assert alpha.Nplus[0, 0] == parse_laurent("2*z^2")
    assert alpha.Nminus[0, 0] == parse_laurent("z+z^3")
    assert alpha == somos4()
    assert "size 1" in alpha.describe()


def test_error_message_carries_the_axiom_tag():
    with pytest.raises(TDatumError) as excinfo:
        validate(pm(["1+z^2"]), pm(["1+z^3"]), [1])
    assert str(excinfo.value).startswith("[N1]")
    assert excinfo.value.axiom == "N1"
    assert excinfo.value.location == (0, 0, 2)


def test_shape_mismatch():
    with pytest.raises(TDatumError) as e:
        validate(pm(["1+z"]), PolyMatrix.identity(2), [1])
    assert axiom_of(e) == "shape"
    with pytest.raises(TDatumError) as e:
        validate(pm(["1+z"]), pm(["1+z"]), [1, 1])
    assert axiom_of(e) == "shape"


def test_n1_row_structure():
    # three coefficients in the positive part
    with pytest.raises(TDatumError) as e:
        validate(pm(["1+z+z^2"]), pm(["1+z+z^2"]), [1])
    assert axiom_of(e) == "N1"
    # no second unit coefficient
    with pytest.raises(TDatumError) as e:
        validate(pm(["1"]), pm(["1"]), [1])
    assert axiom_of(e) == "N1"
    # wrong diagonal constant
    with pytest.raises(TDatumError) as e:
        validate(pm(["2+z^2"]), pm(["2+z^2"]), [1])
    assert axiom_of(e) == "N1"
    # induced map is not a permutation: both rows point at row 0
    m = pm(["1+z", "0"], ["z", "1"])
    with pytest.raises(TDatumError) as e:
        validate(m, m, [1, 1])
    assert axiom_of(e) == "N1"


def test_n3_window():
    with pytest.raises(TDatumError) as e:
        validate(pm(["1+z^2-z^3"]), pm(["1+z^2"]), [1])
    assert axiom_of(e) == "N3"
    assert e.value.location == (0, 0, 3)


def test_n4_disjoint_supports():
    with pytest.raises(TDatumError) as e:
        validate(pm(["1-z+z^2"]), pm(["1-z+z^2"]), [1])
    assert axiom_of(e) == "N4"


def test_d_axioms():
    plain = pm(["1+z^2"])
    with pytest.raises(TDatumError) as e:
        validate(plain, plain, [0])
    assert axiom_of(e) == "D-positive"

    swap = pm(["1", "z"], ["z", "1"])
    with pytest.raises(TDatumError) as e:
        validate(swap, swap, [1, 2])
    assert axiom_of(e) == "D-commute"

    up = pm(["1+z^2", "-z"], ["0", "1+z^2"])
    with pytest.raises(TDatumError) as e:
        validate(up, pm(["1+z^2", "0"], ["0", "1+z^2"]), [2, 1])
    assert axiom_of(e) == "D-integral"


def test_symplectic_pairing():
    up = pm(["1+z^2", "-z"], ["0", "1+z^2"])
    eye = pm(["1+z^2", "0"], ["0", "1+z^2"])
    with pytest.raises(TDatumError) as e:
        validate(up, eye, [1, 1])
    assert axiom_of(e) == "symplectic"


def test_swap_datum_is_valid():
    swap = pm(["1", "z"], ["z", "1"])
    alpha = validate(swap, swap, [3, 3])
    assert alpha.sigma == (1, 0)
    assert alpha.p == (1, 1)
    assert alpha.delta == 9
    assert alpha.D_dual == (3, 3)


# ---------------------------------------------------------------------------
# Langlands duality


def test_dual_of_weighted_datum():
    alpha = build_size1([1], 3)
    dual = langlands_dual(alpha)
    assert dual.D == (3,)  # delta = 9, D_dual = 9/3
    assert dual.Nplus == alpha.Nplus
    assert langlands_dual(dual) == alpha


def test_dual_conjugates_coefficients():
    beta = build_cartan_pair(cartan_matrix("B2"), two_identity(2))
    assert beta.D == (1, 2)
    dual = langlands_dual(beta)
    for a in range(2):
        for b in range(2):
            for p in range(1, beta.p[a]):
                for eps in ("+", "-"):
                    assert dual.N(eps)[a, b].coeff(p) == dual_coeff(
                        beta, eps, a, b, p
                    )


def test_dual_is_involutive_on_corpus(corpus):
    for e in corpus:
        assert langlands_dual(langlands_dual(e.alpha)) == e.alpha


def test_dual_delta_is_stable():
    for d in (1, 2, 6):
        alpha = build_size1([0], d)
        assert langlands_dual(alpha).delta == alpha.delta == d * d


# ---------------------------------------------------------------------------
# Subsets


def test_consistent_subset_basics():
    s = ConsistentSubset(2, (0, 1))
    assert s.contains(0, 4) and not s.contains(0, 3)
    assert s.rows_at(1) == [1]
    assert ConsistentSubset.full(3).residues == (0, 0, 0)
    assert ConsistentSubset(2, (2, 5)).residues == (0, 1)
    with pytest.raises(ValueError):
        ConsistentSubset(0, ())


def test_validate_consistent():
    alpha = build_cartan_pair(cartan_matrix("A2"), two_identity(2))
    ok = validate_consistent(alpha, ConsistentSubset(2, (0, 1)))
    assert ok.t == 2
    with pytest.raises(TDatumError) as e:
        validate_consistent(alpha, ConsistentSubset(2, (0, 0)))
    assert axiom_of(e) == "R"
    with pytest.raises(TDatumError):
        validate_consistent(alpha, ConsistentSubset(1, (0,)))
    # the full pattern is consistent for everything
    validate_consistent(alpha, ConsistentSubset.full(2))


def test_initial_window():
    alpha = build_cartan_pair(cartan_matrix("A2"), two_identity(2))
    subset = ConsistentSubset(2, (0, 1))
    assert subset.initial_window(alpha) == [(0, 0), (1, 1)]
    assert ConsistentSubset.full(2).initial_window(alpha) == [
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
    ]


# ---------------------------------------------------------------------------
# Equivalence, decomposition


@given(st.permutations(range(3)))
def test_apply_permutation_then_search_recovers_it(rho):
    alpha = build_cartan_pair(cartan_matrix("A3"), two_identity(3))
    beta = apply_permutation(alpha, rho)
    found = find_equivalence(alpha, beta)
    assert found is not None
    assert apply_permutation(alpha, found) == beta


def test_find_equivalence_none_for_distinct_data():
    assert find_equivalence(build_size1([1]), build_size1([-1])) is None
    assert find_equivalence(build_size1([]), build_size1([0])) is None


def test_permute_subset():
    subset = ConsistentSubset(2, (0, 1, 1))
    assert permute_subset(subset, (2, 0, 1)).residues == (1, 1, 0)


def test_direct_sum_decompose_roundtrip():
    a = build_size1([1])
    b = build_cartan_pair(cartan_matrix("A2"), two_identity(2))
    total = direct_sum(a, b)
    assert total.r == 3
    parts = decompose(total)
    assert [comp for comp, _ in parts] == [(0,), (1, 2)]
    assert parts[0][1] == a
    assert parts[1][1] == b
    assert decompose(a) == [((0,), a)]


def test_tensor_decomposes_trivially():
    alpha = build_tensor(cartan_matrix("A2"), cartan_matrix("A2"))
    assert len(decompose(alpha)) == 1
    assert alpha.r == 4


# ---------------------------------------------------------------------------
# Constructors


def test_build_size1_families():
    assert size1_coefficients(build_size1([])) == ()
    assert size1_coefficients(somos4()) == (-1, 2, -1)
    with pytest.raises(TDatumError) as e:
        build_size1([1, 0])
    assert axiom_of(e) == "palindromic"
    alpha = build_size1([1, -2, -2, 1])
    assert alpha.Nplus[0, 0] == parse_laurent("z+z^4")
    assert alpha.Nminus[0, 0] == parse_laurent("2*z^2+2*z^3")


def test_cartan_matrices():
    assert cartan_matrix("A2") == [[2, -1], [-1, 2]]
    assert cartan_matrix("B2") == [[2, -1], [-2, 2]]
    assert cartan_matrix("C2") == [[2, -2], [-1, 2]]
    assert cartan_matrix("G2") == [[2, -1], [-3, 2]]
    assert cartan_matrix("T3") == [[2, -1, 0], [-1, 2, -1], [0, -1, 1]]
    assert cartan_matrix("F4")[2][1] == -2
    assert cartan_matrix("D4")[3][1] == -1
    with pytest.raises(ValueError):
        cartan_matrix("E8")
    with pytest.raises(ValueError):
        cartan_matrix("B1")


def test_symmetrizers():
    assert right_symmetrizer(cartan_matrix("A3")) == [1, 1, 1]
    assert right_symmetrizer(cartan_matrix("B3")) == [2, 2, 1]
    assert left_symmetrizer(cartan_matrix("B3")) == [1, 1, 2]
    assert right_symmetrizer(cartan_matrix("G2")) == [3, 1]
    with pytest.raises(ValueError):
        left_symmetrizer([[2, -1], [0, 2]])


def test_build_cartan_pair_structure():
    alpha = build_cartan_pair(cartan_matrix("A2"), two_identity(2))
    assert alpha.p == (2, 2)
    assert alpha.sigma == (0, 1)
    assert alpha.Nplus[0, 1] == parse_laurent("z")
    assert alpha.Nminus[0, 1] == LaurentPoly.zero()
    # the mirror puts the couplings on the other side
    mirror = build_cartan_pair(two_identity(2), cartan_matrix("A2"))
    assert mirror.Nminus[0, 1] == parse_laurent("z")
    assert mirror.Nplus[0, 1] == LaurentPoly.zero()


def test_build_cartan_pair_rejections():
    with pytest.raises(TDatumError) as e:
        build_cartan_pair([[2, 1], [1, 2]], two_identity(2))
    assert axiom_of(e) == "weak-cartan"
    with pytest.raises(TDatumError) as e:
        build_cartan_pair(cartan_matrix("A2"), [[2, 0], [-1, 2]])
    assert axiom_of(e) == "commutation"
    with pytest.raises(TDatumError) as e:
        build_cartan_pair(cartan_matrix("A2"), cartan_matrix("A2"))
    assert axiom_of(e) == "support-overlap"


def test_build_tadpole():
    alpha = build_tadpole(2)
    assert alpha.r == 2 and alpha.D == (1, 1)
    assert alpha.Nminus[1, 1] == parse_laurent("z")  # tadpole self-coupling
    flip = build_cartan_pair(cartan_matrix("T2"), two_identity(2))
    assert flip.Nplus[1, 1] == parse_laurent("z")


def test_build_tensor_commutes():
    alpha = build_tensor(cartan_matrix("A2"), cartan_matrix("B2"))
    assert alpha.r == 4
    # first factor acts on the major index, second on the minor one
    assert alpha.Nplus[0, 2] == parse_laurent("z")
    assert alpha.Nminus[0, 1] == parse_laurent("z")
    assert alpha.D == (2, 1, 2, 1)


def test_size1_rejects_higher_rank():
    with pytest.raises(ValueError):
        size1_coefficients(build_tadpole(2))


# ---------------------------------------------------------------------------
# JSON round trip


def test_json_roundtrip(tmp_path, corpus):
    for e in corpus:
        data = to_json_dict(e.alpha)
        assert from_json_dict(data) == e.alpha
    path = tmp_path / "somos4.json"
    dump_json(somos4(), path)
    assert load_json(path) == somos4()


def test_json_shape_errors(tmp_path):
    with pytest.raises(TDatumError) as e:
        from_json_dict({"r": 1})
    assert axiom_of(e) == "shape"
    with pytest.raises(TDatumError) as e:
        from_json_dict({"r": 2, "D": [1, 1], "A_plus": [[[1]]], "A_minus": [[[1]]]})
    assert axiom_of(e) == "shape"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(TDatumError) as e:
        load_json(bad)
    assert axiom_of(e) == "json"
    assert e.value.location == (1, 2)


def test_json_rejects_laurent_tails():
    swap = validate(pm(["1", "z"], ["z", "1"]), pm(["1", "z"], ["z", "1"]), [1, 1])
    # fine: all entries are polynomials
    to_json_dict(swap)
    alpha = somos4()
    recovered = from_json_dict(to_json_dict(alpha))
    assert recovered.Nplus == alpha.Nplus and recovered.D == alpha.D


# ---------------------------------------------------------------------------
# Hypothesis: palindromic size-1 grid round-trips through JSON and duality


@given(
    st.lists(st.integers(-2, 2), min_size=0, max_size=2),
    st.integers(min_value=-2, max_value=2),
    st.integers(min_value=1, max_value=3),
)
def test_size1_grid_properties(wing, center, d):
    for coeffs in (wing + wing[::-1], wing + [center] + wing[::-1]):
        alpha = build_size1(coeffs, d)
        assert size1_coefficients(alpha) == tuple(coeffs)
        assert from_json_dict(to_json_dict(alpha)) == alpha
        assert langlands_dual(langlands_dual(alpha)) == alpha
        assert alpha.p == (len(coeffs) + 1,)
