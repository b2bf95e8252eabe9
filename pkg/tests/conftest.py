"""Shared corpus of T-data used across the test modules.

Every entry carries the residue patterns it is exercised with; the full
pattern (t = 1) is always present, and bipartite pairs also carry their
alternating two-step pattern.
"""

import pytest

from tsysteme import (
    ConsistentSubset,
    build_affinization,
    build_cartan_pair,
    build_size1,
    build_tadpole,
    build_tensor,
    cartan_matrix,
    two_identity,
)


class CorpusEntry:
    __slots__ = ("name", "alpha", "subsets", "finite")

    def __init__(self, name, alpha, subsets, finite):
        self.name = name
        self.alpha = alpha
        self.subsets = subsets
        self.finite = finite

    def __repr__(self):
        return f"CorpusEntry({self.name})"


def _identity_matrix(n):
    return [[1 * (i == j) for j in range(n)] for i in range(n)]


def _entries():
    out = []

    def add(name, alpha, extra_residues=None, finite=False):
        subsets = [ConsistentSubset.full(alpha.r)]
        if extra_residues is not None:
            subsets.append(ConsistentSubset(2, extra_residues))
        out.append(CorpusEntry(name, alpha, tuple(subsets), finite))

    # --- size 1 ----------------------------------------------------------
    add("somos4", build_size1([-1, 2, -1]))
    add("somos4-mirror", build_size1([1, -2, 1]))
    add("plain-p1", build_size1([]), finite=True)
    add("plain-p2", build_size1([0]), finite=True)
    add("plain-p2-d2", build_size1([0], 2), finite=True)
    add("plain-p4", build_size1([0, 0, 0]), finite=True)
    add("central-plus", build_size1([1]), finite=True)
    add("central-plus-d3", build_size1([1], 3), finite=True)
    add("central-plus-p4", build_size1([0, 1, 0]), finite=True)
    add("central-minus", build_size1([-1]), finite=True)
    add("central-minus-d2", build_size1([-1], 2), finite=True)
    add("central-minus-p6", build_size1([0, 0, -1, 0, 0]), finite=True)
    add("mixed-p3", build_size1([1, 1]))
    add("mixed-p5", build_size1([1, -2, -2, 1]))

    # --- commuting pairs -------------------------------------------------
    alternating = {
        "A2": (0, 1),
        "A3": (0, 1, 0),
        "A4": (0, 1, 0, 1),
        "B2": (0, 1),
        "B3": (0, 1, 0),
        "C3": (0, 1, 0),
        "D4": (0, 1, 0, 0),
        "G2": (0, 1),
    }
    for kind in ("A2", "A3"):
        add(
            f"{kind.lower()}-belt",
            build_cartan_pair(two_identity(len(alternating[kind])), cartan_matrix(kind)),
            extra_residues=alternating[kind],
            finite=True,
        )
    for kind in ("A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"):
        n = len(alternating[kind])
        add(
            f"{kind.lower()}-flip",
            build_cartan_pair(cartan_matrix(kind), two_identity(n)),
            extra_residues=alternating[kind],
            finite=True,
        )
    add("a2-vs-identity", build_cartan_pair(cartan_matrix("A2"), _identity_matrix(2)), finite=True)
    add("tadpole2", build_tadpole(2), finite=True)
    add("tadpole3", build_tadpole(3), finite=True)
    add("tadpole2-flip", build_cartan_pair(cartan_matrix("T2"), two_identity(2)), finite=True)
    add("tadpole3-flip", build_cartan_pair(cartan_matrix("T3"), two_identity(3)), finite=True)
    add("tadpole4-flip", build_cartan_pair(cartan_matrix("T4"), two_identity(4)), finite=True)
    add(
        "a2xa2",
        build_tensor(cartan_matrix("A2"), cartan_matrix("A2")),
        extra_residues=(0, 1, 1, 0),
        finite=True,
    )
    add(
        "a3xa2",
        build_tensor(cartan_matrix("A3"), cartan_matrix("A2")),
        extra_residues=(0, 1, 1, 0, 0, 1),
        finite=True,
    )

    # --- restricted affinizations ---------------------------------------
    for kind, level in (
        ("A2", 2),
        ("A3", 2),
        ("B2", 2),
        ("C3", 2),
        ("G2", 2),
        ("F4", 2),
        ("A2", 3),
        ("B3", 5),
    ):
        alpha, _ = build_affinization(cartan_matrix(kind), level=level)
        add(f"{kind.lower()}-aff-l{level}", alpha)

    return out


_CORPUS = _entries()


@pytest.fixture(scope="session")
def corpus():
    return _CORPUS


@pytest.fixture(scope="session")
def finite_corpus():
    return [e for e in _CORPUS if e.finite]


def corpus_params():
    """For parametrized tests: one pytest param per corpus entry."""
    return [pytest.param(e, id=e.name) for e in _CORPUS]
