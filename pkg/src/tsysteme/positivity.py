"""Exact positivity tests for T-data.

Finite type forces the existence of a strictly positive vector v with
A_plus(1)^T v and A_minus(1)^T v strictly positive.  Over the rationals
this is equivalent to the closed system v >= 1, A_plus(1)^T v >= 1,
A_minus(1)^T v >= 1, decided here by an exact phase-I simplex with
Bland's rule.  Infeasibility comes with a Farkas certificate that is
verified before being returned.  The module also hosts the palindromy
test for the half-shift symmetry and the quadratic form K = A_+(1)^{-1}
A_-(1) together with its conjugate, checked for symmetry and positive
definiteness by exact Sylvester minors.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .laurent import RationalMatrix


class PositivityReport:
    """Outcome of the feasibility test.

    ``witness`` is a rational vector v >= 1 satisfying both evaluated
    systems when feasible; ``certificate`` is a verified Farkas vector
    (nonnegative, nonzero, pairing nonpositively with every column)
    otherwise."""

    __slots__ = ("feasible", "witness", "certificate")

    def __init__(self, feasible, witness=None, certificate=None):
        self.feasible = feasible
        self.witness = witness
        self.certificate = certificate

    def __bool__(self):
        return self.feasible

    def integer_witness(self):
        if self.witness is None:
            return None
        scale = lcm(*(w.denominator for w in self.witness))
        return tuple(int(w * scale) for w in self.witness)

    def __repr__(self):
        if self.feasible:
            return f"PositivityReport(feasible, witness={self.witness})"
        return f"PositivityReport(infeasible, certificate={self.certificate})"


def evaluated_pair(alpha):
    """Both matrices with z set to 1, as exact rational matrices."""
    return alpha.Aplus.eval_one(), alpha.Aminus.eval_one()


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for i in range(len(tableau)):
        if i == row:
            continue
        factor = tableau[i][col]
        if factor:
            tableau[i] = [
                x - factor * y for x, y in zip(tableau[i], tableau[row])
            ]
    basis[row] = col


def _phase_one(M):
    """Decide whether some x >= 0 satisfies M x >= 1, exactly.

    Returns (x, None) when feasible, (None, pi) with the final dual vector
    otherwise.  Columns are ordered x | surplus | artificial; the basis
    starts on the artificials and Bland's smallest-index rule guarantees
    termination."""
    m = len(M)
    n = len(M[0])
    width = n + 2 * m + 1
    tableau = []
    for i in range(m):
        row = [Fraction(0)] * width
        for j in range(n):
            row[j] = Fraction(M[i][j])
        row[n + i] = Fraction(-1)
        row[n + m + i] = Fraction(1)
        row[-1] = Fraction(1)
        tableau.append(row)
    basis = [n + m + i for i in range(m)]

    def reduced(j):
        z = sum(tableau[i][j] for i in range(m) if basis[i] >= n + m)
        cost = 1 if j >= n + m else 0
        return cost - z

    while True:
        enter = None
        for j in range(width - 1):
            if reduced(j) < 0:
                enter = j
                break
        if enter is None:
            break
        best = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][-1] / tableau[i][enter]
                if (
                    best is None
                    or ratio < best[0]
                    or (ratio == best[0] and basis[i] < basis[best[1]])
                ):
                    best = (ratio, i)
        if best is None:
            raise RuntimeError("phase-one objective unbounded; bad tableau")
        _pivot(tableau, basis, best[1], enter)

    value = sum(tableau[i][-1] for i in range(m) if basis[i] >= n + m)
    if value == 0:
        x = [Fraction(0)] * n
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = tableau[i][-1]
        return x, None
    pi = [1 - reduced(n + m + i) for i in range(m)]
    return None, pi


def simultaneous_positivity(alpha):
    """Decide the joint system v >= 1, A_+(1)^T v >= 1, A_-(1)^T v >= 1."""
    r = alpha.r
    a_plus, a_minus = evaluated_pair(alpha)
    M = []
    for i in range(r):
        M.append([Fraction(int(i == j)) for j in range(r)])
    for i in range(r):
        M.append([a_plus[j, i] for j in range(r)])
    for i in range(r):
        M.append([a_minus[j, i] for j in range(r)])

    x, pi = _phase_one(M)
    if x is not None:
        for i in range(len(M)):
            if sum(M[i][j] * x[j] for j in range(r)) < 1:
                raise RuntimeError("simplex returned an invalid witness")
        return PositivityReport(True, witness=tuple(x))

    if any(p < 0 for p in pi):
        raise RuntimeError("negative multiplier in infeasibility certificate")
    if sum(pi) <= 0:
        raise RuntimeError("zero infeasibility certificate")
    for j in range(r):
        if sum(M[i][j] * pi[i] for i in range(len(M))) > 0:
            raise RuntimeError("infeasibility certificate fails column test")
    return PositivityReport(False, certificate=tuple(pi))


def is_cartan_like(alpha):
    """Whether every entry of both matrices is palindromic across its own
    row window: coefficient at z^s equals coefficient at z^(p_a - s)."""
    for a in range(alpha.r):
        pa = alpha.p[a]
        for b in range(alpha.r):
            for mat in (alpha.Aplus, alpha.Aminus):
                poly = mat[a, b]
                for s, coeff in poly.items():
                    if poly.coeff(pa - s) != coeff:
                        return False
    return True


class QuadraticForm:
    """The form K = A_+(1)^{-1} A_-(1) and its D-conjugate, with exact
    symmetry and positive-definiteness verdicts for K D and for the
    conjugate against the dual symmetrizer."""

    __slots__ = (
        "K",
        "K_dual",
        "KD",
        "KdDd",
        "symmetric",
        "positive_definite",
        "dual_symmetric",
        "dual_positive_definite",
    )

    def __init__(self, alpha):
        a_plus, a_minus = evaluated_pair(alpha)
        self.K = a_plus.inverse() * a_minus
        D = RationalMatrix.diagonal([Fraction(d) for d in alpha.D])
        D_inv = RationalMatrix.diagonal([Fraction(1, d) for d in alpha.D])
        self.K_dual = D_inv * self.K * D
        self.KD = self.K * D
        D_dual = RationalMatrix.diagonal([Fraction(d) for d in alpha.D_dual])
        self.KdDd = self.K_dual * D_dual
        self.symmetric = self.KD.is_symmetric()
        self.positive_definite = self.symmetric and all(
            minor > 0 for minor in self.KD.leading_principal_minors()
        )
        self.dual_symmetric = self.KdDd.is_symmetric()
        self.dual_positive_definite = self.dual_symmetric and all(
            minor > 0 for minor in self.KdDd.leading_principal_minors()
        )


def quadratic_form(alpha):
    return QuadraticForm(alpha)


compute_K = quadratic_form
