"""Partition series of Cartan-like data of finite type.

The exponent sector group is the quotient of the integer lattice by the
column lattice of the weight-conjugated plus-matrix evaluation, computed
by an exact Smith normal form.  Series live in a sparse truncated
q-expansion type with a common exponent denominator.  The module also
carries the classical consistency oracles: the three size-1 eta/theta
identities and the Andrew-Gordon product identity for tadpole data.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from math import isqrt, lcm

from .positivity import evaluated_pair, quadratic_form
from .tdatum import build_cartan_pair, build_size1, cartan_matrix, two_identity

# ---------------------------------------------------------------------------
# Truncated q-expansions


class QExpansion:
    """Sum of c_n q^(n/M), reliable up to a rational order.

    ``coeffs`` maps integer exponent numerators to integer coefficients;
    terms beyond ``order`` (in plain q units) are dropped on construction,
    and the order follows the min rule through sums and products.  The
    optional ``notes`` dictionary carries enumeration remarks and is not
    propagated by arithmetic."""

    __slots__ = ("M", "order", "coeffs", "notes")

    def __init__(self, coeffs, order, M=1, notes=None):
        self.M = int(M)
        self.order = Fraction(order)
        cap = self.order * self.M
        self.coeffs = {int(n): c for n, c in coeffs.items() if c and n <= cap}
        self.notes = notes

    @classmethod
    def one(cls, order, M=1):
        return cls({0: 1}, order, M)

    @classmethod
    def zero(cls, order, M=1):
        return cls({}, order, M)

    def rescaled(self, M):
        if M == self.M:
            return self
        if M % self.M:
            raise ValueError(f"{M} is not a multiple of the denominator {self.M}")
        k = M // self.M
        return QExpansion({n * k: c for n, c in self.coeffs.items()}, self.order, M)

    def _aligned(self, other):
        M = lcm(self.M, other.M)
        return self.rescaled(M), other.rescaled(M), M

    def __add__(self, other):
        a, b, M = self._aligned(other)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out.get(n, 0) + c
        return QExpansion(out, min(a.order, b.order), M)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QExpansion(
            {n: c * v for n, v in self.coeffs.items()}, self.order, self.M
        )

    def __mul__(self, other):
        a, b, M = self._aligned(other)
        order = min(a.order, b.order)
        cap = order * M
        out = {}
        for n1, c1 in a.coeffs.items():
            for n2, c2 in b.coeffs.items():
                n = n1 + n2
                if n <= cap:
                    out[n] = out.get(n, 0) + c1 * c2
        return QExpansion(out, order, M)

    def shift(self, exponent):
        """Multiply by q^exponent for a nonnegative rational exponent."""
        exponent = Fraction(exponent)
        M = lcm(self.M, exponent.denominator)
        base = self.rescaled(M)
        delta = int(exponent * M)
        return QExpansion(
            {n + delta: c for n, c in base.coeffs.items()},
            base.order + exponent,
            M,
        )

    def coefficient(self, exponent):
        num = Fraction(exponent) * self.M
        if num.denominator != 1:
            return 0
        return self.coeffs.get(int(num), 0)

    def terms(self):
        return [(Fraction(n, self.M), self.coeffs[n]) for n in sorted(self.coeffs)]

    def truncated(self, order):
        return QExpansion(self.coeffs, min(self.order, Fraction(order)), self.M)

    def evaluate(self, q):
        """Numeric value of the truncation at a float 0 < q < 1."""
        return sum(
            float(c) * q ** (n / self.M) for n, c in sorted(self.coeffs.items())
        )

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        a, b, M = self._aligned(other)
        cap = min(a.order, b.order) * M
        for n in set(a.coeffs) | set(b.coeffs):
            if n <= cap and a.coeffs.get(n, 0) != b.coeffs.get(n, 0):
                return False
        return True

    def __repr__(self):
        head = ", ".join(
            f"{self.coeffs[n]}*q^({n}/{self.M})" for n in sorted(self.coeffs)[:4]
        )
        tail = ", ..." if len(self.coeffs) > 4 else ""
        return f"QExpansion({head}{tail}; order={self.order})"


def eta_product(step, order):
    """The product (1 - q^step)(1 - q^(2 step))... truncated at ``order``,
    expanded through the pentagonal number recurrence."""
    coeffs = {}
    k = 0
    while True:
        exps = [step * (k * (3 * k - 1) // 2), step * (k * (3 * k + 1) // 2)]
        live = [e for e in exps if e <= order]
        for e in live:
            coeffs[e] = (-1) ** k
        if not live and k > 0:
            break
        k += 1
    return QExpansion(coeffs, order, 1)


def dedekind_eta(step, order):
    """q^(step/24) times the truncated product, with a fractional exponent
    denominator of 24/gcd(step, 24)."""
    return eta_product(step, order).shift(Fraction(step, 24))


# ---------------------------------------------------------------------------
# Smith normal form and the sector group


def smith_normal_form(matrix):
    """Decompose an integer matrix as S = U A V with U, V unimodular and S
    diagonal, each entry nonnegative and dividing the next.

    Returns (U, S, V) as lists of rows.  Classic pivoting: pull the
    smallest nonzero entry to the corner, clear its row and column by
    exact Euclidean steps, then fold in any entry the pivot fails to
    divide."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    s = [[int(x) for x in row] for row in matrix]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]
    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in s:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        dirty = False
        for i in range(rows):
            if i != t and s[i][t]:
                q = s[i][t] // s[t][t]
                if q:
                    s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if s[i][t]:
                    dirty = True
        for j in range(cols):
            if j != t and s[t][j]:
                q = s[t][j] // s[t][t]
                if q:
                    for row in s:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if s[t][j]:
                    dirty = True
        if dirty:
            continue
        offender = next(
            (
                i
                for i in range(t + 1, rows)
                for j in range(t + 1, cols)
                if s[i][j] % s[t][t]
            ),
            None,
        )
        if offender is not None:
            s[t] = [x + y for x, y in zip(s[t], s[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
            continue
        t += 1
    return u, s, v


class SectorGroup:
    """Finite quotient classifying the exponent sectors of a datum.

    The lattice is spanned by the columns of the transposed weight
    conjugate of the plus evaluation; its Smith form gives the invariant
    factors, the class map, and the order (the plus determinant).  ``M``
    is the common exponent denominator shared by every series of the
    datum."""

    def __init__(self, alpha):
        self.alpha = alpha
        self.form = quadratic_form(alpha)
        a_plus, _ = evaluated_pair(alpha)
        r = alpha.r
        if a_plus.det() == 0:
            raise ValueError("plus evaluation is singular; no sector group")
        d = alpha.D
        conjugate = [[Fraction(a_plus[i, j]) * d[j] / d[i] for j in range(r)]
                     for i in range(r)]
        lattice = []
        for i in range(r):
            row = []
            for j in range(r):
                entry = conjugate[j][i]
                if entry.denominator != 1:
                    raise ValueError("weight conjugate is not integral")
                row.append(int(entry))
            lattice.append(row)
        u, s, _ = smith_normal_form(lattice)
        self.U = u
        self.invariants = tuple(s[i][i] for i in range(r))
        self.invariant_factors = tuple(x for x in self.invariants if x != 1)
        order = 1
        for x in self.invariants:
            order *= x
        self.order = order
        self._positions = [i for i, x in enumerate(self.invariants) if x != 1]
        self.elements = [
            tuple(e)
            for e in iter_product(
                *(range(self.invariants[i]) for i in self._positions)
            )
        ]
        q_entries = self.form.KdDd
        denom = 1
        for i in range(r):
            for j in range(r):
                denom = lcm(denom, q_entries[i, j].denominator)
        self.M = 2 * denom

    def class_of(self, m):
        image = [
            sum(self.U[i][j] * m[j] for j in range(len(m)))
            for i in range(len(self.invariants))
        ]
        return tuple(
            image[i] % self.invariants[i] for i in self._positions
        )

    def describe(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{k}" for k in self.invariant_factors)

    def __repr__(self):
        return f"SectorGroup({self.describe()}, order={self.order})"


def sector_group(alpha):
    return SectorGroup(alpha)


# ---------------------------------------------------------------------------
# Series enumeration


def _box_bounds(form, r, order):
    """Per-coordinate bound on m >= 0 with half m^T Q m <= order, from the
    exact diagonal of the inverse form."""
    inverse = form.KdDd.inverse()
    bounds = []
    for a in range(r):
        limit = 2 * Fraction(order) * inverse[a, a]
        bounds.append(isqrt(max(0, limit.numerator // limit.denominator)))
    return bounds


def _fold_box(alpha, form, order, leaf):
    """Walk the integer box of candidate m vectors, carrying the dense
    reciprocal Pochhammer coefficients along the recursion.

    Extending m_a by one multiplies the running series by the geometric
    series of one more part, a single ascending pass over the dense list.
    ``leaf(m, dense)`` is called for every box point."""
    r = alpha.r
    steps = alpha.D_dual
    bounds = _box_bounds(form, r, order)
    cap = int(Fraction(order))
    m = [0] * r

    def descend(a, dense):
        if a == r:
            leaf(tuple(m), dense)
            return
        current = dense
        for k in range(bounds[a] + 1):
            m[a] = k
            if k > 0:
                part = steps[a] * k
                current = current[:]
                for n in range(part, cap + 1):
                    current[n] += current[n - part]
            descend(a + 1, current)
        m[a] = 0

    start = [0] * (cap + 1)
    start[0] = 1
    descend(0, start)


def _quadratic_exponent(q_matrix, m):
    total = Fraction(0)
    r = len(m)
    for i in range(r):
        if m[i]:
            for j in range(r):
                if m[j]:
                    total += q_matrix[i, j] * m[i] * m[j]
    return total / 2


def sector_series(alpha, order):
    """All partition series of a datum at once.

    Returns (group, {class tuple: QExpansion}).  Any m whose partner
    vector K m leaves the integer lattice is recorded in the ``notes`` of
    its sector rather than filtered out."""
    group = sector_group(alpha)
    form = group.form
    q_matrix = form.KdDd
    order = Fraction(order)
    M = group.M
    classes = {cls: {} for cls in group.elements}
    nonintegral = {cls: [] for cls in group.elements}

    def leaf(m, dense):
        exponent = _quadratic_exponent(q_matrix, m)
        if exponent > order:
            return
        cls = group.class_of(m)
        partner = form.K.apply([Fraction(x) for x in m])
        if any(x.denominator != 1 for x in partner):
            seen = nonintegral[cls]
            if len(seen) < 8:
                seen.append(m)
        target = classes[cls]
        base = int(exponent * M)
        room = int(order - exponent)
        for n in range(min(room, len(dense) - 1) + 1):
            c = dense[n]
            if c:
                key = base + n * M
                target[key] = target.get(key, 0) + c

    _fold_box(alpha, form, order, leaf)
    out = {}
    for cls in group.elements:
        notes = (
            {"nonintegral_partner": nonintegral[cls]}
            if nonintegral[cls]
            else None
        )
        out[cls] = QExpansion(classes[cls], order, M, notes=notes)
    return group, out


def partition_series(alpha, sigma, order):
    """The series of one sector; ``sigma`` is a class tuple or an index
    into the group's element list."""
    group, table = sector_series(alpha, order)
    if isinstance(sigma, int):
        sigma = group.elements[sigma]
    else:
        sigma = tuple(sigma)
    if sigma not in table:
        raise ValueError(f"unknown sector {sigma!r}")
    return table[sigma]


def total_series(alpha, order):
    """Sum over every m >= 0, accumulated directly from the quadratic
    exponent without the sector split."""
    form = quadratic_form(alpha)
    q_matrix = form.KdDd
    order = Fraction(order)
    denom = 1
    for i in range(alpha.r):
        for j in range(alpha.r):
            denom = lcm(denom, q_matrix[i, j].denominator)
    M = 2 * denom
    coeffs = {}

    def leaf(m, dense):
        exponent = _quadratic_exponent(q_matrix, m)
        if exponent > order:
            return
        base = int(exponent * M)
        room = int(order - exponent)
        for n in range(min(room, len(dense) - 1) + 1):
            c = dense[n]
            if c:
                key = base + n * M
                coeffs[key] = coeffs.get(key, 0) + c

    _fold_box(alpha, form, order, leaf)
    return QExpansion(coeffs, order, M)


# ---------------------------------------------------------------------------
# Size-1 eta/theta oracles

# Sector label -> (theta exponent denominator, modulus, +1 residues,
# -1 residues); the eta prefactor exponent is d times the listed shift.
_SIZE1_THETA = {
    "alpha1": {
        "coeffs": [0],
        "shift": Fraction(1, 48),
        "sectors": {
            (0,): (48, 24, {1, 23}, {7, 17}),
            (1,): (48, 24, {5, 19}, {11, 13}),
        },
    },
    "alpha2": {
        "coeffs": [1],
        "shift": Fraction(1, 40),
        "sectors": {
            (): (40, 20, {1, 19}, {9, 11}),
        },
    },
    "alpha3": {
        "coeffs": [-1],
        "shift": Fraction(1, 60),
        "sectors": {
            (0,): (60, 30, {1, 29}, {11, 19}),
            (1,): (60, 30, {4, 26}, {14, 16}),
        },
    },
}


def theta_sum(d, denominator, modulus, plus, minus, order):
    """Sum over all integers n of a(n) q^(d n^2 / denominator), where a is
    +-1 on the given residue classes mod ``modulus`` and 0 elsewhere."""
    coeffs = {}
    n = 0
    while Fraction(d * n * n, denominator) <= order:
        for value in {n, -n} if n else {0}:
            residue = value % modulus
            weight = 1 if residue in plus else -1 if residue in minus else 0
            if weight:
                key = d * n * n
                coeffs[key] = coeffs.get(key, 0) + weight
        n += 1
    return QExpansion(coeffs, order, denominator)


def eta_theta_oracle(family, d=1, order=100):
    """Check the size-1 modular identities sector by sector.

    Rearranged multiplicatively: twice the sector series, times the plain
    eta product in q^d, times the fractional prefactor, must equal the
    theta sum.  Returns {sector: bool}."""
    spec = _SIZE1_THETA[family]
    alpha = build_size1(spec["coeffs"], d)
    _, table = sector_series(alpha, order)
    eta = eta_product(d, order)
    results = {}
    for sector, (denominator, modulus, plus, minus) in spec["sectors"].items():
        left = (table[sector] * eta).scale(2).shift(d * spec["shift"])
        right = theta_sum(d, denominator, modulus, plus, minus, order)
        results[sector] = left == right
    return results


# ---------------------------------------------------------------------------
# Andrew-Gordon product oracle


def andrew_gordon_series(r, order):
    """Direct nested sum q^(N_1^2 + ... + N_r^2) / prod (q)_(n_a) with
    N_a the tail sums of n, written without the general enumerator."""
    order = int(order)
    coeffs = {}

    def descend(a, tail, exponent, dense):
        # tail = n_{a} + ... + n_{r}; exponent accumulates the squares of
        # the completed tail sums.
        if a == 0:
            for n in range(order - exponent + 1):
                if dense[n]:
                    key = exponent + n
                    coeffs[key] = coeffs.get(key, 0) + dense[n]
            return
        n_a = 0
        current = dense
        while exponent + (tail + n_a) ** 2 <= order:
            if n_a > 0:
                current = current[:]
                for n in range(n_a, order + 1):
                    current[n] += current[n - n_a]
            descend(a - 1, tail + n_a, exponent + (tail + n_a) ** 2, current)
            n_a += 1

    start = [0] * (order + 1)
    start[0] = 1
    descend(r, 0, 0, start)
    return QExpansion(coeffs, order, 1)


def andrew_gordon_oracle(r, order):
    """Compare the tadpole partition series with the product over positive
    integers avoiding 0 and +-(r+1) mod 2r+3.

    The sum side comes from the general sector enumerator on the datum
    whose plus evaluation is the tadpole Cartan matrix.  Multiplying it by
    every retained factor (1 - q^n) must give the constant series, so no
    series is ever inverted."""
    alpha = build_cartan_pair(cartan_matrix(f"T{r}"), two_identity(r))
    series = partition_series(alpha, (), order)
    modulus = 2 * r + 3
    excluded = {0, r + 1, modulus - r - 1}
    acc = series
    for n in range(1, int(order) + 1):
        if n % modulus not in excluded:
            acc = acc * QExpansion({0: 1, n: -1}, order, 1)
    return acc == QExpansion.one(order)
