"""T-data: pairs of polynomial matrices driving coupled algebraic recurrences.

A T-datum is a triple (A_plus, A_minus, D) of square matrices over Z[z]
(D a positive integer diagonal) whose coefficient structure encodes a
T-system: the shape axioms (N1)-(N4) on the recovered matrices N0, N_plus,
N_minus, compatibility of D, and a symplectic pairing between the two
sides.  This module validates such triples, forms Langlands duals,
handles consistent index subsets, decomposes into indecomposable pieces,
and provides the standard constructors (size-1 palindromic data, commuting
Cartan pairs, tensor products, tadpole pairs, and restricted affinization
data).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from .laurent import LaurentPoly, PolyMatrix, z_integer


class TDatumError(ValueError):
    """Validation failure, tagged with the axiom name and offending indices."""

    def __init__(self, axiom, location, message):
        self.axiom = axiom
        self.location = location
        super().__init__(f"[{axiom}] {message}")


class TDatum:
    """A validated triple (A_plus, A_minus, D), stored via its N-matrices.

    Attributes use 0-based indices throughout: sigma is the permutation as a
    tuple of images, p the positive shift vector from (N1), D the diagonal.
    N0 is derived from sigma and p.
    """

    __slots__ = ("r", "Nplus", "Nminus", "D", "sigma", "p")

    def __init__(self, r, Nplus, Nminus, D, sigma, p):
        self.r = r
        self.Nplus = Nplus
        self.Nminus = Nminus
        self.D = tuple(D)
        self.sigma = tuple(sigma)
        self.p = tuple(p)

    @property
    def N0(self):
        entries = [
            [LaurentPoly.zero() for _ in range(self.r)] for _ in range(self.r)
        ]
        for a in range(self.r):
            entries[a][a] = entries[a][a] + LaurentPoly.one()
            b = self.sigma_inv(a)
            entries[a][b] = entries[a][b] + LaurentPoly.monomial(1, self.p[a])
        return PolyMatrix(entries)

    @property
    def Aplus(self):
        return self.N0 - self.Nplus

    @property
    def Aminus(self):
        return self.N0 - self.Nminus

    def N(self, eps):
        if eps == "+" or eps == 1:
            return self.Nplus
        if eps == "-" or eps == -1:
            return self.Nminus
        if eps == "0" or eps == 0:
            return self.N0
        raise ValueError(f"unknown side {eps!r}")

    def sigma_inv(self, a):
        return self.sigma.index(a)

    @property
    def delta(self):
        return gcd(*self.D) * lcm(*self.D) if self.r > 1 else self.D[0] ** 2

    @property
    def D_dual(self):
        d = self.delta
        return tuple(d // da for da in self.D)

    def dual(self):
        return langlands_dual(self)

    def __eq__(self, other):
        if not isinstance(other, TDatum):
            return NotImplemented
        return (
            self.r == other.r
            and self.D == other.D
            and self.Nplus == other.Nplus
            and self.Nminus == other.Nminus
        )

    def __hash__(self):
        return hash((self.r, self.D, self.Nplus, self.Nminus))

    def __repr__(self):
        return f"TDatum(r={self.r}, p={self.p}, sigma={self.sigma}, D={self.D})"

    def describe(self):
        lines = [
            f"size {self.r}",
            f"sigma = {list(self.sigma)}",
            f"p = {list(self.p)}",
            f"D = {list(self.D)}",
            "A_plus =",
            str(self.Aplus),
            "A_minus =",
            str(self.Aminus),
        ]
        return "\n".join(lines)


def _support(matrix):
    """All (a, b, p, coeff) with a nonzero coefficient."""
    out = []
    for a in range(matrix.r):
        for b in range(matrix.r):
            for exp, coeff in sorted(matrix[a, b].items()):
                out.append((a, b, exp, coeff))
    return out


def validate(Aplus, Aminus, D):
    """Check the full axiom list and return the validated TDatum.

    Raises :class:`TDatumError` carrying the axiom name ("N1", "N3", "N4",
    "D-positive", "D-commute", "D-integral", "symplectic", "shape") and the
    offending index triple.
    """
    r = Aplus.r
    if Aminus.r != r:
        raise TDatumError("shape", (), "matrix sizes differ")
    D = tuple(int(d) for d in D)
    if len(D) != r:
        raise TDatumError("shape", (), f"D has length {len(D)}, expected {r}")
    for a, d in enumerate(D):
        if d <= 0:
            raise TDatumError("D-positive", (a,), f"D[{a}] = {d} is not positive")

    N0 = Aplus.positive_part()
    other = Aminus.positive_part()
    if N0 != other:
        for a, b, exp, coeff in _support(N0 - other):
            raise TDatumError(
                "N1",
                (a, b, exp),
                "positive parts of the two matrices disagree at "
                f"({a}, {b}, z^{exp})",
            )

    # Parse (N1): each row has coefficient 1 at (a, a, 0) plus exactly one
    # other coefficient 1 at (a, sigma^{-1}(a), p_a) with p_a > 0.
    sigma_inv = [None] * r
    p = [None] * r
    for a in range(r):
        entries = [
            (b, exp, coeff)
            for b in range(r)
            for exp, coeff in sorted(N0[a, b].items())
        ]
        diag = [(b, exp, c) for (b, exp, c) in entries if b == a and exp == 0]
        if diag != [(a, 0, 1)]:
            raise TDatumError(
                "N1", (a, a, 0), f"row {a} needs coefficient 1 at (a, a, z^0)"
            )
        rest = [(b, exp, c) for (b, exp, c) in entries if not (b == a and exp == 0)]
        if len(rest) != 1 or rest[0][2] != 1 or rest[0][1] <= 0:
            where = rest[0][:2] if rest else (a, None)
            raise TDatumError(
                "N1",
                (a,) + tuple(where),
                f"row {a} must contain exactly one more coefficient 1 at a "
                f"positive power, found {rest}",
            )
        sigma_inv[a], p[a] = rest[0][0], rest[0][1]
    if sorted(sigma_inv) != list(range(r)):
        raise TDatumError("N1", (), f"induced map {sigma_inv} is not a permutation")
    sigma = [None] * r
    for a, b in enumerate(sigma_inv):
        sigma[b] = a

    Nplus = (-Aplus).positive_part()
    Nminus = (-Aminus).positive_part()

    for name, mat in (("+", Nplus), ("-", Nminus)):
        for a, b, exp, coeff in _support(mat):
            if not 0 < exp < p[a]:
                raise TDatumError(
                    "N3",
                    (a, b, exp),
                    f"N{name}[{a}][{b}] has z^{exp} outside the window "
                    f"0 < p < {p[a]}",
                )
    for a, b, exp, coeff in _support(Nplus):
        if Nminus[a, b].coeff(exp):
            raise TDatumError(
                "N4",
                (a, b, exp),
                f"both sides have a coefficient at ({a}, {b}, z^{exp})",
            )

    for a in range(r):
        if D[a] != D[sigma[a]]:
            raise TDatumError(
                "D-commute",
                (a,),
                f"D[{a}] = {D[a]} differs from D[sigma({a})] = {D[sigma[a]]}",
            )
    for name, mat in (("+", Nplus), ("-", Nminus)):
        for a, b, exp, coeff in _support(mat):
            if (coeff * D[b]) % D[a]:
                raise TDatumError(
                    "D-integral",
                    (a, b, exp),
                    f"N{name}[{a}][{b}] coefficient {coeff} at z^{exp}: "
                    f"{coeff}*{D[b]}/{D[a]} is not an integer",
                )

    diag = PolyMatrix.diagonal([LaurentPoly.const(d) for d in D])
    left = Aplus * diag * Aminus.dagger()
    right = Aminus * diag * Aplus.dagger()
    if left != right:
        for a, b, exp, coeff in _support(left - right):
            raise TDatumError(
                "symplectic",
                (a, b, exp),
                f"pairing mismatch at ({a}, {b}, z^{exp}): difference {coeff}",
            )

    return TDatum(r, Nplus, Nminus, D, sigma, p)


def langlands_dual(alpha):
    """Conjugate the N-matrices by D and invert the symmetrizer scale.

    The dual has N_eps -> D^{-1} N_eps D and D -> delta * D^{-1} with
    delta = gcd(D) * lcm(D); applying it twice returns the original.
    """
    scale_in = [Fraction(1, d) for d in alpha.D]
    scale_out = [Fraction(d) for d in alpha.D]

    def conjugate(mat):
        return mat.scale_rows(scale_in).scale_cols(scale_out)

    dual_D = alpha.D_dual
    Nplus = conjugate(alpha.Nplus)
    Nminus = conjugate(alpha.Nminus)
    N0 = alpha.N0
    A_plus = N0 - Nplus
    A_minus = N0 - Nminus
    return validate(A_plus, A_minus, dual_D)


def dual_coeff(alpha, eps, a, b, p):
    """Coefficient of D^{-1} N_eps D at (a, b, z^p); an integer for valid data."""
    n = alpha.N(eps)[a, b].coeff(p)
    if n == 0:
        return 0
    num = n * alpha.D[b]
    if num % alpha.D[a]:
        raise TDatumError(
            "D-integral",
            (a, b, p),
            f"coefficient {n} at ({a}, {b}, z^{p}) does not conjugate integrally",
        )
    return num // alpha.D[a]


class ConsistentSubset:
    """A residue-pattern subset R = {(a, u) : u = c_a (mod t)}.

    ``residues[a]`` stores c_a reduced mod t.  t = 1 with all residues 0 is
    the full subset.
    """

    __slots__ = ("t", "residues")

    def __init__(self, t, residues):
        t = int(t)
        if t < 1:
            raise ValueError(f"t must be a positive integer, got {t}")
        self.t = t
        self.residues = tuple(int(c) % t for c in residues)

    @classmethod
    def full(cls, r):
        return cls(1, (0,) * r)

    def contains(self, a, u):
        return (u - self.residues[a]) % self.t == 0

    def initial_window(self, alpha):
        """Points (a, p) of R with 0 <= p < p_a, in (a, p) order."""
        return [
            (a, q)
            for a in range(alpha.r)
            for q in range(alpha.p[a])
            if self.contains(a, q)
        ]

    def rows_at(self, u):
        return [a for a in range(len(self.residues)) if self.contains(a, u)]

    def __eq__(self, other):
        if not isinstance(other, ConsistentSubset):
            return NotImplemented
        return self.t == other.t and self.residues == other.residues

    def __hash__(self):
        return hash((self.t, self.residues))

    def __repr__(self):
        return f"ConsistentSubset(t={self.t}, residues={list(self.residues)})"


def validate_consistent(alpha, subset):
    """Check the closure congruences of a residue pattern against alpha.

    Every nonzero coefficient of N_plus or N_minus at (a, b, p), and the
    (N1) entries, force c_b = c_a - p (mod t); violations are reported with
    the offending triple.
    """
    if len(subset.residues) != alpha.r:
        raise TDatumError(
            "R", (), f"residues length {len(subset.residues)} != size {alpha.r}"
        )
    t = subset.t
    c = subset.residues
    for mat in (alpha.N0, alpha.Nplus, alpha.Nminus):
        for a, b, exp, coeff in _support(mat):
            if a == b and exp == 0:
                continue
            if (c[a] - exp - c[b]) % t:
                raise TDatumError(
                    "R",
                    (a, b, exp),
                    f"closure fails: need c[{b}] = c[{a}] - {exp} (mod {t}), "
                    f"have c[{a}] = {c[a]}, c[{b}] = {c[b]}",
                )
    return subset


def apply_permutation(alpha, rho):
    """Relabel indices by a bijection rho: entry (a, b) moves to (rho a, rho b)."""
    rho = tuple(rho)
    r = alpha.r
    if sorted(rho) != list(range(r)):
        raise ValueError(f"{rho} is not a permutation of 0..{r - 1}")

    def permute(mat):
        entries = [[LaurentPoly.zero()] * r for _ in range(r)]
        for a in range(r):
            for b in range(r):
                entries[rho[a]][rho[b]] = mat[a, b]
        return PolyMatrix(entries)

    D = [0] * r
    for a in range(r):
        D[rho[a]] = alpha.D[a]
    return validate(permute(alpha.Aplus), permute(alpha.Aminus), D)


def permute_subset(subset, rho):
    rho = tuple(rho)
    residues = [0] * len(subset.residues)
    for a in range(len(rho)):
        residues[rho[a]] = subset.residues[a]
    return ConsistentSubset(subset.t, residues)


def find_equivalence(alpha, beta, limit=8):
    """Search for a relabeling rho with rho(alpha) == beta.

    Exhaustive backtracking with per-index invariant pruning; intended for
    r <= ``limit``.  Returns the permutation tuple or None.
    """
    if alpha.r != beta.r:
        return None
    r = alpha.r
    if r > limit:
        raise ValueError(f"equivalence search limited to size {limit}")

    def invariant(datum, a):
        row_plus = sorted(
            tuple(sorted(datum.Nplus[a, b].items())) for b in range(r)
        )
        col_plus = sorted(
            tuple(sorted(datum.Nplus[b, a].items())) for b in range(r)
        )
        row_minus = sorted(
            tuple(sorted(datum.Nminus[a, b].items())) for b in range(r)
        )
        col_minus = sorted(
            tuple(sorted(datum.Nminus[b, a].items())) for b in range(r)
        )
        return (
            datum.D[a],
            datum.p[a],
            datum.p[datum.sigma[a]],
            tuple(row_plus),
            tuple(col_plus),
            tuple(row_minus),
            tuple(col_minus),
        )

    inv_a = [invariant(alpha, a) for a in range(r)]
    inv_b = [invariant(beta, a) for a in range(r)]
    candidates = [
        [b for b in range(r) if inv_b[b] == inv_a[a]] for a in range(r)
    ]
    if any(not c for c in candidates):
        return None

    assignment = [None] * r
    used = [False] * r

    def consistent(a, image):
        if beta.p[image] != alpha.p[a] or beta.D[image] != alpha.D[a]:
            return False
        for a2 in range(r):
            img2 = assignment[a2]
            if img2 is None:
                continue
            for mat_a, mat_b in (
                (alpha.Nplus, beta.Nplus),
                (alpha.Nminus, beta.Nminus),
                (alpha.N0, beta.N0),
            ):
                if mat_a[a, a2] != mat_b[image, img2]:
                    return False
                if mat_a[a2, a] != mat_b[img2, image]:
                    return False
        return True

    def backtrack(a):
        if a == r:
            return True
        for image in candidates[a]:
            if used[image] or not consistent(a, image):
                continue
            assignment[a] = image
            used[image] = True
            if backtrack(a + 1):
                return True
            assignment[a] = None
            used[image] = False
        return False

    if backtrack(0):
        return tuple(assignment)
    return None


def decompose(alpha):
    """Split into indecomposable components.

    Indices are connected when N_plus + N_minus has support between them (in
    either order) or when sigma links them.  Returns a list of
    (component index tuple, TDatum) pairs, components sorted by smallest
    index.
    """
    r = alpha.r
    adj = [set() for _ in range(r)]
    for mat in (alpha.Nplus, alpha.Nminus):
        for a, b, exp, coeff in _support(mat):
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
    for a in range(r):
        if alpha.sigma[a] != a:
            adj[a].add(alpha.sigma[a])
            adj[alpha.sigma[a]].add(a)

    seen = [False] * r
    components = []
    for start in range(r):
        if seen[start]:
            continue
        stack = [start]
        comp = []
        seen[start] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    stack.append(b)
        components.append(tuple(sorted(comp)))

    out = []
    for comp in components:
        pos = {a: i for i, a in enumerate(comp)}

        def restrict(mat):
            return PolyMatrix(
                [[mat[a, b] for b in comp] for a in comp]
            )

        sub = validate(
            restrict(alpha.Aplus),
            restrict(alpha.Aminus),
            [alpha.D[a] for a in comp],
        )
        out.append((comp, sub))
    return out


def direct_sum(*data):
    """Block-diagonal join of several T-data."""
    r = sum(d.r for d in data)
    entries_p = [[LaurentPoly.zero()] * r for _ in range(r)]
    entries_m = [[LaurentPoly.zero()] * r for _ in range(r)]
    D = []
    offset = 0
    for d in data:
        for a in range(d.r):
            for b in range(d.r):
                entries_p[offset + a][offset + b] = d.Aplus[a, b]
                entries_m[offset + a][offset + b] = d.Aminus[a, b]
        D.extend(d.D)
        offset += d.r
    return validate(PolyMatrix(entries_p), PolyMatrix(entries_m), D)


# ---------------------------------------------------------------------------
# Constructors


def build_size1(coeffs, d=1):
    """Size-1 datum from interior coefficients (n_1, ..., n_{p-1}).

    The degree is p = len(coeffs) + 1; positive coefficients go to one side
    and negative ones to the other: A_plus = 1 + z^p - sum [n_q]_+ z^q and
    A_minus = 1 + z^p - sum [-n_q]_+ z^q.  The sequence must be palindromic
    (n_q = n_{p-q}); every size-1 datum arises this way.
    """
    coeffs = [int(n) for n in coeffs]
    p = len(coeffs) + 1
    for q in range(1, p):
        if coeffs[q - 1] != coeffs[p - q - 1]:
            raise TDatumError(
                "palindromic",
                (q,),
                f"coefficients must satisfy n_{q} = n_{p - q}; "
                f"got {coeffs[q - 1]} and {coeffs[p - q - 1]}",
            )
    plus = {0: 1, p: 1}
    minus = {0: 1, p: 1}
    for q, n in enumerate(coeffs, start=1):
        if n > 0:
            plus[q] = plus.get(q, 0) - n
        elif n < 0:
            minus[q] = minus.get(q, 0) + n
    Aplus = PolyMatrix([[LaurentPoly(plus)]])
    Aminus = PolyMatrix([[LaurentPoly(minus)]])
    return validate(Aplus, Aminus, [d])


def size1_coefficients(alpha):
    """Inverse of :func:`build_size1` for a size-1 datum."""
    if alpha.r != 1:
        raise ValueError("size-1 data only")
    p = alpha.p[0]
    return tuple(
        alpha.Nplus[0, 0].coeff(q) - alpha.Nminus[0, 0].coeff(q)
        for q in range(1, p)
    )


def cartan_matrix(name):
    """Finite-type generalized Cartan matrix by name: A3, B2, C4, D4, F4,
    G2, or the tadpole variant T3 (last diagonal entry 1)."""
    family, rank = name[0].upper(), int(name[1:])
    if rank < 1:
        raise ValueError(f"rank must be positive in {name!r}")
    C = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def chain(n):
        for i in range(n - 1):
            C[i][i + 1] = -1
            C[i + 1][i] = -1

    if family == "A":
        chain(rank)
    elif family == "B":
        if rank < 2:
            raise ValueError("B requires rank >= 2")
        chain(rank)
        C[rank - 1][rank - 2] = -2
    elif family == "C":
        if rank < 2:
            raise ValueError("C requires rank >= 2")
        chain(rank)
        C[rank - 2][rank - 1] = -2
    elif family == "D":
        if rank < 3:
            raise ValueError("D requires rank >= 3")
        chain(rank - 1)
        C[rank - 3][rank - 1] = -1
        C[rank - 1][rank - 3] = -1
    elif family == "F":
        if rank != 4:
            raise ValueError("F4 only")
        chain(4)
        C[2][1] = -2
    elif family == "G":
        if rank != 2:
            raise ValueError("G2 only")
        C[0][1] = -1
        C[1][0] = -3
    elif family == "T":
        chain(rank)
        C[rank - 1][rank - 1] = 1
    else:
        raise ValueError(f"unknown family {family!r}")
    return C


def left_symmetrizer(C):
    """Smallest positive integers c with diag(c) C symmetric."""
    n = len(C)
    values = [None] * n
    for start in range(n):
        if values[start] is not None:
            continue
        values[start] = Fraction(1)
        stack = [start]
        while stack:
            a = stack.pop()
            for b in range(n):
                if a == b or (C[a][b] == 0 and C[b][a] == 0):
                    continue
                if (C[a][b] == 0) != (C[b][a] == 0):
                    raise ValueError("matrix is not symmetrizable (support)")
                ratio = Fraction(C[a][b], C[b][a])
                if values[b] is None:
                    values[b] = values[a] * ratio
                    stack.append(b)
                elif values[b] != values[a] * ratio:
                    raise ValueError("matrix is not symmetrizable (cycle)")
    denom = lcm(*(v.denominator for v in values))
    ints = [int(v * denom) for v in values]
    div = gcd(*ints)
    c = [v // div for v in ints]
    for a in range(n):
        for b in range(n):
            if c[a] * C[a][b] != c[b] * C[b][a]:
                raise ValueError("matrix is not symmetrizable")
    return c


def right_symmetrizer(C):
    """Smallest positive integers d with C diag(d) symmetric."""
    return left_symmetrizer([list(col) for col in zip(*C)])


def _common_right_symmetrizer(A, B):
    n = len(A)
    merged = [
        [A[i][j] if A[i][j] else B[i][j] for j in range(n)] for i in range(n)
    ]
    d = right_symmetrizer(merged)
    for C in (A, B):
        for i in range(n):
            for j in range(n):
                if C[i][j] * d[j] != C[j][i] * d[i]:
                    raise ValueError("no common right symmetrizer")
    return d


def build_cartan_pair(A, Aprime, D=None):
    """Datum from two commuting weak generalized Cartan matrices.

    With N = 2I - A and N' = 2I - A', the datum has N0 = (1 + z^2) I,
    N_plus = z N, N_minus = z N'.  Requires entrywise nonnegative N, N'
    (the weak condition), a common right symmetrizer D, commutation
    A A' = A' A, and disjoint supports N_ab N'_ab = 0.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(Aprime) != n or any(
        len(row) != n for row in Aprime
    ):
        raise TDatumError("shape", (), "matrices must be square of equal size")
    N = [[2 * (i == j) - A[i][j] for j in range(n)] for i in range(n)]
    Np = [[2 * (i == j) - Aprime[i][j] for j in range(n)] for i in range(n)]
    for name, mat in (("first", N), ("second", Np)):
        for i in range(n):
            for j in range(n):
                if mat[i][j] < 0:
                    raise TDatumError(
                        "weak-cartan",
                        (i, j),
                        f"{name} matrix: 2I - C must be nonnegative, entry "
                        f"({i}, {j}) fails",
                    )
    for i in range(n):
        for j in range(n):
            lhs = sum(A[i][k] * Aprime[k][j] for k in range(n))
            rhs = sum(Aprime[i][k] * A[k][j] for k in range(n))
            if lhs != rhs:
                raise TDatumError(
                    "commutation",
                    (i, j),
                    f"A A' and A' A differ at ({i}, {j}): {lhs} vs {rhs}",
                )
            if N[i][j] and Np[i][j]:
                raise TDatumError(
                    "support-overlap",
                    (i, j),
                    f"both off-diagonal patterns are nonzero at ({i}, {j})",
                )
    if D is None:
        D = _common_right_symmetrizer(A, Aprime)

    one_z2 = LaurentPoly({0: 1, 2: 1})
    entries_p = [
        [
            (one_z2 if i == j else LaurentPoly.zero())
            - LaurentPoly.monomial(N[i][j], 1)
            for j in range(n)
        ]
        for i in range(n)
    ]
    entries_m = [
        [
            (one_z2 if i == j else LaurentPoly.zero())
            - LaurentPoly.monomial(Np[i][j], 1)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return validate(PolyMatrix(entries_p), PolyMatrix(entries_m), D)


def two_identity(n):
    """The matrix 2I, the trivial partner for a Cartan pair."""
    return [[2 * (i == j) for j in range(n)] for i in range(n)]


def build_tadpole(r):
    """The tadpole pair: 2I against the type-T Cartan variant."""
    return build_cartan_pair(two_identity(r), cartan_matrix(f"T{r}"), [1] * r)


def tensor_matrices(A, Aprime):
    """Kronecker lift of two matrices to a commuting pair on the product
    index set, ordered with the first factor major."""
    n, m = len(A), len(Aprime)
    big_A = [[0] * (n * m) for _ in range(n * m)]
    big_B = [[0] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for ip in range(m):
            row = i * m + ip
            for j in range(n):
                big_A[row][j * m + ip] = A[i][j]
            for jp in range(m):
                big_B[row][i * m + jp] = Aprime[ip][jp]
    return big_A, big_B


def build_tensor(A, Aprime, D1=None, D2=None):
    """Datum from the commuting pair (A x I, I x A')."""
    if D1 is None:
        D1 = right_symmetrizer(A)
    if D2 is None:
        D2 = right_symmetrizer(Aprime)
    big_A, big_B = tensor_matrices(A, Aprime)
    D = [d1 * d2 for d1 in D1 for d2 in D2]
    return build_cartan_pair(big_A, big_B, D)


def build_affinization(C, symmetrizer=None, level=2):
    """Level-restricted datum from a symmetrizable generalized Cartan matrix.

    With left symmetrizer entries c_a, set t_a = lcm(c) / c_a.  The index
    set is H = {(a, m) : 1 <= m <= t_a * level - 1}.  Diagonal blocks carry
    1 + z^{2 c_a} with nearest-neighbour z^{c_a} couplings; off-diagonal
    blocks interpolate through the symmetrized lattice.  When some pair
    c_a, c_b has lcm(c_a, c_b) >= c_a + c_b the support leaves the (N3)
    window and validation reports exactly that.
    """
    n = len(C)
    if level < 2:
        raise ValueError(f"level must be at least 2, got {level}")
    c = list(symmetrizer) if symmetrizer is not None else left_symmetrizer(C)
    for a in range(n):
        for b in range(n):
            if c[a] * C[a][b] != c[b] * C[b][a]:
                raise ValueError("symmetrizer does not left-symmetrize C")
    big = lcm(*c)
    t = [big // ca for ca in c]
    H = [(a, m) for a in range(n) for m in range(1, t[a] * level)]
    pos = {h: i for i, h in enumerate(H)}
    size = len(H)

    entries_p = [[LaurentPoly.zero()] * size for _ in range(size)]
    entries_m = [[LaurentPoly.zero()] * size for _ in range(size)]
    for (a, m) in H:
        i = pos[(a, m)]
        entries_p[i][i] = LaurentPoly({0: 1, 2 * c[a]: 1})
        entries_m[i][i] = LaurentPoly({0: 1, 2 * c[a]: 1})
        for k in (m - 1, m + 1):
            if (a, k) in pos:
                entries_p[i][pos[(a, k)]] = LaurentPoly.monomial(-1, c[a])
        for b in range(n):
            if b == a or C[a][b] >= 0:
                continue
            t_ab = lcm(c[a], c[b]) // c[a]
            t_ba = lcm(c[a], c[b]) // c[b]
            weight = (-C[a][b] * c[a]) // lcm(c[a], c[b])
            if (m * t_ba) % t_ab:
                continue
            center = (m * t_ba) // t_ab
            for k in range(1, t[b] * level):
                if (b, k) not in pos:
                    continue
                spread = t_ba - abs(center - k)
                if spread <= 0:
                    continue
                block = z_integer(spread, c[b]).shift(c[a]).scale(-weight)
                entries_m[i][pos[(b, k)]] = entries_m[i][pos[(b, k)]] + block

    datum = validate(
        PolyMatrix(entries_p), PolyMatrix(entries_m), [1] * size
    )
    return datum, H


# ---------------------------------------------------------------------------
# JSON round trip


def to_json_dict(alpha):
    def matrix_coeffs(mat):
        out = []
        for a in range(mat.r):
            row = []
            for b in range(mat.r):
                poly = mat[a, b]
                if poly.is_zero:
                    row.append([])
                    continue
                if poly.min_exp() < 0:
                    raise ValueError("serialization expects polynomial entries")
                row.append(poly.coeff_list())
            out.append(row)
        return out

    return {
        "r": alpha.r,
        "D": list(alpha.D),
        "A_plus": matrix_coeffs(alpha.Aplus),
        "A_minus": matrix_coeffs(alpha.Aminus),
    }


def from_json_dict(data):
    try:
        r = int(data["r"])
        D = [int(d) for d in data["D"]]
        raw_p = data["A_plus"]
        raw_m = data["A_minus"]
    except (KeyError, TypeError) as exc:
        raise TDatumError(
            "shape", (), f"missing or malformed field: {exc}"
        ) from exc

    def matrix(raw, name):
        if len(raw) != r or any(len(row) != r for row in raw):
            raise TDatumError("shape", (), f"{name} must be {r} x {r}")
        return PolyMatrix(
            [
                [LaurentPoly.from_coeffs([int(x) for x in cell]) for cell in row]
                for row in raw
            ]
        )

    return validate(matrix(raw_p, "A_plus"), matrix(raw_m, "A_minus"), D)


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TDatumError(
            "json",
            (exc.lineno, exc.colno),
            f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
        ) from exc
    return from_json_dict(data)


def dump_json(alpha, path=None):
    text = json.dumps(to_json_dict(alpha), indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
