"""Exact arithmetic for Laurent polynomials in one variable z and square
matrices of them.

Coefficients are arbitrary-precision integers (or exact rationals where a
computation such as conjugation by a diagonal matrix temporarily leaves the
integers).  Matrices come in two flavours: :class:`PolyMatrix` with Laurent
polynomial entries and :class:`RationalMatrix` with exact rational entries,
the latter obtained by evaluating at z = 1.
"""

from __future__ import annotations

import re
from fractions import Fraction


class SingularMatrixError(ValueError):
    """Raised when a matrix inverse is requested for a singular matrix."""


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """A sparse Laurent polynomial: mapping exponent -> nonzero coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _norm_coeff(v)
                if v:
                    c[int(k)] = v
        self._c = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def z(cls, exp=1):
        return cls({exp: 1})

    @classmethod
    def monomial(cls, coeff, exp):
        return cls({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs, start=0):
        """Build from a list of coefficients, ``coeffs[i]`` at z^(start+i)."""
        return cls({start + i: c for i, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------

    def coeff(self, exp):
        return self._c.get(exp, 0)

    def items(self):
        return sorted(self._c.items())

    def exponents(self):
        return sorted(self._c)

    @property
    def is_zero(self):
        return not self._c

    def min_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._c)

    def max_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._c)

    def coeff_list(self, start=None, stop=None):
        """Dense coefficient list for exponents ``start..stop`` inclusive."""
        if start is None:
            start = min(self.min_exp(), 0) if self._c else 0
        if stop is None:
            stop = self.max_exp() if self._c else 0
        return [self.coeff(k) for k in range(start, stop + 1)]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        c = dict(self._c)
        for k, v in other._c.items():
            w = _norm_coeff(c.get(k, 0) + v)
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        c = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                w = _norm_coeff(c.get(k, 0) + v1 * v2)
                if w:
                    c[k] = w
                else:
                    c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) == 1:
                ((k, v),) = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({n * k: v ** (-n)})
                raise ValueError("negative power of a non-unit")
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exp):
        """Multiply by z^exp."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k + exp: v for k, v in self._c.items()}
        return out

    def invert_z(self):
        """Substitute z -> z^(-1)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-k: v for k, v in self._c.items()}
        return out

    def positive_part(self):
        """Keep the coefficientwise positive part: max(c, 0) per exponent."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k: v for k, v in self._c.items() if v > 0}
        return out

    def scale(self, c):
        c = _norm_coeff(c)
        if not c:
            return LaurentPoly.zero()
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k: _norm_coeff(v * c) for k, v in self._c.items()}
        return out

    def eval_one(self):
        """Sum of all coefficients, i.e. the value at z = 1."""
        return _norm_coeff(sum(self._c.values(), Fraction(0)))

    # -- comparison / text --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_poly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in self.items():
            neg = v < 0
            a = -v if neg else v
            if k == 0:
                body = str(a)
            else:
                zpart = "z" if k == 1 else f"z^{k}"
                body = zpart if a == 1 else f"{a}*{zpart}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


_TERM_RE = re.compile(
    r"""^(?P<sign>[+-]?)\s*
        (?:
          (?P<coeff>\d+(?:/\d+)?)\s*(?:\*\s*(?P<zc>z(?:\^(?P<expc>-?\d+))?))?
          |
          (?P<zl>z(?:\^(?P<expl>-?\d+))?)
        )\s*$""",
    re.VERBOSE,
)


def parse_laurent(text):
    """Parse the canonical text form, e.g. ``1-2*z^2+z^4`` or ``z^-1``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Laurent polynomial text")
    if s == "0":
        return LaurentPoly.zero()
    # split into signed terms
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse Laurent polynomial: {text!r}")
    total = {}
    for t in terms:
        m = _TERM_RE.match(t)
        if not m:
            raise ValueError(f"bad term {t!r} in Laurent polynomial {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coeff") is not None:
            cs = m.group("coeff")
            coeff = Fraction(cs) if "/" in cs else int(cs)
            if m.group("zc"):
                exp = int(m.group("expc")) if m.group("expc") else 1
            else:
                exp = 0
        else:
            coeff = 1
            exp = int(m.group("expl")) if m.group("expl") else 1
        total[exp] = total.get(exp, 0) + sign * coeff
    return LaurentPoly(total)


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


def z_integer(k, c=1):
    """The z-integer [k] at z^c: z^(c(k-1)) + z^(c(k-3)) + ... + z^(-c(k-1)).

    ``k = 0`` returns 0 (empty sum).
    """
    if k < 0:
        raise ValueError("z_integer expects k >= 0")
    return LaurentPoly({c * e: 1 for e in range(-(k - 1), k, 2)}) if k else LaurentPoly.zero()


class PolyMatrix:
    """A square matrix of Laurent polynomials."""

    __slots__ = ("r", "_e")

    def __init__(self, entries):
        rows = [list(row) for row in entries]
        r = len(rows)
        for row in rows:
            if len(row) != r:
                raise ValueError("PolyMatrix must be square")
        self.r = r
        self._e = tuple(tuple(_as_poly(x) for x in row) for row in rows)

    @classmethod
    def identity(cls, r):
        return cls(
            [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(r)] for i in range(r)]
        )

    @classmethod
    def zero(cls, r):
        return cls([[LaurentPoly.zero()] * r for _ in range(r)])

    @classmethod
    def diagonal(cls, polys):
        polys = list(polys)
        r = len(polys)
        return cls(
            [[_as_poly(polys[i]) if i == j else LaurentPoly.zero() for j in range(r)] for i in range(r)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def rows(self):
        return self._e

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.r == other.r and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __add__(self, other):
        self._check(other)
        return PolyMatrix(
            [[self._e[i][j] + other._e[i][j] for j in range(self.r)] for i in range(self.r)]
        )

    def __sub__(self, other):
        self._check(other)
        return PolyMatrix(
            [[self._e[i][j] - other._e[i][j] for j in range(self.r)] for i in range(self.r)]
        )

    def __neg__(self):
        return PolyMatrix([[-x for x in row] for row in self._e])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = _as_poly(other)
            return PolyMatrix([[x * other for x in row] for row in self._e])
        self._check(other)
        r = self.r
        out = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = LaurentPoly.zero()
                for k in range(r):
                    a = self._e[i][k]
                    b = other._e[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = _as_poly(other)
            return PolyMatrix([[other * x for x in row] for row in self._e])
        return NotImplemented

    def _check(self, other):
        if not isinstance(other, PolyMatrix) or other.r != self.r:
            raise ValueError("size mismatch")

    def transpose(self):
        return PolyMatrix([[self._e[j][i] for j in range(self.r)] for i in range(self.r)])

    def invert_z(self):
        return PolyMatrix([[x.invert_z() for x in row] for row in self._e])

    def dagger(self):
        """Transpose combined with z -> z^(-1)."""
        return self.invert_z().transpose()

    def positive_part(self):
        return PolyMatrix([[x.positive_part() for x in row] for row in self._e])

    def scale_rows(self, polys):
        """Multiply row i by polys[i] (Laurent polynomials or scalars)."""
        polys = [_as_poly(p) for p in polys]
        if len(polys) != self.r:
            raise ValueError("size mismatch")
        return PolyMatrix([[polys[i] * x for x in self._e[i]] for i in range(self.r)])

    def scale_cols(self, polys):
        polys = [_as_poly(p) for p in polys]
        if len(polys) != self.r:
            raise ValueError("size mismatch")
        return PolyMatrix(
            [[self._e[i][j] * polys[j] for j in range(self.r)] for i in range(self.r)]
        )

    def eval_one(self):
        return RationalMatrix([[x.eval_one() for x in row] for row in self._e])

    def is_zero(self):
        return all(x.is_zero for row in self._e for x in row)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._e) + "]"

    def __repr__(self):
        return f"PolyMatrix({self})"


def dagger(m):
    """The involution m -> (m at z -> z^(-1)) transposed."""
    return m.dagger()


def eval_at_one(m):
    """Evaluate a PolyMatrix entrywise at z = 1, giving a RationalMatrix."""
    return m.eval_one()


class RationalMatrix:
    """A square matrix of exact rationals."""

    __slots__ = ("r", "_e")

    def __init__(self, entries):
        rows = [list(row) for row in entries]
        r = len(rows)
        for row in rows:
            if len(row) != r:
                raise ValueError("RationalMatrix must be square")
        self.r = r
        self._e = tuple(tuple(Fraction(x) for x in row) for row in rows)

    @classmethod
    def identity(cls, r):
        return cls([[1 if i == j else 0 for j in range(r)] for i in range(r)])

    @classmethod
    def diagonal(cls, diag):
        diag = list(diag)
        r = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(r)] for i in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def rows(self):
        return self._e

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.r == other.r and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __add__(self, other):
        return RationalMatrix(
            [[self._e[i][j] + other._e[i][j] for j in range(self.r)] for i in range(self.r)]
        )

    def __sub__(self, other):
        return RationalMatrix(
            [[self._e[i][j] - other._e[i][j] for j in range(self.r)] for i in range(self.r)]
        )

    def __neg__(self):
        return RationalMatrix([[-x for x in row] for row in self._e])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalMatrix([[x * other for x in row] for row in self._e])
        if isinstance(other, RationalMatrix):
            if other.r != self.r:
                raise ValueError("size mismatch")
            r = self.r
            return RationalMatrix(
                [
                    [sum(self._e[i][k] * other._e[k][j] for k in range(r)) for j in range(r)]
                    for i in range(r)
                ]
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalMatrix([[other * x for x in row] for row in self._e])
        return NotImplemented

    def transpose(self):
        return RationalMatrix([[self._e[j][i] for j in range(self.r)] for i in range(self.r)])

    def apply(self, vec):
        """Matrix-vector product with a length-r sequence."""
        vec = [Fraction(v) for v in vec]
        if len(vec) != self.r:
            raise ValueError("size mismatch")
        return [sum(self._e[i][j] * vec[j] for j in range(self.r)) for i in range(self.r)]

    def is_symmetric(self):
        return all(
            self._e[i][j] == self._e[j][i] for i in range(self.r) for j in range(i + 1, self.r)
        )

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination.

        Denominators are cleared row by row first so the core elimination
        runs on整 integers; the collected scale is divided out at the end.
        """
        r = self.r
        if r == 0:
            return Fraction(1)
        scale = Fraction(1)
        m = []
        for row in self._e:
            den = 1
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
            scale *= den
            m.append([int(x * den) for x in row])
        sign = 1
        prev = 1
        for k in range(r - 1):
            if m[k][k] == 0:
                for i in range(k + 1, r):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, r):
                for j in range(k + 1, r):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[r - 1][r - 1], 1) / scale

    def leading_principal_minors(self):
        """Determinants of the top-left k-by-k blocks, k = 1..r."""
        return [
            RationalMatrix([row[: k + 1] for row in self._e[: k + 1]]).det()
            for k in range(self.r)
        ]

    def inverse(self):
        """Exact inverse; raises SingularMatrixError when singular."""
        r = self.r
        aug = [list(self._e[i]) + [Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        for col in range(r):
            piv = None
            for i in range(col, r):
                if aug[i][col] != 0:
                    piv = i
                    break
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for i in range(r):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return RationalMatrix([row[r:] for row in aug])

    def is_integral(self):
        return all(x.denominator == 1 for row in self._e for x in row)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._e) + "]"

    def __repr__(self):
        return f"RationalMatrix({self})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
