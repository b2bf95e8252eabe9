"""Rogers dilogarithm, the fixed-point system, and the rational invariant.

The weight attached to a Cartan-like finite-type datum is (6/pi^2) times
the D-weighted sum of Rogers dilogarithm values at the unique solution of
f_a = prod_b (1 - f_b)^{kappa_ab} in the open unit cube, where kappa runs
over the entries of the conjugated form K_dual.  Positive definiteness of
K_dual against the dual symmetrizer guarantees existence and uniqueness;
the value is rational and is recognized by continued fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction

from scipy.special import spence


def dilog(x):
    """Li2 on (-inf, 1]."""
    return float(spence(1.0 - x))


def rogers_L(x):
    """Rogers dilogarithm on [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"rogers_L expects x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return math.pi**2 / 6
    return dilog(x) + 0.5 * math.log(x) * math.log1p(-x)


class NahmSolution:
    """A verified fixed point: the vector f, its residual, and the number
    of iterations spent."""

    __slots__ = ("f", "residual", "iterations")

    def __init__(self, f, residual, iterations):
        self.f = tuple(f)
        self.residual = residual
        self.iterations = iterations

    def __repr__(self):
        return (
            f"NahmSolution(f={self.f}, residual={self.residual:.3e}, "
            f"iterations={self.iterations})"
        )


def _as_float_rows(Kdual):
    if hasattr(Kdual, "rows"):
        return [[float(x) for x in row] for row in Kdual.rows()]
    return [[float(x) for x in row] for row in Kdual]


def _residual(kappa, f):
    worst = 0.0
    r = len(f)
    for a in range(r):
        prod = 1.0
        for b in range(r):
            prod *= (1.0 - f[b]) ** kappa[a][b]
        worst = max(worst, abs(f[a] - prod))
    return worst


def _bisect_coordinate(kappa, f, a):
    """Solve v = (1 - v)^{kappa_aa} * C_a with the other coordinates frozen;
    the left side minus the right side is strictly increasing."""
    c = 1.0
    for b in range(len(f)):
        if b != a:
            c *= (1.0 - f[b]) ** kappa[a][b]
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid - (1.0 - mid) ** kappa[a][a] * c > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-17:
            break
    return 0.5 * (lo + hi)


def _log_gap(kappa, f):
    """log f_a - sum_b kappa_ab log(1 - f_b); zero exactly at a fixed point."""
    r = len(f)
    return [
        math.log(f[a])
        - sum(kappa[a][b] * math.log1p(-f[b]) for b in range(r))
        for a in range(r)
    ]


def _solve_linear(rows, rhs):
    """Dense Gaussian elimination with partial pivoting."""
    n = len(rhs)
    a = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda k: abs(a[k][col]))
        if abs(a[pivot][col]) < 1e-300:
            raise ArithmeticError("singular correction system")
        a[col], a[pivot] = a[pivot], a[col]
        for k in range(col + 1, n):
            m = a[k][col] / a[col][col]
            if m:
                for j in range(col, n + 1):
                    a[k][j] -= m * a[col][j]
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    return x


def nahm_solve(Kdual, tolerance=1e-13, max_iterations=400):
    """The unique solution of the fixed-point system in (0,1)^r.

    A short damped warmup (damping 1/2 from the cube center, with one
    coordinatewise-bisection sweep) is followed by Newton steps on the
    logarithmic form of the system, halving the step until the gap
    shrinks; the warmup alone suffices when every exponent is
    nonnegative, while negative exponents need the Newton phase.  Raises
    ArithmeticError with the residual trace when the tolerance is not
    reached."""
    kappa = _as_float_rows(Kdual)
    r = len(kappa)
    for a in range(r):
        if kappa[a][a] <= 0:
            raise ValueError(
                f"diagonal entry {kappa[a][a]} at {a} is not positive; "
                "the fixed-point system needs a positive definite form"
            )
    f = [0.5] * r
    theta = 0.5
    trace = []
    eps = 1e-16
    for it in range(1, max_iterations + 1):
        if it > 8:
            gap = _log_gap(kappa, f)
            jacobian = [
                [
                    (1.0 / f[a] if a == b else 0.0) + kappa[a][b] / (1.0 - f[b])
                    for b in range(r)
                ]
                for a in range(r)
            ]
            delta = _solve_linear(jacobian, [-g for g in gap])
            worst = max(abs(g) for g in gap)
            step = 1.0
            while step > 1e-9:
                candidate = [
                    min(max(f[a] + step * delta[a], eps), 1.0 - eps)
                    for a in range(r)
                ]
                if max(abs(g) for g in _log_gap(kappa, candidate)) < worst:
                    f = candidate
                    break
                step *= 0.5
        elif it % 5:
            new = []
            for a in range(r):
                target = 1.0
                for b in range(r):
                    target *= (1.0 - f[b]) ** kappa[a][b]
                value = (1.0 - theta) * f[a] + theta * target
                new.append(min(max(value, eps), 1.0 - eps))
            f = new
        else:
            for a in range(r):
                f[a] = _bisect_coordinate(kappa, f, a)
        res = _residual(kappa, f)
        trace.append(res)
        if res <= tolerance:
            return NahmSolution(f, res, it)
    raise ArithmeticError(
        f"fixed point not reached in {max_iterations} iterations; "
        f"residual trace tail: {trace[-5:]}"
    )


class DilogInvariant:
    """Float value of the invariant plus its recognized rational (or None)."""

    __slots__ = ("c_float", "c_rational")

    def __init__(self, c_float, c_rational):
        self.c_float = c_float
        self.c_rational = c_rational

    def __repr__(self):
        tail = self.c_rational if self.c_rational is not None else "unrecognized"
        return f"DilogInvariant({self.c_float!r}, {tail})"


def recognize_rational(x, max_denominator=10**4, tolerance=1e-9):
    candidate = Fraction(x).limit_denominator(max_denominator)
    if abs(float(candidate) - x) < tolerance:
        return candidate
    return None


def c_alpha(alpha, solution=None, tolerance=1e-13):
    """The weighted dilogarithm invariant of a datum.

    When no solution is supplied the fixed-point system of the conjugated
    form is solved first."""
    from .positivity import quadratic_form

    if solution is None:
        solution = nahm_solve(quadratic_form(alpha).K_dual, tolerance)
    value = 6.0 / math.pi**2 * sum(
        d * rogers_L(fa) for d, fa in zip(alpha.D, solution.f)
    )
    return DilogInvariant(value, recognize_rational(value))


def nahm_functional(Kdual, D_dual, x):
    """The convex functional whose critical point maps to the fixed point:
    (1/2) x^T (K_dual diag(D_dual)) x plus the dilogarithm barrier terms.
    Exposed so tests can difference it."""
    kappa = _as_float_rows(Kdual)
    r = len(x)
    dd = [float(d) for d in D_dual]
    quad = 0.0
    for a in range(r):
        for b in range(r):
            quad += 0.5 * x[a] * kappa[a][b] * dd[b] * x[b]
    tail = sum(
        (1.0 / dd[a]) * dilog(math.exp(-dd[a] * x[a])) for a in range(r)
    )
    return quad + tail


def functional_point(solution, D_dual):
    """The change of variables sending a fixed point into the functional's
    domain: x_a = -log(1 - f_a) / d_dual_a."""
    return tuple(
        -math.log1p(-fa) / float(d) for fa, d in zip(solution.f, D_dual)
    )
