"""Evolution of the coupled recurrences attached to a T-datum.

Three engines live here.  Coefficient (Y) values evolve by replaying the
synthesized mutation loop: each pattern point (a, u) reads off the
coefficient sitting at its loop vertex just before that vertex mutates.
Cluster (T) values evolve through the standalone bilinear relation, driven
by the splitting of the coefficient solution into its two Hensel factors;
forward evolution walks bases upward, backward evolution is the mirrored
involution.  Finally an integer max-plus shadow of the T-relation provides
the tropical solutions used by the around-the-initial-condition identities,
and a period detector combines a numeric prefilter with exact symbolic
confirmation.
"""

from __future__ import annotations

from fractions import Fraction

from .cluster import MLaurent, Seed, mutate_seed_block
from .correspondence import datum_to_loop
from .semifield import TRIVIAL_ONE, TropicalValue, hensel_pair
from .tdatum import ConsistentSubset, dual_coeff


# ---------------------------------------------------------------------------
# Seed builders for a synthesized loop


def _vertex_name(built, prefix, vertex):
    a, p = vertex
    per_row = sum(1 for (b, _) in built.loop.matrix.labels if b == a)
    if per_row == 1:
        return f"{prefix}{a + 1}"
    return f"{prefix}{a + 1}_{p}"


def principal_coefficients(built, prefix="y"):
    """One fresh tropical generator per loop vertex."""
    return {
        vertex: TropicalValue.generator(_vertex_name(built, prefix, vertex))
        for vertex in built.loop.matrix.labels
    }


def trivial_coefficients(built):
    return {vertex: TRIVIAL_ONE for vertex in built.loop.matrix.labels}


def initial_cluster(built, prefix="x"):
    """One fresh cluster variable per loop vertex (equally usable as the
    initial window values of the standalone relation, since the vertex
    labels are the window points)."""
    return {
        vertex: MLaurent.generator(_vertex_name(built, prefix, vertex))
        for vertex in built.loop.matrix.labels
    }


def unit_cluster(built):
    return {vertex: MLaurent.one() for vertex in built.loop.matrix.labels}


class LoopEvolution:
    """Values recorded while replaying a loop: ``y[(a, u)]`` semifield
    coefficients and, when cluster values were tracked, ``x[(a, u)]``."""

    __slots__ = ("built", "y", "x", "seed")

    def __init__(self, built, y, x, seed):
        self.built = built
        self.y = y
        self.x = x
        self.seed = seed


def evolve_Y(built, steps, coeffs=None, cluster=None):
    """Replay the loop for ``steps`` mutation stages, recording the
    coefficient (and optionally cluster) value at each pattern point just
    before its vertex mutates.  Defaults to principal coefficients."""
    loop = built.loop
    if coeffs is None:
        coeffs = principal_coefficients(built)
    seed = Seed(loop.matrix, coeffs, cluster)
    y_out, x_out = {}, {}
    for u in range(steps):
        block = loop.block_at(u)
        for a in built.subset.rows_at(u):
            vertex = built.vertex_at(a, u)
            y_out[(a, u)] = seed.coeffs[vertex]
            if seed.cluster is not None:
                x_out[(a, u)] = seed.cluster[vertex]
        seed = mutate_seed_block(seed, block)
    return LoopEvolution(built, y_out, x_out, seed)


def evolve_datum_Y(alpha, subset=None, steps=None, coeffs=None, cluster=None):
    """Convenience wrapper: synthesize the loop and replay it."""
    built = datum_to_loop(alpha, subset)
    if steps is None:
        steps = 2 * max(alpha.p) * built.loop.t
    return built, evolve_Y(built, steps, coeffs, cluster)


def y_standalone_value(alpha, values, a, u):
    """The coefficient relation solved for Y_a(u): the product side over the
    window divided by the partner value one shift below."""
    acc = None
    for b in range(alpha.r):
        for p in range(1, alpha.p[a]):
            cm = dual_coeff(alpha, "-", a, b, p)
            cp = dual_coeff(alpha, "+", a, b, p)
            if cm:
                yb = values[(b, u - p)]
                factor = yb.one_like().oplus(yb) ** cm
                acc = factor if acc is None else acc * factor
            if cp:
                yb = values[(b, u - p)]
                factor = yb.one_like().oplus(yb.inv()) ** (-cp)
                acc = factor if acc is None else acc * factor
    partner = values[(alpha.sigma_inv(a), u - alpha.p[a])]
    if acc is None:
        return partner.inv()
    return acc * partner.inv()


def seed_from_solution(built, solution):
    """Initial loop coefficients reproducing a given coefficient solution.

    Each vertex (a, p) takes Y_a(p) corrected by the window factors of the
    relations that fire between time 0 and time p."""
    alpha = built.alpha
    out = {}
    for vertex in built.loop.matrix.labels:
        a, p0 = vertex
        val = solution[(a, p0)]
        for b in range(alpha.r):
            for q in range(1, p0 + 1):
                cp = dual_coeff(alpha, "+", a, b, q)
                cm = dual_coeff(alpha, "-", a, b, q)
                if cp:
                    yb = solution[(b, p0 - q)]
                    val = val * (yb.one_like().oplus(yb.inv()) ** cp)
                if cm:
                    yb = solution[(b, p0 - q)]
                    val = val * (yb.one_like().oplus(yb) ** (-cm))
        out[vertex] = val
    return out


# ---------------------------------------------------------------------------
# Standalone cluster evolution


def _hensel_factors(y_values, a, u):
    if y_values is None:
        return MLaurent.one(), MLaurent.one()
    plus, minus = hensel_pair(y_values[(a, u)])
    return MLaurent.from_semifield(plus), MLaurent.from_semifield(minus)


def _relation_numerator(alpha, values, a, u, y_values):
    term_minus = MLaurent.one()
    term_plus = MLaurent.one()
    for b in range(alpha.r):
        for p, n in sorted(alpha.Nminus[b, a].items()):
            term_minus = term_minus * values[(b, u + p)] ** n
        for p, n in sorted(alpha.Nplus[b, a].items()):
            term_plus = term_plus * values[(b, u + p)] ** n
    cplus, cminus = _hensel_factors(y_values, a, u)
    return cplus * term_minus + cminus * term_plus


def evolve_T(alpha, subset, initial, bases, y_values=None):
    """Forward standalone evolution.

    ``initial`` maps the window points (a, p), 0 <= p < p_a, to their
    values; every base u in [0, bases) then produces the value one full
    shift above each active row.  Division is exact by construction.
    Returns the accumulated {(a, u): value} dictionary."""
    values = dict(initial)
    for u in range(bases):
        for a in subset.rows_at(u):
            target_row = alpha.sigma[a]
            target = (target_row, u + alpha.p[target_row])
            numerator = _relation_numerator(alpha, values, a, u, y_values)
            values[target] = numerator.exact_div(values[(a, u)])
    return values


def evolve_T_backward(alpha, subset, initial, bases, y_values=None):
    """Backward standalone evolution: bases -1, -2, ..., -bases, each
    solving the same relation for the bottom value instead."""
    values = dict(initial)
    for u in range(-1, -bases - 1, -1):
        for a in subset.rows_at(u):
            target_row = alpha.sigma[a]
            partner = (target_row, u + alpha.p[target_row])
            numerator = _relation_numerator(alpha, values, a, u, y_values)
            values[(a, u)] = numerator.exact_div(values[partner])
    return values


# ---------------------------------------------------------------------------
# Tropical shadow


class TropicalSolution:
    """Integer solution of the max-plus shadow of the bilinear relation.

    Initial data is ``sign`` at (source, 0) and zero elsewhere on the
    window; values extend forward for ``hi`` bases and backward for ``lo``
    bases on the full pattern."""

    def __init__(self, alpha, source, sign=-1, lo=None, hi=None):
        self.alpha = alpha
        self.source = source
        self.sign = sign
        span = max(alpha.p)
        lo = span + 1 if lo is None else lo
        hi = span + 1 if hi is None else hi
        values = {}
        for a in range(alpha.r):
            for p in range(alpha.p[a]):
                values[(a, p)] = sign if (a, p) == (source, 0) else 0
        for u in range(hi):
            for a in range(alpha.r):
                target_row = alpha.sigma[a]
                target = (target_row, u + alpha.p[target_row])
                values[target] = self._branch_max(values, a, u) - values[(a, u)]
        for u in range(-1, -lo - 1, -1):
            for a in range(alpha.r):
                target_row = alpha.sigma[a]
                partner = (target_row, u + alpha.p[target_row])
                values[(a, u)] = self._branch_max(values, a, u) - values[partner]
        self.values = values

    def _branch_max(self, values, a, u):
        side_minus = 0
        side_plus = 0
        for b in range(self.alpha.r):
            for p, n in self.alpha.Nminus[b, a].items():
                side_minus += n * values[(b, u + p)]
            for p, n in self.alpha.Nplus[b, a].items():
                side_plus += n * values[(b, u + p)]
        return max(side_minus, side_plus)

    def value(self, a, u):
        return self.values[(a, u)]

    def yhat(self, a, u):
        """The column-form signed window sum at (a, u)."""
        out = 0
        for b in range(self.alpha.r):
            for p, n in self.alpha.Nminus[b, a].items():
                out += n * self.values[(b, u + p)]
            for p, n in self.alpha.Nplus[b, a].items():
                out -= n * self.values[(b, u + p)]
        return out


def tropical_T(alpha, c, window=None, tilde=False):
    """Table of the integer system seeded at row ``c``.

    ``window`` is an inclusive (earliest, latest) base range; by default
    one full shift each way.  ``tilde`` flips the seed value at (c, 0)
    from -1 to +1."""
    if window is None:
        lo = hi = None
    else:
        earliest, latest = window
        lo = max(0, -earliest)
        hi = max(0, latest)
    return TropicalSolution(alpha, c, sign=1 if tilde else -1, lo=lo, hi=hi)


# ---------------------------------------------------------------------------
# Period detection


def _primes(count):
    out = []
    n = 2
    while len(out) < count:
        if all(n % p for p in out):
            out.append(n)
        n += 1
    return out


class PeriodReport:
    """Outcome of a period search: either a confirmed least period (always
    a multiple of the pattern length) or a record of the exhausted bound."""

    __slots__ = ("periodic", "omega", "bound")

    def __init__(self, periodic, omega, bound):
        self.periodic = periodic
        self.omega = omega
        self.bound = bound

    def __bool__(self):
        return self.periodic

    def __repr__(self):
        if self.periodic:
            return f"PeriodReport(periodic=True, omega={self.omega})"
        return f"PeriodReport(periodic=False, bound={self.bound})"


def detect_period(alpha, subset=None, bound=None, term_budget=10**6,
                  bit_budget=50_000):
    """Search for the least period of the plain symbolic evolution.

    A period is a multiple of the pattern length after which the whole
    initial window of fresh variables recurs.  A numeric evolution seeded
    with distinct primes filters candidate periods cheaply (aborting once
    values outgrow ``bit_budget`` bits); each candidate is then confirmed
    by exact symbolic evolution, guarded by a cumulative ``term_budget``.
    Only symbolically confirmed periods are ever reported."""
    if subset is None:
        subset = ConsistentSubset.full(alpha.r)
    if bound is None:
        bound = 48 * alpha.r * max(alpha.p)
    omega = _search_period(alpha, subset, bound, term_budget, bit_budget)
    return PeriodReport(omega is not None, omega, bound)


def _search_period(alpha, subset, bound, term_budget, bit_budget):
    t = subset.t
    window = [
        (a, p)
        for a in range(alpha.r)
        for p in range(alpha.p[a])
        if subset.contains(a, p)
    ]
    if not window:
        return None

    primes = _primes(len(window))
    num_init = {pt: Fraction(primes[i]) for i, pt in enumerate(window)}
    num_values = dict(num_init)
    candidates = []
    for u in range(bound):
        overflow = False
        for a in subset.rows_at(u):
            target_row = alpha.sigma[a]
            target = (target_row, u + alpha.p[target_row])
            acc_minus = Fraction(1)
            acc_plus = Fraction(1)
            for b in range(alpha.r):
                for p, n in alpha.Nminus[b, a].items():
                    acc_minus *= num_values[(b, u + p)] ** n
                for p, n in alpha.Nplus[b, a].items():
                    acc_plus *= num_values[(b, u + p)] ** n
            value = (acc_minus + acc_plus) / num_values[(a, u)]
            num_values[target] = value
            size = value.numerator.bit_length() + value.denominator.bit_length()
            if size > bit_budget:
                overflow = True
        if overflow:
            break
        omega = u + 1
        if omega % t == 0 and all(
            num_values.get((a, omega + p)) == num_init[(a, p)]
            for (a, p) in window
        ):
            candidates.append(omega)

    if not candidates:
        return None

    sym_init = {
        pt: MLaurent.generator(f"x{pt[0] + 1}_{pt[1]}") for pt in window
    }
    sym_values = dict(sym_init)
    sym_base = 0
    produced = 0
    for omega in candidates:
        while sym_base < omega:
            u = sym_base
            for a in subset.rows_at(u):
                target_row = alpha.sigma[a]
                target = (target_row, u + alpha.p[target_row])
                numerator = _relation_numerator(alpha, sym_values, a, u, None)
                value = numerator.exact_div(sym_values[(a, u)])
                sym_values[target] = value
                produced += value.term_count
                if produced > term_budget:
                    return None
            sym_base += 1
        if all(
            sym_values.get((a, omega + p)) == sym_init[(a, p)]
            for (a, p) in window
        ):
            return omega
    return None
