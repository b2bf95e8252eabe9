"""Passage between mutation loops and T-data, in both directions.

A complete mutation loop induces a T-datum on its flat mutation-point
labels: the coefficient triple read off the exchange matrices at each
mutation point (column form), its row-form companion obtained by looking
backwards along the schedule, the diagonal of vertex weights, and a
residue pattern recording when each label mutates.  Conversely a T-datum
with a consistent residue pattern synthesizes a mutation loop on the
points of its initial window.  The two directions invert each other up to
relabeling; the canonical relabelings live here as well.
"""

from __future__ import annotations

from .cluster import (
    ExchangeMatrix,
    LoopError,
    MutationLoop,
    analyze_loop,
)
from .laurent import LaurentPoly, PolyMatrix
from .tdatum import ConsistentSubset, dual_coeff, validate, validate_consistent


def _poly_matrix(r, cells):
    """Assemble an r x r PolyMatrix from {(row, col): {exp: coeff}}."""
    entries = []
    for a in range(r):
        row = []
        for b in range(r):
            terms = cells.get((a, b), {})
            row.append(LaurentPoly({e: c for e, c in terms.items() if c}))
        entries.append(row)
    return PolyMatrix(entries)


def _shift_diagonal(analysis):
    """The (N1)-shaped matrix shared by both extracted triples."""
    cells = {}
    for a in range(analysis.r):
        cells.setdefault((a, a), {})[0] = 1
        b = analysis.sigma_inv(a)
        cells.setdefault((a, b), {})
        cells[(a, b)][analysis.p[a]] = cells[(a, b)].get(analysis.p[a], 0) + 1
    return _poly_matrix(analysis.r, cells)


def _stage(analysis, cache, u):
    """B(u) for any u, with the one-period replay computed only once."""
    q, v = divmod(u, analysis.t)
    key = (q, v)
    if key not in cache:
        if "base" not in cache:
            cache["base"] = analysis.loop.stage_matrices()
        base = cache["base"][v]
        if q == 0:
            cache[key] = base
        else:
            mapping = {
                lab: analysis.loop.nu_power(lab, q) for lab in base.labels
            }
            cache[key] = base.relabel(mapping)
    return cache[key]


def t_triple(analysis):
    """Column-form coefficient triple at the mutation points.

    For each flat label a with representative point (k, u), every other
    vertex j contributes the positive/negative part of -B[j][k](u) to the
    column of a, at the row of j's next mutation point and the exponent
    counting the steps until it."""
    if not analysis.complete:
        raise LoopError("loop is not complete; no datum can be extracted")
    cache = {}
    plus, minus = {}, {}
    for a, (k, u) in enumerate(analysis.flat):
        stage = _stage(analysis, cache, u)
        for j in analysis.loop.matrix.labels:
            bjk = stage.entry(j, k)
            if bjk == 0:
                continue
            lam = analysis.lam(j, u)
            b = analysis.pi(j, u + lam)
            if bjk < 0:
                cell = plus.setdefault((b, a), {})
                cell[lam] = cell.get(lam, 0) - bjk
            else:
                cell = minus.setdefault((b, a), {})
                cell[lam] = cell.get(lam, 0) + bjk
    r = analysis.r
    return _shift_diagonal(analysis), _poly_matrix(r, plus), _poly_matrix(r, minus)


def y_triple(analysis):
    """Row-form coefficient triple at the mutation points.

    For each flat label a with representative (k, u), walk back to the
    previous mutation of k; each intermediate block member j at time v
    contributes the positive/negative part of B[j][k](v) to row a at the
    column of j's flat label and exponent u - v."""
    if not analysis.complete:
        raise LoopError("loop is not complete; no datum can be extracted")
    cache = {}
    plus, minus = {}, {}
    for a, (k, u) in enumerate(analysis.flat):
        u_prev = None
        for back in range(1, analysis.horizon + 2):
            if k in analysis.block_at(u - back):
                u_prev = u - back
                break
        if u_prev is None:
            raise LoopError(f"index {k} has no previous mutation; loop incomplete")
        for v in range(u_prev + 1, u):
            stage = _stage(analysis, cache, v)
            for j in analysis.block_at(v):
                bjk = stage.entry(j, k)
                if bjk == 0:
                    continue
                b = analysis.pi(j, v)
                exp = u - v
                if bjk > 0:
                    cell = plus.setdefault((a, b), {})
                    cell[exp] = cell.get(exp, 0) + bjk
                else:
                    cell = minus.setdefault((a, b), {})
                    cell[exp] = cell.get(exp, 0) - bjk
    r = analysis.r
    return _shift_diagonal(analysis), _poly_matrix(r, plus), _poly_matrix(r, minus)


def loop_to_datum(loop):
    """Extract the T-datum and residue pattern of a complete loop."""
    analysis = loop if not isinstance(loop, MutationLoop) else analyze_loop(loop)
    n0, nplus, nminus = t_triple(analysis)
    alpha = validate(
        n0 - nplus,
        n0 - nminus,
        [analysis.weights[a] for a in range(analysis.r)],
    )
    subset = ConsistentSubset(
        analysis.t, [analysis.residues[a] for a in range(analysis.r)]
    )
    validate_consistent(alpha, subset)
    return alpha, subset


def canonical_vertex_map(analysis):
    """Name each loop vertex by (flat label of its first mutation at time
    >= 0, that time); this is the vertex naming used by the synthesized
    loop of the extracted datum."""
    out = {}
    for i in analysis.loop.matrix.labels:
        lam = analysis.lam(i, 0)
        if lam is None:
            raise LoopError(f"index {i} is never mutated; loop incomplete")
        out[i] = (analysis.pi(i, lam), lam)
    return out


# ---------------------------------------------------------------------------
# Synthesis: datum + residue pattern -> mutation loop


def window_labels(alpha, subset, base=0):
    """The pattern points in the window of length p_a above each base row."""
    return [
        (a, base + p)
        for a in range(alpha.r)
        for p in range(alpha.p[a])
        if subset.contains(a, base + p)
    ]


def window_entry(alpha, x, y, base=0):
    """Exchange-matrix entry between window points x = (a, base + p) and
    y = (b, base + q)."""
    a, up = x
    b, uq = y
    p, q = up - base, uq - base
    np_, nm = alpha.Nplus, alpha.Nminus
    value = (
        -np_[a, b].coeff(p - q)
        + nm[a, b].coeff(p - q)
        + dual_coeff(alpha, "+", b, a, q - p)
        - dual_coeff(alpha, "-", b, a, q - p)
    )
    for c in range(alpha.r):
        for v in range(min(p, q) + 1):
            value += np_[a, c].coeff(p - v) * dual_coeff(alpha, "-", b, c, q - v)
            value -= nm[a, c].coeff(p - v) * dual_coeff(alpha, "+", b, c, q - v)
    return value


def window_matrix(alpha, subset, base=0):
    """The full exchange matrix on the window above ``base``; weights are
    inherited from D row-wise.  Skew-symmetrizability is checked."""
    labels = window_labels(alpha, subset, base)
    entries = {}
    for x in labels:
        for y in labels:
            value = window_entry(alpha, x, y, base)
            if value:
                entries[(x, y)] = value
    weights = {(a, u): alpha.D[a] for (a, u) in labels}
    return ExchangeMatrix(labels, entries, weights)


class BuiltLoop:
    """A synthesized loop plus the bookkeeping linking it to its datum.

    ``row_vertex[a]`` is the window point whose mutation at time
    ``subset.residues[a]`` realizes row a; ``vertex_at(a, u)`` extends this
    to any time in the pattern by periodicity."""

    __slots__ = ("loop", "alpha", "subset", "row_vertex")

    def __init__(self, loop, alpha, subset, row_vertex):
        self.loop = loop
        self.alpha = alpha
        self.subset = subset
        self.row_vertex = dict(row_vertex)

    def vertex_at(self, a, u):
        if not self.subset.contains(a, u):
            raise LoopError(f"({a}, {u}) is not in the pattern")
        q = (u - self.subset.residues[a]) // self.subset.t
        return self.loop.nu_power(self.row_vertex[a], q)


def datum_to_loop(alpha, subset=None):
    """Synthesize the mutation loop of a datum over a residue pattern.

    The vertex set is the initial window; one block per residue class,
    members ordered by row.  The closing relabeling follows each window
    point through one full period."""
    if subset is None:
        subset = ConsistentSubset.full(alpha.r)
    validate_consistent(alpha, subset)
    t = subset.t
    labels = window_labels(alpha, subset, 0)
    if not labels:
        raise LoopError("empty window; nothing to synthesize")
    matrix = window_matrix(alpha, subset, 0)
    current = {lab: lab for lab in labels}
    blocks = []
    row_vertex = {}
    for u in range(t):
        inverse = {pair: lab for lab, pair in current.items()}
        block = []
        for a in subset.rows_at(u):
            lab = inverse[(a, u)]
            block.append(lab)
            row_vertex[a] = lab
        blocks.append(tuple(block))
        for a in subset.rows_at(u):
            lab = inverse[(a, u)]
            image = alpha.sigma[a]
            current[lab] = (image, u + alpha.p[image])
    inverse = {pair: lab for lab, pair in current.items()}
    nu = {}
    for lab in labels:
        a, p = lab
        nu[lab] = inverse[(a, p + t)]
    loop = MutationLoop(matrix, blocks, nu)
    return BuiltLoop(loop, alpha, subset, row_vertex)


def relabel_loop(loop, mapping):
    """Rename loop vertices by a bijection."""
    matrix = loop.matrix.relabel(mapping)
    blocks = [tuple(mapping[i] for i in block) for block in loop.blocks]
    nu = {mapping[i]: mapping[loop.nu[i]] for i in loop.nu}
    return MutationLoop(matrix, blocks, nu)


def loops_equal(first, second):
    """Equality as schedules: same matrix, same blocks as sets stage by
    stage, same closing relabeling."""
    if first.matrix != second.matrix:
        return False
    if len(first.blocks) != len(second.blocks):
        return False
    for b1, b2 in zip(first.blocks, second.blocks):
        if set(b1) != set(b2):
            return False
    return first.nu == second.nu


# ---------------------------------------------------------------------------
# Duality


class DualityCheck:
    """Report comparing the row-form and column-form triples of a loop."""

    __slots__ = ("ok", "failures")

    def __init__(self, ok, failures):
        self.ok = ok
        self.failures = failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "DualityCheck(ok=True)"
        return f"DualityCheck(ok=False, failures={self.failures!r})"


def verify_duality(loop):
    """Check that the row-form triple of a loop is the weight conjugate of
    its column-form triple.

    Three families of identities are verified entrywise: the diagonal
    parts of the two triples coincide; d_a * c_eps_{ab;p} = n_eps_{ab;p} * d_b
    for both signs (so conjugating by the weights maps one triple to the
    other); and the mixed bilinear identity C+ A-^dag = C- A+^dag, where
    C_eps = n0 - c_eps is built from the row form and A_eps = n0 - n_eps
    from the column form."""
    analysis = analyze_loop(loop) if isinstance(loop, MutationLoop) else loop
    n0, nplus, nminus = t_triple(analysis)
    n0_row, cplus, cminus = y_triple(analysis)
    d = [analysis.weights[a] for a in range(analysis.r)]
    failures = []
    if n0 != n0_row:
        failures.append(("diagonal", None, str(n0), str(n0_row)))
    for tag, n_mat, c_mat in (("plus", nplus, cplus), ("minus", nminus, cminus)):
        for a in range(analysis.r):
            for b in range(analysis.r):
                left = c_mat[a, b].scale(d[a])
                right = n_mat[a, b].scale(d[b])
                if left != right:
                    failures.append((tag, (a, b), str(left), str(right)))
    left = (n0_row - cplus) * (n0 - nminus).dagger()
    right = (n0_row - cminus) * (n0 - nplus).dagger()
    if left != right:
        failures.append(("bilinear", None, str(left), str(right)))
    return DualityCheck(not failures, failures)


build_loop = datum_to_loop
extract_tdatum = loop_to_datum
