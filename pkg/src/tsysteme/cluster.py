"""Exchange matrices, seeds, and mutation loops.

Everything here is exact: matrix mutation over the integers, coefficient
mutation in a semifield, and cluster-variable mutation in a multivariate
Laurent ring whose divisions are verified term by term.
"""

from __future__ import annotations

from .semifield import SemifieldValue, TrivialValue, TropicalValue, hensel_pair


class ExactDivisionError(ArithmeticError):
    """A quotient that should have been exact failed to divide."""


class LoopError(ValueError):
    """A mutation loop candidate violates one of its defining conditions."""


def _merge_monomials(m1, m2):
    """Multiply two monomials given as sorted (name, exponent) tuples."""
    out = dict(m1)
    for g, e in m2:
        s = out.get(g, 0) + e
        if s:
            out[g] = s
        else:
            del out[g]
    return tuple(sorted(out.items()))


class MLaurent:
    """Integer-coefficient Laurent polynomial in named variables.

    Terms are stored as a dict mapping monomials to nonzero integer
    coefficients, where a monomial is a sorted tuple of (name, exponent)
    pairs with nonzero exponents.  The empty tuple is the constant
    monomial.  Instances are immutable by convention.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    t[mono] = coeff
        self._t = t

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, n):
        return cls({(): int(n)})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def generator(cls, name, power=1):
        if power == 0:
            return cls.one()
        return cls({((name, power),): 1})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        """Build a single-term element from a name -> exponent mapping."""
        mono = tuple(sorted((g, e) for g, e in exponents.items() if e))
        return cls({mono: coeff})

    @classmethod
    def from_semifield(cls, value):
        """Inject a semifield element: tropical monomials map to monomials."""
        if isinstance(value, TrivialValue):
            return cls.one()
        if isinstance(value, TropicalValue):
            return cls.monomial(dict(value.element.exponents()))
        raise TypeError(f"cannot inject {type(value).__name__} into a Laurent ring")

    def terms(self):
        return self._t.items()

    @property
    def term_count(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def is_one(self):
        return self._t == {(): 1}

    def is_monomial(self):
        return len(self._t) == 1

    def is_constant(self):
        return not self._t or set(self._t) == {()}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._t.get((), 0)

    def variables(self):
        out = set()
        for mono in self._t:
            for g, _ in mono:
                out.add(g)
        return out

    def has_positive_coefficients(self):
        return all(c > 0 for c in self._t.values())

    def __add__(self, other):
        if isinstance(other, int):
            other = MLaurent.constant(other)
        out = dict(self._t)
        for mono, coeff in other._t.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
        res = MLaurent.__new__(MLaurent)
        res._t = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MLaurent.__new__(MLaurent)
        res._t = {m: -c for m, c in self._t.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = MLaurent.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MLaurent.zero()
            res = MLaurent.__new__(MLaurent)
            res._t = {m: c * other for m, c in self._t.items()}
            return res
        out = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                mono = _merge_monomials(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        res = MLaurent.__new__(MLaurent)
        res._t = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ExactDivisionError(
                    "negative powers are only defined for monomials"
                )
            ((mono, coeff),) = self._t.items()
            if coeff not in (1, -1):
                raise ExactDivisionError(
                    f"monomial coefficient {coeff} is not invertible over the integers"
                )
            inv = tuple((g, -e) for g, e in mono)
            return MLaurent({inv: coeff}) ** (-n)
        result = MLaurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def exact_div(self, divisor):
        """Divide exactly by ``divisor``, or raise :class:`ExactDivisionError`."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return MLaurent.zero()
        if divisor.is_monomial():
            ((mono, coeff),) = divisor._t.items()
            inv = tuple((g, -e) for g, e in mono)
            out = {}
            for m, c in self._t.items():
                q, rem = divmod(c, coeff)
                if rem:
                    raise ExactDivisionError(
                        f"coefficient {c} not divisible by {coeff}"
                    )
                out[_merge_monomials(m, inv)] = q
            return MLaurent(out)

        gens = sorted(self.variables() | divisor.variables())
        index = {g: i for i, g in enumerate(gens)}
        n = len(gens)

        def vectorize(poly):
            vecs = {}
            for mono, coeff in poly._t.items():
                v = [0] * n
                for g, e in mono:
                    v[index[g]] = e
                vecs[tuple(v)] = coeff
            return vecs

        def floor_shift(vecs):
            mins = [min(v[i] for v in vecs) for i in range(n)]
            shifted = {
                tuple(x - m for x, m in zip(v, mins)): c for v, c in vecs.items()
            }
            return mins, shifted

        dmin, dividend = floor_shift(vectorize(self))
        vmin, divp = floor_shift(vectorize(divisor))
        lead_v = max(divp)
        lead_c = divp[lead_v]

        quotient = {}
        rem = dict(dividend)
        while rem:
            rv = max(rem)
            qv = tuple(a - b for a, b in zip(rv, lead_v))
            if any(x < 0 for x in qv):
                raise ExactDivisionError("leading monomial does not divide remainder")
            qc, leftover = divmod(rem[rv], lead_c)
            if leftover:
                raise ExactDivisionError(
                    f"leading coefficient {rem[rv]} not divisible by {lead_c}"
                )
            quotient[qv] = qc
            for dv, dc in divp.items():
                nv = tuple(a + b for a, b in zip(qv, dv))
                s = rem.get(nv, 0) - qc * dc
                if s:
                    rem[nv] = s
                else:
                    rem.pop(nv, None)

        shift = [a - b for a, b in zip(dmin, vmin)]
        out = {}
        for v, c in quotient.items():
            mono = tuple(
                (gens[i], v[i] + shift[i]) for i in range(n) if v[i] + shift[i]
            )
            out[mono] = c
        return MLaurent(out)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == MLaurent.constant(other)._t
        if not isinstance(other, MLaurent):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for mono, coeff in sorted(self._t.items()):
            factors = ["*".join(_fmt_power(g, e) for g, e in mono)] if mono else []
            if coeff == 1 and factors:
                body = factors[0]
            elif coeff == -1 and factors:
                body = "-" + factors[0]
            else:
                body = str(coeff) + ("*" + factors[0] if factors else "")
            parts.append(body)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"MLaurent({self})"


def _fmt_power(name, exp):
    return name if exp == 1 else f"{name}^{exp}"


class ExchangeMatrix:
    """Skew-symmetrizable integer matrix with labeled rows and columns.

    ``weights[i]`` is the symmetrizer entry d_i; skew-symmetrizability means
    B[i][j] * d_j == -B[j][i] * d_i for all pairs.
    """

    __slots__ = ("labels", "_index", "_b", "weights")

    def __init__(self, labels, entries, weights=None, check=True):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise LoopError("duplicate labels in exchange matrix")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        b = {}
        for (i, j), value in entries.items():
            if value:
                if i not in self._index or j not in self._index:
                    raise LoopError(f"entry ({i}, {j}) refers to an unknown label")
                b[(i, j)] = int(value)
        self._b = b
        if weights is None:
            weights = {lab: 1 for lab in self.labels}
        self.weights = {lab: int(weights[lab]) for lab in self.labels}
        if check:
            self._check()

    def _check(self):
        for lab, d in self.weights.items():
            if d <= 0:
                raise LoopError(f"weight of {lab} must be positive, got {d}")
        for i in self.labels:
            if self._b.get((i, i), 0):
                raise LoopError(f"nonzero diagonal entry at {i}")
        for (i, j), value in self._b.items():
            lhs = value * self.weights[j]
            rhs = -self._b.get((j, i), 0) * self.weights[i]
            if lhs != rhs:
                raise LoopError(
                    f"not skew-symmetrizable at ({i}, {j}): "
                    f"B[i][j]*d_j = {lhs} but -B[j][i]*d_i = {rhs}"
                )

    def entry(self, i, j):
        return self._b.get((i, j), 0)

    def entries(self):
        return dict(self._b)

    @property
    def size(self):
        return len(self.labels)

    def relabel(self, mapping):
        """Relabel along an injective map defined on every label:
        new[nu(i)][nu(j)] = old[i][j].  The image may be a fresh label set."""
        if set(mapping) != set(self.labels) or len(
            set(mapping.values())
        ) != len(self.labels):
            raise LoopError("relabeling must be injective and cover the labels")
        entries = {(mapping[i], mapping[j]): v for (i, j), v in self._b.items()}
        weights = {mapping[i]: d for i, d in self.weights.items()}
        return ExchangeMatrix(
            [mapping[i] for i in self.labels], entries, weights, check=False
        )

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return (
            set(self.labels) == set(other.labels)
            and self._b == other._b
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((frozenset(self._b.items()), frozenset(self.weights.items())))

    def __str__(self):
        width = max((len(str(lab)) for lab in self.labels), default=1)
        width = max(
            width, max((len(str(v)) for v in self._b.values()), default=1)
        )
        header = " " * (width + 2) + " ".join(
            str(lab).rjust(width) for lab in self.labels
        )
        rows = [header]
        for i in self.labels:
            cells = " ".join(
                str(self.entry(i, j)).rjust(width) for j in self.labels
            )
            rows.append(f"{str(i).rjust(width)} | {cells}")
        return "\n".join(rows)


def mutate_matrix(matrix, k):
    """Matrix mutation at index k.

    New entries: -B[i][j] when i == k or j == k, otherwise
    B[i][j] + [B[i][k]]_+ [B[k][j]]_+ - [-B[i][k]]_+ [-B[k][j]]_+.
    """
    if k not in matrix._index:
        raise LoopError(f"unknown mutation index {k}")
    entries = {}
    for i in matrix.labels:
        bik = matrix.entry(i, k)
        for j in matrix.labels:
            old = matrix.entry(i, j)
            if i == k or j == k:
                value = -old
            else:
                bkj = matrix.entry(k, j)
                value = (
                    old
                    + max(bik, 0) * max(bkj, 0)
                    - max(-bik, 0) * max(-bkj, 0)
                )
            if value:
                entries[(i, j)] = value
    return ExchangeMatrix(matrix.labels, entries, matrix.weights, check=False)


def mutate_block(matrix, block):
    """Mutate simultaneously at a set of pairwise-disconnected indices."""
    block = tuple(block)
    if len(set(block)) != len(block):
        raise LoopError(f"repeated index in simultaneous block {block}")
    for i in block:
        for j in block:
            if i != j and matrix.entry(i, j):
                raise LoopError(
                    f"indices {i} and {j} are connected (B = {matrix.entry(i, j)}); "
                    "they cannot be mutated simultaneously"
                )
    out = matrix
    for k in block:
        out = mutate_matrix(out, k)
    return out


class Seed:
    """An exchange matrix with coefficient and cluster-variable assignments.

    ``coeffs[i]`` is a semifield element and ``cluster[i]`` a Laurent
    polynomial in the initial variables.  Either assignment may be omitted
    when only part of the mutation dynamics is needed.
    """

    __slots__ = ("matrix", "coeffs", "cluster")

    def __init__(self, matrix, coeffs=None, cluster=None):
        self.matrix = matrix
        self.coeffs = dict(coeffs) if coeffs is not None else None
        self.cluster = dict(cluster) if cluster is not None else None
        for attr in (self.coeffs, self.cluster):
            if attr is not None and set(attr) != set(matrix.labels):
                raise LoopError("seed assignment does not cover the labels exactly")


def mutate_seed(seed, k):
    """Seed mutation at index k: exact in the semifield and the Laurent ring."""
    matrix = seed.matrix
    new_coeffs = None
    if seed.coeffs is not None:
        yk = seed.coeffs[k]
        new_coeffs = {}
        for i in matrix.labels:
            if i == k:
                new_coeffs[i] = yk.inv()
                continue
            bki = matrix.entry(k, i)
            yi = seed.coeffs[i]
            if bki <= 0:
                new_coeffs[i] = yi * (yk.one_like().oplus(yk) ** (-bki))
            else:
                new_coeffs[i] = yi * (yk.one_like().oplus(yk.inv()) ** (-bki))

    new_cluster = None
    if seed.cluster is not None:
        if seed.coeffs is not None:
            plus, minus = hensel_pair(seed.coeffs[k])
            cplus = MLaurent.from_semifield(plus)
            cminus = MLaurent.from_semifield(minus)
        else:
            cplus = cminus = MLaurent.one()
        top = MLaurent.one()
        bottom = MLaurent.one()
        for j in matrix.labels:
            bjk = matrix.entry(j, k)
            if bjk > 0:
                top = top * seed.cluster[j] ** bjk
            elif bjk < 0:
                bottom = bottom * seed.cluster[j] ** (-bjk)
        numerator = cplus * top + cminus * bottom
        new_cluster = dict(seed.cluster)
        new_cluster[k] = numerator.exact_div(seed.cluster[k])

    return Seed(mutate_matrix(matrix, k), new_coeffs, new_cluster)


def mutate_seed_block(seed, block):
    block = tuple(block)
    for i in block:
        for j in block:
            if i != j and seed.matrix.entry(i, j):
                raise LoopError(
                    f"indices {i} and {j} are connected; cannot mutate simultaneously"
                )
    out = seed
    for k in block:
        out = mutate_seed(out, k)
    return out


class MutationLoop:
    """A matrix with a periodic mutation schedule.

    ``blocks`` lists the simultaneous mutation blocks for one period and
    ``nu`` is the relabeling bijection closing the loop: mutating along all
    blocks must turn the matrix into its nu-relabeling, and the weights must
    be nu-invariant.
    """

    __slots__ = ("matrix", "blocks", "nu", "_nu_inv")

    def __init__(self, matrix, blocks, nu):
        self.matrix = matrix
        self.blocks = tuple(tuple(b) for b in blocks)
        self.nu = dict(nu)
        if set(self.nu) != set(matrix.labels) or set(self.nu.values()) != set(
            matrix.labels
        ):
            raise LoopError("nu must be a bijection on the matrix labels")
        self._nu_inv = {v: k for k, v in self.nu.items()}

    @property
    def t(self):
        return len(self.blocks)

    def nu_power(self, label, power):
        out = label
        if power >= 0:
            for _ in range(power):
                out = self.nu[out]
        else:
            for _ in range(-power):
                out = self._nu_inv[out]
        return out

    def nu_order(self):
        order = 1
        labels = self.matrix.labels
        current = {lab: self.nu[lab] for lab in labels}
        while any(current[lab] != lab for lab in labels):
            current = {lab: self.nu[current[lab]] for lab in labels}
            order += 1
            if order > len(labels) ** 2 + 1:
                raise LoopError("nu order overflow; nu is not a permutation?")
        return order

    def block_at(self, u):
        """The mutation block at any time u, extended by nu-periodicity."""
        q, v = divmod(u, self.t)
        return tuple(self.nu_power(i, q) for i in self.blocks[v])

    def stage_matrices(self):
        """Matrices B(0), ..., B(t) along one period."""
        stages = [self.matrix]
        current = self.matrix
        for block in self.blocks:
            current = mutate_block(current, block)
            stages.append(current)
        return stages

    def stage_matrix(self, u):
        """The matrix B(u) at any time u, using B(u + t) = nu(B(u))."""
        q, v = divmod(u, self.t)
        base = self.stage_matrices()[v]
        if q == 0:
            return base
        mapping = {lab: self.nu_power(lab, q) for lab in base.labels}
        return base.relabel(mapping)


class LoopCheck:
    """Outcome of replaying a mutation loop candidate."""

    __slots__ = ("ok", "failure", "stages")

    def __init__(self, ok, failure=None, stages=None):
        self.ok = ok
        self.failure = failure
        self.stages = stages

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"LoopCheck(ok={self.ok}, failure={self.failure!r})"


def verify_loop(loop):
    """Replay the schedule and check the closing conditions.

    Reports the first failure: an unknown or repeated index, a connected
    pair inside a simultaneous block, a weight not fixed by nu, or a final
    matrix that differs from the nu-relabeling of the initial one.
    """
    matrix = loop.matrix
    labels = set(matrix.labels)
    for i, d in matrix.weights.items():
        if matrix.weights[loop.nu[i]] != d:
            return LoopCheck(
                False, f"weight mismatch: d[{i}] = {d} but nu moves it to "
                f"{loop.nu[i]} with d = {matrix.weights[loop.nu[i]]}"
            )
    stages = [matrix]
    current = matrix
    for u, block in enumerate(loop.blocks):
        if len(set(block)) != len(block):
            return LoopCheck(False, f"repeated index in block {u}: {block}")
        for i in block:
            if i not in labels:
                return LoopCheck(False, f"block {u} uses unknown index {i}")
        for i in block:
            for j in block:
                if i != j and current.entry(i, j):
                    return LoopCheck(
                        False,
                        f"block {u}: indices {i} and {j} are connected "
                        f"(B = {current.entry(i, j)}) at that stage",
                    )
        current = mutate_block(current, block)
        stages.append(current)
    expected = matrix.relabel(loop.nu)
    if current != expected:
        for i in matrix.labels:
            for j in matrix.labels:
                if current.entry(i, j) != expected.entry(i, j):
                    return LoopCheck(
                        False,
                        f"final matrix mismatch at ({i}, {j}): replay gives "
                        f"{current.entry(i, j)}, relabeling gives "
                        f"{expected.entry(i, j)}",
                        stages,
                    )
    return LoopCheck(True, None, stages)


class LoopAnalysis:
    """Combinatorial data extracted from a complete mutation loop.

    Exposes the mutation-point set, the gap function lam(i, u), the
    successor map, the projection pi onto flat labels 0..r-1, and the
    induced permutation and gap vector on those labels.
    """

    def __init__(self, loop):
        check = verify_loop(loop)
        if not check.ok:
            raise LoopError(f"not a mutation loop: {check.failure}")
        self.loop = loop
        self.t = loop.t
        self.horizon = loop.t * loop.nu_order()
        self._blocks = {}
        self.flat = []
        for u, block in enumerate(loop.blocks):
            for i in block:
                self.flat.append((i, u))
        self.r = len(self.flat)
        self._flat_index = {pair: a for a, pair in enumerate(self.flat)}
        self.complete = all(
            self.lam(i, 0) is not None for i in loop.matrix.labels
        )
        if self.complete:
            self.sigma = {}
            self.gap = {}
            for a, (i, u) in enumerate(self.flat):
                self.sigma[a] = self.pi(*self.successor(i, u))
                self.gap[a] = 1 + self.lam(i, u + 1)
            self._sigma_inv = {v: k for k, v in self.sigma.items()}
            self.p = {a: self.gap[self._sigma_inv[a]] for a in range(self.r)}
            self.weights = {
                a: loop.matrix.weights[i] for a, (i, u) in enumerate(self.flat)
            }
            self.residues = {a: u for a, (i, u) in enumerate(self.flat)}

    def block_at(self, u):
        if u not in self._blocks:
            self._blocks[u] = frozenset(self.loop.block_at(u))
        return self._blocks[u]

    def is_mutation_point(self, i, u):
        return i in self.block_at(u)

    def lam(self, i, u):
        """Steps until the next mutation of index i at or after time u."""
        for v in range(self.horizon + 1):
            if i in self.block_at(u + v):
                return v
        return None

    def successor(self, i, u):
        """The next mutation point of index i strictly after (i, u) if (i, u)
        is a mutation point, or at or after u otherwise."""
        if self.is_mutation_point(i, u):
            gap = self.lam(i, u + 1)
            if gap is None:
                raise LoopError(f"index {i} is mutated only once; loop incomplete")
            return (i, u + 1 + gap)
        gap = self.lam(i, u)
        if gap is None:
            raise LoopError(f"index {i} is never mutated; loop incomplete")
        return (i, u + gap)

    def pi(self, i, u):
        """Flat label of the mutation point (i, u)."""
        q, v = divmod(u, self.t)
        base = (self.loop.nu_power(i, -q), v)
        try:
            return self._flat_index[base]
        except KeyError:
            raise LoopError(f"({i}, {u}) is not a mutation point") from None

    def sigma_inv(self, a):
        return self._sigma_inv[a]


def analyze_loop(loop):
    return LoopAnalysis(loop)


def matrix_to_dot(matrix, frozen=(), name="quiver"):
    """Export as a DOT digraph.

    A positive entry B[i][j] is drawn as that many arrows i -> j when the
    pair is sign-skew, and as a single labeled arrow otherwise.  Frozen
    vertices are drawn as boxes.
    """
    frozen = set(frozen)
    lines = [f"digraph {name} {{"]
    for lab in matrix.labels:
        shape = "box" if lab in frozen else "ellipse"
        lines.append(f'  "{_dot_name(lab)}" [shape={shape}];')
    seen = set()
    for i in matrix.labels:
        for j in matrix.labels:
            if (j, i) in seen:
                continue
            value = matrix.entry(i, j)
            if value == 0:
                continue
            seen.add((i, j))
            src, dst, count = (i, j, value) if value > 0 else (j, i, -value)
            back = -matrix.entry(dst, src)
            if back == count:
                for _ in range(count):
                    lines.append(
                        f'  "{_dot_name(src)}" -> "{_dot_name(dst)}";'
                    )
            else:
                lines.append(
                    f'  "{_dot_name(src)}" -> "{_dot_name(dst)}"'
                    f' [label="({count},{back})"];'
                )
    lines.append("}")
    return "\n".join(lines)


def seed_to_dot(seed, name="quiver"):
    """DOT export of a seed; tropical coefficient generators become frozen
    box vertices, with an arrow g -> i for each positive power of g in y_i."""
    matrix = seed.matrix
    extra = []
    edges = []
    if seed.coeffs is not None:
        gen_names = set()
        for i in matrix.labels:
            y = seed.coeffs[i]
            if not isinstance(y, TropicalValue):
                continue
            for g, e in y.element.exponents().items():
                gen_names.add(g)
                if e > 0:
                    edges.extend([(g, i)] * e)
                else:
                    edges.extend([(i, g)] * (-e))
        extra = sorted(gen_names)
    body = matrix_to_dot(matrix, name=name).splitlines()
    out = body[:-1]
    for g in extra:
        out.append(f'  "{g}" [shape=box];')
    for src, dst in edges:
        out.append(f'  "{_dot_name(src)}" -> "{_dot_name(dst)}";')
    out.append("}")
    return "\n".join(out)


def _dot_name(label):
    return str(label).replace('"', "'")
