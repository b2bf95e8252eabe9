"""Semifield coefficient arithmetic.

Two coefficient semifields are supported: the trivial semifield (a single
element 1) and tropical semifields on finitely many named generators, where
multiplication adds exponent vectors and the auxiliary addition takes the
entrywise minimum (missing entries count as 0).  The group ring of a
semifield over the integers is provided as well; the semifield embeds into
it as the single-term elements.
"""

from __future__ import annotations

import re


class SemifieldTagError(ValueError):
    """Mixing values from different semifields."""


class TropicalElement:
    """An element of a tropical semifield: an exponent vector on generators.

    Immutable and hashable; zero exponents are not stored.
    """

    __slots__ = ("_e", "_key")

    def __init__(self, exponents=None):
        e = {}
        if exponents:
            for g, n in exponents.items():
                if n:
                    e[str(g)] = int(n)
        self._e = e
        self._key = tuple(sorted(e.items()))

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def generator(cls, name, power=1):
        return cls({name: power})

    def exponent(self, name):
        return self._e.get(name, 0)

    def exponents(self):
        return dict(self._e)

    @property
    def is_one(self):
        return not self._e

    def __mul__(self, other):
        e = dict(self._e)
        for g, n in other._e.items():
            m = e.get(g, 0) + n
            if m:
                e[g] = m
            else:
                e.pop(g, None)
        return TropicalElement(e)

    def inv(self):
        return TropicalElement({g: -n for g, n in self._e.items()})

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n):
        return TropicalElement({g: k * n for g, k in self._e.items()})

    def oplus(self, other):
        gens = set(self._e) | set(other._e)
        return TropicalElement({g: min(self._e.get(g, 0), other._e.get(g, 0)) for g in gens})

    def __eq__(self, other):
        if not isinstance(other, TropicalElement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if not self._e:
            return "1"
        parts = []
        for g, n in self._key:
            parts.append(g if n == 1 else f"{g}^{n}")
        return "*".join(parts)

    def __repr__(self):
        return f"TropicalElement({self})"


_GEN_RE = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z_0-9]*?)(?:\^(?P<exp>-?\d+))?$")


def parse_tropical(text):
    """Parse the text form ``u1^2*u3^-1`` (``1`` is the identity)."""
    s = text.strip().replace(" ", "")
    if s == "1":
        return TropicalElement.one()
    e = {}
    for chunk in s.split("*"):
        m = _GEN_RE.match(chunk)
        if not m:
            raise ValueError(f"bad tropical factor {chunk!r} in {text!r}")
        n = int(m.group("exp")) if m.group("exp") else 1
        g = m.group("name")
        e[g] = e.get(g, 0) + n
    return TropicalElement(e)


class SemifieldValue:
    """Base class of the tagged union Trivial | Tropical."""

    tag = None

    def _same(self, other):
        if not isinstance(other, SemifieldValue) or other.tag != self.tag:
            raise SemifieldTagError(
                f"cannot combine semifield values of tags {self.tag!r} and "
                f"{getattr(other, 'tag', type(other).__name__)!r}"
            )


class TrivialValue(SemifieldValue):
    """The unique element of the trivial semifield."""

    tag = "trivial"
    __slots__ = ()

    def __mul__(self, other):
        self._same(other)
        return self

    def __truediv__(self, other):
        self._same(other)
        return self

    def inv(self):
        return self

    def __pow__(self, n):
        return self

    def oplus(self, other):
        self._same(other)
        return self

    def one_like(self):
        return self

    def __eq__(self, other):
        return isinstance(other, TrivialValue)

    def __hash__(self):
        return hash("trivial-one")

    def __str__(self):
        return "1"

    def __repr__(self):
        return "TrivialValue()"


TRIVIAL_ONE = TrivialValue()


class TropicalValue(SemifieldValue):
    """A tropical semifield element wrapped as a tagged semifield value."""

    tag = "tropical"
    __slots__ = ("element",)

    def __init__(self, element=None):
        self.element = element if element is not None else TropicalElement.one()

    @classmethod
    def generator(cls, name, power=1):
        return cls(TropicalElement.generator(name, power))

    def __mul__(self, other):
        self._same(other)
        return TropicalValue(self.element * other.element)

    def __truediv__(self, other):
        self._same(other)
        return TropicalValue(self.element / other.element)

    def inv(self):
        return TropicalValue(self.element.inv())

    def __pow__(self, n):
        return TropicalValue(self.element**n)

    def oplus(self, other):
        self._same(other)
        return TropicalValue(self.element.oplus(other.element))

    def one_like(self):
        return TropicalValue(TropicalElement.one())

    def __eq__(self, other):
        if not isinstance(other, TropicalValue):
            return NotImplemented
        return self.element == other.element

    def __hash__(self):
        return hash(("tropical", self.element))

    def __str__(self):
        return str(self.element)

    def __repr__(self):
        return f"TropicalValue({self.element})"


def oplus(a, b):
    """Semifield addition; both arguments must carry the same tag."""
    return a.oplus(b)


def hensel_pair(y):
    """Split y into the pair (y/(1 (+) y), 1/(1 (+) y)).

    The quotient of the two components recovers y.
    """
    s = y.one_like().oplus(y)
    return y / s, s.inv()


class GroupRingElement:
    """An element of the group ring of a semifield: a finite integer
    combination of semifield elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for g, c in terms.items():
                if c:
                    t[g] = t.get(g, 0) + int(c)
                    if not t[g]:
                        del t[g]
        self._terms = t

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_semifield(cls, v, coeff=1):
        return cls({v: coeff})

    def terms(self):
        return dict(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def __add__(self, other):
        t = dict(self._terms)
        for g, c in other._terms.items():
            n = t.get(g, 0) + c
            if n:
                t[g] = n
            else:
                del t[g]
        out = GroupRingElement.__new__(GroupRingElement)
        out._terms = t
        return out

    def __neg__(self):
        out = GroupRingElement.__new__(GroupRingElement)
        out._terms = {g: -c for g, c in self._terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return GroupRingElement.zero()
            out = GroupRingElement.__new__(GroupRingElement)
            out._terms = {g: c * other for g, c in self._terms.items()}
            return out
        t = {}
        for g1, c1 in self._terms.items():
            for g2, c2 in other._terms.items():
                g = g1 * g2
                n = t.get(g, 0) + c1 * c2
                if n:
                    t[g] = n
                else:
                    del t[g]
        out = GroupRingElement.__new__(GroupRingElement)
        out._terms = t
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for g, c in sorted(self._terms.items(), key=lambda t: str(t[0])):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(g) if a == 1 and str(g) != "1" else (str(a) if str(g) == "1" else f"{a}*{g}")
            if a != 1 and str(g) != "1":
                body = f"{a}*{g}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"GroupRingElement({self})"
