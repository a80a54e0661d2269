"""Abstract simplicial complexes, normalized integer chains, rational points.

Chains live on ordered vertex symbols (repeats allowed in the input); any
symbol with a repeated entry is identified with zero, the classical
normalized-chain convention.  This makes the shuffle boundary formula hold
exactly at the chain level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, PreconditionError


def _sorted_tuple(vertices):
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class SimplicialComplex:
    """Face-closed set of nonempty sorted vertex tuples."""

    vertices: tuple
    simplices: frozenset

    def __post_init__(self):
        seen = set()
        for s in self.simplices:
            if not s:
                raise InvariantViolation("empty simplex")
            if tuple(sorted(s)) != s or len(set(s)) != len(s):
                raise InvariantViolation("simplex not a sorted duplicate-free tuple",
                                         witness=s)
            seen.update(s)
            n = len(s)
            if n > 1:
                for i in range(n):
                    face = s[:i] + s[i + 1:]
                    if face not in self.simplices:
                        raise InvariantViolation("complex not face-closed", witness=face)
        if set(self.vertices) != seen:
            raise InvariantViolation("vertex list must equal the union of simplices")
        if tuple(sorted(self.vertices)) != self.vertices:
            raise InvariantViolation("vertices must be sorted")

    @classmethod
    def from_simplices(cls, simplices):
        """Build from any iterable of vertex iterables, closing under faces."""
        closed = set()
        stack = [_sorted_tuple(s) for s in simplices]
        for s in stack:
            if len(set(s)) != len(s):
                raise InvariantViolation("simplex with repeated vertex", witness=s)
        while stack:
            s = stack.pop()
            if not s or s in closed:
                continue
            closed.add(s)
            if len(s) > 1:
                for i in range(len(s)):
                    stack.append(s[:i] + s[i + 1:])
        vertices = _sorted_tuple({v for s in closed for v in s})
        return cls(vertices, frozenset(closed))

    @classmethod
    def empty(cls):
        return cls((), frozenset())

    @property
    def dim(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k):
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def has_simplex(self, vertices):
        return _sorted_tuple(vertices) in self.simplices

    def top_simplices(self):
        """Simplices that are not a proper face of any other simplex."""
        tops = []
        for s in sorted(self.simplices):
            sset = set(s)
            if not any(sset < set(t) for t in self.simplices):
                tops.append(s)
        return tops

    def is_subcomplex_of(self, other):
        return self.simplices <= other.simplices

    def spans_simplex(self, vertices):
        distinct = _sorted_tuple(set(vertices))
        return distinct in self.simplices


@dataclass(frozen=True)
class ComplexPair:
    complex: SimplicialComplex
    sub: SimplicialComplex

    def __post_init__(self):
        if not self.sub.is_subcomplex_of(self.complex):
            extra = sorted(self.sub.simplices - self.complex.simplices)
            raise InvariantViolation("sub is not a subcomplex", witness=extra[0])

    @classmethod
    def absolute(cls, complex):
        return cls(complex, SimplicialComplex.empty())


class Chain:
    """Normalized integer chain on ordered vertex symbols of one dimension."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim, terms=()):
        self.dim = dim
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for symbol, coeff in items:
            symbol = tuple(symbol)
            if len(symbol) != dim + 1:
                raise InvariantViolation("symbol length does not match dimension",
                                         witness=symbol)
            if coeff == 0 or len(set(symbol)) != len(symbol):
                continue
            acc[symbol] = acc.get(symbol, 0) + coeff
        self._terms = {s: c for s, c in acc.items() if c != 0}

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, symbol):
        return self._terms.get(tuple(symbol), 0)

    def symbols(self):
        return sorted(self._terms)

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.dim == other.dim
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __add__(self, other):
        if self.dim != other.dim:
            raise InvariantViolation("chain dimension mismatch")
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out.get(s, 0) + c
        return type(self)(self.dim, out)

    def __neg__(self):
        return type(self)(self.dim, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return type(self)(self.dim, {s: scalar * c for s, c in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "%s(dim=%d, 0)" % (type(self).__name__, self.dim)
        bits = ["%+d*%r" % (c, list(s)) for s, c in sorted(self._terms.items())]
        return "%s(%s)" % (type(self).__name__, " ".join(bits))

    @classmethod
    def _face(cls, symbol, i):
        return symbol[:i] + symbol[i + 1:]

    def boundary_chain(self):
        out = {}
        for symbol, coeff in self._terms.items():
            sign = 1
            for i in range(len(symbol)):
                face = type(self)._face(symbol, i)
                out[face] = out.get(face, 0) + sign * coeff
                sign = -sign
        return type(self)(self.dim - 1, out)


def boundary(c):
    """Alternating sum of vertex deletions; degenerate faces vanish.

    >>> boundary(Chain(1, [(("a", "b"), 1)])).terms
    {('b',): 1, ('a',): -1}
    """
    if c.dim == 0:
        return type(c)(-1)
    return c.boundary_chain()


def straighten(c):
    """Project ordered symbols onto sorted representatives with sign.

    The result maps sorted simplices to coefficients; symbols related by an
    odd permutation contribute with opposite signs.  This is the canonical
    chain map onto the oriented simplicial chain complex.
    """
    out = {}
    for symbol, coeff in c.terms.items():
        sign, sorted_symbol = permutation_sign(symbol)
        if sign == 0:
            continue
        out[sorted_symbol] = out.get(sorted_symbol, 0) + sign * coeff
    return {s: c for s, c in out.items() if c != 0}


def permutation_sign(symbol):
    """(sign, sorted symbol); sign 0 when entries repeat."""
    symbol = tuple(symbol)
    if len(set(symbol)) != len(symbol):
        return 0, None
    indexed = sorted(range(len(symbol)), key=lambda i: symbol[i])
    sign = 1
    seen = [False] * len(symbol)
    for start in range(len(symbol)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = indexed[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign, tuple(sorted(symbol))


@dataclass(frozen=True)
class RationalPoint:
    """Exact barycentric point of a realization.

    Coordinates are nonnegative rationals summing to one whose support spans a
    simplex, so the point lies in a unique open simplex.
    """

    complex: SimplicialComplex
    coords: tuple  # sorted pairs (vertex, Fraction)

    def __post_init__(self):
        total = Fraction(0)
        support = []
        for v, x in self.coords:
            if not isinstance(x, Fraction):
                raise InvariantViolation("coordinates must be Fractions", witness=v)
            if x < 0:
                raise InvariantViolation("negative coordinate", witness=v)
            if x > 0:
                support.append(v)
            total += x
        if total != 1:
            raise InvariantViolation("coordinates must sum to 1", witness=total)
        if not self.complex.spans_simplex(support):
            raise InvariantViolation("support does not span a simplex",
                                     witness=tuple(support))

    @classmethod
    def from_coords(cls, complex, mapping):
        pairs = tuple(sorted((v, Fraction(x)) for v, x in mapping.items()
                             if Fraction(x) != 0))
        return cls(complex, pairs)

    @classmethod
    def vertex_point(cls, complex, v):
        return cls.from_coords(complex, {v: Fraction(1)})

    def coord(self, v):
        for w, x in self.coords:
            if w == v:
                return x
        return Fraction(0)

    def as_dict(self):
        return {v: x for v, x in self.coords}

    def support(self):
        return tuple(v for v, x in self.coords if x > 0)


def affine_combination(complex, weighted_points):
    """Exact convex/affine combination of rational points (weights sum to 1)."""
    acc = {}
    total = Fraction(0)
    for w, p in weighted_points:
        w = Fraction(w)
        total += w
        for v, x in p.coords:
            acc[v] = acc.get(v, Fraction(0)) + w * x
    if total != 1:
        raise PreconditionError("weights must sum to 1", witness=total)
    return RationalPoint.from_coords(complex, acc)


def carrier(p):
    """The support of a point: the unique open simplex containing it.

    >>> k = SimplicialComplex.from_simplices([(0, 1)])
    >>> carrier(RationalPoint.from_coords(k, {0: Fraction(1, 2), 1: Fraction(1, 2)}))
    (0, 1)
    """
    return p.support()


def identity_realization(complex):
    """Each vertex realized as its own characteristic point."""
    return {v: RationalPoint.vertex_point(complex, v) for v in complex.vertices}
