"""Lattice-path shuffles, the signed cross product, and the swap-quotient.

The self-product of a complex is triangulated by the staircase rule: its
simplices are the chains in the componentwise partial order on vertex pairs
whose component supports each span a simplex.  This is the one product
triangulation stable under the coordinate swap, so the quotient ("gable") is a
well-defined complex of swap-orbits.

Orbits are identified sign-free: a product symbol and its swap compose to the
same map into the quotient, so they land on the same orbit symbol with the
same coefficient.  The parity phenomenon of the quotient comes entirely from
the shuffle signs, via area(f) + area(reflection f) = m*n.

Note: two distinct orbits can share the same set of vertex orbits (already in
the self-product of a triangle), so the gable is kept at orbit granularity,
one chain-basis element per swap-orbit of product simplices; it is not a
vertex-set complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Chain, SimplicialComplex
from .errors import InvariantViolation, PreconditionError


@dataclass(frozen=True)
class LatticePath:
    """Monotone path of R/U steps in an m x n grid with its area statistic."""

    steps: tuple

    def __post_init__(self):
        for s in self.steps:
            if s not in ("R", "U"):
                raise InvariantViolation("steps must be 'R' or 'U'", witness=s)

    @property
    def m(self):
        return sum(1 for s in self.steps if s == "R")

    @property
    def n(self):
        return sum(1 for s in self.steps if s == "U")

    @property
    def area(self):
        """Unit grid squares strictly below the path."""
        area = 0
        height = 0
        for s in self.steps:
            if s == "U":
                height += 1
            else:
                area += height
        return area

    @property
    def reflection(self):
        """The diagonal mirror image: R and U exchanged stepwise."""
        return LatticePath(tuple("U" if s == "R" else "R" for s in self.steps))

    def vertex_sequence(self):
        i = j = 0
        seq = [(0, 0)]
        for s in self.steps:
            if s == "R":
                i += 1
            else:
                j += 1
            seq.append((i, j))
        return seq


def enumerate_paths(m, n):
    """All monotone paths in the m x n grid, C(m+n, m) of them, lex order."""
    if m < 0 or n < 0:
        raise PreconditionError("grid dimensions must be nonnegative")
    total = m + n
    paths = []
    for r_positions in combinations(range(total), m):
        steps = ["U"] * total
        for p in r_positions:
            steps[p] = "R"
        paths.append(LatticePath(tuple(steps)))
    return paths


def path_symbol(sym1, sym2, path):
    """The product symbol (sym1, sym2) composed with the path's cell map."""
    if len(sym1) != path.m + 1 or len(sym2) != path.n + 1:
        raise PreconditionError("symbol lengths do not match the grid")
    return tuple((sym1[i], sym2[j]) for i, j in path.vertex_sequence())


class ProductChain(Chain):
    """Normalized chain on product symbols (tuples of vertex pairs)."""


def swap_symbol(symbol):
    return tuple((b, a) for a, b in symbol)


def orbit_canonical(symbol):
    """Lexicographically smaller of a product symbol and its swap."""
    symbol = tuple(tuple(p) for p in symbol)
    return min(symbol, swap_symbol(symbol))


@dataclass(frozen=True)
class OrbitSimplex:
    """A swap-orbit of product symbols, named by its canonical member."""

    canonical: tuple

    def __post_init__(self):
        if self.canonical != orbit_canonical(self.canonical):
            raise InvariantViolation("not a canonical orbit representative",
                                     witness=self.canonical)

    @property
    def is_diagonal_fixed(self):
        return self.canonical == swap_symbol(self.canonical)


class GableChain(Chain):
    """Chain on swap-orbits; symbols are canonicalized on construction."""

    def __init__(self, dim, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        super().__init__(dim, [(orbit_canonical(s), c) for s, c in items])

    @classmethod
    def _face(cls, symbol, i):
        return orbit_canonical(symbol[:i] + symbol[i + 1:])


def cross(c1, c2):
    """Signed shuffle cross product of two chains.

    >>> a = Chain(1, {("a", "b"): 1}); b = Chain(1, {("c", "d"): 1})
    >>> sorted(cross(a, b).terms.items())[0]
    ((('a', 'c'), ('a', 'd'), ('b', 'd')), -1)
    """
    paths = enumerate_paths(c1.dim, c2.dim)
    acc = {}
    for s1, g1 in c1.terms.items():
        for s2, g2 in c2.terms.items():
            g = g1 * g2
            for path in paths:
                symbol = path_symbol(s1, s2, path)
                coeff = -g if path.area % 2 else g
                acc[symbol] = acc.get(symbol, 0) + coeff
    return ProductChain(c1.dim + c2.dim, acc)


def product_boundary(c):
    """Alternating position deletion on pair lists; zero in dimension 0."""
    if c.dim == 0:
        return ProductChain(-1)
    return c.boundary_chain()


def validate_product_symbol(complex, symbol):
    firsts = tuple(a for a, _ in symbol)
    seconds = tuple(b for _, b in symbol)
    if not complex.spans_simplex(firsts):
        raise PreconditionError("first components do not span a simplex",
                                witness=symbol)
    if not complex.spans_simplex(seconds):
        raise PreconditionError("second components do not span a simplex",
                                witness=symbol)


def quotient_project(c, complex=None):
    """Push a self-product chain to the swap-quotient.

    A symbol and its swap become the same composite with the quotient map, so
    both land on the canonical orbit symbol and their coefficients add; no
    sign is attached.  When the factor complex is supplied, both components of
    every symbol are checked against it, rejecting mixed-complex input.
    """
    if complex is not None:
        for symbol in c.terms:
            validate_product_symbol(complex, symbol)
    return GableChain(c.dim, c.terms)


def gable_boundary(c):
    if c.dim == 0:
        return GableChain(-1)
    return c.boundary_chain()


def _componentwise_leq(p, q):
    return p[0] <= q[0] and p[1] <= q[1]


@dataclass(frozen=True)
class GableComplex:
    """The swap-quotient of a staircase self-product, at orbit granularity."""

    base: SimplicialComplex
    product: SimplicialComplex
    orbit_sets: frozenset  # canonical sorted chains, one per orbit

    @property
    def dim(self):
        return max((len(c) - 1 for c in self.orbit_sets), default=-1)

    def orbits_of_dim(self, k):
        return sorted(c for c in self.orbit_sets if len(c) == k + 1)

    def has_orbit(self, rep):
        return set_orbit_canonical(rep) in self.orbit_sets

    def orbit_faces(self, rep):
        sign = 1
        for i in range(len(rep)):
            yield sign, set_orbit_canonical(rep[:i] + rep[i + 1:])
            sign = -sign


def set_orbit_canonical(chain):
    """Canonical representative of the swap-orbit of a sorted product simplex."""
    chain = tuple(tuple(p) for p in chain)
    return min(chain, tuple(sorted(swap_symbol(chain))))


@dataclass(frozen=True)
class ProductComplexResult:
    product: SimplicialComplex
    gable: GableComplex
    diagonal_sub: frozenset  # face-closed orbits of simplices with a diagonal vertex


def product_complex(complex):
    """Staircase triangulation of K x K, its swap-quotient, and the diagonal part.

    Product simplices are the chains in the componentwise order on vertex
    pairs whose component supports span simplices.  The swap maps this set to
    itself, so the orbit complex is well-defined; diagonal_sub collects, face
    closed, the orbits of simplices containing a pair (v, v).
    """
    verts = complex.vertices
    pairs = sorted((a, b) for a in verts for b in verts)
    chains = []

    def grow(chain, firsts, seconds):
        chains.append(tuple(chain))
        last = chain[-1]
        for q in pairs:
            if q <= last or not _componentwise_leq(last, q):
                continue
            f2 = firsts | {q[0]}
            s2 = seconds | {q[1]}
            if not complex.spans_simplex(tuple(f2)):
                continue
            if not complex.spans_simplex(tuple(s2)):
                continue
            chain.append(q)
            grow(chain, f2, s2)
            chain.pop()

    for p in pairs:
        grow([p], {p[0]}, {p[1]})

    product = SimplicialComplex.from_simplices(chains)
    orbit_sets = frozenset(set_orbit_canonical(c) for c in chains)
    gable = GableComplex(complex, product, orbit_sets)

    diagonal = set()
    stack = [c for c in orbit_sets if any(a == b for a, b in c)]
    while stack:
        c = stack.pop()
        if c in diagonal:
            continue
        diagonal.add(c)
        if len(c) > 1:
            for i in range(len(c)):
                stack.append(set_orbit_canonical(c[:i] + c[i + 1:]))
    return ProductComplexResult(product, gable, frozenset(diagonal))
