"""The roof map on even-dimensional chains and its relative-class machinery.

roof(sum g_i s_i) = sum over unordered pairs i<j of g_i*g_j times the
swap-quotient of the cross product s_i x s_j.  The construction only makes
sense in even dimensions: in odd dimensions the quotient of a cross product
picks up a sign under exchanging the factors, so the pair sum would depend on
the term order.

Diagonal regions play the role of neighborhoods of the diagonal image in the
quotient: face-closed sets of orbits, relative to which roofs of cycles are
relative cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import (
    Chain,
    boundary,
    identity_realization,
    permutation_sign,
)
from .errors import InvariantViolation, PreconditionError
from .homology import HomologyData, boundary_matrix
from .groups import GroupMorphism
from .intlinalg import IntMatrix
from .shuffle import (
    GableChain,
    cross,
    enumerate_paths,
    gable_boundary,
    orbit_canonical,
    path_symbol,
    set_orbit_canonical,
)


@dataclass(frozen=True)
class TermList:
    """Ordered coefficient-symbol terms with distinct symbols.

    Canonicalization merges duplicate symbols into the first occurrence and
    drops zero or degenerate terms; without merging, the roof of 2*[a] and of
    [a] + [a] would differ as chains.
    """

    dim: int
    terms: tuple  # ((coeff, symbol), ...)

    def __post_init__(self):
        seen = set()
        for g, s in self.terms:
            if len(s) != self.dim + 1:
                raise InvariantViolation("term length does not match dimension",
                                         witness=s)
            if s in seen:
                raise InvariantViolation("duplicate symbol in term list", witness=s)
            if g == 0 or len(set(s)) != len(s):
                raise InvariantViolation("terms must be canonicalized", witness=s)
            seen.add(s)

    @classmethod
    def from_pairs(cls, dim, pairs):
        order = []
        acc = {}
        for g, s in pairs:
            s = tuple(s)
            if s not in acc:
                order.append(s)
                acc[s] = 0
            acc[s] += g
        terms = tuple((acc[s], s) for s in order
                      if acc[s] != 0 and len(set(s)) == len(s))
        return cls(dim, terms)

    @classmethod
    def from_chain(cls, chain):
        return cls.from_pairs(chain.dim, [(g, s) for s, g in sorted(chain.terms.items())])

    def chain(self):
        return Chain(self.dim, [(s, g) for g, s in self.terms])


def roof(sigma):
    """Sum of swap-quotient cross products over unordered term pairs.

    >>> t = TermList.from_pairs(0, [(2, ("a",)), (3, ("b",)), (1, ("c",))])
    >>> sorted(roof(t).terms.items())
    [((('a', 'b'),), 6), ((('a', 'c'),), 2), ((('b', 'c'),), 3)]
    """
    if sigma.dim % 2:
        raise PreconditionError(
            "the roof map is undefined in odd dimensions: the swap-quotient "
            "of a cross product changes sign under exchanging the factors "
            "when the dimension is odd, so the pair sum would depend on the "
            "term order",
            witness=sigma.dim,
        )
    out = GableChain(2 * sigma.dim)
    for (g1, s1), (g2, s2) in combinations(sigma.terms, 2):
        piece = cross(Chain(sigma.dim, {s1: g1}), Chain(sigma.dim, {s2: g2}))
        out = out + GableChain(piece.dim, piece.terms)
    return out


def touches_diagonal(symbol, realization):
    """Exact test whether the realized product symbol meets the diagonal.

    True iff convex weights t_p >= 0 summing to 1 exist with
    sum t_p a_p = sum t_p b_p as rational points.  Any pair (v, v) present is
    an immediate yes; otherwise exact rational feasibility is decided by
    enumerating basic solutions (Caratheodory: a feasible system has a
    nonnegative solution supported on linearly independent columns).
    """
    symbol = tuple(tuple(p) for p in symbol)
    if any(a == b for a, b in symbol):
        return True
    vertices = sorted({v for a, b in symbol
                       for v in realization[a].support() + realization[b].support()})
    rows = []
    for v in vertices:
        rows.append([realization[a].coord(v) - realization[b].coord(v)
                     for a, b in symbol])
    rows.append([Fraction(1)] * len(symbol))
    rhs = [Fraction(0)] * len(vertices) + [Fraction(1)]
    return _nonneg_solution_exists(rows, rhs)


def _nonneg_solution_exists(rows, rhs):
    ncols = len(rows[0]) if rows else 0
    for size in range(1, ncols + 1):
        for subset in combinations(range(ncols), size):
            sol = _solve_full_rank(rows, rhs, subset)
            if sol is not None and all(x >= 0 for x in sol):
                return True
    return False


def _solve_full_rank(rows, rhs, cols):
    """Unique solution of the column-restricted system, else None."""
    a = [[Fraction(r[c]) for c in cols] + [Fraction(v)]
         for r, v in zip(rows, rhs)]
    n, m = len(a), len(cols)
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return None  # rank-deficient: a smaller subset covers this case
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    for i in range(r, n):
        if a[i][m]:
            return None
    return [a[i][m] for i in range(m)]


@dataclass(frozen=True)
class DiagonalRegion:
    """Face-closed set of gable orbits standing in for a diagonal neighborhood."""

    orbits: frozenset

    def __post_init__(self):
        for rep in self.orbits:
            if rep != set_orbit_canonical(rep):
                raise InvariantViolation("region orbit not canonical", witness=rep)
            if len(rep) > 1:
                for i in range(len(rep)):
                    face = set_orbit_canonical(rep[:i] + rep[i + 1:])
                    if face not in self.orbits:
                        raise InvariantViolation("region not closed under faces",
                                                 witness=face)

    @classmethod
    def from_orbits(cls, gable, reps, close=True):
        reps = {set_orbit_canonical(r) for r in reps}
        for r in reps:
            if r not in gable.orbit_sets:
                raise PreconditionError("orbit outside the gable", witness=r)
        if close:
            stack = list(reps)
            while stack:
                c = stack.pop()
                reps.add(c)
                if len(c) > 1:
                    for i in range(len(c)):
                        f = set_orbit_canonical(c[:i] + c[i + 1:])
                        if f not in reps:
                            stack.append(f)
        return cls(frozenset(reps))

    @classmethod
    def diagonal(cls, gable, realization=None):
        """Face closure of all orbits whose realization meets the diagonal.

        For staircase simplices, meeting the diagonal is equivalent to
        containing a vertex (v, v); with an explicit realization the exact
        feasibility test is used instead.
        """
        if realization is None:
            hits = [c for c in gable.orbit_sets if any(a == b for a, b in c)]
        else:
            hits = [c for c in gable.orbit_sets if touches_diagonal(c, realization)]
        return cls.from_orbits(gable, hits, close=True)

    def __contains__(self, rep):
        return set_orbit_canonical(rep) in self.orbits

    def contains_region(self, other):
        return other.orbits <= self.orbits


def gable_flatten(chain):
    """Set-orbit coefficients of a gable chain (sorting signs applied)."""
    out = {}
    for symbol, coeff in chain.terms.items():
        sign, sorted_sym = permutation_sign(symbol)
        if sign == 0:
            continue
        rep = set_orbit_canonical(sorted_sym)
        out[rep] = out.get(rep, 0) + sign * coeff
    return {k: v for k, v in out.items() if v}


def gable_homology_data(gable, region, k):
    """HomologyData of the orbit chain complex relative to a region."""
    basis_k = [c for c in gable.orbits_of_dim(k) if c not in region.orbits]
    basis_km1 = [c for c in gable.orbits_of_dim(k - 1) if c not in region.orbits] \
        if k > 0 else []
    basis_kp1 = [c for c in gable.orbits_of_dim(k + 1) if c not in region.orbits]
    d_k = boundary_matrix(basis_k, basis_km1, lambda rep: gable.orbit_faces(rep))
    d_kp1 = boundary_matrix(basis_kp1, basis_k, lambda rep: gable.orbit_faces(rep))
    return HomologyData(d_k, d_kp1, basis_k)


@dataclass(frozen=True)
class RelativeClassResult:
    is_relative_cycle: bool
    class_coordinates: tuple
    factors: object


def relative_cycle_class(chain, gable, region, data=None):
    """Relative cycle test and homology coordinates in (gable, region).

    The chain is a relative cycle iff every nonzero symbol of its boundary has
    orbit inside the region; in that case its class is expressed in the
    canonical generators of H(gable, region).
    """
    for symbol in chain.terms:
        sign, sorted_sym = permutation_sign(symbol)
        if sign == 0:
            continue
        if not gable.has_orbit(sorted_sym):
            raise PreconditionError("chain support outside the gable",
                                    witness=symbol)
    bnd = gable_boundary(chain)
    for rep, coeff in gable_flatten(bnd).items():
        if rep not in region:
            return RelativeClassResult(False, None, None)
    data = data or gable_homology_data(gable, region, chain.dim)
    vec = data.vector_of(gable_flatten(chain), drop=region.orbits)
    coords = data.class_of_vector(vec)
    return RelativeClassResult(True, coords, data.factors)


def _check_term_squares_in_region(term_list, gable, region):
    """(schnitt2) analog: orbits of every staircase cell of s_i x s_i lie in
    the region, checked on top cells (face closure covers the rest)."""
    k = term_list.dim
    for g, symbol in term_list.terms:
        support = tuple(sorted(set(symbol)))
        q = len(support) - 1
        for path in enumerate_paths(q, q):
            cell = path_symbol(support, support, path)
            rep = set_orbit_canonical(tuple(sorted(cell)))
            if rep not in region:
                raise PreconditionError(
                    "region misses an orbit of a term self-product",
                    witness=rep,
                )


def representative_independence_check(sigma, nu, gable, region):
    """Whether roof classes agree for sigma and sigma - boundary(nu).

    Preconditions (violations raise with the offending witness): sigma is a
    cycle, and the region contains all orbits arising from products of nu
    terms with themselves.
    """
    if nu.dim != sigma.dim + 1:
        raise PreconditionError("nu must be one dimension above sigma")
    sigma_chain = sigma.chain()
    if not boundary(sigma_chain).is_zero():
        raise PreconditionError("sigma is not a cycle")
    _check_term_squares_in_region(nu, gable, region)

    moved = TermList.from_chain(sigma_chain - boundary(nu.chain()))
    data = gable_homology_data(gable, region, 2 * sigma.dim)
    first = relative_cycle_class(roof(sigma), gable, region, data=data)
    second = relative_cycle_class(roof(moved), gable, region, data=data)
    if not first.is_relative_cycle:
        raise PreconditionError("roof of sigma is not a relative cycle here")
    if not second.is_relative_cycle:
        raise PreconditionError("roof of sigma - boundary(nu) is not a relative cycle here")
    diff = [a - b for a, b in zip(first.class_coordinates, second.class_coordinates)]
    return data.group.reduces_to_zero(diff)


@dataclass(frozen=True)
class RoofFamily:
    regions: tuple
    classes: tuple
    factors: tuple
    compatible: bool
    level_compatibility: tuple


def roof_family(sigma, gable, regions):
    """Relative classes of one roof across nested regions, with compatibility.

    regions are ordered from largest to smallest; the inclusion-induced map of
    pairs carries the class at the deeper (smaller) region to the class at the
    shallower one, and this is verified by explicit matrix computation.
    """
    regions = list(regions)
    if not regions:
        raise PreconditionError("at least one region required")
    for big, small in zip(regions, regions[1:]):
        if not big.contains_region(small):
            raise PreconditionError("regions are not nested")
    hat = roof(sigma)
    boundary_orbits = set(gable_flatten(gable_boundary(hat)))
    for region in regions:
        missing = [rep for rep in boundary_orbits if rep not in region]
        if missing:
            raise PreconditionError(
                "region misses a diagonal-touching boundary orbit",
                witness=sorted(missing)[0],
            )

    datas = [gable_homology_data(gable, region, hat.dim) for region in regions]
    classes = []
    for region, data in zip(regions, datas):
        result = relative_cycle_class(hat, gable, region, data=data)
        classes.append(result.class_coordinates)

    level_flags = []
    for j in range(len(regions) - 1):
        shallow, deep = datas[j], datas[j + 1]
        cols = []
        for vec in deep.generator_vectors():
            flat = {deep.basis[i]: c for i, c in enumerate(vec) if c}
            tvec = shallow.vector_of(flat, drop=regions[j].orbits)
            cols.append(list(shallow.class_of_vector(tvec)))
        if cols:
            matrix = IntMatrix.from_columns(cols, rows=shallow.generator_count)
        else:
            matrix = IntMatrix.zero(shallow.generator_count, deep.generator_count)
        induced = GroupMorphism(deep.group, shallow.group, matrix)
        mapped = induced.apply(list(classes[j + 1]))
        diff = [a - b for a, b in zip(mapped, classes[j])]
        level_flags.append(shallow.group.reduces_to_zero(diff))
    return RoofFamily(
        tuple(regions),
        tuple(classes),
        tuple(d.factors for d in datas),
        all(level_flags) if level_flags else True,
        tuple(level_flags),
    )


def fundamental_cycle(complex, k=None):
    """Orient the top simplices into a cycle with coefficients +-1.

    Works for closed orientable pseudomanifolds: every (k-1)-face must bound
    exactly two k-simplices and the orientation propagation must close up.
    """
    k = complex.dim if k is None else k
    tops = complex.simplices_of_dim(k)
    if not tops:
        raise PreconditionError("no top simplices", witness=k)
    if k == 0:
        return TermList.from_pairs(0, [(1, s) for s in tops])

    face_to_tops = {}
    for s in tops:
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            face_to_tops.setdefault(face, []).append((s, -1 if i % 2 else 1))
    for face, owners in face_to_tops.items():
        if len(owners) != 2:
            raise PreconditionError(
                "a face does not bound exactly two top simplices", witness=face
            )
    signs = {}
    for start in tops:
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            s = stack.pop()
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                for t, c_t in face_to_tops[face]:
                    if t == s:
                        continue
                    c_s = -1 if i % 2 else 1
                    want = -signs[s] * c_s * c_t
                    if t in signs:
                        if signs[t] != want:
                            raise PreconditionError("not orientable", witness=face)
                    else:
                        signs[t] = want
                        stack.append(t)
    term_list = TermList.from_pairs(k, [(signs[s], s) for s in tops])
    if not boundary(term_list.chain()).is_zero():
        raise PreconditionError("orientation does not close into a cycle")
    return term_list


@dataclass(frozen=True)
class FundamentalRoofReport:
    dim: int
    is_relative_cycle: bool
    boundary_symbols_checked: int
    support_matches: bool
    support_count: int
    expected_count: int
    coefficients_unit: bool

    @property
    def ok(self):
        return (self.is_relative_cycle and self.support_matches
                and self.coefficients_unit)


def fundamental_roof_check(m_complex, fundamental):
    """Verify the roof of a fundamental cycle is the gable fundamental chain.

    Checks: (a) the roof is a relative cycle modulo diagonal-touching orbits
    (every boundary symbol passes the exact diagonal test); (b) its support is
    exactly the staircase top cells of s x t over unordered pairs of distinct
    top simplices; (c) every coefficient is +-1.
    """
    k = fundamental.dim
    if k % 2:
        raise PreconditionError("fundamental dimension must be even", witness=k)
    tops = m_complex.simplices_of_dim(k)
    supports = sorted(tuple(sorted(set(s))) for _, s in fundamental.terms)
    if supports != tops:
        raise PreconditionError("term list is not one term per top simplex")
    for g, s in fundamental.terms:
        if g not in (1, -1):
            raise PreconditionError("coefficients must be +-1", witness=s)
    if not boundary(fundamental.chain()).is_zero():
        raise PreconditionError("fundamental term list is not a cycle")

    hat = roof(fundamental)
    realization = identity_realization(m_complex)
    bnd = gable_boundary(hat)
    is_cycle = all(touches_diagonal(sym, realization) for sym in bnd.terms)

    expected = set()
    for (g1, s1), (g2, s2) in combinations(fundamental.terms, 2):
        for path in enumerate_paths(k, k):
            expected.add(orbit_canonical(path_symbol(s1, s2, path)))
    support = set(hat.terms)
    units = all(c in (1, -1) for c in hat.terms.values())
    return FundamentalRoofReport(
        dim=2 * k,
        is_relative_cycle=is_cycle,
        boundary_symbols_checked=len(bnd.terms),
        support_matches=support == expected,
        support_count=len(support),
        expected_count=len(expected),
        coefficients_unit=units,
    )
