"""Barycentric subdivision, full subcomplexes, cones, and retraction data.

Subdivision vertices are labeled by the sorted vertex tuple of the simplex
whose barycenter they are, so sd K is again an ordinary complex with
comparable labels.  All realization data is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    RationalPoint,
    SimplicialComplex,
    affine_combination,
)
from .errors import PreconditionError


def is_full(complex, sub):
    """Whether sub contains every simplex of complex spanned by sub vertices.

    Returns (flag, witness): witness is an offending simplex when not full.
    """
    if not sub.is_subcomplex_of(complex):
        raise PreconditionError("not a subcomplex",
                                witness=sorted(sub.simplices - complex.simplices)[0])
    sub_vertices = set(sub.vertices)
    for s in sorted(complex.simplices):
        if set(s) <= sub_vertices and s not in sub.simplices:
            return False, s
    return True, None


def max_disjoint_subcomplex(complex, sub):
    """Largest subcomplex of complex with no vertex in sub."""
    forbidden = set(sub.vertices)
    keep = [s for s in complex.simplices if not (set(s) & forbidden)]
    if not keep:
        return SimplicialComplex.empty()
    return SimplicialComplex.from_simplices(keep)


def classify_simplex(complex, sub, simplex):
    """Place one simplex of complex in the L / N / split trichotomy.

    sub must be full; N is the largest subcomplex disjoint from sub.  Returns
    ("in_L", None), ("in_N", None) or ("split", (s_in_L, s_in_N)).
    """
    full, witness = is_full(complex, sub)
    if not full:
        raise PreconditionError("subcomplex is not full", witness=witness)
    simplex = tuple(sorted(simplex))
    if not complex.has_simplex(simplex):
        raise PreconditionError("not a simplex of the complex", witness=simplex)
    in_l = tuple(v for v in simplex if v in set(sub.vertices))
    out_l = tuple(v for v in simplex if v not in set(sub.vertices))
    if not out_l:
        return ("in_L", None)
    if not in_l:
        return ("in_N", None)
    return ("split", (in_l, out_l))


@dataclass(frozen=True)
class SubdivisionResult:
    base: SimplicialComplex
    sd_complex: SimplicialComplex
    realization: dict          # barycenter label -> RationalPoint in |base|
    induced_sub: SimplicialComplex


def barycentric_subdivision(complex, sub=None):
    """sd K with exact barycenter realization and the induced subdivision of sub.

    Vertices of sd K are the simplices of K (as sorted tuples); simplices are
    chains under the proper-face relation; the barycenter of a q-simplex gets
    coordinate 1/(q+1) at each of its vertices.
    """
    if sub is not None and not sub.is_subcomplex_of(complex):
        extra = sorted(sub.simplices - complex.simplices)
        raise PreconditionError("sub is not a subcomplex", witness=extra[0])

    simplices = sorted(complex.simplices)
    chains = []

    def grow(chain):
        chains.append(tuple(chain))
        top = chain[-1]
        for s in simplices:
            if len(s) > len(top) and set(top) < set(s):
                chain.append(s)
                grow(chain)
                chain.pop()

    for s in simplices:
        grow([s])

    sd = SimplicialComplex.from_simplices(chains) if chains \
        else SimplicialComplex.empty()
    realization = {
        s: RationalPoint.from_coords(
            complex, {v: Fraction(1, len(s)) for v in s})
        for s in simplices
    }
    if sub is None or not sub.simplices:
        induced = SimplicialComplex.empty()
    else:
        sub_chains = [c for c in chains if all(s in sub.simplices for s in c)]
        induced = SimplicialComplex.from_simplices(sub_chains)
    return SubdivisionResult(complex, sd, realization, induced)


def subdivision_partition_check(complex, sub_result):
    """Verify that open cells of sd K with carrier s partition <s>, per simplex.

    For each simplex s of the base: collects the sd-cells whose realized
    carrier is s (the chains with maximum s), checks finiteness and
    distinctness, and checks that the full-dimensional cells' exact volume
    ratios sum to 1.  Returns a report dict; "violations" is empty on success.
    """
    if sub_result.base is not complex and sub_result.base != complex:
        raise PreconditionError("subdivision was not produced from this complex")
    report = {"per_simplex": {}, "violations": []}
    sd = sub_result.sd_complex
    for s in sorted(complex.simplices):
        # the carrier of an sd-cell is the largest simplex in its chain
        cells = [c for c in sd.simplices if max(c, key=len) == s]
        dim = len(s) - 1
        tops = [c for c in cells if len(c) == dim + 1]
        volumes = []
        for cell in tops:
            rows = [[sub_result.realization[b].coord(v) for v in s] for b in cell]
            vol = abs(_det(rows))
            volumes.append(vol)
        total = sum(volumes, Fraction(0))
        entry = {
            "cell_count": len(cells),
            "top_cells": len(tops),
            "volumes": sorted(volumes),
            "volume_sum": total,
        }
        report["per_simplex"][s] = entry
        if len(set(cells)) != len(cells):
            report["violations"].append(("duplicate cells", s))
        if total != 1:
            report["violations"].append(("volume sum", s, total))
        if any(v <= 0 for v in volumes):
            report["violations"].append(("degenerate cell volume", s))
    return report


def _det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def fresh_apex(complex, apex=None):
    if apex is not None:
        return apex
    if not complex.vertices:
        return "*"
    if all(isinstance(v, int) for v in complex.vertices):
        return max(complex.vertices) + 1
    if all(isinstance(v, str) for v in complex.vertices):
        a = "*"
        while a in complex.vertices:
            a += "*"
        return a
    raise PreconditionError(
        "cannot invent an apex comparable with these vertex labels; pass apex="
    )


def cone_pair(pair, apex=None):
    """X with the cone on A glued along A: the mapping cone of the inclusion.

    Returns (cone_complex, apex).  Simplices: all of X, the apex, and
    s + {apex} for every simplex s of A.
    """
    apex = fresh_apex(pair.complex, apex)
    if apex in pair.complex.vertices:
        raise PreconditionError("apex already a vertex", witness=apex)
    simplices = list(pair.complex.simplices)
    simplices.append((apex,))
    for s in pair.sub.simplices:
        simplices.append(tuple(sorted(s + (apex,))))
    return SimplicialComplex.from_simplices(simplices), apex


@dataclass(frozen=True)
class RetractionResult:
    a: Fraction
    alpha_prime: RationalPoint
    alpha_out: RationalPoint
    n_complex: SimplicialComplex
    n1_complex: SimplicialComplex


def retract_point(complex, sub, point, t):
    """Deformation-retraction data toward a full subcomplex, evaluated at t.

    a is the coordinate mass on sub vertices; alpha_prime the rescaled
    sub-part; alpha_out the point t*alpha_prime + (1-t)*point.  Points of |sub|
    are fixed for every t; points of |N| are rejected.  n1_complex describes
    the largest subcomplex of sd K disjoint from sub, whose complement is the
    open set on which the retraction is defined after subdividing.
    """
    t = Fraction(t)
    if t < 0 or t > 1:
        raise PreconditionError("t must lie in [0, 1]", witness=t)
    full, witness = is_full(complex, sub)
    if not full:
        raise PreconditionError("subcomplex is not full", witness=witness)
    sub_vertices = set(sub.vertices)
    a = sum((x for v, x in point.coords if v in sub_vertices), Fraction(0))
    if a == 0:
        raise PreconditionError(
            "point lies in |N|; retraction undefined there",
            witness=point.support(),
        )
    prime_coords = {v: x / a for v, x in point.coords if v in sub_vertices}
    alpha_prime = RationalPoint.from_coords(complex, prime_coords)
    if a == 1:
        alpha_out = point
    else:
        alpha_out = affine_combination(complex, [(t, alpha_prime), (1 - t, point)])
    n_complex = max_disjoint_subcomplex(complex, sub)
    sd = barycentric_subdivision(complex, sub)
    n1_complex = max_disjoint_subcomplex(sd.sd_complex, sd.induced_sub)
    return RetractionResult(a, alpha_prime, alpha_out, n_complex, n1_complex)
