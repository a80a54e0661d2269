"""Covers of finite ground pairs, nerves, refinement towers, Cech limits.

Ground sets are finite and covers are arbitrary named subsets, so every
statement about nerves, projections and limits is checkable exactly.  The
Cech group of a tower is the inverse limit of the nerve homologies along
refinement projections; projections are chosen deterministically
(lexicographically smallest containing coarse set), and their homology maps
are independent of that choice, a fact tested rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .complexes import ComplexPair, SimplicialComplex
from .errors import (
    InternalConsistencyError,
    InvariantViolation,
    PreconditionError,
)
from .homology import homology_data, induced_homology_map
from .limits import InverseSystem, inverse_limit
from .posets import FinitePoset


@dataclass(frozen=True)
class GroundPair:
    """Finite point set with a distinguished subset; optional coordinates."""

    points: tuple
    subset_a: tuple
    coordinates: tuple = ()  # optional ((point, (Fraction, ...)), ...)

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InvariantViolation("duplicate points")
        missing = [a for a in self.subset_a if a not in set(self.points)]
        if missing:
            raise InvariantViolation("subset_a not inside points", witness=missing[0])
        for p, xs in self.coordinates:
            if p not in set(self.points):
                raise InvariantViolation("coordinates for unknown point", witness=p)

    @classmethod
    def create(cls, points, subset_a=(), coordinates=None):
        coords = ()
        if coordinates:
            coords = tuple(sorted(
                (p, tuple(Fraction(x) for x in xs))
                for p, xs in coordinates.items()
            ))
        return cls(tuple(points), tuple(subset_a), coords)

    def coords_of(self, p):
        for q, xs in self.coordinates:
            if q == p:
                return xs
        raise PreconditionError("point has no coordinates", witness=p)


@dataclass(frozen=True)
class CoverPair:
    """Named subsets covering the points; relative names cover subset_a."""

    sets: tuple            # ((name, (point, ...)), ...) sorted by name
    relative_names: tuple

    def __post_init__(self):
        names = [n for n, _ in self.sets]
        if len(set(names)) != len(names):
            raise InvariantViolation("duplicate cover set names")
        for n in self.relative_names:
            if n not in set(names):
                raise InvariantViolation("relative name not a cover set", witness=n)

    @classmethod
    def create(cls, sets, relative_names=()):
        packed = tuple(sorted((n, tuple(sorted(set(pts)))) for n, pts in sets.items())
                       if isinstance(sets, dict)
                       else sorted((n, tuple(sorted(set(pts)))) for n, pts in sets))
        return cls(packed, tuple(relative_names))

    def as_dict(self):
        return {n: set(pts) for n, pts in self.sets}

    def names(self):
        return [n for n, _ in self.sets]

    def members(self, name):
        for n, pts in self.sets:
            if n == name:
                return set(pts)
        raise PreconditionError("unknown cover set", witness=name)

    def validate_for(self, ground):
        covered = set()
        for _, pts in self.sets:
            covered |= set(pts)
        missing = [p for p in ground.points if p not in covered]
        if missing:
            raise PreconditionError("cover misses a point", witness=missing[0])
        rel_covered = set()
        for n in self.relative_names:
            rel_covered |= self.members(n)
        missing_a = [a for a in ground.subset_a if a not in rel_covered]
        if missing_a:
            raise PreconditionError(
                "relative part does not cover subset_a", witness=missing_a[0]
            )


@dataclass(frozen=True)
class NervePair:
    """Nerve of a cover pair with its relative subnerve."""

    pair: ComplexPair
    cover: CoverPair

    @property
    def complex(self):
        return self.pair.complex

    @property
    def sub(self):
        return self.pair.sub


def nerve(ground, cover):
    """Nerve complex: one vertex per nonempty set, simplices by intersection.

    The relative subnerve holds the simplices whose sets meet subset_a
    jointly.
    """
    cover.validate_for(ground)
    nonempty = [(n, pts) for n, pts in cover.sets if pts]
    simplices = []
    relative = []
    a_set = set(ground.subset_a)

    def grow(chosen, intersection):
        simplices.append(tuple(n for n, _ in chosen))
        if intersection & a_set:
            relative.append(tuple(n for n, _ in chosen))
        last = chosen[-1][0]
        for n, pts in nonempty:
            if n <= last:
                continue
            meet = intersection & set(pts)
            if meet:
                grow(chosen + [(n, pts)], meet)

    for n, pts in nonempty:
        grow([(n, pts)], set(pts))

    complex = SimplicialComplex.from_simplices(simplices) if simplices \
        else SimplicialComplex.empty()
    sub = SimplicialComplex.from_simplices(relative) if relative \
        else SimplicialComplex.empty()
    return NervePair(ComplexPair(complex, sub), cover)


@dataclass(frozen=True)
class RefinementWitness:
    """fine set name -> containing coarse set name, relative names respected."""

    assignment: tuple  # sorted (fine, coarse) pairs

    @classmethod
    def create(cls, mapping):
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.assignment)

    def validate(self, fine, coarse):
        mapping = self.as_dict()
        coarse_rel = set(coarse.relative_names)
        for n, pts in fine.sets:
            target = mapping.get(n)
            if target is None:
                raise PreconditionError("witness misses a fine set", witness=n)
            if not set(pts) <= coarse.members(target):
                raise PreconditionError(
                    "witness target does not contain the fine set", witness=(n, target)
                )
        for n in fine.relative_names:
            if mapping[n] not in coarse_rel:
                raise PreconditionError(
                    "relative fine set mapped to a non-relative coarse set",
                    witness=(n, mapping[n]),
                )


def find_witness(fine, coarse):
    """Deterministic witness: lexicographically smallest containing coarse set.

    Relative fine sets pick the smallest containing relative coarse set.
    """
    coarse_rel = set(coarse.relative_names)
    mapping = {}
    for n, pts in fine.sets:
        pts = set(pts)
        candidates = [m for m, qs in coarse.sets if pts <= set(qs)]
        if n in set(fine.relative_names):
            candidates = [m for m in candidates if m in coarse_rel]
        if not candidates:
            raise PreconditionError("not a refinement: no containing set",
                                    witness=n)
        mapping[n] = min(candidates)
    return RefinementWitness.create(mapping)


def all_witnesses(fine, coarse):
    """Every valid witness, for exhaustive independence checks."""
    coarse_rel = set(coarse.relative_names)
    options = []
    names = []
    for n, pts in fine.sets:
        pts = set(pts)
        candidates = [m for m, qs in coarse.sets if pts <= set(qs)]
        if n in set(fine.relative_names):
            candidates = [m for m in candidates if m in coarse_rel]
        if not candidates:
            return
        names.append(n)
        options.append(sorted(candidates))
    for combo in iter_product(*options):
        yield RefinementWitness.create(dict(zip(names, combo)))


def common_refinement(c1, c2):
    """Pairwise intersections; refines both with the factor witnesses."""
    sets = {}
    w1 = {}
    w2 = {}
    for n1, p1 in c1.sets:
        for n2, p2 in c2.sets:
            meet = tuple(sorted(set(p1) & set(p2)))
            if not meet:
                continue
            name = "%s&%s" % (n1, n2)
            sets[name] = meet
            w1[name] = n1
            w2[name] = n2
    relative = []
    rel1, rel2 = set(c1.relative_names), set(c2.relative_names)
    for name in sets:
        n1, n2 = w1[name], w2[name]
        if n1 in rel1 and n2 in rel2:
            relative.append(name)
    refined = CoverPair.create(sets, tuple(sorted(relative)))
    return refined, RefinementWitness.create(w1), RefinementWitness.create(w2)


@dataclass(frozen=True)
class NerveProjection:
    vertex_map: dict
    source: NervePair
    target: NervePair
    witness: RefinementWitness


def projection(ground, fine, coarse, witness=None):
    """Simplicial map of nerves induced by a refinement witness.

    Simpliciality is automatic: a common point of fine sets certifies the
    intersection of their images.  The relative subnerve is preserved.
    """
    if witness is None:
        witness = find_witness(fine, coarse)
    witness.validate(fine, coarse)
    source = nerve(ground, fine)
    target = nerve(ground, coarse)
    mapping = witness.as_dict()
    vertex_map = {n: mapping[n] for n in source.complex.vertices}
    return NerveProjection(vertex_map, source, target, witness)


@dataclass(frozen=True)
class CoverTower:
    """Finite refinement poset of cover pairs with witnesses."""

    poset: FinitePoset
    covers: dict
    witnesses: dict  # (coarse_label, fine_label) -> RefinementWitness

    @classmethod
    def build(cls, poset, covers, witnesses=None):
        witnesses = dict(witnesses or {})
        for lo, hi in poset.strict_pairs():
            if (lo, hi) not in witnesses:
                witnesses[(lo, hi)] = find_witness(covers[hi], covers[lo])
        return cls(poset, dict(covers), witnesses)

    def validate_for(self, ground):
        for label, cover in self.covers.items():
            cover.validate_for(ground)
        for lo, hi in self.poset.strict_pairs():
            self.witnesses[(lo, hi)].validate(self.covers[hi], self.covers[lo])


@dataclass(frozen=True)
class CechResult:
    group: object
    system: InverseSystem
    limit: object  # full LimitResult


def cech_homology(ground, tower, k):
    """Inverse limit of nerve homologies along the tower's projections."""
    tower.validate_for(ground)
    nerves = {}
    datas = {}
    for label, cover in tower.covers.items():
        nerves[label] = nerve(ground, cover)
        datas[label] = homology_data(nerves[label].pair, k)
    groups = {label: datas[label].group for label in tower.covers}
    maps = {}
    for lo, hi in tower.poset.strict_pairs():
        proj = projection(ground, tower.covers[hi], tower.covers[lo],
                          tower.witnesses[(lo, hi)])
        maps[(lo, hi)] = induced_homology_map(
            proj.vertex_map, nerves[hi].pair, nerves[lo].pair, k,
            data_src=datas[hi], data_tgt=datas[lo],
        )
    try:
        system = InverseSystem.build(tower.poset, groups, maps)
    except InvariantViolation as exc:
        raise InternalConsistencyError(
            "induced nerve maps failed functoriality; this contradicts the "
            "choice-independence of projections",
            witness=exc.witness,
        ) from exc
    result = inverse_limit(system)
    return CechResult(result.limit, system, result)


def ball_cover(ground, centers, radius, metric="linf"):
    """Cover by metric balls around chosen centers; exact comparisons.

    metric 'linf' compares Chebyshev distance with radius; 'l2sq' compares
    squared euclidean distance with radius (given in squared units).  The
    relative part collects the balls meeting subset_a.  Uncovered points are
    reported for the caller to adjust the radius.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise PreconditionError("radius must be positive", witness=radius)
    if metric not in ("linf", "l2sq"):
        raise PreconditionError("unknown metric", witness=metric)
    sets = {}
    for c in centers:
        cx = ground.coords_of(c)
        members = []
        for p in ground.points:
            px = ground.coords_of(p)
            if len(px) != len(cx):
                raise PreconditionError("coordinate dimensions differ", witness=p)
            if metric == "linf":
                dist = max((abs(a - b) for a, b in zip(px, cx)), default=Fraction(0))
            else:
                dist = sum(((a - b) ** 2 for a, b in zip(px, cx)), Fraction(0))
            if dist <= radius:
                members.append(p)
        sets["B(%s)" % (c,)] = tuple(members)
    covered = {p for pts in sets.values() for p in pts}
    uncovered = [p for p in ground.points if p not in covered]
    if uncovered:
        raise PreconditionError("balls do not cover the points",
                                witness=tuple(uncovered))
    a_set = set(ground.subset_a)
    relative = tuple(sorted(n for n, pts in sets.items() if set(pts) & a_set))
    return CoverPair.create(sets, relative)
