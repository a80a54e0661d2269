"""JSON encode/decode for every interchange schema.

Vertex labels are JSON scalars; tuple labels (pairs, barycenters, orbits) are
nested lists.  Rationals travel as "p/q" strings.  Dumps are deterministic:
sorted keys, fixed separators, no timestamps.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complexes import Chain, ComplexPair, RationalPoint, SimplicialComplex
from .errors import PreconditionError
from .groups import FgAbelianGroup, GroupMorphism
from .intlinalg import IntMatrix
from .limits import InverseSystem
from .nerve import CoverPair, CoverTower, GroundPair, RefinementWitness
from .posets import FinitePoset
from .roof import DiagonalRegion, TermList
from .shuffle import GableChain, ProductChain


def _label_to_json(v):
    if isinstance(v, tuple):
        return [_label_to_json(x) for x in v]
    return v


def _label_from_json(v):
    if isinstance(v, list):
        return tuple(_label_from_json(x) for x in v)
    return v


def fraction_to_json(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def fraction_from_json(s):
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


# -- matrices, groups, systems ------------------------------------------------

def matrix_to_json(m):
    return {"rows": m.rows, "cols": m.cols, "entries": list(m.entries)}


def matrix_from_json(data):
    return IntMatrix(int(data["rows"]), int(data["cols"]),
                     tuple(int(x) for x in data["entries"]))


def group_to_json(g):
    return {"gens": g.generator_count, "relations": matrix_to_json(g.relations)}


def group_from_json(data):
    return FgAbelianGroup(int(data["gens"]), matrix_from_json(data["relations"]))


def factors_to_json(f):
    return {"free_rank": f.free_rank, "torsion": list(f.torsion),
            "pretty": str(f)}


def poset_to_json(p):
    return {"elements": [_label_to_json(e) for e in p.elements],
            "leq": sorted([_label_to_json(a), _label_to_json(b)]
                          for a, b in p.leq)}


def poset_from_json(data):
    elements = tuple(_label_from_json(e) for e in data["elements"])
    pairs = [( _label_from_json(a), _label_from_json(b)) for a, b in data["leq"]]
    return FinitePoset.from_pairs(elements, pairs, close=True)


def system_to_json(sys):
    return {
        "poset": poset_to_json(sys.poset),
        "groups": {str(e): group_to_json(sys.group_at[e])
                   for e in sys.poset.elements},
        "maps": {"%s<=%s" % (lo, hi): matrix_to_json(sys.map_for[(lo, hi)].matrix)
                 for lo, hi in sys.poset.strict_pairs()},
    }


def system_from_json(data):
    poset = poset_from_json(data["poset"])
    groups = {}
    for e in poset.elements:
        key = str(e)
        if key not in data["groups"]:
            raise PreconditionError("missing group for element", witness=e)
        groups[e] = group_from_json(data["groups"][key])
    by_name = {str(e): e for e in poset.elements}
    maps = {}
    for key, mat in data.get("maps", {}).items():
        lo_s, hi_s = key.split("<=")
        lo, hi = by_name[lo_s], by_name[hi_s]
        maps[(lo, hi)] = GroupMorphism(groups[hi], groups[lo],
                                       matrix_from_json(mat))
    return InverseSystem.build(poset, groups, maps)


# -- complexes, chains, points ------------------------------------------------

def complex_to_json(k):
    return {"vertices": [_label_to_json(v) for v in k.vertices],
            "simplices": [[_label_to_json(v) for v in s]
                          for s in sorted(k.simplices)]}


def complex_from_json(data):
    simplices = [tuple(_label_from_json(v) for v in s)
                 for s in data.get("simplices", [])]
    simplices.extend((_label_from_json(v),) for v in data.get("vertices", []))
    if not simplices:
        return SimplicialComplex.empty()
    return SimplicialComplex.from_simplices(simplices)


def pair_to_json(pair):
    return {"complex": complex_to_json(pair.complex),
            "sub": complex_to_json(pair.sub)}


def pair_from_json(data):
    complex = complex_from_json(data["complex"])
    sub = complex_from_json(data["sub"]) if "sub" in data \
        else SimplicialComplex.empty()
    return ComplexPair(complex, sub)


def chain_to_json(c):
    return {"dim": c.dim,
            "terms": [{"coef": g, "vertices": [_label_to_json(v) for v in s]}
                      for s, g in sorted(c.terms.items())]}


def chain_from_json(data, cls=Chain):
    terms = []
    for t in data.get("terms", []):
        key = "vertices" if "vertices" in t else "pairs"
        symbol = tuple(_label_from_json(v) for v in t[key])
        terms.append((symbol, int(t["coef"])))
    return cls(int(data["dim"]), terms)


def product_chain_to_json(c):
    return {"dim": c.dim,
            "terms": [{"coef": g, "pairs": [_label_to_json(p) for p in s]}
                      for s, g in sorted(c.terms.items())]}


def product_chain_from_json(data):
    return chain_from_json(data, cls=ProductChain)


def gable_chain_from_json(data):
    return chain_from_json(data, cls=GableChain)


def term_list_to_json(t):
    return {"dim": t.dim,
            "terms": [{"coef": g, "vertices": [_label_to_json(v) for v in s]}
                      for g, s in t.terms]}


def term_list_from_json(data):
    pairs = []
    for t in data.get("terms", []):
        pairs.append((int(t["coef"]),
                      tuple(_label_from_json(v) for v in t["vertices"])))
    return TermList.from_pairs(int(data["dim"]), pairs)


def point_to_json(p):
    return {"coords": {json.dumps(_label_to_json(v)): fraction_to_json(x)
                       for v, x in p.coords}}


def point_from_json(data, complex):
    coords = {}
    for key, val in data["coords"].items():
        v = _label_from_json(json.loads(key))
        coords[v] = fraction_from_json(val)
    return RationalPoint.from_coords(complex, coords)


def region_to_json(r):
    return {"orbits": [[_label_to_json(p) for p in rep]
                       for rep in sorted(r.orbits)]}


def region_from_json(data, gable):
    reps = [tuple(_label_from_json(p) for p in rep) for rep in data["orbits"]]
    return DiagonalRegion.from_orbits(gable, reps, close=True)


# -- ground sets, covers, towers ----------------------------------------------

def ground_to_json(g):
    out = {"points": [_label_to_json(p) for p in g.points],
           "subset_a": [_label_to_json(a) for a in g.subset_a]}
    if g.coordinates:
        out["coordinates"] = {
            str(p): [fraction_to_json(x) for x in xs]
            for p, xs in g.coordinates
        }
    return out


def ground_from_json(data):
    points = [_label_from_json(p) for p in data["points"]]
    subset = [_label_from_json(a) for a in data.get("subset_a", [])]
    coords = None
    if "coordinates" in data:
        by_name = {str(p): p for p in points}
        coords = {by_name[name]: [fraction_from_json(x) for x in xs]
                  for name, xs in data["coordinates"].items()}
    return GroundPair.create(points, subset, coords)


def cover_to_json(c):
    return {"sets": {n: [_label_to_json(p) for p in pts] for n, pts in c.sets},
            "relative": list(c.relative_names)}


def cover_from_json(data):
    sets = {n: [_label_from_json(p) for p in pts]
            for n, pts in data["sets"].items()}
    return CoverPair.create(sets, tuple(data.get("relative", [])))


def tower_to_json(t):
    return {
        "poset": poset_to_json(t.poset),
        "covers": {str(label): cover_to_json(c) for label, c in t.covers.items()},
        "witnesses": {"%s<=%s" % (lo, hi): t.witnesses[(lo, hi)].as_dict()
                      for lo, hi in t.poset.strict_pairs()},
    }


def tower_from_json(data):
    poset = poset_from_json(data["poset"])
    by_name = {str(e): e for e in poset.elements}
    covers = {by_name[name]: cover_from_json(c)
              for name, c in data["covers"].items()}
    witnesses = {}
    for key, mapping in data.get("witnesses", {}).items():
        lo_s, hi_s = key.split("<=")
        witnesses[(by_name[lo_s], by_name[hi_s])] = RefinementWitness.create(mapping)
    return CoverTower.build(poset, covers, witnesses)


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text):
    return json.loads(text)
