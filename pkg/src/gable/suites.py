"""Seeded verification suites behind the CLI's `verify` command.

Every suite is deterministic given its seed: suite randomness comes from a
Random instance derived from (seed, suite name), so `verify all` verdicts do
not depend on execution order or parallelism.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .complexes import (
    Chain,
    ComplexPair,
    RationalPoint,
    SimplicialComplex,
    affine_combination,
    boundary,
    identity_realization,
)
from .errors import PreconditionError
from .groups import (
    FgAbelianGroup,
    GroupMorphism,
    free_group,
    invariant_factors,
)
from .homology import homology, induced_homology_map
from .intlinalg import IntMatrix, smith_decomposition
from .limits import InverseSystem, cone_factorization, inverse_limit, restricted_limit_compare
from .nerve import (
    CoverPair,
    CoverTower,
    GroundPair,
    all_witnesses,
    cech_homology,
    common_refinement,
    nerve,
    projection,
)
from .posets import FinitePoset, cofinality_class
from .roof import (
    DiagonalRegion,
    TermList,
    fundamental_cycle,
    fundamental_roof_check,
    relative_cycle_class,
    representative_independence_check,
    roof,
    roof_family,
    touches_diagonal,
)
from .shuffle import (
    cross,
    enumerate_paths,
    gable_boundary,
    path_symbol,
    product_boundary,
    product_complex,
    quotient_project,
    set_orbit_canonical,
    swap_symbol,
)
from .subdivision import (
    barycentric_subdivision,
    classify_simplex,
    cone_pair,
    is_full,
    retract_point,
    subdivision_partition_check,
)


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""
    witness: object = None

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.details:
            out["details"] = self.details
        if self.witness is not None:
            out["witness"] = repr(self.witness)
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"suite": self.suite, "seed": self.seed,
                "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


# -- random generators ---------------------------------------------------------

def random_complex(rng, max_vertices=6, max_dim=2, max_tops=5):
    n = rng.randint(2, max_vertices)
    verts = list(range(n))
    tops = []
    for _ in range(rng.randint(1, max_tops)):
        size = rng.randint(1, min(max_dim + 1, n))
        tops.append(tuple(sorted(rng.sample(verts, size))))
    return SimplicialComplex.from_simplices(tops)


def random_subcomplex(rng, complex):
    simplices = sorted(complex.simplices)
    chosen = [s for s in simplices if rng.random() < 0.4]
    if not chosen:
        chosen = [simplices[0]]
    return SimplicialComplex.from_simplices(chosen)


def random_chain(rng, complex, k, spread=2):
    symbols = complex.simplices_of_dim(k)
    if not symbols:
        return Chain(k)
    terms = {}
    for _ in range(rng.randint(1, 4)):
        base = rng.choice(symbols)
        perm = list(base)
        rng.shuffle(perm)
        terms[tuple(perm)] = rng.randint(-spread, spread)
    return Chain(k, terms)


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix(rows, cols,
                     tuple(rng.randint(-bound, bound) for _ in range(rows * cols)))


def random_chain_system(rng, length=3):
    """Inverse system over a chain poset with varied groups and free maps."""
    labels = tuple("c%d" % i for i in range(length))
    poset = FinitePoset.from_pairs(labels, list(zip(labels, labels[1:])))
    groups = {}
    for lab in labels:
        n = rng.randint(1, 2)
        if rng.random() < 0.4:
            d = rng.choice([2, 3, 4])
            rel = IntMatrix.diagonal([d] * n, rows=n, cols=n)
            groups[lab] = FgAbelianGroup(n, rel)
        else:
            groups[lab] = free_group(n)
    maps = {}
    for lo, hi in zip(labels, labels[1:]):
        g_hi, g_lo = groups[hi], groups[lo]
        while True:
            m = random_matrix(rng, g_lo.generator_count, g_hi.generator_count, 3)
            try:
                maps[(lo, hi)] = GroupMorphism(g_hi, g_lo, m)
                break
            except Exception:
                continue
    return InverseSystem.build(poset, groups, maps)


def random_cube_system(rng, bits=2):
    """Powers of one endomorphism over the Boolean cube (graded, functorial)."""
    subsets = []
    for mask in range(1 << bits):
        subsets.append(tuple(i for i in range(bits) if mask >> i & 1))
    pairs = [(a, b) for a in subsets for b in subsets if set(a) <= set(b)]
    poset = FinitePoset.from_pairs(tuple(subsets), pairs)
    n = rng.randint(1, 2)
    if rng.random() < 0.5:
        g = free_group(n)
    else:
        d = rng.choice([2, 3])
        g = FgAbelianGroup(n, IntMatrix.diagonal([d] * n, rows=n, cols=n))
    m = random_matrix(rng, n, n, 2)
    power = {0: IntMatrix.identity(n)}
    for i in range(1, bits + 1):
        power[i] = m * power[i - 1]
    groups = {s: g for s in subsets}
    maps = {}
    for lo, hi in pairs:
        maps[(lo, hi)] = GroupMorphism(g, g, power[len(hi) - len(lo)])
    return InverseSystem(poset, groups, maps)


def random_strong_cofinal_subset(rng, poset):
    elements = list(poset.elements)
    for _ in range(200):
        size = rng.randint(1, len(elements))
        subset = rng.sample(elements, size)
        if cofinality_class(poset, subset) == "strong":
            return subset
    tops = [e for e in elements
            if all(poset.related(a, e) for a in elements)]
    return tops[:1] if tops else elements


# -- individual suites ----------------------------------------------------------

def suite_snf(rng, trials=200, **_):
    checks = []
    ok = True
    witness = None
    for t in range(trials):
        r = rng.randint(0, 6)
        c = rng.randint(0, 6)
        m = random_matrix(rng, r, c, 9)
        s = smith_decomposition(m)
        good = (s.u * m * s.v).entries == s.d.entries
        good &= (s.u * s.u_inv).is_identity() and (s.v * s.v_inv).is_identity()
        diag = s.diagonal
        for a, b in zip(diag, diag[1:]):
            good &= (b % a == 0) if a else (b == 0)
        good &= all(s.d.entry(i, j) == 0
                    for i in range(r) for j in range(c) if i != j)
        if not good:
            ok = False
            witness = m.to_rows()
            break
    checks.append(Check("reconstruction+divisibility+unimodularity, %d matrices"
                        % trials, ok, witness=witness))
    return checks


def suite_invariant_factors(rng, trials=50, **_):
    checks = []
    ok = True
    witness = None
    for _ in range(trials):
        n = rng.randint(1, 4)
        rel = random_matrix(rng, n, rng.randint(0, 4), 6)
        g = FgAbelianGroup(n, rel)
        base = invariant_factors(g)
        perm = list(range(n))
        rng.shuffle(perm)
        permuted = FgAbelianGroup(n, rel.select_rows(perm))
        if invariant_factors(permuted) != base:
            ok, witness = False, ("permutation", rel.to_rows())
            break
        if rel.cols:
            combo = [0] * n
            for j in range(rel.cols):
                c = rng.randint(-2, 2)
                col = rel.column(j)
                combo = [x + c * y for x, y in zip(combo, col)]
            extra = IntMatrix.from_columns([combo], rows=n)
            from .intlinalg import hstack
            bigger = FgAbelianGroup(n, hstack(rel, extra))
            if invariant_factors(bigger) != base:
                ok, witness = False, ("redundant relation", rel.to_rows())
                break
    checks.append(Check("invariant factors are presentation-invariant, %d trials"
                        % trials, ok, witness=witness))
    return checks


def suite_boundary(rng, trials=100, **_):
    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=6, max_dim=3)
        dim = rng.randint(1, max(1, k.dim))
        c = random_chain(rng, k, dim)
        if not boundary(boundary(c)).is_zero():
            ok, witness = False, c.terms
            break
    checks = [Check("boundary of boundary vanishes, %d random chains" % trials,
                    ok, witness=witness)]
    c = Chain(2, {("a", "b", "c"): 1})
    checks.append(Check(
        "hand boundary of a triangle symbol",
        boundary(c).terms == {("b", "c"): 1, ("a", "c"): -1, ("a", "b"): 1},
    ))
    return checks


def suite_homology_sd(rng, trials=20, **_):
    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sd = barycentric_subdivision(k)
        for dim in range(k.dim + 1):
            a = homology(ComplexPair.absolute(k), dim)[0]
            b = homology(ComplexPair.absolute(sd.sd_complex), dim)[0]
            if a != b:
                ok, witness = False, (sorted(k.simplices), dim)
                break
        if not ok:
            break
    return [Check("subdivision preserves homology, %d complexes" % trials,
                  ok, witness=witness)]


def suite_cone(rng, trials=20, **_):
    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sub = random_subcomplex(rng, k)
        pair = ComplexPair(k, sub)
        cone, apex = cone_pair(pair)
        top = max(k.dim + 1, 1)
        for dim in range(top + 1):
            rel = homology(pair, dim)[0]
            red = homology(ComplexPair.absolute(cone), dim, reduced=(dim == 0))[0]
            if rel != red:
                ok, witness = False, (sorted(k.simplices), sorted(sub.simplices), dim)
                break
        if not ok:
            break
    return [Check("reduced cone homology equals relative homology, %d pairs"
                  % trials, ok, witness=witness)]


def suite_subdivision(rng, trials=12, samples=50, **_):
    checks = []
    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sub = random_subcomplex(rng, k)
        sd = barycentric_subdivision(k, sub)
        flag, bad = is_full(sd.sd_complex, sd.induced_sub)
        if not flag:
            ok, witness = False, bad
            break
        report = subdivision_partition_check(k, sd)
        if report["violations"]:
            ok, witness = False, report["violations"][0]
            break
        full_flag, bad = is_full(k, sub)
        if full_flag:
            seen = {"in_L": 0, "in_N": 0, "split": 0}
            for s in k.simplices:
                kind, _parts = classify_simplex(k, sub, s)
                seen[kind] += 1
            if sum(seen.values()) != len(k.simplices):
                ok, witness = False, ("classification miscount", seen)
                break
    checks.append(Check(
        "induced subdivisions full + exact partition volumes, %d complexes"
        % trials, ok, witness=witness))

    tri = SimplicialComplex.from_simplices([(0, 1, 2)])
    sd = barycentric_subdivision(tri)
    rep = subdivision_partition_check(tri, sd)
    vols = rep["per_simplex"][(0, 1, 2)]["volumes"]
    checks.append(Check("triangle subdivides into 6 cells of volume 1/6",
                        vols == [Fraction(1, 6)] * 6 and not rep["violations"]))

    k = SimplicialComplex.from_simplices([("u", "v")])
    sub = SimplicialComplex.from_simplices([("u",)])
    p = RationalPoint.from_coords(k, {"u": Fraction(1, 3), "v": Fraction(2, 3)})
    out = retract_point(k, sub, p, 1)
    checks.append(Check("edge retraction hand values",
                        out.a == Fraction(1, 3)
                        and out.alpha_prime.as_dict() == {"u": Fraction(1)}))
    ok = True
    witness = None
    for _ in range(samples):
        kk = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sub = random_subcomplex(rng, kk)
        flag, _bad = is_full(kk, sub)
        if not flag:
            continue
        v = rng.choice(sub.vertices)
        simplex = rng.choice([s for s in kk.simplices if v in s])
        weights = [rng.randint(1, 4) for _ in simplex]
        total = sum(weights)
        point = RationalPoint.from_coords(
            kk, {w: Fraction(c, total) for w, c in zip(simplex, weights)})
        t = Fraction(rng.randint(0, 6), 6)
        try:
            res = retract_point(kk, sub, point, t)
        except Exception:
            continue
        if t == 1 and not set(res.alpha_out.support()) <= set(sub.vertices):
            ok, witness = False, point.as_dict()
            break
        sub_point = all(w in set(sub.vertices) for w in point.support())
        if sub_point and res.alpha_out != point:
            ok, witness = False, point.as_dict()
            break
        interp = affine_combination(
            kk, [(t, res.alpha_prime), (1 - t, point)]) \
            if res.a != 1 else point
        if res.alpha_out != interp:
            ok, witness = False, point.as_dict()
            break
    checks.append(Check(
        "retraction lands in |L| at t=1, fixes |L|, affine in t (%d samples)"
        % samples, ok, witness=witness))
    return checks


def gaussian_binomial(m, n):
    """Coefficient list of the q-binomial [m+n choose m], by the DP recurrence."""
    table = {}
    for i in range(m + 1):
        table[(i, 0)] = [1]
    for j in range(n + 1):
        table[(0, j)] = [1]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            # last step R at height j contributes q^j, last step U contributes 1
            shifted = [0] * j + table[(i - 1, j)]
            up = table[(i, j - 1)]
            out = [0] * max(len(shifted), len(up))
            for t, x in enumerate(shifted):
                out[t] += x
            for t, x in enumerate(up):
                out[t] += x
            table[(i, j)] = out
    return table[(m, n)]


def suite_shuffle_laws(rng, max_mn=4, **_):
    import math

    checks = []
    ok = True
    witness = None
    for m in range(max_mn + 1):
        for n in range(max_mn + 1):
            paths = enumerate_paths(m, n)
            if len(paths) != math.comb(m + n, m):
                ok, witness = False, (m, n, "count")
                break
            poly = [0] * (m * n + 1)
            for p in paths:
                poly[p.area] += 1
                if p.area + p.reflection.area != m * n:
                    ok, witness = False, (m, n, p.steps)
                    break
            if poly != gaussian_binomial(m, n):
                ok, witness = False, (m, n, "gaussian")
                break
        if not ok:
            break
    checks.append(Check(
        "path count, area generating function, reflection areas (m,n <= %d)"
        % max_mn, ok, witness=witness))

    ok = True
    witness = None
    for m in range(6):
        for n in range(6):
            if m + n > 5 or m + n == 0:
                continue
            s1 = tuple(range(m + 1))
            s2 = tuple(range(100, 100 + n + 1))
            c1 = Chain(m, {s1: 1})
            c2 = Chain(n, {s2: 1})
            left = product_boundary(cross(c1, c2))
            sign = -1 if m % 2 else 1
            t1 = cross(boundary(c1), c2) if m else type(left)(m + n - 1)
            t2 = cross(c1, boundary(c2)) if n else type(left)(m + n - 1)
            if left != t1 + sign * t2:
                ok, witness = False, (m, n)
                break
        if not ok:
            break
    checks.append(Check(
        "product boundary formula on generic symbols, m+n <= 5", ok,
        witness=witness))

    a = Chain(1, {("a", "b"): 1})
    b = Chain(1, {("c", "d"): 1})
    want = {(("a", "c"), ("b", "c"), ("b", "d")): 1,
            (("a", "c"), ("a", "d"), ("b", "d")): -1}
    checks.append(Check("hand cross of two edges", cross(a, b).terms == want))

    ok = True
    for _ in range(30):
        k = random_complex(rng, max_vertices=5, max_dim=2)
        d1, d2 = rng.randint(0, 2), rng.randint(0, 2)
        c1 = random_chain(rng, k, d1)
        c2 = random_chain(rng, k, d1)
        c3 = random_chain(rng, k, d2)
        if cross(c1 + c2, c3) != cross(c1, c3) + cross(c2, c3):
            ok = False
            break
        if cross(c3, c1 + c2) != cross(c3, c1) + cross(c3, c2):
            ok = False
            break
    checks.append(Check("cross is bilinear, 30 random triples", ok))
    return checks


def suite_shuffle_parity(rng, max_k=3, **_):
    checks = []
    verts = (0, 1, 2, 3)
    for k in range(1, max_k + 1):
        ok = True
        witness = None
        count = 0
        for s1 in permutations(verts, k + 1):
            for s2 in permutations(verts, k + 1):
                p1 = quotient_project(cross(Chain(k, {s1: 1}), Chain(k, {s2: 1})))
                p2 = quotient_project(cross(Chain(k, {s2: 1}), Chain(k, {s1: 1})))
                want = p2 if k % 2 == 0 else -1 * p2
                if p1 != want:
                    ok, witness = False, (s1, s2)
                    break
                count += 1
            if not ok:
                break
        checks.append(Check(
            "quotient parity sign (-1)^k at k=%d, %d symbol pairs" % (k, count),
            ok, witness=witness))
    ok = True
    for k in range(1, max_k + 1):
        s1 = tuple(range(k + 1))
        s2 = tuple(range(50, 50 + k + 1))
        for f in enumerate_paths(k, k):
            if swap_symbol(path_symbol(s2, s1, f)) != path_symbol(s1, s2, f.reflection):
                ok = False
    checks.append(Check("swap of a path cell is the reflected path cell", ok))
    return checks


def suite_product_chainmap(rng, trials=60, **_):
    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=5, max_dim=2)
        d1, d2 = rng.randint(0, 2), rng.randint(0, 2)
        c = cross(random_chain(rng, k, d1), random_chain(rng, k, d2))
        if quotient_project(product_boundary(c)) != gable_boundary(quotient_project(c)):
            ok, witness = False, c.terms
            break
    return [Check("quotient projection is a chain map, %d products" % trials,
                  ok, witness=witness)]


def _diag_region_and_gable(complex):
    res = product_complex(complex)
    return res.gable, DiagonalRegion.diagonal(res.gable)


def suite_roof_existence(rng, trials=10, **_):
    checks = []
    dd3 = SimplicialComplex.from_simplices([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    rep = fundamental_roof_check(dd3, fundamental_cycle(dd3))
    checks.append(Check(
        "boundary-of-3-simplex roof: 36 cells, unit coefficients, diagonal boundary",
        rep.ok and rep.support_count == 36))
    tor = SimplicialComplex.from_simplices(
        [tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)]
        + [tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)])
    rep = fundamental_roof_check(tor, fundamental_cycle(tor))
    checks.append(Check(
        "7-vertex torus roof: 546 cells, unit coefficients, diagonal boundary",
        rep.ok and rep.support_count == 546))

    ok = True
    witness = None
    solid = SimplicialComplex.from_simplices([(0, 1, 2, 3), (1, 2, 3, 4)])
    realization = identity_realization(solid)
    for _ in range(trials):
        nu = random_chain(rng, solid, 3)
        sigma = boundary(nu)
        if sigma.is_zero():
            continue
        hat = roof(TermList.from_chain(sigma))
        bad = [s for s in gable_boundary(hat).terms
               if not touches_diagonal(s, realization)]
        if bad:
            ok, witness = False, bad[0]
            break
    checks.append(Check(
        "roof boundaries of random even cycles touch the diagonal, %d cycles"
        % trials, ok, witness=witness))
    return checks


def suite_roof_invariance(rng, trials=30, **_):
    checks = []
    ok = True
    for _ in range(trials):
        k = random_complex(rng, max_vertices=6, max_dim=1)
        terms = [(rng.randint(-3, 3), (v,)) for v in k.vertices]
        terms = [(g, s) for g, s in terms if g]
        if len(terms) < 2:
            continue
        t1 = TermList.from_pairs(0, terms)
        shuffled = terms[:]
        rng.shuffle(shuffled)
        t2 = TermList.from_pairs(0, shuffled)
        if roof(t1) != roof(t2):
            ok = False
            break
    checks.append(Check("roof invariant under term permutation, %d trials"
                        % trials, ok))

    t = TermList.from_pairs(0, [(2, ("a",)), (3, ("b",)), (1, ("c",))])
    want = {(("a", "b"),): 6, (("a", "c"),): 2, (("b", "c"),): 3}
    checks.append(Check("hand roof of 2a+3b+c", roof(t).terms == want))

    ok = True
    for _ in range(trials):
        g1, g2, g3 = (rng.randint(1, 3) for _ in range(3))
        c = rng.randint(2, 4)
        base = TermList.from_pairs(0, [(g1, ("a",)), (g2, ("b",)), (g3, ("c",))])
        scaled = TermList.from_pairs(0, [(c * g1, ("a",)), (g2, ("b",)), (g3, ("c",))])
        rb, rs = roof(base), roof(scaled)
        good = rs.coefficient((("a", "b"),)) == c * rb.coefficient((("a", "b"),))
        good &= rs.coefficient((("a", "c"),)) == c * rb.coefficient((("a", "c"),))
        good &= rs.coefficient((("b", "c"),)) == rb.coefficient((("b", "c"),))
        if not good:
            ok = False
            break
    checks.append(Check("scaling one term scales its cross-terms, %d trials"
                        % trials, ok))

    odd = TermList.from_pairs(1, [(1, ("a", "b")), (1, ("b", "c"))])
    try:
        roof(odd)
        rejected = False
    except Exception:
        rejected = True
    p1 = quotient_project(cross(Chain(1, {("a", "b"): 1}), Chain(1, {("b", "c"): 1})))
    p2 = quotient_project(cross(Chain(1, {("b", "c"): 1}), Chain(1, {("a", "b"): 1})))
    checks.append(Check(
        "odd dimension rejected; the chain-level obstruction is demonstrable",
        rejected and p1 == -1 * p2 and p1 != p2))
    return checks


def suite_representative_independence(rng, trials=50, **_):
    ok = True
    witness = None
    done = 0
    while done < trials:
        k = random_complex(rng, max_vertices=6, max_dim=2, max_tops=4)
        if not k.simplices_of_dim(1):
            continue
        res = product_complex(k)
        gable = res.gable
        sigma_terms = [(rng.randint(-2, 2), (v,)) for v in k.vertices]
        sigma = TermList.from_pairs(0, sigma_terms)
        if len(sigma.terms) < 2:
            continue
        edges = k.simplices_of_dim(1)
        nu_terms = [(rng.randint(-2, 2), rng.choice(edges))
                    for _ in range(rng.randint(1, 3))]
        nu = TermList.from_pairs(1, nu_terms)
        if not nu.terms:
            continue
        squares = []
        for _g, sym in nu.terms:
            support = tuple(sorted(set(sym)))
            q = len(support) - 1
            for path in enumerate_paths(q, q):
                squares.append(set_orbit_canonical(
                    tuple(sorted(path_symbol(support, support, path)))))
        region = DiagonalRegion.from_orbits(
            gable,
            set(DiagonalRegion.diagonal(gable).orbits) | set(squares),
            close=True,
        )
        if not representative_independence_check(sigma, nu, gable, region):
            ok, witness = False, (sorted(k.simplices), sigma.terms, nu.terms)
            break
        done += 1
    checks = [Check(
        "roof class unchanged by boundary moves, %d seeded trials" % trials,
        ok, witness=witness)]

    solid = SimplicialComplex.from_simplices([(0, 1, 2, 3), (1, 2, 3, 4)])
    res = product_complex(solid)
    sigma = TermList.from_chain(boundary(Chain(3, {(0, 1, 2, 3): 1})))
    nu = TermList.from_pairs(3, [(1, (0, 1, 2, 3))])
    squares = []
    for _g, sym in nu.terms:
        support = tuple(sorted(set(sym)))
        q = len(support) - 1
        for path in enumerate_paths(q, q):
            squares.append(set_orbit_canonical(
                tuple(sorted(path_symbol(support, support, path)))))
    region = DiagonalRegion.from_orbits(
        res.gable,
        set(DiagonalRegion.diagonal(res.gable).orbits) | set(squares),
        close=True,
    )
    checks.append(Check(
        "dimension-2 boundary move on two glued 3-simplices",
        representative_independence_check(sigma, nu, res.gable, region)))
    return checks


def suite_roof_family(rng, **_):
    dd3 = SimplicialComplex.from_simplices([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    res = product_complex(dd3)
    gable = res.gable
    deep = DiagonalRegion.diagonal(gable)
    extra = [c for c in gable.orbit_sets if any(p == (0, 1) for p in c)]
    shallow = DiagonalRegion.from_orbits(
        gable, set(deep.orbits) | set(extra), close=True)
    fund = fundamental_cycle(dd3)
    fam = roof_family(fund, gable, [shallow, deep])
    checks = [
        Check("nested regions give compatible classes", fam.compatible),
        Check("single-region family reduces to the relative class",
              roof_family(fund, gable, [deep]).classes[0]
              == relative_cycle_class(roof(fund), gable, deep).class_coordinates),
        Check("equal regions give identical coordinates",
              roof_family(fund, gable, [deep, deep]).classes[0]
              == roof_family(fund, gable, [deep, deep]).classes[1]),
    ]
    return checks


def suite_diagonal_lp(rng, trials=40, denominator=4, **_):
    from itertools import product as iter_product

    ok = True
    witness = None
    for _ in range(trials):
        k = random_complex(rng, max_vertices=5, max_dim=2)
        realization = identity_realization(k)
        size = rng.randint(1, 3)
        symbol = tuple(
            (rng.choice(k.vertices), rng.choice(k.vertices)) for _ in range(size))
        verdict = touches_diagonal(symbol, realization)
        if verdict:
            continue
        # falsification: no rational grid combination may land on the diagonal
        n = len(symbol)
        for weights in iter_product(range(denominator + 1), repeat=n):
            if sum(weights) != denominator:
                continue
            coords = {}
            for (a, b), w in zip(symbol, weights):
                if not w:
                    continue
                coords[a] = coords.get(a, 0) + Fraction(w, denominator)
                coords[b] = coords.get(b, 0) - Fraction(w, denominator)
            if all(x == 0 for x in coords.values()):
                ok, witness = False, (symbol, weights)
                break
        if not ok:
            break
    checks = [Check(
        "no grid point contradicts an infeasible diagonal test, %d symbols"
        % trials, ok, witness=witness)]
    edge = SimplicialComplex.from_simplices([("u", "v")])
    realization = identity_realization(edge)
    checks.append(Check(
        "hand cases: (u,v) misses, ((u,v),(v,u)) and (v,v) hit",
        not touches_diagonal((("u", "v"),), realization)
        and touches_diagonal((("u", "v"), ("v", "u")), realization)
        and touches_diagonal((("v", "v"),), realization)))
    return checks


def suite_limits(rng, trials=20, **_):
    checks = []
    Z = free_group(1)
    times = lambda c: GroupMorphism(Z, Z, IntMatrix.from_rows([[c]]))
    poset = FinitePoset.from_pairs(("1", "2", "3"), [("1", "2"), ("2", "3")])
    sys_chain = InverseSystem.build(
        poset, {e: Z for e in poset.elements},
        {("1", "2"): times(2), ("2", "3"): times(2)})
    res = inverse_limit(sys_chain)
    b = res.basis[0] if res.basis else None
    checks.append(Check(
        "doubling chain limit is Z with basis (4,2,1)",
        invariant_factors(res.limit).free_rank == 1 and b is not None
        and (b.components["1"], b.components["2"], b.components["3"])
        == ((4,), (2,), (1,))))

    po2 = FinitePoset.from_pairs(("l", "m1", "m2"), [("l", "m1"), ("l", "m2")])
    sys_cospan = InverseSystem.build(
        po2, {e: Z for e in po2.elements},
        {("l", "m1"): times(2), ("l", "m2"): times(3)})
    res2 = inverse_limit(sys_cospan)
    b2 = res2.basis[0] if res2.basis else None
    checks.append(Check(
        "cospan x2/x3 limit is Z with basis (6,3,2)",
        invariant_factors(res2.limit).free_rank == 1 and b2 is not None
        and (b2.components["l"], b2.components["m1"], b2.components["m2"])
        == ((6,), (3,), (2,))))

    ok = True
    witness = None
    for t in range(trials):
        sys = random_chain_system(rng) if t % 2 else random_cube_system(rng)
        res = inverse_limit(sys)
        j = rng.randint(1, 2)
        kgrp = free_group(j)
        psi0 = GroupMorphism(kgrp, res.limit,
                             random_matrix(rng, res.limit.generator_count, j, 3))
        cone = {e: res.projections[e].compose(psi0) for e in sys.poset.elements}
        psi, unique = cone_factorization(sys, res, cone)
        if not (unique and psi.equals(psi0)):
            ok, witness = False, t
            break
    checks.append(Check(
        "universal property: unique factorization on %d seeded cones" % trials,
        ok, witness=witness))

    ok = True
    for _ in range(10):
        sys = random_cube_system(rng)
        res = inverse_limit(sys)
        for lo, hi in sys.poset.strict_pairs():
            left = sys.map_for[(lo, hi)].compose(res.projections[hi])
            if not left.equals(res.projections[lo]):
                ok = False
                break
    checks.append(Check("projections commute with the system maps", ok))
    return checks


def suite_cofinality(rng, trials=30, **_):
    checks = []
    p = FinitePoset.from_pairs(("1", "2", "3"), [("1", "2"), ("2", "3")])
    checks.append(Check("whole poset is strongly cofinal",
                        cofinality_class(p, ["1", "2", "3"]) == "strong"))
    checks.append(Check("chain top is strongly cofinal",
                        cofinality_class(p, ["3"]) == "strong"))
    anti = FinitePoset.from_pairs(("a", "b"), [])
    checks.append(Check("antichain element is not cofinal",
                        cofinality_class(anti, ["a"]) == "none"))

    ok = True
    witness = None
    for t in range(trials):
        sys = random_cube_system(rng, bits=2) if t % 2 else random_chain_system(rng)
        subset = random_strong_cofinal_subset(rng, sys.poset)
        comp = restricted_limit_compare(sys, subset)
        if comp.cofinality != "strong":
            continue
        if not comp.is_iso:
            ok, witness = False, (t, subset)
            break
    checks.append(Check(
        "strong-cofinal restriction gives an isomorphism, %d seeded systems"
        % trials, ok, witness=witness))
    return checks


def suite_nerve(rng, **_):
    checks = []
    ground = GroundPair.create(range(6))
    arcs3 = CoverPair.create({"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]})
    nv = nerve(ground, arcs3)
    checks.append(Check("three-arc circle cover has nerve H1 = Z",
                        str(homology(nv.pair, 1)[0]) == "Z"))
    blob = CoverPair.create({"U": list(range(6))})
    checks.append(Check("single covering set gives a point nerve",
                        len(nerve(ground, blob).complex.simplices) == 1))
    shared = CoverPair.create({"A": [0, 1], "B": [0, 2], "C": [0, 3]})
    g4 = GroundPair.create(range(4))
    nvs = nerve(g4, shared)
    full = len(nvs.complex.simplices) == 7
    h0 = homology(nvs.pair, 0, reduced=False)[0]
    checks.append(Check("common point gives the full simplex nerve",
                        full and str(h0) == "Z"))
    ref, w1, w2 = common_refinement(arcs3, arcs3)
    try:
        w1.validate(ref, arcs3)
        w2.validate(ref, arcs3)
        valid = True
    except Exception:
        valid = False
    checks.append(Check("common refinement refines both inputs", valid))

    arcs6 = CoverPair.create({"V%d" % i: [i, (i + 1) % 6] for i in range(6)})
    ref2, wa, wb = common_refinement(arcs3, arcs6)
    nref = nerve(ground, ref2)
    p1 = projection(ground, ref2, arcs3, wa)
    p2 = projection(ground, ref2, arcs6, wb)
    m1 = induced_homology_map(p1.vertex_map, nref.pair, nerve(ground, arcs3).pair, 1)
    m2 = induced_homology_map(p2.vertex_map, nref.pair, nerve(ground, arcs6).pair, 1)
    m26 = projection(ground, arcs6, arcs3)
    m26h = induced_homology_map(
        m26.vertex_map, nerve(ground, arcs6).pair, nerve(ground, arcs3).pair, 1)
    checks.append(Check("composite projections commute on H1",
                        m26h.compose(m2).equals(m1)))
    return checks


def suite_projection_independence(rng, **_):
    checks = []
    ground = GroundPair.create(range(6))
    arcs6 = CoverPair.create({"V%d" % i: [i, (i + 1) % 6] for i in range(6)})
    nv6 = nerve(ground, arcs6)
    for name, coarse in (
        ("three 3-point arcs", CoverPair.create(
            {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]})),
        ("three 4-point arcs", CoverPair.create(
            {"U1": [0, 1, 2, 3], "U2": [2, 3, 4, 5], "U3": [4, 5, 0, 1]})),
    ):
        nvc = nerve(ground, coarse)
        maps = set()
        count = 0
        for wit in all_witnesses(arcs6, coarse):
            proj = projection(ground, arcs6, coarse, wit)
            m = induced_homology_map(proj.vertex_map, nv6.pair, nvc.pair, 1)
            maps.add(m.matrix.entries)
            count += 1
        checks.append(Check(
            "all %d witnesses onto %s induce one H1 map" % (count, name),
            count >= 1 and len(maps) == 1))
    fine = CoverPair.create({"W": [0]})
    coarse = CoverPair.create({"A": [0, 1], "B": [0, 2]})
    from .nerve import find_witness
    wit = find_witness(fine, coarse)
    checks.append(Check("tie-break picks the lexicographically smallest set",
                        wit.as_dict() == {"W": "A"}))
    return checks


def suite_cech(rng, **_):
    checks = []
    ground = GroundPair.create(range(6))
    arcs3 = CoverPair.create({"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]})
    arcs6 = CoverPair.create({"V%d" % i: [i, (i + 1) % 6] for i in range(6)})
    poset = FinitePoset.from_pairs(("coarse", "fine"), [("coarse", "fine")])
    tower = CoverTower.build(poset, {"coarse": arcs3, "fine": arcs6})
    res = cech_homology(ground, tower, 1)
    checks.append(Check("two-level circle tower has limit H1 = Z",
                        str(invariant_factors(res.group)) == "Z"))

    single = CoverTower.build(
        FinitePoset.from_pairs(("only",), []), {"only": arcs3})
    res_single = cech_homology(ground, single, 1)
    checks.append(Check("one-cover tower reduces to the nerve homology",
                        str(invariant_factors(res_single.group)) == "Z"))

    path5 = CoverPair.create({"P%d" % i: [i, i + 1] for i in range(5)})
    collapse = CoverTower.build(poset, {"coarse": arcs3, "fine": path5})
    res2 = cech_homology(ground, collapse, 1)
    checks.append(Check("tower limit follows a contractible finest level",
                        invariant_factors(res2.group).is_trivial))

    comp = restricted_limit_compare(res.system, ["fine"])
    checks.append(Check(
        "restricting the tower to a strong-cofinal sub-poset keeps the limit",
        comp.cofinality == "strong" and comp.is_iso
        and invariant_factors(comp.restricted.limit)
        == invariant_factors(comp.full.limit)))
    return checks


SUITES = {
    "snf": suite_snf,
    "invariant-factors": suite_invariant_factors,
    "boundary": suite_boundary,
    "homology-sd": suite_homology_sd,
    "cone": suite_cone,
    "subdivision": suite_subdivision,
    "shuffle-laws": suite_shuffle_laws,
    "shuffle-parity": suite_shuffle_parity,
    "product-chainmap": suite_product_chainmap,
    "roof-existence": suite_roof_existence,
    "roof-invariance": suite_roof_invariance,
    "representative-independence": suite_representative_independence,
    "roof-family": suite_roof_family,
    "diagonal-lp": suite_diagonal_lp,
    "limits": suite_limits,
    "cofinality": suite_cofinality,
    "nerve": suite_nerve,
    "projection-independence": suite_projection_independence,
    "cech": suite_cech,
}


def run_suite(name, seed=0, jobs=1, **bounds):
    """Run one suite (or 'all') deterministically for the given seed."""
    if name == "all":
        names = sorted(SUITES)
        reports = [None] * len(names)

        def run_one(i):
            reports[i] = run_suite(names[i], seed=seed, **bounds)

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                list(pool.map(run_one, range(len(names))))
        else:
            for i in range(len(names)):
                run_one(i)
        combined = SuiteReport("all", seed)
        for rep in reports:
            for check in rep.checks:
                combined.checks.append(Check(
                    "%s: %s" % (rep.suite, check.name), check.passed,
                    check.details, check.witness))
        return combined
    if name not in SUITES:
        raise PreconditionError("unknown suite: %s (known: %s, all)"
                                % (name, ", ".join(sorted(SUITES))),
                                witness=name)
    rng = random.Random("%s|%s" % (seed, name))
    bounds = {k: v for k, v in bounds.items() if v is not None}
    report = SuiteReport(name, seed)
    report.checks = SUITES[name](rng, **bounds)
    return report
