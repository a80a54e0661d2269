import random
from fractions import Fraction
from itertools import combinations

import pytest

from gable.complexes import (
    ComplexPair,
    RationalPoint,
    SimplicialComplex,
    affine_combination,
)
from gable.errors import PreconditionError
from gable.homology import homology
from gable.subdivision import (
    barycentric_subdivision,
    classify_simplex,
    cone_pair,
    is_full,
    max_disjoint_subcomplex,
    retract_point,
    subdivision_partition_check,
)
from gable.suites import random_complex, random_subcomplex

DD3 = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_point_subdivision():
    pt = SimplicialComplex.from_simplices([("p",)])
    sd = barycentric_subdivision(pt)
    assert sd.sd_complex.simplices == frozenset({(("p",),)})
    rep = subdivision_partition_check(pt, sd)
    assert not rep["violations"]


def test_edge_subdivision_counts():
    edge = SimplicialComplex.from_simplices([("a", "b")])
    sd = barycentric_subdivision(edge)
    assert len(sd.sd_complex.simplices_of_dim(0)) == 3
    assert len(sd.sd_complex.simplices_of_dim(1)) == 2
    mid = sd.realization[("a", "b")]
    assert mid.as_dict() == {"a": Fraction(1, 2), "b": Fraction(1, 2)}
    rep = subdivision_partition_check(edge, sd)
    entry = rep["per_simplex"][("a", "b")]
    assert entry["cell_count"] == 3 and entry["top_cells"] == 2
    assert entry["volumes"] == [Fraction(1, 2), Fraction(1, 2)]


def test_triangle_subdivision():
    tri = SimplicialComplex.from_simplices([(0, 1, 2)])
    sd = barycentric_subdivision(tri)
    assert len(sd.sd_complex.simplices_of_dim(2)) == 6  # (2+1)!
    rep = subdivision_partition_check(tri, sd)
    assert not rep["violations"]
    assert rep["per_simplex"][(0, 1, 2)]["volumes"] == [Fraction(1, 6)] * 6
    for k in range(3):
        assert homology(ComplexPair.absolute(tri), k)[0] \
            == homology(ComplexPair.absolute(sd.sd_complex), k)[0]


def test_barycenter_coordinates():
    tri = SimplicialComplex.from_simplices([(0, 1, 2)])
    sd = barycentric_subdivision(tri)
    b = sd.realization[(0, 1, 2)]
    assert b.as_dict() == {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(1, 3)}


def test_sd_homology_invariance_seeded():
    rng = random.Random(12)
    for _ in range(20):
        k = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sd = barycentric_subdivision(k)
        for dim in range(k.dim + 1):
            assert homology(ComplexPair.absolute(k), dim)[0] \
                == homology(ComplexPair.absolute(sd.sd_complex), dim)[0]


def test_induced_sub_is_sd_of_sub_and_full():
    k = SimplicialComplex.from_simplices(DD3)
    for gen in [[(0, 1)], [(0, 1), (2, 3)], [(0, 1, 2)], [(0,), (1, 2, 3)]]:
        sub = SimplicialComplex.from_simplices(gen)
        sd = barycentric_subdivision(k, sub)
        assert sd.induced_sub.simplices == barycentric_subdivision(sub).sd_complex.simplices
        flag, witness = is_full(sd.sd_complex, sd.induced_sub)
        assert flag, witness


def test_every_subcomplex_full_after_sd():
    # exhaustive over subcomplexes generated by subsets of top simplices
    k = SimplicialComplex.from_simplices([(0, 1, 2), (1, 2, 3)])
    tops = sorted(k.simplices)
    for r in range(1, 4):
        for gen in combinations(tops, r):
            sub = SimplicialComplex.from_simplices(gen)
            sd = barycentric_subdivision(k, sub)
            flag, witness = is_full(sd.sd_complex, sd.induced_sub)
            assert flag, (gen, witness)


def test_not_subcomplex_rejected():
    k = SimplicialComplex.from_simplices([(0, 1)])
    other = SimplicialComplex.from_simplices([(5,)])
    with pytest.raises(PreconditionError):
        barycentric_subdivision(k, other)


def test_classify_cases():
    k = SimplicialComplex.from_simplices(DD3)
    sub = SimplicialComplex.from_simplices([(0, 1)])
    assert classify_simplex(k, sub, (0, 1)) == ("in_L", None)
    assert classify_simplex(k, sub, (2, 3)) == ("in_N", None)
    assert classify_simplex(k, sub, (0, 2)) == ("split", ((0,), (2,)))
    assert classify_simplex(k, sub, (0, 1, 2)) == ("split", ((0, 1), (2,)))


def test_classify_covers_every_simplex_once():
    rng = random.Random(13)
    trials = 0
    while trials < 15:
        k = random_complex(rng, max_vertices=6, max_dim=2, max_tops=4)
        sub = random_subcomplex(rng, k)
        flag, _ = is_full(k, sub)
        if not flag:
            continue
        trials += 1
        n = max_disjoint_subcomplex(k, sub)
        for s in k.simplices:
            kind, parts = classify_simplex(k, sub, s)
            if kind == "in_L":
                assert s in sub.simplices
            elif kind == "in_N":
                assert s in n.simplices
            else:
                left, right = parts
                assert left in sub.simplices and right in n.simplices
                assert tuple(sorted(left + right)) == s


def test_classify_requires_full():
    k = SimplicialComplex.from_simplices(DD3)
    notfull = SimplicialComplex.from_simplices([(0,), (1,)])
    with pytest.raises(PreconditionError) as err:
        classify_simplex(k, notfull, (0, 1))
    assert err.value.witness == (0, 1)


def test_cone_examples():
    edge = SimplicialComplex.from_simplices([("a", "b")])
    empty_pair = ComplexPair.absolute(edge)
    cone, apex = cone_pair(empty_pair)
    assert (apex,) in cone.simplices
    assert len(cone.simplices) == len(edge.simplices) + 1

    ends = SimplicialComplex.from_simplices([("a",), ("b",)])
    circle, apex = cone_pair(ComplexPair(edge, ends))
    assert str(homology(ComplexPair.absolute(circle), 1)[0]) == "Z"
    assert str(homology(ComplexPair(edge, ends), 1)[0]) == "Z"

    boundary_tri = SimplicialComplex.from_simplices([(0, 1), (1, 2), (0, 2)])
    cone3, _ = cone_pair(ComplexPair(boundary_tri, boundary_tri))
    for k in range(3):
        assert homology(ComplexPair.absolute(cone3), k, reduced=(k == 0))[0].is_trivial


def test_cone_trick_seeded():
    rng = random.Random(14)
    for _ in range(20):
        k = random_complex(rng, max_vertices=5, max_dim=2, max_tops=4)
        sub = random_subcomplex(rng, k)
        pair = ComplexPair(k, sub)
        cone, _ = cone_pair(pair)
        for dim in range(k.dim + 2):
            rel = homology(pair, dim)[0]
            red = homology(ComplexPair.absolute(cone), dim, reduced=(dim == 0))[0]
            assert rel == red, (sorted(k.simplices), sorted(sub.simplices), dim)


def test_retraction_edge_example():
    k = SimplicialComplex.from_simplices([("u", "v")])
    sub = SimplicialComplex.from_simplices([("u",)])
    p = RationalPoint.from_coords(k, {"u": Fraction(1, 3), "v": Fraction(2, 3)})
    out = retract_point(k, sub, p, 1)
    assert out.a == Fraction(1, 3)
    assert out.alpha_prime.as_dict() == {"u": Fraction(1)}
    assert out.alpha_out.as_dict() == {"u": Fraction(1)}
    assert out.n_complex.simplices == frozenset({("v",)})
    assert (("u", "v"),) in out.n1_complex.simplices


def test_retraction_identity_at_zero_and_on_sub():
    k = SimplicialComplex.from_simplices([("u", "v")])
    sub = SimplicialComplex.from_simplices([("u",)])
    p = RationalPoint.from_coords(k, {"u": Fraction(1, 3), "v": Fraction(2, 3)})
    assert retract_point(k, sub, p, 0).alpha_out == p
    pu = RationalPoint.vertex_point(k, "u")
    for t in (0, Fraction(1, 2), 1):
        assert retract_point(k, sub, pu, t).alpha_out == pu


def test_retraction_rejects_n_points():
    k = SimplicialComplex.from_simplices([("u", "v")])
    sub = SimplicialComplex.from_simplices([("u",)])
    pv = RationalPoint.vertex_point(k, "v")
    with pytest.raises(PreconditionError):
        retract_point(k, sub, pv, Fraction(1, 2))


def test_retraction_affine_in_t_sampled():
    rng = random.Random(15)
    k = SimplicialComplex.from_simplices(DD3)
    sub = SimplicialComplex.from_simplices([(0, 1)])
    eligible = [s for s in sorted(k.simplices) if set(s) & {0, 1}]
    checked = 0
    while checked < 50:
        simplex = rng.choice(eligible)
        weights = [rng.randint(1, 4) if v in (0, 1) else rng.randint(0, 4)
                   for v in simplex]
        total = sum(weights)
        point = RationalPoint.from_coords(
            k, {v: Fraction(w, total) for v, w in zip(simplex, weights) if w})
        t = Fraction(rng.randint(0, 10), 10)
        res = retract_point(k, sub, point, t)
        if res.a == 1:
            assert res.alpha_out == point
        else:
            assert res.alpha_out == affine_combination(
                k, [(t, res.alpha_prime), (1 - t, point)])
        assert set(retract_point(k, sub, point, 1).alpha_out.support()) <= {0, 1}
        checked += 1
