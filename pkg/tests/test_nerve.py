
import pytest

from gable.errors import PreconditionError
from gable.groups import invariant_factors, is_isomorphism
from gable.homology import homology, induced_homology_map
from gable.limits import restricted_limit_compare
from gable.nerve import (
    CoverPair,
    CoverTower,
    GroundPair,
    all_witnesses,
    ball_cover,
    cech_homology,
    common_refinement,
    find_witness,
    nerve,
    projection,
)
from gable.posets import FinitePoset

GROUND6 = GroundPair.create(range(6))
ARCS3 = CoverPair.create({"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]})
ARCS6 = CoverPair.create({"V%d" % i: [i, (i + 1) % 6] for i in range(6)})
WIDE3 = CoverPair.create({"U1": [0, 1, 2, 3], "U2": [2, 3, 4, 5],
                          "U3": [4, 5, 0, 1]})


def test_nerve_examples():
    nv = nerve(GROUND6, ARCS3)
    assert str(homology(nv.pair, 1)[0]) == "Z"
    assert str(homology(nv.pair, 0)[0]) == "Z"
    assert len(nv.complex.simplices_of_dim(1)) == 3
    assert not nv.complex.simplices_of_dim(2)

    single = nerve(GROUND6, CoverPair.create({"U": list(range(6))}))
    assert len(single.complex.simplices) == 1

    two = nerve(GroundPair.create([0, 1]),
                CoverPair.create({"A": [0], "B": [1]}))
    assert len(two.complex.simplices_of_dim(0)) == 2
    assert not two.complex.simplices_of_dim(1)


def test_nerve_common_point_full_simplex():
    shared = CoverPair.create({"A": [0, 1], "B": [0, 2], "C": [0, 3]})
    nv = nerve(GroundPair.create(range(4)), shared)
    assert ("A", "B", "C") in nv.complex.simplices
    assert homology(nv.pair, 0)[0].free_rank == 1
    assert homology(nv.pair, 1)[0].is_trivial


def test_nerve_drops_empty_sets():
    cover = CoverPair.create({"A": [0, 1], "E": []})
    nv = nerve(GroundPair.create([0, 1]), cover)
    assert nv.complex.vertices == ("A",)


def test_invalid_cover_rejected_with_witness():
    cover = CoverPair.create({"A": [0]})
    with pytest.raises(PreconditionError) as err:
        nerve(GroundPair.create([0, 1]), cover)
    assert err.value.witness == 1


def test_relative_nerve_rule():
    ground = GroundPair.create(range(6), subset_a=(0, 1))
    cover = CoverPair.create(
        {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]},
        relative_names=("U1", "U3"))
    nv = nerve(ground, cover)
    assert ("U1",) in nv.sub.simplices
    assert ("U3",) in nv.sub.simplices
    assert ("U2",) not in nv.sub.simplices
    assert ("U1", "U3") in nv.sub.simplices  # 0 lies in A, U1 and U3
    assert ("U1", "U2") not in nv.sub.simplices


def test_relative_cover_must_cover_a():
    ground = GroundPair.create(range(6), subset_a=(3,))
    cover = CoverPair.create(
        {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]},
        relative_names=("U1",))
    with pytest.raises(PreconditionError):
        nerve(ground, cover)


def test_common_refinement():
    refined, w1, w2 = common_refinement(ARCS3, ARCS3)
    w1.validate(refined, ARCS3)
    w2.validate(refined, ARCS3)
    assert all(len(pts) >= 1 for _n, pts in refined.sets)

    rotated = CoverPair.create({"W1": [1, 2, 3], "W2": [3, 4, 5], "W3": [5, 0, 1]})
    both, wa, wb = common_refinement(ARCS3, rotated)
    wa.validate(both, ARCS3)
    wb.validate(both, rotated)
    assert len(both.sets) == 6

    blob = CoverPair.create({"All": list(range(6))})
    merged, _, _ = common_refinement(ARCS3, blob)
    assert sorted(tuple(pts) for _n, pts in merged.sets) \
        == sorted(tuple(pts) for _n, pts in ARCS3.sets)


def test_refinement_relative_parts():
    c1 = CoverPair.create({"A": [0, 1], "B": [1, 2]}, relative_names=("A",))
    c2 = CoverPair.create({"C": [0, 2], "D": [1]}, relative_names=("C", "D"))
    refined, _, _ = common_refinement(c1, c2)
    assert set(refined.relative_names) == {"A&C", "A&D"}


def test_projection_identity_and_determinism():
    proj = projection(GROUND6, ARCS3, ARCS3)
    assert proj.vertex_map == {"U1": "U1", "U2": "U2", "U3": "U3"}
    fine = CoverPair.create({"W": [0]})
    coarse = CoverPair.create({"A": [0, 1], "B": [0, 2]})
    wit = find_witness(fine, coarse)
    assert wit.as_dict() == {"W": "A"}  # lexicographic tie-break


def test_projection_requires_refinement():
    with pytest.raises(PreconditionError):
        find_witness(CoverPair.create({"W": [0, 3]}), ARCS3)


def test_projection_witness_independence_exhaustive():
    nv6 = nerve(GROUND6, ARCS6)
    for coarse in (ARCS3, WIDE3):
        nvc = nerve(GROUND6, coarse)
        seen = set()
        count = 0
        for wit in all_witnesses(ARCS6, coarse):
            proj = projection(GROUND6, ARCS6, coarse, wit)
            m = induced_homology_map(proj.vertex_map, nv6.pair, nvc.pair, 1)
            seen.add(m.matrix.entries)
            count += 1
        assert len(seen) == 1
        if coarse is WIDE3:
            assert count == 8  # genuinely multiple witnesses
        assert seen.pop() in ((1,), (-1,))


def test_projection_relative_witness_constraint():
    ground = GroundPair.create(range(4), subset_a=(0,))
    fine = CoverPair.create({"F": [0]}, relative_names=("F",))
    coarse = CoverPair.create({"A": [0, 1], "B": [0, 2, 3]},
                              relative_names=("B",))
    wit = find_witness(fine, coarse)
    assert wit.as_dict() == {"F": "B"}  # A contains F but is not relative


def test_tower_cech_circle():
    poset = FinitePoset.from_pairs(("coarse", "fine"), [("coarse", "fine")])
    tower = CoverTower.build(poset, {"coarse": ARCS3, "fine": ARCS6})
    res = cech_homology(GROUND6, tower, 1)
    assert str(invariant_factors(res.group)) == "Z"
    # the limit system's connecting map is an isomorphism on H1
    morphism = res.system.map_for[("coarse", "fine")]
    assert is_isomorphism(morphism)


def test_tower_single_cover():
    poset = FinitePoset.from_pairs(("only",), [])
    tower = CoverTower.build(poset, {"only": ARCS3})
    res = cech_homology(GROUND6, tower, 1)
    assert str(invariant_factors(res.group)) == "Z"


def test_tower_contractible_finest_level():
    path5 = CoverPair.create({"P%d" % i: [i, i + 1] for i in range(5)})
    poset = FinitePoset.from_pairs(("coarse", "fine"), [("coarse", "fine")])
    tower = CoverTower.build(poset, {"coarse": ARCS3, "fine": path5})
    res = cech_homology(GROUND6, tower, 1)
    assert invariant_factors(res.group).is_trivial


def test_tower_three_levels_and_cofinal_restriction():
    refined, _, _ = common_refinement(ARCS6, WIDE3)
    poset = FinitePoset.from_pairs(
        ("a", "b", "c"), [("a", "b"), ("b", "c")])
    tower = CoverTower.build(poset, {"a": WIDE3, "b": ARCS6, "c": refined})
    res = cech_homology(GROUND6, tower, 1)
    assert str(invariant_factors(res.group)) == "Z"
    comp = restricted_limit_compare(res.system, ["c"])
    assert comp.cofinality == "strong"
    assert comp.is_iso
    assert invariant_factors(comp.restricted.limit) \
        == invariant_factors(comp.full.limit)


def test_relative_cech_tower():
    # circle relative to two marked points; both subnerves are contractible
    # arcs around the marked points, so each level has relative H1 = Z
    ground = GroundPair.create(range(6), subset_a=(0, 1))
    coarse = CoverPair.create(
        {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]},
        relative_names=("U1", "U3"))
    fine = CoverPair.create(
        {"V%d" % i: [i, (i + 1) % 6] for i in range(6)},
        relative_names=("V0", "V1", "V5"))
    for cover in (coarse, fine):
        nv = nerve(ground, cover)
        assert nv.sub.simplices
        assert str(homology(nv.pair, 1)[0]) == "Z"
    poset = FinitePoset.from_pairs(("c", "f"), [("c", "f")])
    tower = CoverTower.build(poset, {"c": coarse, "f": fine})
    res = cech_homology(ground, tower, 1)
    assert str(invariant_factors(res.group)) == "Z"


def test_ball_cover_linf_ring():
    ring = [(x, y) for x in range(-2, 3) for y in range(-2, 3)
            if max(abs(x), abs(y)) == 2]
    names = {"p%d" % i: c for i, c in enumerate(sorted(ring))}
    ground = GroundPair.create(names, coordinates=names)
    centers = [k for k, v in names.items()
               if v in [(2, 0), (2, 2), (0, 2), (-2, 2),
                        (-2, 0), (-2, -2), (0, -2), (2, -2)]]
    cover = ball_cover(ground, centers, 1, metric="linf")
    nv = nerve(ground, cover)
    assert str(homology(nv.pair, 1)[0]) == "Z"


def test_ball_cover_l2_hexagon():
    pts = {"h0": (4, 0), "h1": (2, 3), "h2": (-2, 3),
           "h3": (-4, 0), "h4": (-2, -3), "h5": (2, -3)}
    ground = GroundPair.create(pts, coordinates=pts)
    cover = ball_cover(ground, list(pts), 16, metric="l2sq")
    nv = nerve(ground, cover)
    assert str(homology(nv.pair, 1)[0]) == "Z"
    smaller = ball_cover(ground, list(pts), 13, metric="l2sq")
    # same centers: the identity assignment is a valid witness
    from gable.nerve import RefinementWitness
    identity = RefinementWitness.create({n: n for n, _ in smaller.sets})
    identity.validate(smaller, cover)


def test_ball_cover_blob_and_errors():
    pts = {"a": (0, 0), "b": (1, 0)}
    ground = GroundPair.create(pts, coordinates=pts)
    blob = ball_cover(ground, ["a"], 5, metric="linf")
    nv = nerve(ground, blob)
    assert len(nv.complex.simplices) == 1
    with pytest.raises(PreconditionError) as err:
        ball_cover(ground, ["a"], "1/2", metric="linf")
    assert "b" in err.value.witness
    with pytest.raises(PreconditionError):
        ball_cover(ground, ["a"], 0)
    with pytest.raises(PreconditionError):
        ball_cover(ground, ["a"], 1, metric="euclid")


def test_ball_cover_relative_part():
    pts = {"a": (0, 0), "b": (4, 0)}
    ground = GroundPair.create(pts, subset_a=("a",), coordinates=pts)
    cover = ball_cover(ground, ["a", "b"], 1, metric="linf")
    assert cover.relative_names == ("B(a)",)
