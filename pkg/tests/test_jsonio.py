from fractions import Fraction


from gable import jsonio
from gable.complexes import Chain, RationalPoint, SimplicialComplex
from gable.groups import GroupMorphism, free_group
from gable.intlinalg import IntMatrix
from gable.limits import InverseSystem, inverse_limit
from gable.nerve import CoverPair, CoverTower, GroundPair
from gable.posets import FinitePoset
from gable.roof import DiagonalRegion, TermList
from gable.shuffle import ProductChain, product_complex


def test_matrix_roundtrip():
    m = IntMatrix.from_rows([[1, -2], [3, 4]])
    assert jsonio.matrix_from_json(jsonio.matrix_to_json(m)) == m


def test_group_and_system_roundtrip():
    z = free_group(1)
    times2 = GroupMorphism(z, z, IntMatrix.from_rows([[2]]))
    poset = FinitePoset.from_pairs(("1", "2"), [("1", "2")])
    sys = InverseSystem.build(poset, {"1": z, "2": z}, {("1", "2"): times2})
    data = jsonio.system_to_json(sys)
    back = jsonio.system_from_json(data)
    assert back.poset.leq == sys.poset.leq
    assert back.map_for[("1", "2")].matrix == times2.matrix
    a = inverse_limit(sys)
    b = inverse_limit(back)
    assert a.limit == b.limit


def test_complex_roundtrip_closure_and_isolated_vertices():
    k = SimplicialComplex.from_simplices([(0, 1, 2)])
    data = jsonio.complex_to_json(k)
    assert jsonio.complex_from_json(data) == k
    # faces may be omitted; isolated vertices arrive via the vertex list
    sparse = {"vertices": [9], "simplices": [[0, 1, 2]]}
    loaded = jsonio.complex_from_json(sparse)
    assert (9,) in loaded.simplices and (0, 1) in loaded.simplices


def test_chain_roundtrip():
    c = Chain(1, {("a", "b"): 2, ("b", "c"): -1})
    assert jsonio.chain_from_json(jsonio.chain_to_json(c)) == c
    p = ProductChain(1, {(("a", "b"), ("b", "b")): 3})
    data = jsonio.product_chain_to_json(p)
    assert jsonio.product_chain_from_json(data) == p


def test_term_list_roundtrip():
    t = TermList.from_pairs(2, [(1, (0, 1, 2)), (-1, (0, 1, 3))])
    assert jsonio.term_list_from_json(jsonio.term_list_to_json(t)) == t


def test_point_roundtrip():
    k = SimplicialComplex.from_simplices([(0, 1)])
    p = RationalPoint.from_coords(k, {0: Fraction(1, 3), 1: Fraction(2, 3)})
    data = jsonio.point_to_json(p)
    assert jsonio.point_from_json(data, k) == p


def test_region_roundtrip():
    k = SimplicialComplex.from_simplices([(0, 1)])
    res = product_complex(k)
    region = DiagonalRegion.diagonal(res.gable)
    data = jsonio.region_to_json(region)
    assert jsonio.region_from_json(data, res.gable).orbits == region.orbits


def test_ground_cover_tower_roundtrip():
    ground = GroundPair.create(
        ["a", "b"], subset_a=("a",),
        coordinates={"a": [Fraction(1, 2), 0], "b": [1, 1]})
    data = jsonio.ground_to_json(ground)
    assert jsonio.ground_from_json(data) == ground

    cover = CoverPair.create({"U": ["a", "b"], "V": ["a"]},
                             relative_names=("V",))
    assert jsonio.cover_from_json(jsonio.cover_to_json(cover)) == cover

    poset = FinitePoset.from_pairs(("c", "f"), [("c", "f")])
    fine = CoverPair.create({"W1": ["a"], "W2": ["b"]}, relative_names=("W1",))
    tower = CoverTower.build(poset, {"c": cover, "f": fine})
    data = jsonio.tower_to_json(tower)
    back = jsonio.tower_from_json(data)
    assert back.covers["c"] == cover
    assert back.witnesses[("c", "f")].as_dict() \
        == tower.witnesses[("c", "f")].as_dict()


def test_tuple_labels_roundtrip():
    k = SimplicialComplex.from_simplices([((0, 1), (0, 2))])
    data = jsonio.complex_to_json(k)
    assert jsonio.complex_from_json(data) == k


def test_fraction_strings():
    assert jsonio.fraction_to_json(Fraction(3, 4)) == "3/4"
    assert jsonio.fraction_to_json(Fraction(5)) == "5"
    assert jsonio.fraction_from_json("3/4") == Fraction(3, 4)
    assert jsonio.fraction_from_json(7) == Fraction(7)


def test_dumps_deterministic():
    a = jsonio.dumps({"b": 1, "a": [2, 3]})
    b = jsonio.dumps({"a": [2, 3], "b": 1})
    assert a == b
