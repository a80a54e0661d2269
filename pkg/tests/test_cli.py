import json


from gable import jsonio
from gable.cli import main

DD3 = {"simplices": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(jsonio.dumps(data))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, ["--out", "json"] + argv)
    return code, json.loads(out)


def test_homology_command(tmp_path, capsys):
    path = write(tmp_path, "dd3.json", DD3)
    code, data = run_json(capsys, ["homology", "--complex", path, "--k", "2"])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z"
    code, data = run_json(capsys, ["homology", "--complex", path, "--k", "1"])
    assert data["result"]["factors"]["pretty"] == "0"


def test_homology_pair_flag(tmp_path, capsys):
    pair = write(tmp_path, "pair.json", {
        "complex": {"simplices": [["a", "b"]]},
        "sub": {"simplices": [["a"], ["b"]]}})
    code, data = run_json(capsys, ["homology", "--pair", pair, "--k", "1"])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z"
    code, data = run_json(capsys, ["homology", "--k", "1"])
    assert code == 2


def test_homology_relative(tmp_path, capsys):
    path = write(tmp_path, "dd3.json", DD3)
    sub = write(tmp_path, "sub.json", {"simplices": [[0, 1], [1, 2], [0, 2]]})
    code, data = run_json(capsys, ["homology", "--complex", path,
                                   "--sub", sub, "--k", "2"])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z^2"


def test_roof_odd_dimension_error(tmp_path, capsys):
    terms = write(tmp_path, "terms.json", {
        "dim": 1, "terms": [{"coef": 1, "vertices": ["a", "b"]},
                            {"coef": 1, "vertices": ["b", "c"]}]})
    code, data = run_json(capsys, ["roof", "--terms", terms])
    assert code == 2
    assert "odd dimensions" in data["error"]["message"]


def test_roof_and_quotient(tmp_path, capsys):
    terms = write(tmp_path, "terms.json", {
        "dim": 0, "terms": [{"coef": 2, "vertices": ["a"]},
                            {"coef": 3, "vertices": ["b"]},
                            {"coef": 1, "vertices": ["c"]}]})
    code, data = run_json(capsys, ["roof", "--terms", terms])
    assert code == 0
    got = {tuple(map(tuple, t["pairs"])): t["coef"]
           for t in data["result"]["roof"]["terms"]}
    assert got == {(("a", "b"),): 6, (("a", "c"),): 2, (("b", "c"),): 3}


def test_cross_command(tmp_path, capsys):
    left = write(tmp_path, "l.json",
                 {"dim": 1, "terms": [{"coef": 1, "vertices": ["a", "b"]}]})
    right = write(tmp_path, "r.json",
                  {"dim": 1, "terms": [{"coef": 1, "vertices": ["c", "d"]}]})
    code, data = run_json(capsys, ["cross", "--left", left, "--right", right])
    assert code == 0
    assert len(data["result"]["product"]["terms"]) == 2


def test_subdivide_with_check(tmp_path, capsys):
    path = write(tmp_path, "tri.json", {"simplices": [[0, 1, 2]]})
    code, data = run_json(capsys, ["subdivide", "--complex", path, "--check"])
    assert code == 0
    assert not data["result"]["partition_check"]["violations"]
    assert data["result"]["partition_check"]["per_simplex"]["(0, 1, 2)"][
        "volumes"] == ["1/6"] * 6


def test_retract_command(tmp_path, capsys):
    cx = write(tmp_path, "edge.json", {"simplices": [["u", "v"]]})
    sub = write(tmp_path, "sub.json", {"simplices": [["u"]]})
    point = write(tmp_path, "p.json",
                  {"coords": {"\"u\"": "1/3", "\"v\"": "2/3"}})
    code, data = run_json(capsys, ["retract", "--complex", cx, "--sub", sub,
                                   "--point", point, "--t", "1"])
    assert code == 0
    assert data["result"]["a"] == "1/3"
    assert data["result"]["alpha_out"]["coords"] == {"\"u\"": "1"}


def test_retract_rejects_n_point(tmp_path, capsys):
    cx = write(tmp_path, "edge.json", {"simplices": [["u", "v"]]})
    sub = write(tmp_path, "sub.json", {"simplices": [["u"]]})
    point = write(tmp_path, "p.json", {"coords": {"\"v\"": "1"}})
    code, data = run_json(capsys, ["retract", "--complex", cx, "--sub", sub,
                                   "--point", point, "--t", "1"])
    assert code == 2
    assert "retraction undefined" in data["error"]["message"]


def test_cone_command(tmp_path, capsys):
    cx = write(tmp_path, "edge.json", {"simplices": [["a", "b"]]})
    sub = write(tmp_path, "ends.json", {"simplices": [["a"], ["b"]]})
    code, data = run_json(capsys, ["cone", "--complex", cx, "--sub", sub])
    assert code == 0
    assert data["result"]["apex"] == "*"


def test_product_complex_command(tmp_path, capsys):
    cx = write(tmp_path, "edge.json", {"simplices": [["a", "b"]]})
    code, data = run_json(capsys, ["product-complex", "--complex", cx])
    assert code == 0
    assert data["result"]["orbit_counts"] == {"0": 3, "1": 3, "2": 1}


def test_fundamental_check_command(tmp_path, capsys):
    path = write(tmp_path, "dd3.json", DD3)
    code, data = run_json(capsys, ["fundamental-check", "--complex", path])
    assert code == 0
    assert data["result"]["ok"] is True
    assert data["result"]["support_count"] == 36


def test_roof_family_command(tmp_path, capsys):
    path = write(tmp_path, "dd3.json", DD3)
    terms = write(tmp_path, "fund.json", {
        "dim": 2, "terms": [
            {"coef": 1, "vertices": [0, 1, 2]},
            {"coef": -1, "vertices": [0, 1, 3]},
            {"coef": 1, "vertices": [0, 2, 3]},
            {"coef": -1, "vertices": [1, 2, 3]},
        ]})
    code, data = run_json(capsys, ["roof-family", "--terms", terms,
                                   "--complex", path])
    assert code == 0
    assert data["result"]["is_relative_cycle"] is True
    assert data["result"]["class"] in ([1], [-1])


def test_nerve_project_cech_commands(tmp_path, capsys):
    ground = write(tmp_path, "ground.json", {"points": [0, 1, 2, 3, 4, 5]})
    arcs3 = write(tmp_path, "arcs3.json", {
        "sets": {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]}})
    arcs6 = write(tmp_path, "arcs6.json", {
        "sets": {"V%d" % i: [i, (i + 1) % 6] for i in range(6)}})
    code, data = run_json(capsys, ["nerve", "--ground", ground,
                                   "--cover", arcs3, "--k", "1"])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z"

    code, data = run_json(capsys, ["project", "--ground", ground,
                                   "--cover", arcs6, "--coarse", arcs3,
                                   "--k", "1"])
    assert code == 0
    assert data["result"]["induced_matrix"]["entries"] in ([1], [-1])

    tower = write(tmp_path, "tower.json", {
        "poset": {"elements": ["c", "f"], "leq": [["c", "f"]]},
        "covers": {"c": {"sets": {"U1": [0, 1, 2], "U2": [2, 3, 4],
                                  "U3": [4, 5, 0]}},
                   "f": {"sets": {"V%d" % i: [i, (i + 1) % 6]
                                  for i in range(6)}}}})
    code, data = run_json(capsys, ["cech", "--ground", ground,
                                   "--tower", tower, "--k", "1"])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z"


def test_refine_command(tmp_path, capsys):
    arcs3 = write(tmp_path, "arcs3.json", {
        "sets": {"U1": [0, 1, 2], "U2": [2, 3, 4], "U3": [4, 5, 0]}})
    rot = write(tmp_path, "rot.json", {
        "sets": {"W1": [1, 2, 3], "W2": [3, 4, 5], "W3": [5, 0, 1]}})
    code, data = run_json(capsys, ["refine", "--cover", arcs3,
                                   "--cover2", rot])
    assert code == 0
    assert len(data["result"]["cover"]["sets"]) == 6


def test_limit_and_cofinal_commands(tmp_path, capsys):
    system = write(tmp_path, "system.json", {
        "poset": {"elements": ["1", "2", "3"],
                  "leq": [["1", "2"], ["2", "3"]]},
        "groups": {n: {"gens": 1, "relations":
                       {"rows": 1, "cols": 0, "entries": []}}
                   for n in ("1", "2", "3")},
        "maps": {"1<=2": {"rows": 1, "cols": 1, "entries": [2]},
                 "2<=3": {"rows": 1, "cols": 1, "entries": [2]}}})
    code, data = run_json(capsys, ["limit", "--system", system])
    assert code == 0
    assert data["result"]["factors"]["pretty"] == "Z"
    assert data["result"]["basis"] == [{"1": [4], "2": [2], "3": [1]}]

    code, data = run_json(capsys, ["cofinal", "--system", system,
                                   "--subset", "3", "--compare"])
    assert code == 0
    assert data["result"]["cofinality"] == "strong"
    assert data["result"]["is_iso"] is True


def test_verify_command_and_determinism(tmp_path, capsys):
    code, out1 = run(capsys, ["--out", "json", "verify", "snf",
                              "--seed", "5", "--trials", "20"])
    assert code == 0
    code, out2 = run(capsys, ["--out", "json", "verify", "snf",
                              "--seed", "5", "--trials", "20"])
    assert out1 == out2

    code, out_serial = run(capsys, ["--out", "json", "verify", "all",
                                    "--seed", "2", "--trials", "5"])
    assert code == 0
    code, out_parallel = run(capsys, ["--out", "json", "verify", "all",
                                      "--seed", "2", "--trials", "5",
                                      "--jobs", "3"])
    assert out_serial == out_parallel


def test_verify_unknown_suite(capsys):
    code, data = run_json(capsys, ["verify", "nope"])
    assert code == 2
    assert "unknown suite" in data["error"]["message"]


def test_missing_file_reports_error(capsys):
    code, data = run_json(capsys, ["homology", "--complex", "/nope.json",
                                   "--k", "0"])
    assert code == 2
    assert "error" in data


def test_text_and_json_agree_on_content(tmp_path, capsys):
    path = write(tmp_path, "dd3.json", DD3)
    code, text = run(capsys, ["homology", "--complex", path, "--k", "2"])
    code, data = run_json(capsys, ["homology", "--complex", path, "--k", "2"])
    assert "free_rank: 1" in text
    assert data["result"]["factors"]["free_rank"] == 1
