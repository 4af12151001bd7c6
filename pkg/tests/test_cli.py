import json
import subprocess
import sys

import pytest

from cechtower.abelian import AbelianGroup
from cechtower.cli import main
from cechtower.complexes import catalog
from cechtower.exactseq import ShortExactSequence
from cechtower.towers import TowerCocycle


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        paths[name] = str(p)
        return str(p)

    write("circle3.json", catalog("circle(3)").to_json())
    write("Z.json", {"free_rank": 1, "torsion": []})
    write("zero_tower.json", TowerCocycle.zero(catalog("sphere(2)"), [AbelianGroup.cyclic(3)]).to_json())
    write("base.json", TowerCocycle.base(catalog("sphere(2)")).to_json())
    write("ses.json", ShortExactSequence.prime_square(2).to_json())
    write("broken.json", '{"simplices": [[0, 1]\n  [1, 2]]}')
    return paths


def test_cohomology_report(capsys, files):
    code, out, _ = run(capsys, "cech", "cohomology", "--complex", files["circle3.json"], "--group", files["Z.json"], "--degree", "1")
    assert code == 0 and out == "H^1 = Z\n"


def test_cohomology_basis_json(capsys):
    code, out, _ = run(capsys, "cech", "cohomology", "--complex", "rp2_6", "--group", "Z/2", "--degree", "1", "--basis", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"] == "H^1 = Z/2" and len(doc["basis"]) == 1


def test_zero_tower_class(capsys, files):
    code, out, _ = run(capsys, "tower", "classify", files["zero_tower.json"], "--format", "json")
    assert code == 0 and json.loads(out)["class"] == "0"


def test_missing_file(capsys):
    code, _, err = run(capsys, "complex", "validate", "no/such/file.json")
    assert code == 2 and "not found" in err


def test_malformed_json_position(capsys, files):
    code, _, err = run(capsys, "complex", "validate", files["broken.json"])
    assert code == 2 and "line 2, column 3" in err


def test_schema_error_names_field(capsys, files, tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"free_rank": "two"}')
    code, _, err = run(capsys, "cech", "cohomology", "--complex", "circle3", "--group", str(p), "--degree", "0")
    assert code == 2 and "free_rank" in err


def test_bad_arguments_exit_two(capsys):
    assert run(capsys, "cech", "cohomology")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "complex", "catalog", "moebius")[0] == 2


def test_catalog_out_file(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, stdout, _ = run(capsys, "complex", "catalog", "torus7", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text()) == catalog("torus7").to_json()
    code, stdout, _ = run(capsys, "complex", "validate", str(out))
    assert "Euler characteristic 0" in stdout


def test_verify_exit_codes(capsys):
    cocycle = '{"degree": 1, "group": {"Z": 1}, "values": {"0,1": [1]}}'
    assert run(capsys, "cech", "verify", "--complex", "circle3", "--cochain", cocycle)[0] == 0
    code, out, _ = run(capsys, "cech", "verify", "--complex", "circle3", "--cochain", cocycle, "--coboundary")
    assert code == 1 and "not a coboundary" in out
    assert run(capsys, "cech", "verify", "--complex", "simplex(2)", "--cochain", cocycle)[0] == 1
    assert run(capsys, "cech", "verify", "--cochain", cocycle)[0] == 2


def test_giraud_and_contract(capsys):
    u = json.dumps({"complex": catalog("simplex(2)").to_json(), "group": {"mod": 3}, "values": {"0,1": [1], "1,2": [1]}})
    code, out, _ = run(capsys, "cech", "giraud", "--transitions", u, "--format", "json")
    assert code == 0 and json.loads(out)["cocycle"]["values"] == {"0,1,2": [2]}
    c = json.dumps({"complex": catalog("simplex(3)").to_json(), "degree": 2, "group": {"Z": 1},
                    "values": {"0,1,2": [1]}})
    assert run(capsys, "cech", "contract", "--cochain", c, "--apex", "3")[0] == 1  # not a cocycle
    c2 = json.dumps({"complex": catalog("simplex(3)").to_json(), "degree": 2, "group": {"Z": 1},
                     "values": {"0,1,2": [1], "0,1,3": [1]}})
    code, out, _ = run(capsys, "cech", "contract", "--cochain", c2, "--apex", "0", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_tower_extend_and_compare(capsys, files, tmp_path):
    code, out, _ = run(capsys, "tower", "extend", files["base.json"], "--link", "Z/3", "--class", "1")
    assert code == 0
    t1 = tmp_path / "t1.json"
    t1.write_text(out)
    assert run(capsys, "tower", "validate", str(t1))[0] == 0
    assert run(capsys, "tower", "classify", str(t1))[1] == "class 1 in H^2 = Z/3\n"
    assert run(capsys, "tower", "trivial", str(t1))[1] == "not trivial\n"
    assert run(capsys, "tower", "equivalent", str(t1), files["zero_tower.json"])[1] == "not equivalent\n"
    assert run(capsys, "tower", "equivalent", str(t1), str(t1))[1] == "equivalent\n"
    assert run(capsys, "tower", "extend", files["base.json"], "--link", "Z/3", "--class", "x")[0] == 2


def test_invalid_tower_is_mathematical_failure(capsys, files, tmp_path):
    doc = json.loads(open(files["zero_tower.json"]).read())
    doc["cocycles"][0]["degree"] = 1
    doc["cocycles"][0]["values"] = {"0,1": [1]}
    p = tmp_path / "bad_tower.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "tower", "validate", str(p))
    assert code == 1 and "invalid" in out
    assert run(capsys, "tower", "classify", str(p))[0] == 1


def test_spectral_commands(capsys):
    code, out, _ = run(capsys, "spectral", "pages", "--complex", "circle3", "--stack", "Z,Z/2", "--rmax", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["total"]["1"] == {"free_rank": 1, "torsion": [2]}
    code, out, _ = run(capsys, "spectral", "prop31", "--complex", "sphere(2)", "--l0", "Z", "--ln", "Z/2", "--n", "2", "--degrees", "0..3")
    assert code == 0 and out.endswith("sequence exact\n")
    assert run(capsys, "spectral", "prop31", "--complex", "sphere(2)", "--l0", "Z", "--ln", "Z/2", "--n", "2", "--degrees", "3..1")[0] == 2


def test_les_commands(capsys, files):
    code, out, _ = run(capsys, "les", "run", "--complex", "rp2_6", "--ses", files["ses.json"], "--degrees", "0..2")
    assert code == 0 and "sequence exact" in out
    assert run(capsys, "les", "run", "--complex", "torus7", "--ses", "int-mod:2", "--degrees", "0..2")[0] == 0
    code, out, _ = run(capsys, "les", "bockstein", "--complex", "rp2_6", "--p", "2", "--degree", "1", "--format", "json")
    assert code == 0 and json.loads(out)["columns"] == [[1]]
    bad = '{"A\'": {"mod": 2}, "A": {"mod": 4}, "A\'\'": {"mod": 2}, "inject": [[1]], "project": [[1]]}'
    assert run(capsys, "les", "run", "--complex", "rp2_6", "--ses", bad, "--degrees", "0..1")[0] == 2


REPORT_COMMANDS = [
    ["complex", "validate", "klein8"],
    ["cech", "cohomology", "--complex", "torus7", "--group", "Z+Z/4", "--degree", "1", "--basis"],
    ["spectral", "pages", "--complex", "sphere(2)", "--stack", "Z/2,Z", "--rmax", "2"],
    ["spectral", "prop31", "--complex", "sphere(2)", "--l0", "Z", "--ln", "Z/2", "--n", "2", "--degrees", "0..3"],
    ["les", "run", "--complex", "klein8", "--ses", "prime-square:2", "--degrees", "0..2"],
    ["les", "bockstein", "--complex", "klein8", "--p", "2", "--degree", "1"],
    ["complex", "catalog", "rp2_6"],
]


@pytest.mark.parametrize("argv", REPORT_COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_json_reports_round_trip_and_are_stable(capsys, argv):
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second
    assert json.dumps(json.loads(first), indent=2, sort_keys=True) + "\n" == first


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "cechtower", "cech", "cohomology", "--complex", "sphere(2)",
                           "--group", "Z", "--degree", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "H^2 = Z\n"
