import json
import subprocess
import sys


from cantorval.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dimension(capsys):
    code, out, _ = run(capsys, "dimension", "--l", "1")
    data = json.loads(out)
    assert code == 0
    assert data["similarity_dimension"] == 1.0
    assert data["boundary_dimension"] == 0.7924812503605781
    assert abs(data["n_moran_dimension"] - 0.7924812503605781) < 1e-10


def test_dimension_explicit_ratios(capsys):
    _, out, _ = run(capsys, "dimension", "--ratios", "1/3,1/3")
    assert abs(json.loads(out)["similarity_dimension"] - 0.6309297535714574) < 1e-12


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "--l", "1", "--depth", "2")
    data = json.loads(out)
    assert code == 0
    assert data["inner_measure"] == "5/8" and data["interior_partial"] == "5/8"
    assert data["cover_measure"] == "11/8"
    assert data["inner_measure_decimal"] == "0.625000000000"


def test_convert(capsys):
    _, out, _ = run(capsys, "convert", "--l", "1", "--digits", "3,1")
    data = json.loads(out)
    assert data["digits"] == [2, 5] and data["value"] == "13/16"
    assert data["alphabet"] == "restricted"


def test_convert_point(capsys):
    _, out, _ = run(capsys, "convert", "--l", "1", "--point", "13/16", "--eps", "1/100")
    assert json.loads(out)["approximation"] == "13/16"


def test_convert_bad_first_digit(capsys):
    code, _, err = run(capsys, "convert", "--l", "1", "--digits", "2,1")
    assert code == 2
    assert json.loads(err)["error"] == "invalid_parameters"


def test_classify(capsys):
    _, out, _ = run(capsys, "classify", "--l", "2")
    data = json.loads(out)
    assert data["kind"] == "NotKakeya" and data["witness_residues_mod_m"] == [0]
    assert data["series"] == {"coeffs": ["5/6", "1/3", "1/3"], "ratio": "1/6"}
    _, out, _ = run(capsys, "classify", "--coeffs", "1/2", "--ratio", "1/2")
    assert json.loads(out)["kind"] == "FiniteUnionOfIntervals"


def test_cover_both_sides_agree(capsys):
    _, a, _ = run(capsys, "cover", "--l", "1", "--depth", "2")
    _, b, _ = run(capsys, "cover", "--l", "1", "--depth", "4", "--side", "series")
    assert json.loads(a)["intervals"] == json.loads(b)["intervals"]
    assert json.loads(a)["measure"] == "11/8"


def test_cover_from_ifs_json(capsys, tmp_path):
    path = tmp_path / "cantor.json"
    path.write_text(json.dumps({"maps": [{"ratio": "1/3", "shift": "0/1"},
                                         {"ratio": "1/3", "shift": "2/3"}]}))
    _, out, _ = run(capsys, "cover", "--ifs", f"@{path}", "--depth", "1")
    assert json.loads(out)["intervals"] == [["0/1", "1/3"], ["2/3", "1/1"]]


def test_inner(capsys):
    _, out, _ = run(capsys, "inner", "--l", "1", "--depth", "1")
    data = json.loads(out)
    assert data["intervals"] == [["1/6", "1/4"], ["2/3", "1/1"], ["17/12", "3/2"]]
    assert data["measure"] == "1/2"


def test_boxcount_csv_and_json(capsys):
    _, out, _ = run(capsys, "boxcount", "--l", "1", "--depths", "0-2")
    lines = out.splitlines()
    assert lines[:4] == ["depth,count", "0,1", "1,4", "2,14"]
    assert lines[4].startswith("# dimension_fit,")
    _, out, _ = run(capsys, "boxcount", "--l", "1", "--depths", "1,2", "--format", "json")
    assert json.loads(out)["counts"] == [{"depth": 1, "count": 4}, {"depth": 2, "count": 14}]


def test_render_to_file(capsys, tmp_path):
    path = tmp_path / "k1.svg"
    code, out, _ = run(capsys, "render", "--l", "1", "--depth", "3", "-o", str(path))
    assert code == 0 and out == ""
    svg = path.read_text()
    assert svg.startswith("<?xml") and svg.count('class="band"') == 4


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "nope")
    assert code == 2 and json.loads(err)["error"] == "usage"
    code, _, err = run(capsys, "cover", "--l", "1", "--depth", "20")
    assert code == 3 and json.loads(err)["error"] == "guard_exceeded"
    code, _, _ = run(capsys, "cover", "--l", "1", "--depth", "5", "--max-leaves", "100")
    assert code == 3
    code, _, _ = run(capsys, "inner", "--l", "0", "--depth", "1")
    assert code == 2
    code, _, _ = run(capsys, "measure", "--l", "1", "--coeffs", "1", "--depth", "1")
    assert code == 2


def test_oracle_failure_exit_code(capsys, monkeypatch):
    import cantorval.family as fam
    monkeypatch.setattr(fam, "digit_set", lambda l: (0, 2, 3))
    code, _, err = run(capsys, "convert", "--l", "1", "--digits", "3,1")
    assert code == 4 and json.loads(err)["error"] == "oracle_failure"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cantorval.cli", "classify", "--l", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["kind"] == "NotKakeya"
