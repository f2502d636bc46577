import json

import pytest

from gentle_ext.cli import run
from gentle_ext.homotopy import homotopy_string_from_walk
from gentle_ext.presentation import load_fixture
from gentle_ext.strings import parse_walk

SIGMA = "i k- c- b- f- g- b- h- i l d"


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ext_a2(capsys):
    code, out, _ = call(capsys, "ext", "--algebra", "a2.json", "1_1", "1_2", "--json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 1
    (c,) = data["classes"]
    assert c["kind"] == "arrow" and c["arrow"] == "a"
    assert c["middle"] == [{"word": "a", "is_band": False, "dims": [1, 1]}]


def test_cohomology_worked_example(capsys, tmp_path):
    p = load_fixture("paper-example")
    sigma = homotopy_string_from_walk(p, parse_walk(SIGMA, p), -1)
    f = tmp_path / "sigma.json"
    f.write_text(json.dumps(sigma.to_dict()))
    code, out, _ = call(capsys, "cohomology", "--algebra", "paper-example.json", f"@{f}")
    rows = [line for line in out.splitlines() if line.startswith("H^")]
    assert code == 0 and [r.split(" = ")[0] for r in rows] == ["H^-2", "H^-1", "H^0", "H^1"]
    code, out, _ = call(capsys, "cohomology", "--algebra", "paper-example", f"@{f}", "--json")
    assert sorted(json.loads(out)["summands"], key=int) == ["-2", "-1", "0", "1"]


def test_crosscheck_kronecker(capsys):
    code, out, _ = call(capsys, "crosscheck", "--algebra", "kronecker.json", "--max-len", "3", "--json")
    assert code == 0 and json.loads(out)["mismatches"] == []


def test_validate_exit_codes(capsys, tmp_path):
    assert call(capsys, "validate", "--algebra", "c3")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "vertices": ["1", "2", "3", "4"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "3", "to": "2"},
                   {"name": "c", "from": "4", "to": "2"}],
        "relations": [],
    }))
    code, out, _ = call(capsys, "validate", "--algebra", str(bad), "--json")
    assert code == 1 and json.loads(out)["gentle"] is False


@pytest.mark.parametrize("argv", [
    ["ext", "--algebra", "nope.json", "1_1", "1_2"],
    ["ext", "--algebra", "a2", "a a", "1_2"],
    ["ext", "--algebra", "a2", "zz", "1_2"],
    ["ext", "--algebra", "a2", "1_1"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["strings", "--algebra", "kronecker", "--max-len", "2"],
    ["bands", "--algebra", "paper-example", "--max-len", "4"],
    ["resolve", "--algebra", "c3", "1_1", "--min-degree", "-4"],
    ["resolve", "--algebra", "kronecker", "b- a", "--band"],
    ["ext", "--algebra", "kronecker", "1_1", "b- a", "--band-w"],
    ["hom-basis", "--algebra", "kronecker", "1_1", "b- a", "--band-w"],
    ["classify", "--algebra", "kronecker", "1_1", "1_2"],
    ["oracle-ext", "--algebra", "kronecker", "b- a", "b- a", "--band-v", "--band-w", "--field", "32003"],
])
def test_json_output_is_deterministic(capsys, argv):
    first = call(capsys, *argv, "--json")
    second = call(capsys, *argv, "--json")
    assert first[0] == 0 and first == second
    json.loads(first[1])
    code, text, _ = call(capsys, *argv)
    assert code == 0 and text.strip()
