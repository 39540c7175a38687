import json

import pytest

from nonhopf.cli import main
from nonhopf.words import relator
from nonhopf.slopes import family_slope

import expected
from oracles import same_cyclic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_relator(capsys):
    code, out, _ = run(capsys, "relator", "--slope", "1/3")
    assert code == 0 and out.strip() == "abaBAB"
    code, out, _ = run(capsys, "relator", "--i", "0")
    assert out.strip() == relator(family_slope(3, 0))


def test_cf_round_trip(capsys):
    code, out, _ = run(capsys, "cf", "--slope", "10/43", "--format", "json")
    assert code == 0 and json.loads(out)["cf"] == [4, 3, 3]
    code, out, _ = run(capsys, "cf", "--cf", "[4,3,3]", "--format", "json")
    assert json.loads(out)["slope"] == "10/43"


@pytest.mark.parametrize("argv", [
    ["cf", "--slope", "0/1"],
    ["cf", "--slope", "3/2"],
    ["cf", "--slope", "1/3", "--cf", "[3]"],
    ["relator"],
    ["check", "--condition", "c7"],
    ["image", "--m", "1", "--i", "0"],
    ["image", "--m", "4", "--i", "0"],
    ["csseq", "--word", "abx"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_csseq_and_decompose(capsys):
    _, out, _ = run(capsys, "csseq", "--slope", "10/43", "--format", "json")
    assert same_cyclic(json.loads(out)["cs"], expected.CS_R0)
    _, out, _ = run(capsys, "decompose", "--cf", "[4,3,3]", "--format", "json")
    d = json.loads(out)
    assert d["S1"] == [5, 4, 4, 5, 4, 4, 5] and d["S2"] == [4, 4, 4]


def test_pieces_and_check(capsys):
    _, out, _ = run(capsys, "pieces", "--N", "2", "--format", "json")
    assert [g["min_pieces"] for g in json.loads(out)["generators"]] == [4, 4, 4]
    code, out, _ = run(capsys, "check", "--N", "2", "--condition", "c4")
    assert code == 0 and out


def test_image(capsys):
    code, out, _ = run(capsys, "image", "--i", "1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["to"] == "[4,2,3,4,3]" and d["deletions"] == 29


def test_certify_and_replay(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "certify", "--N", "2", "--out", str(a), "--jobs", "1", "--quiet")[0] == 0
    assert run(capsys, "certify", "--N", "2", "--out", str(b), "--jobs", "2", "--quiet")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "replay", str(a))
    assert code == 0 and "valid" in out
    cert = json.loads(a.read_text())
    cert["digest"] = "0" * 64
    a.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "replay", str(a))
    assert code == 1 and "INVALID" in out
