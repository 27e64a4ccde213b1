import json
import subprocess
import sys

import pytest

from genus2lf.cli import main
from genus2lf.data import MATSUMOTO_FILE, SEED_FILE, data_path
from genus2lf.factorization import stamp

GEOGRAPHY_K1 = """\
k  n  s  sigma  e  minimal  indecomposable  s=2n-5
1  6  2     -4  4  Unknown          Proved
1  4  3     -3  3  Unknown          Proved     yes
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_ok(capsys):
    code, out = run(capsys, "verify", str(data_path(MATSUMOTO_FILE)))
    assert code == 0
    body = json.loads(out)
    assert body["results"]["certificate"]["verdict"] == "Identity"
    assert body["results"]["type"] == [6, 2]


def test_verify_fail_and_malformed(capsys, tmp_path):
    bad = tmp_path / "one.json"
    bad.write_text(json.dumps({"letters": [{"base": "C1", "transporter": []}]}))
    code, out = run(capsys, "verify", str(bad))
    assert code == 1
    assert json.loads(out)["results"]["certificate"]["verdict"] == "NotIdentity"
    junk = tmp_path / "junk.json"
    junk.write_text(json.dumps({"letters": [{"base": "C9"}]}))
    assert run(capsys, "verify", str(junk))[0] == 2
    nojson = tmp_path / "nojson.json"
    nojson.write_text("{")
    assert run(capsys, "verify", str(nojson))[0] == 2


def test_verify_several_in_parallel(capsys, monkeypatch):
    monkeypatch.setenv("GENUS2LF_THREADS", "2")
    p = str(data_path(MATSUMOTO_FILE))
    code, out = run(capsys, "verify", p, str(data_path(SEED_FILE)))
    assert code == 0
    assert [r["type"] for r in json.loads(out)["results"]] == [[6, 2], [4, 3]]


def test_certify_exit_codes(capsys):
    code, out = run(capsys, "certify", "6", "7")
    assert code == 0 and json.loads(out)["verdict"] == "Proved"
    code, out = run(capsys, "certify", "14", "3")
    assert code == 3
    code, out = run(capsys, "certify", "10", "0")
    assert code == 2
    assert json.loads(out)["admissibility"]["violations"] == ["TenCase"]
    code, out = run(capsys, "certify", "14", "13", "--kind", "theorem1")
    assert code == 0
    assert sorted(json.loads(out)["extra"]["leaves"]) == [[6, 7], [8, 11], [10, 10], [14, 13]]


def test_geography_golden(capsys):
    code, out = run(capsys, "geography", "--max-k", "1")
    assert code == 0
    assert out == GEOGRAPHY_K1
    code, out = run(capsys, "geography", "--max-k", "1", "--format", "json")
    rows = json.loads(out)["rows"]
    assert [(r["n"], r["s"]) for r in rows] == [(6, 2), (4, 3)]
    assert run(capsys, "geography", "--max-k", "0")[0] == 2


def test_moves(capsys, tmp_path):
    script = tmp_path / "s.json"
    script.write_text(json.dumps([
        {"op": "cyclic", "k": 2},
        {"op": "hurwitz", "i": 3, "direction": -1},
        {"op": "conjugate", "word": [[2, 1], [5, -1]]},
    ]))
    out = tmp_path / "o.json"
    code, text = run(capsys, "moves", str(data_path(MATSUMOTO_FILE)), "--script", str(script), "--out", str(out))
    assert code == 0
    assert json.loads(text)["type"] == [6, 2]
    assert run(capsys, "verify", str(out))[0] == 0


def test_moves_precondition(capsys, tmp_path):
    script = tmp_path / "s.json"
    script.write_text(json.dumps([{"op": "hurwitz", "i": 99}]))
    code, out = run(capsys, "moves", str(data_path(MATSUMOTO_FILE)), "--script", str(script))
    assert code == 6
    script.write_text(json.dumps([{"op": "lantern", "position": 0}]))
    assert run(capsys, "moves", str(data_path(MATSUMOTO_FILE)), "--script", str(script))[0] == 6
    script.write_text(json.dumps([{"op": "twirl"}]))
    assert run(capsys, "moves", str(data_path(MATSUMOTO_FILE)), "--script", str(script))[0] == 2


def test_derive_rejects_stale_seed(capsys, tmp_path):
    data = json.loads(data_path(SEED_FILE).read_text())
    data["letters"] = data["letters"][::-1]
    p = tmp_path / "stale.json"
    p.write_text(json.dumps(data))
    assert run(capsys, "derive", "--seed", str(p), "--out", str(tmp_path / "o.json"))[0] == 4
    # restamping an unverifiable seed still fails, now on verification
    p.write_text(json.dumps(stamp(data)))
    assert run(capsys, "derive", "--seed", str(p), "--out", str(tmp_path / "o.json"))[0] == 4
    assert not (tmp_path / "o.json").exists()


def test_derive_rejects_bad_lantern(capsys, tmp_path):
    data = json.loads(data_path("lantern.json").read_text())
    data["interior"] = data["interior"][::-1]
    p = tmp_path / "l.json"
    p.write_text(json.dumps(stamp(data)))
    assert run(capsys, "derive", "--lantern", str(p), "--out", str(tmp_path / "o.json"))[0] == 5


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "genus2lf", "certify", "8", "11"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "Proved"


@pytest.mark.slow
def test_derive_end_to_end(capsys, tmp_path):
    out = tmp_path / "d.json"
    code, text = run(capsys, "derive", "--out", str(out))
    assert code == 0
    body = json.loads(text)
    assert body["type"] == [14, 13] and body["letters"] == 27
    assert body["signature"] == -11 and body["euler"] == 23
    assert run(capsys, "verify", str(out))[0] == 0
