import json

import pytest

from cuspedge.cli import main

SAMPLE_EDGE = {"b20": "1", "b12": "1", "a20": "1", "b30": "1", "b22": "0"}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_classify_function(tmp_path, capsys):
    code, rep = run(capsys, "classify-function", write(tmp_path, "g.json", {"expr": "v + u^3", "deg": 6}))
    assert code == 0
    assert rep["label"]["family"] == "FnVk" and rep["codimension"] == 1
    assert rep["determinacyDegree"] == 3


def test_classify_function_regular(tmp_path, capsys):
    code, rep = run(capsys, "classify-function", write(tmp_path, "g.json", {"expr": "u", "deg": 4}))
    assert code == 0 and rep["label"]["family"] == "FnU" and rep["codimension"] == 0


def test_zero_germ_exit_code(tmp_path, capsys):
    assert run(capsys, "classify-function", write(tmp_path, "g.json", {"expr": "0", "deg": 4}))[0] == 3


def test_parse_errors(tmp_path, capsys):
    assert run(capsys, "classify-function", write(tmp_path, "g.json", {"expr": "u +", "deg": 4}))[0] == 2
    assert run(capsys, "classify-function", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "classify-function")[0] == 2
    assert run(capsys)[0] == 2


def test_classify_map_with_jet_json(tmp_path, capsys):
    g = {"components": [{"deg": 6, "terms": [{"m": [0, 1, 0], "c": "1"}, {"m": [3, 0, 0], "c": "1"}]},
                        {"deg": 6, "terms": [{"m": [0, 0, 1], "c": "1"}, {"m": [2, 0, 0], "c": "1"}]}]}
    code, rep = run(capsys, "classify-map", write(tmp_path, "g.json", g))
    assert code == 0 and rep["label"]["family"] == "Type5" and rep["codimension"] == 1


def test_transversal_and_determinacy(tmp_path, capsys):
    germ = write(tmp_path, "g.json", {"exprs": ["v", "w + u^2"], "deg": 6})
    code, rep = run(capsys, "transversal", germ, "--degree", 3)
    assert code == 0 and rep["generators"] == ["(u^3, 0)"]
    code, rep = run(capsys, "determinacy", write(tmp_path, "h.json", {"expr": "w + u^2", "deg": 6}))
    assert code == 0 and rep["determinacyDegree"] == 2


def test_classify_edge(tmp_path, capsys):
    edge = write(tmp_path, "e.json", SAMPLE_EDGE)
    code, rep = run(capsys, "classify-edge", edge, "--direction", "0,0,1")
    assert code == 0 and rep["height"]["family"] == "FnWU2"
    code, rep = run(capsys, "classify-edge", edge, "--direction", "1,0,0")
    assert rep["projection"]["family"] == "Type5"
    assert run(capsys, "classify-edge", edge)[0] == 2


def test_sweep_csv(tmp_path, capsys):
    edge = write(tmp_path, "e.json", SAMPLE_EDGE)
    code, rep = run(capsys, "--out", tmp_path, "classify-edge", edge, "--sweep", 16)
    assert code == 0 and rep["rows"] == 256
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert lines[0] == "s,t,vx,vy,vz,height,projection" and len(lines) == 257


def test_not_a_cuspidal_edge(tmp_path, capsys):
    edge = write(tmp_path, "e.json", dict(SAMPLE_EDGE, b03="0"))
    assert run(capsys, "invariants", edge)[0] == 4


def test_invariants(tmp_path, capsys):
    code, rep = run(capsys, "invariants", write(tmp_path, "e.json", SAMPLE_EDGE))
    assert code == 0 and rep["invariants"]["tauSigma"] == "1/2"
    assert rep["quadraticPair"] == "hyperbolic"


def test_discriminant_obj(tmp_path, capsys):
    code, rep = run(capsys, "--out", tmp_path, "discriminant", "--form", "FnVk4", "--grid", 4)
    assert code == 0 and rep["sheets"] == ["D1_D2_swallowtail"]
    assert (tmp_path / "discriminant_FnVk4.obj").read_text().startswith("#")
    assert run(capsys, "--out", tmp_path, "discriminant", "--form", "FnWUV", "--a=-4/27")[0] == 5


def test_outputs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        run(capsys, "--out", out, "discriminant", "--form", "FnWUV", "--grid", 5)
        run(capsys, "--out", out, "strata", "--a", 1, "--b", 2)
    for name in ("discriminant_FnWUV.obj", "strata.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_strata(tmp_path, capsys):
    code, rep = run(capsys, "strata", "--a", 1, "--b", 2)
    assert code == 0
    assert [s["name"] for s in rep["strata"]].count("swallowtail") == 1
    assert rep["rootCounts"]["swallowtail"] == 1
    assert run(capsys, "strata", "--a", 0, "--b", 1)[0] == 5
    assert run(capsys, "strata", "--a", "x", "--b", 1)[0] == 5


def test_strata_decay(capsys):
    code, rep = run(capsys, "strata", "--a", 1, "--b", 2, "--c", "1/3", "--d", "1/5", "--e", "1/7",
                    "--decay")
    assert code == 0
    assert rep["residualDecay"]["lips_beaks"]["slope"] >= 2.8


def test_abplane(tmp_path, capsys):
    code, rep = run(capsys, "--out", tmp_path, "abplane", "--resolution", 40)
    assert code == 0 and len(rep["files"]) == 6
    assert len(list(tmp_path.glob("abplane_*.csv"))) == 6


def test_profile(tmp_path, capsys):
    edge = write(tmp_path, "e.json", SAMPLE_EDGE)
    code, rep = run(capsys, "--out", tmp_path, "profile", edge, "--resolution", 64)
    assert code == 0 and rep["polylines"][0][0] == "singular_image"
    assert (tmp_path / "profile.csv").read_text().startswith("label,x,y")
    assert run(capsys, "profile", edge, "--resolution", 2)[0] == 2


def test_identities(capsys):
    code, rep = run(capsys, "identities")
    assert code == 0 and [r["status"] for r in rep] == ["match", "match"]


def test_job_file(tmp_path, capsys):
    job = write(tmp_path, "job.json", {"command": "strata", "a": "-1", "b": "-1/2"})
    code, rep = run(capsys, "--job", job)
    assert code == 0 and rep["rootCounts"]["swallowtail"] == 3
    assert run(capsys, "--job", write(tmp_path, "bad.json", [1, 2]))[0] == 2


def test_selftest(capsys):
    code, rep = run(capsys, "--seed", 3, "selftest", "--count", 1)
    assert code == 0
    assert rep["crossOracle"]["failures"] == 0
