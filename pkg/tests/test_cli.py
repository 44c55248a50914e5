import csv
import io
import json

import pytest

from yangrep.cli import main
from yangrep.repanalysis import analyze
from yangrep.serialize import build_from_spec, dumps, module_from_json, module_to_json

SPECS = {
    "minus_restriction": {"family": "Y-", "N": 2, "expr": {"eval": {"hw": ["3/2", "-1/2"]}}},
    "trivial": {"family": "Y", "N": 2, "expr": {"trivial": {}}},
    "tensor": {"family": "Y", "N": 2, "expr": {"tensor": [{"eval": {"hw": ["2", "0"]}}, {"eval": {"hw": ["1", "-1"]}}]}},
    "mixed": {"family": "Y+", "N": 2, "expr": {"tensor_mixed": {"left": {"eval": {"hw": ["1", "0"]}}, "right": {"onedim": {"gamma": "-1"}}}}},
    "spin": {"family": "Y+", "N": 3, "expr": {"spin": {}}},
    "twisted_eval": {"family": "Y-", "N": 2, "expr": {"twisted_eval": {"algebra": "sp2", "mu": "-1"}}},
    "shift_twist": {"family": "Y", "N": 2, "expr": {"twist": {"phi": {"factors": [["1", -1]]}, "of": {"shift": {"a": "1/2", "of": {"eval": {"hw": ["1", "1"]}}}}}}},
    "even_twist": {"family": "Y+", "N": 2, "expr": {"twist": {"phi": {"factors": [["2", 1], ["-2", 1]]}, "of": {"onedim": {"gamma": "3/2"}}}}},
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


@pytest.mark.parametrize("name", sorted(SPECS))
def test_build_load_analyze_is_bit_identical(name):
    x = build_from_spec(SPECS[name])
    direct = dumps(analyze(x).to_json())
    y = module_from_json(json.loads(dumps(module_to_json(x))))
    assert dumps(analyze(y).to_json()) == direct
    assert dumps(module_to_json(y)) == dumps(module_to_json(x))


def test_build_and_analyze_commands(tmp_path, capsys):
    spec = write(tmp_path, "s.json", SPECS["minus_restriction"])
    mod = tmp_path / "m.json"
    code, out, _ = run(capsys, "build", "--spec", spec, "--out", mod)
    assert code == 0 and out == ""
    d = json.loads(mod.read_text())
    assert d["format"] == 1 and d["dim"] == 3
    code, out, _ = run(capsys, "analyze", mod)
    rep = json.loads(out)
    assert code == 0 and rep["irreducible"] and rep["singular_dim"] == 1


def test_build_trivial_and_analyze(tmp_path, capsys):
    spec = write(tmp_path, "s.json", SPECS["trivial"])
    code, out, _ = run(capsys, "build", "--spec", spec)
    assert code == 0 and json.loads(out)["dim"] == 1
    mod = write(tmp_path, "m.json", out)
    _, out, _ = run(capsys, "analyze", mod)
    comps = json.loads(out)["hw"]["components"]
    assert all(c["ratfunc"] == {"num": ["1"], "den": ["1"]} for c in comps)


def test_analyze_reducible_tensor(tmp_path, capsys):
    spec = write(tmp_path, "s.json", SPECS["tensor"])
    mod = tmp_path / "m.json"
    run(capsys, "build", "--spec", spec, "--out", mod)
    _, out, _ = run(capsys, "analyze", mod)
    rep = json.loads(out)
    assert not rep["irreducible"] and rep["singular_dim"] == 1 and rep["quotient_dim"] == 8


@pytest.mark.parametrize(
    "bad",
    [
        {"family": "Y", "N": 2, "expr": {"eval": {"hw": ["1/0", "0"]}}},
        {"family": "Y", "N": 2, "expr": {"eval": {"hw": ["1/2", "0"]}}},
        {"family": "Y", "N": 2, "expr": {"bogus": {}}},
        {"family": "Q", "N": 2, "expr": {"trivial": {}}},
        {"family": "Y-", "N": 2, "expr": {"spin": {}}},
        {"N": 2},
    ],
)
def test_build_rejects_malformed(tmp_path, capsys, bad):
    code, out, err = run(capsys, "build", "--spec", write(tmp_path, "s.json", bad))
    assert code == 2 and out == "" and err


def test_build_rejects_non_json(tmp_path, capsys):
    assert run(capsys, "build", "--spec", write(tmp_path, "s.json", "{nope"))[0] == 2


def test_analyze_bad_file(tmp_path, capsys):
    assert run(capsys, "analyze", write(tmp_path, "m.json", {"format": 7}))[0] == 2


def test_classify(tmp_path, capsys, monkeypatch):
    req = write(tmp_path, "p.json", {"predicate": "fd_Y-", "n": 1, "mu": [{"factors": [["-1", 1]]}]})
    code, out, _ = run(capsys, "classify", "--spec", req)
    assert code == 0 and json.loads(out) == {"finite_dim": True, "P": [{"roots": {"0": 1, "-1": 1}}]}
    req = write(tmp_path, "p.json", {"predicate": "fd_Y", "lambda": [{"factors": [["1", 1]]}, "1", "1"]})
    assert json.loads(run(capsys, "classify", "--spec", req)[1])["P"] == [{"roots": {"0": 1}}, {"roots": {}}]
    req = write(tmp_path, "p.json", {"predicate": "fd_Yplus3", "alphas": ["1/2"], "betas": ["0"]})
    d = json.loads(run(capsys, "classify", "--spec", req)[1])
    assert d["finite_dim"] and d["branch"] == "half-integral-last"
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"predicate": "sym_arrow", "mu": "1"})))
    assert json.loads(run(capsys, "classify")[1]) == {"exists": True, "P": [{"roots": {}}]}


@pytest.mark.parametrize("req", [{"predicate": "nope"}, {"predicate": "fd_Y-", "n": 2, "mu": ["1"]}, {"predicate": "arrow"}, []])
def test_classify_malformed(tmp_path, capsys, req):
    assert run(capsys, "classify", "--spec", write(tmp_path, "p.json", req))[0] == 2


def test_verify_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "example57", "3/2", "1/2")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "verify", "--suite", "prop62", "2", "0", "1")
    assert code == 0
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "verify", "example57", "1")[0] == 2


def test_verify_defining_catalog(capsys):
    code, out, _ = run(capsys, "verify", "defining")
    assert code == 0 and json.loads(out)["pass"]


def test_verify_corrupted_module(tmp_path, capsys):
    spec = write(tmp_path, "s.json", SPECS["tensor"])
    mod = tmp_path / "m.json"
    run(capsys, "build", "--spec", spec, "--out", mod)
    d = json.loads(mod.read_text())
    first = d["entries"][0][1]["num"][0][0]
    first[2] = str(-int(first[2]))
    mod.write_text(json.dumps(d))
    code, out, err = run(capsys, "verify", "defining", "--module", mod)
    rep = json.loads(out)
    assert code == 1 and not rep["pass"]
    assert any(c["counterexample"] for c in rep["checks"] if not c["pass"])


def _csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_sweep_string_criterion(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"predicate": "crit_strings:2.11", "oracle": True,
                                     "grid": {"alpha1": ["1", "2"], "beta1": ["0"], "alpha2": ["0", "1", "1/2"], "beta2": ["-1"]}})
    code, out, _ = run(capsys, "sweep", "--spec", cfg)
    rows = _csv(out)
    assert code == 0
    assert rows[0] == ["alpha1", "beta1", "alpha2", "beta2", "criterion", "oracle", "agree"]
    assert rows[-1][0] == "SUMMARY" and rows[-1][-1] == "4/4"
    assert all(r[-1] == "true" for r in rows[1:-1])
    assert [r[0] + r[2] for r in rows[1:-1]] == ["10", "11", "20", "21"]


def test_sweep_empty_grid(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"predicate": "crit_strings:2.11", "grid": {"alpha1": [], "beta1": ["0"]}})
    out_csv = tmp_path / "o.csv"
    code, out, _ = run(capsys, "sweep", "--spec", cfg, "--out", out_csv)
    assert code == 0 and out == ""
    assert _csv(out_csv.read_text()) == [["alpha1", "beta1", "criterion", "oracle", "agree"]]


def test_sweep_predicate_cross_check(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"predicate": "fd_Yplus3-vs-fd_Yplus_odd"})
    grid = json.dumps({"alpha1": ["-1", "-1/2", "0", "1/2", "1", "3/2"], "beta1": ["-1", "-1/2", "0", "1/2", "1", "3/2"]})
    code, out, _ = run(capsys, "sweep", "--spec", cfg, "--grid", grid)
    rows = _csv(out)
    assert code == 0 and len(rows) == 38 and rows[-1][-1] == "36/36"


def test_sweep_config_errors(tmp_path, capsys):
    assert run(capsys, "sweep", "--spec", write(tmp_path, "c.json", {"grid": {}}))[0] == 2
    assert run(capsys, "sweep", "--spec", write(tmp_path, "c.json", {"predicate": "x", "grid": {}}))[0] == 2
    assert run(capsys, "sweep", "--spec", write(tmp_path, "c.json", {"predicate": "crit_strings:2.11", "grid": {"alpha1": ["1/0"]}}))[0] == 2
    assert run(capsys, "sweep", "--spec", write(tmp_path, "c.json", {"predicate": "crit_strings:2.11", "grid": {"alpha1": ["1"]}}))[0] == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
