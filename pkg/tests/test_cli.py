import json
import subprocess
import sys

import pytest

from hyperdescent.cli import load_config, main, parse_config, parse_factors
from hyperdescent.errors import ParseError, UnknownKey

RUNNING = {"f": [0, 6, -1, -7, 1, 1], "S": [2, 3, 5], "H": 10000, "B": 100}


def write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=1))
    return str(p)


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "hyperdescent", *args], capture_output=True, text=True, env=env)


def test_load_running_config(tmp_path):
    cfg = load_config(write(tmp_path, RUNNING))
    assert cfg.f == (0, 6, -1, -7, 1, 1) and list(cfg.S) == [2, 3, 5]
    assert (cfg.H, cfg.B, cfg.triple_policy) == (10000, 100, "first")


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"f": [0, 6, -1, -7, 1, 1], "S": [2, 3, 4]}, "S"),
        ({}, "f"),
        ({"f": [0, 6, -1, -7, 1, 1], "H": "big"}, "H"),
        ({"f": [0, 6, -1, -7, 1, 1], "triple_policy": "some"}, "triple_policy"),
    ],
)
def test_config_errors_name_the_field(doc, field):
    with pytest.raises(ParseError) as info:
        parse_config(json.dumps(doc))
    assert info.value.field == field


def test_unknown_key_and_line_numbers():
    text = '{\n  "f": [0, 6, -1, -7, 1, 1],\n  "T": 3\n}'
    with pytest.raises(UnknownKey) as info:
        parse_config(text)
    assert (info.value.field, info.value.line) == ("T", 3)
    with pytest.raises(ParseError) as info:
        parse_config('{\n  "f": [0, 6,\n}')
    assert info.value.line == 3


def test_parse_factors():
    assert parse_factors("0,1;1,0,1") == [[0, 1], [1, 0, 1]]
    with pytest.raises(ParseError):
        parse_factors("0,x")


def test_tally_report(tmp_path, capsys):
    cfg = write(tmp_path, RUNNING)
    out = tmp_path / "t.json"
    assert main(["tally", "--config", cfg, "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["weierstrass_count"] == 5 and doc["distinct_tags"] == 1
    assert doc["fibers"][0]["points"] == [["3", "-12"], ["3", "12"]]
    assert doc["bound"]["U_per_root"] == "16"
    assert doc["bound"]["symbolic"] == "O(1)^500"
    assert set(doc) >= {"curve", "points", "records", "errors", "fibers", "max_fiber", "bound"}
    tag = doc["fibers"][0]["tag"]
    assert tag["triple"] == ["-3", "-1", "0"] and tag["gamma"] == ["6", "1", "3"]
    assert set(tag) == {"triple", "gamma", "v12+", "v12-", "v23+", "v23-", "v13-"}
    assert all(isinstance(c, str) for c in tag["v12+"]["coords"])


def test_descend_single_point(tmp_path, capsys):
    cfg = write(tmp_path, RUNNING)
    assert main(["descend", "--config", cfg, "--x", "3", "--y", "12", "--triple", "0,1,-1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rec = doc["records"][0]
    assert rec["lambda"] == ["3", "2", "1"] and rec["mu"] == ["1", "1", "2"]
    assert rec["factors"]["12+"] == {"field": ["3", "2"], "coords": ["0", "1", "1", "0"]}


def test_report_bytes_are_deterministic(tmp_path):
    cfg = write(tmp_path, RUNNING)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["tally", "--config", cfg, "--triples", "all", "--output", str(a)])
    main(["tally", "--config", cfg, "--triples", "all", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_points_and_bound(tmp_path, capsys):
    cfg = write(tmp_path, {**RUNNING, "H": 50, "B": 1})
    assert main(["points", "--config", cfg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 7
    assert main(["bound", "--config", cfg, "--factors", "0,1;-1,1;1,1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["class_group_product"] == "1" and doc["exponent"]["value"] == 500


def test_exit_codes_black_box(tmp_path):
    bad_s = write(tmp_path, {"f": RUNNING["f"], "S": [2, 3]})
    r = run("bound", "--config", bad_s, "--factors", "0,1;-1,1;1,1")
    assert r.returncode == 1
    err = json.loads(r.stderr)
    assert err["error"] == "DiscriminantNotSUnit" and err["p"] == 5
    r = run("points", "--config", write(tmp_path, {"f": RUNNING["f"], "S": [2, 3, 4]}, "bad.json"))
    assert r.returncode == 1 and json.loads(r.stderr)["field"] == "S"
    r = run("descend", "--config", write(tmp_path, RUNNING, "ok.json"), "--x", "0", "--y", "0")
    assert r.returncode == 1 and json.loads(r.stderr)["error"] == "WeierstrassPoint"
    r = run("selftest")
    assert r.returncode == 0 and json.loads(r.stdout)["ok"]


def test_internal_failure_exits_2(tmp_path, monkeypatch, capsys):
    from hyperdescent import cli
    from hyperdescent.errors import InconsistentData

    def broken(cfg, args):
        raise InconsistentData("forced")

    monkeypatch.setitem(cli.COMMANDS, "tally", broken)
    assert main(["tally", "--config", write(tmp_path, RUNNING)]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "InconsistentData"


def test_corpus_command(capsys):
    assert main(["corpus", "--count", "3", "--seed", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["curves"]) == 3
    for c in doc["curves"]:
        parse_config(json.dumps(c["config"]))
