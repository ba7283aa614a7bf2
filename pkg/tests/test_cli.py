import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from qstar.cli import main, parse_mu, parse_q
from qstar.ledger import load_schema


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "qstar", *args], capture_output=True, text=True, env=env)


def run_json(*args):
    p = run(*args)
    return p.returncode, json.loads(p.stdout)


def test_parse_q():
    assert parse_q("0.5") == 0.5
    assert parse_q(".8") == 0.8
    for bad in ("5e-1", "0.5.1", "-0.5", "abc", "1E0"):
        with pytest.raises(Exception):
            parse_q(bad)


def test_parse_mu():
    assert parse_mu("2") == 2
    assert parse_mu("1,-0.5") == complex(1, -0.5)
    with pytest.raises(Exception):
        parse_mu("1,2,3")


def test_coeffs():
    code, rec = run_json("coeffs", "--mode", "classical", "--generator", "xi", "--order", "4")
    assert code == 0
    assert rec["results"]["coefficients"] == pytest.approx([1, 1, 1, 17 / 18], abs=1e-11)
    jsonschema.validate(rec, load_schema("coeffs"))
    code, rec = run_json("coeffs", "--mode", "q", "--q", "0.5", "--generator", "xi", "--order", "2")
    assert rec["results"]["coefficients"][1] == 2.0


@pytest.mark.parametrize(
    "args",
    [
        ("coeffs", "--mode", "q", "--q", "1.0"),
        ("coeffs", "--mode", "q"),
        ("coeffs", "--q", "0.5"),
        ("coeffs", "--order", "1"),
        ("verify", "--functional", "nope"),
        ("verify", "--functional", "a2", "--mu", "1"),
        ("curve", "--samples", "4"),
        ("report", "--q", "1.5"),
        ("bogus",),
    ],
)
def test_usage_errors_exit_2(args):
    assert run(*args).returncode == 2


def test_verify_exit_codes_and_schema():
    code, rec = run_json("verify", "--functional", "h22", "--mode", "classical")
    assert code == 0 and rec["results"]["status"] == "CONFIRMED"
    assert rec["results"]["closed_form"] == 0.25
    jsonschema.validate(rec, load_schema("bound_report"))
    code, rec = run_json("verify", "--functional", "t21", "--mode", "q", "--q", "0.5")
    assert code == 1 and rec["results"]["status"] == "DISCREPANT"
    assert rec["results"]["printed"] == -3.0 and rec["results"]["oracle_max"] == pytest.approx(3.0)
    code, rec = run_json("verify", "--functional", "fs", "--mu", "1", "--mode", "q", "--q", "0.8")
    assert code == 0 and rec["results"]["closed_form"] == pytest.approx(1 / (0.8 * 1.8), abs=1e-11)


def test_seed_from_environment():
    env = {"QSTAR_SEED": "11", "PATH": ""}
    p = run("verify", "--functional", "a2", "--grid", "8", "--refine", "5", env=env)
    assert json.loads(p.stdout)["parameters"]["seed"] == 11
    env["QSTAR_SEED"] = "x"
    assert run("verify", "--functional", "a2", env=env).returncode == 2


def test_curve_csv():
    p = run("curve", "--mode", "q", "--q", "0.8", "--samples", "2048", "--eps", "0.01")
    assert p.returncode == 0
    rows = list(csv.reader(io.StringIO(p.stdout)))
    assert rows[0] == ["theta", "re", "im"] and len(rows) == 2049
    at_pi = [r for r in rows[1:] if abs(float(r[0]) - math.pi) < 1e-9]
    expected = 1 - math.sin(0.8) / (0.8 * 1.8)
    assert len(at_pi) == 1 and abs(float(at_pi[0][1]) - expected) < 1e-10 and abs(float(at_pi[0][2])) < 1e-10


def test_curve_json(tmp_path):
    out = tmp_path / "c.json"
    assert run("curve", "--samples", "64", "--format", "json", "--out", str(out)).returncode == 0
    rec = json.loads(out.read_text())
    jsonschema.validate(rec, load_schema("curve"))
    assert len(rec["results"]) == 64


def test_membership(tmp_path):
    ident = tmp_path / "id.json"
    ident.write_text("[1]")
    code, rec = run_json("membership", str(ident))
    assert code == 0 and rec["results"]["status"] == "MEMBER"
    jsonschema.validate(rec, load_schema("membership"))
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    code, rec = run_json("membership", str(bad))
    assert code == 1 and rec["results"]["status"] == "NON_MEMBER"
    for text in ("[2, 1]", "{}", "[]", "not json", '[1, "x"]', "[true]"):
        bad.write_text(text)
        assert run("membership", str(bad)).returncode == 2
    assert run("membership", str(tmp_path / "missing.json")).returncode == 2


def test_membership_extremal_file(tmp_path):
    _, rec = run_json("coeffs", "--mode", "q", "--q", "0.8", "--order", "400")
    f = tmp_path / "ext.json"
    f.write_text(json.dumps(rec["results"]["coefficients"]))
    code, rec = run_json("membership", str(f), "--mode", "q", "--q", "0.8")
    assert code == 0 and rec["results"]["status"] == "MEMBER"


def test_complex_coefficient_entries(tmp_path):
    f = tmp_path / "c.json"
    f.write_text("[1, [0.1, 0.2]]")
    code, rec = run_json("membership", str(f))
    assert code == 0


def test_stamp_opt_in(capsys):
    assert main(["coeffs", "--order", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["timestamp"] is None
    assert main(["coeffs", "--order", "3", "--stamp"]) == 0
    assert json.loads(capsys.readouterr().out)["timestamp"]


def test_unwritable_output():
    assert run("coeffs", "--out", "/nonexistent/dir/x.json").returncode == 2


def test_verify_reruns_are_byte_identical():
    a = run("verify", "--functional", "t32", "--mode", "q", "--q", "0.8", "--seed", "3")
    b = run("verify", "--functional", "t32", "--mode", "q", "--q", "0.8", "--seed", "3")
    assert a.stdout == b.stdout and a.returncode == b.returncode
