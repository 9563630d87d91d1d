import io
import json
import subprocess
import sys

import pytest

from ffice import __version__
from ffice import exactalg as ea
from ffice.cli import RunConfig, dispatch, first_difference, report_emit


def run(*argv):
    out = io.StringIO()
    code = dispatch(list(argv), out)
    return code, out.getvalue()


def test_verify_all():
    code, text = run("verify", "all")
    assert code == 0
    assert "PASS rtt: 256/256" in text
    assert "PASS rrr: 512/512" in text
    assert "PASS unitarity: 64/64" in text
    assert "PASS caduceus: 16/16" in text
    assert "PASS free-fermion: 6/6" in text


def test_verify_json_is_deterministic():
    code1, a = run("verify", "unitarity", "--json")
    code2, b = run("verify", "unitarity", "--json")
    assert code1 == code2 == 0
    assert a == b
    records = json.loads(a)
    assert len(records) == 64
    assert all(r["pass"] and r["version"] == __version__ and r["equality"]["seed"] == 0 for r in records)


def test_compare_type_a():
    code, text = run("compare", "type-a", "--lambda", "1,0")
    assert code == 0
    assert "value: -(v*z1 - z2)*(z2 + z1)" in text


def test_compare_json_round_trip():
    code, text = run("compare", "type-a", "--lambda", "2,1", "--json")
    assert code == 0
    records = json.loads(text)
    assert {r["method"] for r in records} == {"enumerate", "transfer", "column", "fmatrix", "closed"}
    values = {ea.serialize(ea.from_json_obj(r["value"])) for r in records}
    assert len(values) == 1


def test_compare_mismatch_exit_code():
    # the decreasing half staircase is off by a monomial from the lattice model at rank 2
    code, text = run("compare", "type-c", "--lambda", "2,1")
    assert code == 1
    assert "closed: MISMATCH" in text
    assert "first difference" in text
    code, _ = run("compare", "type-c", "--lambda", "2,1", "--half-staircase", "increasing")
    assert code == 0


def test_partition_type_c_closed():
    code, text = run("partition", "type-c", "--lambda", "0", "--method", "closed")
    assert code == 0
    assert text.strip() == "-u*w1 + w1^-1"


def test_partition_json_text_agree():
    code, text = run("partition", "type-a", "--lambda", "1,0", "--json")
    assert code == 0
    (rec,) = json.loads(text)
    assert rec["states"] >= 1
    value = ea.from_json_obj(rec["value"])
    assert value.to_str() == rec["text"]
    assert ea.parse(ea.serialize(value)) == value


def test_partition_numeric():
    code, text = run("partition", "type-a", "--lambda", "1,0", "--numeric", "v=1/4,z1=2,z2=3")
    assert code == 0
    assert text.strip() == "25/2"
    for method in ("enumerate", "column", "fmatrix", "closed"):
        assert run("partition", "type-a", "--lambda", "1,0", "--numeric", "v=1/4,z1=2,z2=3", "--method", method)[1] == text


@pytest.mark.parametrize(
    "argv",
    [
        ["partition", "type-a", "--lambda", "1,0", "--numeric", "v=1/4,z1=2,z2=2", "--method", "closed"],
        ["partition", "type-a", "--lambda", "1,0", "--numeric", "v=2,z1=2,z2=3"],
        ["partition", "type-a", "--lambda", "1,0", "--numeric", "u=1/2,z1=2"],
        ["partition", "type-a", "--lambda", "0,1"],
        ["partition", "type-a", "--lambda", "x"],
        ["partition", "type-c", "--lambda", "1", "--numeric", "u=1/2,w1=-2"],
        ["compare", "type-a", "--lambda", "1,0", "--equality", "probabilistic", "--strict"],
        ["fmatrix", "dump", "--n", "9"],
        ["fmatrix", "dump", "--n", "3", "--type", "c"],
        ["verify", "fish"],
        [],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_probabilistic_banner(capsys):
    code = dispatch(["compare", "type-a", "--lambda", "1,0", "--equality", "probabilistic", "--seed", "5"], io.StringIO())
    assert code == 0
    assert "PROBABILISTIC" in capsys.readouterr().err


def test_probabilistic_seed_recorded():
    code, text = run("verify", "free-fermion", "--json", "--equality", "probabilistic", "--seed", "9", "--k", "2")
    assert code == 0
    rec = json.loads(text)[0]
    assert rec["equality"] == {"mode": "probabilistic", "k": 2, "seed": 9}


def test_fmatrix_dump():
    code, text = run("fmatrix", "dump", "--n", "2")
    assert code == 0
    (rec,) = json.loads(text)
    assert rec["n"] == 2
    assert len(rec["Delta"]) == 4
    assert len(rec["F"]) == 5


def test_weights_show():
    code, text = run("weights", "show", "--ice", "gamma")
    assert code == 0
    assert "-v" in text
    assert run("weights", "show", "--ice", "cap")[0] == 0


def test_report_emit_empty():
    assert report_emit([], RunConfig("verify")) == "[]"


def test_first_difference():
    z1, z2 = ea.z(1), ea.z(2)
    assert first_difference(z1, z1) == "no difference"
    assert first_difference(z1, z2).startswith("num[0]")


def test_limit_override_env(monkeypatch):
    monkeypatch.setenv("FFICE_MAX_N", "1")
    assert run("fmatrix", "dump", "--n", "2")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ffice", "partition", "type-a", "--lambda", "0,0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-v*z1 + z2"
