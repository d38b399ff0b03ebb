from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from garside.cli import COMMANDS, UsageError, expand_macros, run

PSI2 = "(2 1)^7 (4)^6 3 (4)^3"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json")
    assert code == 0, text
    return json.loads(text)


def test_macros():
    assert expand_macros("(1 2)^2 3").split() == ["1", "2", "1", "2", "3"]
    assert expand_macros("(1 -2)^-1").split() == ["2", "-1"]
    assert expand_macros("((1)^2 2)^2").split() == ["1", "1", "2", "1", "1", "2"]
    assert expand_macros("(1)^0 2").split() == ["2"]
    with pytest.raises(UsageError):
        expand_macros("(1 2")


def test_nf_identity_and_psi():
    code, text = call("nf", "")
    assert code == 0 and "identity" in text
    data = call_json("nf", "-n", "5", PSI2)
    assert data["result"]["inf"] == 0 and data["result"]["sup"] == 7
    assert len(data["result"]["factors"]) == 7


@pytest.mark.parametrize("argv,code", [
    (["nf", "9"], 1),
    (["nf", "1 (2"], 2),
    (["nf", "a"], 2),
    (["nf", "1", "-n", "1"], 2),
    (["sss", "1", "--cap", "0"], 2),
    (["bogus"], 2),
    (["transport", "1 3", "2"], 1),
    (["transport", "1", "1 1"], 1),
    (["cycle", ""], 0),
    (["sss", "1 3 -2 4", "--cap", "2"], 3),
    (["bgn", "1", "--curve", "1-2"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code


def test_every_command_has_help(capsys):
    for name in COMMANDS:
        assert call(name, "--help")[0] == 0
        assert "usage" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["nf", PSI2],
    ["inv", "1 -2 3"],
    ["mul", "1 2", "-2 3", "4"],
    ["conj", "1 2 2", "2 -3"],
    ["cycle", "1 2 2 -3", "--times", "3"],
    ["decycle", "1 2 2 -3"],
    ["slide", "1 2 2 -3", "--times", "2"],
    ["rigid", "1 2 2"],
    ["sss", "1 3 -2 4"],
    ["sc", "1 3 -2 4"],
    ["transport", PSI2, "2"],
    ["curves", "1 3"],
    ["curves"],
    ["bgn", "1 3", "--curve", "1,2"],
    ["bgn", "1 2 -3"],
    ["classify", "1"],
    ["classify", "1 2 3 4"],
    ["classify", "1 -2", "-n", "3"],
])
def test_verify_roundtrip(argv, capsys):
    code, _ = call(*argv, "--format", "json", "--verify")
    assert code == 0
    assert "verify: ok" in capsys.readouterr().err


def test_json_byte_stable_across_jobs():
    a = call("sss", PSI2, "--format", "json", "--jobs", "1")
    b = call("sss", PSI2, "--format", "json", "--jobs", "2")
    c = call("sss", PSI2, "--format", "json", "--jobs", "1")
    assert a == b == c
    data = json.loads(a[1])
    assert data["size"] == 424 and data["kind"] == "SSS"


def test_dot_output():
    code, text = call("sc", PSI2, "--dot")
    assert code == 0
    assert text.startswith("digraph SC")
    assert text.count("[label=\"0|") == 14


def test_transport_text():
    code, text = call("transport", PSI2, "2")
    assert code == 0 and text.strip().endswith("[2,1,3,4,5]  1")


def test_classify_psi2():
    data = call_json("classify", PSI2)
    assert data["verdict"] == "PseudoAnosovCertified"
    code, _ = call("classify", "1 3 -2 4", "--cap", "1")
    assert code == 3


def test_paper_report(capsys):
    data = call_json("paper", "--k", "2")
    assert data["passed"] is True
    assert all(c["passed"] for c in data["checks"])
    code, text = call("paper", "--k", "1")
    assert code == 1


def test_bench_csv_and_plot(tmp_path):
    plot = tmp_path / "sizes.png"
    code, text = call("bench", "--kmin", "2", "--kmax", "3", "--sss-kmax", "2", "--plot", str(plot))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["k", "canonical_length", "sss_size", "sc_size", "wall_time_ms"]
    assert [(r["k"], r["canonical_length"], r["sss_size"], r["sc_size"]) for r in rows] == [
        ("2", "7", "424", "14"), ("3", "11", "", "22")]
    assert plot.exists() and plot.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "garside", "nf", "1 2 1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "canonical length 1" in proc.stdout
