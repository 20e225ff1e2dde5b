from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from graylap.cli import main, parse_float_list


def rows(path):
    with open(path) as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def header(path):
    with open(path) as fh:
        return [line for line in fh if line.startswith("#")]


def test_trotter_sweep_brgc(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["trotter-sweep", "--code", "brgc", "--n-min", "3", "--n-max", "5", "--out", str(out)]) == 0
    data = rows(out)
    assert len(data) == 3 * 13
    for r in data:
        ratio = float(r["error"]) / float(r["lambda"]) ** 2
        assert 0.9 < ratio < 1.1
    meta = "".join(header(out))
    assert '"brgc": "low"' in meta and "version" in meta


def test_trotter_sweep_two_qubits_is_exact(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["trotter-sweep", "--n-min", "2", "--n-max", "2", "--lambdas", "0.01,0.1", "--out", str(out)]) == 0
    assert all(float(r["error"]) < 1e-12 for r in rows(out))


def test_binary_tracks_brgc(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    common = ["--n-min", "3", "--n-max", "5", "--lambdas", "1e-3:1e-2:4"]
    assert main(["trotter-sweep", "--code", "brgc", *common, "--out", str(a)]) == 0
    assert main(["trotter-sweep", "--code", "binary", *common, "--out", str(b)]) == 0
    for ra, rb in zip(rows(a), rows(b)):
        assert float(rb["error"]) == pytest.approx(float(ra["error"]), rel=0.1)


@pytest.mark.parametrize("argv", [["--n-min", "5", "--n-max", "3"], ["--n-min", "1"], ["--lambdas", "abc"]])
def test_trotter_sweep_invalid(argv, capsys):
    assert main(["trotter-sweep", *argv]) == 2
    assert "graylap trotter-sweep" in capsys.readouterr().err


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        main(["trotter-sweep", "--n-min", "3", "--n-max", "4", "--lambdas", "0.01,0.02", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "encoding, n, expect",
    [
        ("brgc", 5, {"CCX": 4, "CROTX": 6, "ROTX": 2}),
        ("brgc", 2, {"ROTX": 2}),
        ("qft", 3, {"H": 3, "CPHASE": 3, "SWAP": 1}),
    ],
)
def test_build_circuit_metrics(tmp_path, encoding, n, expect):
    out = tmp_path / "c.json"
    assert main(["build-circuit", "--encoding", encoding, "--n", str(n), "--out", str(out)]) == 0
    side = json.loads((tmp_path / "c.json.metrics.json").read_text())
    assert side["metrics"]["counts"] == expect
    doc = json.loads(out.read_text())
    assert doc["metadata"]["bit_order"] == {"binary": "high", "brgc": "low"}
    assert len(doc["circuit"]["gates"]) == sum(expect.values())
    if encoding == "brgc" and n == 5:
        assert side["metrics"]["width"] == 7


def test_build_circuit_qasm_decomposed(tmp_path):
    out = tmp_path / "c.qasm"
    argv = ["build-circuit", "--encoding", "brgc", "--n", "5", "--format", "qasm", "--decompose-ccx", "--out", str(out)]
    assert main(argv) == 0
    text = out.read_text()
    assert text.startswith("// tool") and "OPENQASM 3.0;" in text
    assert not any(line.startswith("ccx") for line in text.splitlines())


def test_build_circuit_multicontrol_and_binary(tmp_path):
    out = tmp_path / "m.json"
    assert main(["build-circuit", "--encoding", "brgc-multicontrol", "--n", "5", "--out", str(out)]) == 0
    side = json.loads((tmp_path / "m.json.metrics.json").read_text())
    assert side["metrics"]["multicontrol_units"] == 9
    out = tmp_path / "b.json"
    assert main(["build-circuit", "--encoding", "binary", "--n", "3", "--cancel", "--out", str(out)]) == 0


def test_build_circuit_invalid(capsys):
    assert main(["build-circuit", "--encoding", "brgc", "--n", "1"]) == 2
    assert main(["build-circuit", "--encoding", "brgc", "--n", "12"]) == 2


def test_adiabatic_defaults(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["adiabatic", "--evolvers", "brgc,binary", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "summary" in text and "||[T,V]||" in text
    data = rows(out)
    assert {r["evolver"] for r in data} == {"brgc", "binary", "exact"}
    assert len(data) == 3 * 2001


def test_adiabatic_single_step(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["adiabatic", "--steps", "1", "--evolvers", "brgc", "--out", str(out)]) == 0
    assert "above" in capsys.readouterr().out


def test_adiabatic_qft_differs_from_finite_difference(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["adiabatic", "--steps", "400", "--evolvers", "qft", "--out", str(out)]) == 0
    last = {r["evolver"]: float(r["expT_MeV"]) for r in rows(out) if r["step"] == "400"}
    assert abs(last["qft"] - last["exact"]) > 0.05
    assert last["qft"] == pytest.approx(last["exact-quadratic"], rel=0.05)


@pytest.mark.parametrize("argv", [["--evolvers", "nope"], ["--n", "1", "--evolvers", "brgc"], ["--steps", "0"]])
def test_adiabatic_invalid(argv):
    assert main(["adiabatic", *argv, "--out", "-"]) == 2


def test_ho_scan(tmp_path):
    out = tmp_path / "h.csv"
    assert main(["ho-scan", "--lambdas", "10,100,1000", "--out", str(out)]) == 0
    vals = [float(r["max_eig"]) for r in rows(out)]
    for v, ref in zip(vals, [11.1, 176.1, 1944.3]):
        assert v == pytest.approx(ref, rel=0.01)
    assert vals == sorted(vals)


def test_ho_scan_edge(tmp_path):
    out = tmp_path / "h.csv"
    assert main(["ho-scan", "--lambdas", "2", "--out", str(out)]) == 0
    assert len(rows(out)) == 1
    assert main(["ho-scan", "--lambdas", "1"]) == 2


def test_parse_float_list():
    assert parse_float_list("1,2.5") == [1.0, 2.5]
    assert len(parse_float_list("1e-3:1e-1:5")) == 5


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "graylap.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "graylap" in res.stdout


def test_thread_count_does_not_change_output(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["trotter-sweep", "--n-min", "3", "--n-max", "5", "--lambdas", "0.01,0.05"]
    monkeypatch.setenv("GRAYLAP_THREADS", "1")
    main([*argv, "--out", str(a)])
    monkeypatch.setenv("GRAYLAP_THREADS", "4")
    main([*argv, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
