import json
import subprocess
import sys

import pytest

from parity_compiler.cli import main, parse_gen_spec, InputError
from parity_compiler.lattice import format_layout_text, gen_random, layout_to_json, randomize_angles


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_squares_depth_eight(capsys):
    code, out, _ = run(capsys, "compile", "--gen", "squares:5x5", "--d", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["depth"] == 8
    assert rep["reference"]["reference"] == 40


def test_compile_appendix(capsys):
    code, out, _ = run(capsys, "compile", "--gen", "squares:5x5", "--strategy", "appendix-a")
    rep = json.loads(out)
    assert code == 0
    assert rep["cnot_depth"] == 10 and rep["total_depth"] == 14
    assert rep["reference"]["matches"]


@pytest.mark.parametrize(
    "extra",
    [["--gen", "random:4x4:0.5:1"], ["--gen", "squares:4x4", "--d", "2"], ["--gen", "squares:4x4", "--line-parallel"]],
)
def test_appendix_unsupported_exit_3(capsys, extra):
    code, _, err = run(capsys, "compile", "--strategy", "appendix-a", *extra)
    assert code == 3 and "unsupported" in err


def test_bad_layout_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("QQ\nQx\n")
    code, _, err = run(capsys, "compile", "--layout", str(bad))
    assert code == 2
    assert "line 2, column 2" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["compile", "--gen", "hexagons:4"],
        ["compile", "--gen", "random:4x4:1.5:0"],
        ["compile", "--layout", "/nonexistent/file.txt"],
        ["compile", "--gen", "squares:4x4", "--d", "0"],
        ["compile"],
        ["frobnicate"],
        ["bench", "--sizes", "a,b"],
        ["bench", "--sizes", "4", "--r3", "2"],
        ["bench"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_compile_writes_artifacts_that_verify(capsys, tmp_path):
    lay = randomize_angles(gen_random(4, 4, 0.5, 3), 4)
    lpath = tmp_path / "lay.json"
    lpath.write_text(layout_to_json(lay))
    for emit in ("json", "qasm"):
        cpath = tmp_path / f"c.{emit}"
        rpath = tmp_path / f"r{emit}.json"
        code, _, _ = run(capsys, "compile", "--layout", str(lpath), "--d", "2", "--emit", emit,
                         "--out", str(cpath), "--report", str(rpath))
        assert code == 0 and cpath.exists()
        assert json.loads(rpath.read_text())["d"] == 2
        code, out, _ = run(capsys, "verify", "--layout", str(lpath), "--circuit", str(cpath), "--d", "2")
        assert code == 0
        assert json.loads(out)["passed"]


def test_verify_failure_exit_1(capsys, tmp_path):
    lay = gen_random(4, 4, 0.5, 3)
    (tmp_path / "a.txt").write_text(format_layout_text(lay))
    cpath = tmp_path / "c.json"
    run(capsys, "compile", "--layout", str(tmp_path / "a.txt"), "--out", str(cpath))
    other = gen_random(4, 4, 0.5, 4)
    (tmp_path / "b.txt").write_text(format_layout_text(other))
    code, out, _ = run(capsys, "verify", "--layout", str(tmp_path / "b.txt"), "--circuit", str(cpath))
    assert code == 1
    assert not json.loads(out)["passed"]


def test_verify_compiles_when_no_circuit_given(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "lhz:7", "--mode", "sampled", "--samples", "300")
    assert code == 0 and json.loads(out)["mode"] == "sampled"


def test_gen_round_trip(capsys, tmp_path):
    path = tmp_path / "g.txt"
    assert run(capsys, "gen", "--gen", "random:5x4:0.5:2", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "compile", "--layout", str(path))
    assert code == 0 and json.loads(out)["n_constraints"] == 12
    assert run(capsys, "gen", "--gen", "lhz:5", "--out", str(tmp_path / "g.json"))[0] == 0
    assert json.loads((tmp_path / "g.json").read_text())["n_cols"] == 4


def test_bench_csv_rows_and_determinism(capsys, tmp_path):
    args = ["bench", "--sizes", "4,5", "--r3", "0,0.5,1", "--d", "1", "--samples", "3", "--seed", "1"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b), "--no-figures")[0] == 0
    lines = a.read_text().splitlines()
    assert len(lines) == 7
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a_depth.png").exists() and (tmp_path / "a_cancel.png").exists()
    assert not (tmp_path / "b_depth.png").exists()
    assert all(float(ln.split(",")[3]) <= 12 for ln in lines[1:])


def test_bench_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sizes": [4], "r3_values": [0.5], "samples": 2, "seed": 3}))
    code, out, _ = run(capsys, "bench", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[1].startswith("4,0.5,1,")


def test_parse_gen_spec():
    lay, ref = parse_gen_spec("squares:3x4")
    assert (lay.n_cols, lay.n_rows) == (3, 4) and ref["kind"] == "squares"
    assert parse_gen_spec("random:4x4:0.25:9")[1] == {}
    with pytest.raises(InputError):
        parse_gen_spec("lhz:2")


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "parity_compiler.cli", "compile", "--gen", "squares:3x3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["depth"] == 8


def test_log_level_env(monkeypatch, capsys):
    monkeypatch.setenv("PARITY_LOG", "nonsense")
    assert run(capsys, "compile", "--gen", "squares:3x3")[0] == 0
