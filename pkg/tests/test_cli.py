import math

import pytest

from sparsegr.cli import main
from sparsegr.core import parse_circuit


@pytest.fixture
def vec_file(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text(f"n=3\n# worked example\n1 {math.sqrt(1 / 3)!r}\n6 {math.sqrt(2 / 3)!r} 0.0\n")
    return p


@pytest.mark.parametrize("pipeline", ["gr", "permgr"])
def test_compile_verify(vec_file, tmp_path, capsys, pipeline):
    out = tmp_path / "c.txt"
    assert main(["compile", "--pipeline", pipeline, "--input", str(vec_file), "--output", str(out)]) == 0
    assert parse_circuit(out.read_text()).is_lowered
    assert main(["verify", "--pipeline", pipeline, "--input", str(vec_file)]) == 0
    text = capsys.readouterr().out
    assert float(text.split()[1]) >= 1 - 1e-12


def test_count_high_level(vec_file, tmp_path, capsys):
    out = tmp_path / "c.txt"
    main(["compile", "--input", str(vec_file), "--output", str(out), "--high-level"])
    assert not parse_circuit(out.read_text()).is_lowered
    capsys.readouterr()
    assert main(["count", "--input", str(out)]) == 0
    assert capsys.readouterr().out == "toffoli 2\ncnot 4\nsingle 9\n"


def test_angles(vec_file, capsys):
    assert main(["angles", "--input", str(vec_file)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [ln.split()[:2] for ln in lines] == [["0", "-"], ["1", "1"], ["2", "00"]]


def test_bad_input_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=2\n7 1.0\n")
    assert main(["verify", "--input", str(bad)]) != 0
    assert "error" in capsys.readouterr().err
    assert main(["count", "--input", str(tmp_path / "missing.txt")]) != 0


def test_bench_scaling_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bench", "scaling", "--pipeline", "permgr", "--n", "5", "6", "--d", "2", "4", "--trials", "3", "--seed", "11"]
    assert main(args + ["--csv", str(a)]) == 0
    assert main(args + ["--csv", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bench_summary_and_ratio(tmp_path):
    summ = tmp_path / "s.csv"
    assert main(["bench", "scaling", "--n", "5", "--d", "3", "--trials", "2", "--csv", str(tmp_path / "r.csv"), "--summary", str(summ)]) == 0
    text = summ.read_text()
    assert text.startswith("# ") and "toffoli_mean" in text
    ratio = tmp_path / "ratio.csv"
    assert main(["bench", "ratio", "--n", "8", "--density", "0.01", "--trials", "2", "--csv", str(ratio)]) == 0
    assert "permgr_over_gropt" in ratio.read_text().splitlines()[0]
    assert main(["bench", "ratio", "--n", "8", "--trials", "2"]) == 2
