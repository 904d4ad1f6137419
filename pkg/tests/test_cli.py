import json
import subprocess
import sys

import pytest

from varcal.cli import main

SOLVE_A = ["brach", "solve", "--x0", "0", "--y0", "2", "--x1", "3", "--y1", "1"]
COMPARE_A = ["brach", "compare", "--x0", "0", "--y0", "2", "--x1", "3", "--y1", "1",
             "--curve", "line:-x/3 + 2", "--curve", "arc:6 - sqrt(16 - x^2 + 6*x)"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


# -- el --------------------------------------------------------------------

def test_el_xy_lagrangian(capsys):
    code, rep, _ = run_json(capsys, "el", "--lagrangian", "12*x*y - yp^2")
    assert code == 0
    assert rep["residual"] == "12*x + 2*ypp"
    assert rep["accel"] == "-6*x"
    assert rep["first_integrals"] == []


def test_el_momentum(capsys):
    code, rep, _ = run_json(capsys, "el", "--lagrangian", "yp*(1+x^2*yp)")
    assert code == 0
    assert rep["first_integrals"] == [{"kind": "momentum", "phi": "1 + 2*x^2*yp"}]


def test_el_text(capsys):
    code, out, _ = run(capsys, "el", "--lagrangian", "y'^2")
    assert code == 0
    assert "-2*ypp = 0" in out
    assert "momentum integral: 2*yp" in out and "energy integral: yp^2" in out


def test_el_syntax_error(capsys):
    code, out, err = run(capsys, "el", "--lagrangian", "yp^^2")
    assert code == 2
    assert "syntax error" in err and "offset 3" in err
    assert out == ""


def test_el_degenerate_is_reported(capsys):
    code, rep, _ = run_json(capsys, "el", "--lagrangian", "x*yp")
    assert code == 0
    assert rep["degenerate"] is True and rep["accel"] is None


# -- extremal ----------------------------------------------------------------

def test_extremal_cubic(capsys, tmp_path):
    csv = tmp_path / "cubic.csv"
    code, rep, _ = run_json(capsys, "extremal", "--lagrangian", "12*x*y - yp^2", "--x0", "-1",
                            "--y0", "1", "--x1", "0", "--y1", "0", "--exact=-x^3",
                            "--csv", str(csv))
    assert code == 0
    assert rep["slope"] == pytest.approx(-3.0, abs=1e-8)
    assert rep["max_deviation_from_exact"] < 1e-6
    assert rep["exact_max_abs_residual"] < 1e-9
    lines = csv.read_text().splitlines()
    assert lines[0] == "x,y" and len(lines) == 202
    assert lines[1] == "-1.0,1.0"


def test_extremal_momentum(capsys):
    code, rep, _ = run_json(capsys, "extremal", "--lagrangian", "yp*(1+x^2*yp)", "--x0", "1",
                            "--y0", "3", "--x1", "2", "--y1", "5", "--slope-lo", "0",
                            "--exact", "7 - 4/x")
    assert code == 0
    assert rep["slope"] == pytest.approx(4.0, abs=1e-8)
    assert rep["max_deviation_from_exact"] < 1e-6


def test_extremal_zero_line(capsys):
    code, rep, _ = run_json(capsys, "extremal", "--lagrangian", "yp^2", "--x0", "0", "--y0", "0",
                            "--x1", "1", "--y1", "0")
    assert code == 0
    assert rep["slope"] == 0.0 and rep["endpoint_miss"] == 0.0


def test_extremal_with_parameter(capsys):
    code, rep, _ = run_json(capsys, "extremal", "--lagrangian", "k*x*y - yp^2", "--param", "k=12",
                            "--x0", "-1", "--y0", "1", "--x1", "0", "--y1", "0")
    assert code == 0
    assert rep["slope"] == pytest.approx(-3.0, abs=1e-8)


def test_extremal_unbound_parameter(capsys):
    code, _, err = run(capsys, "extremal", "--lagrangian", "k*x*y - yp^2", "--x0", "-1",
                       "--y0", "1", "--x1", "0", "--y1", "0")
    assert code == 2 and "unbound parameter" in err


def test_extremal_shooting_failure(capsys):
    code, _, err = run(capsys, "extremal", "--lagrangian", "12*x*y - yp^2", "--x0", "-1",
                       "--y0", "1", "--x1", "0", "--y1", "0", "--slope-lo", "5", "--slope-hi", "10")
    assert code == 3
    assert "scanned 64 sub-brackets" in err


def test_extremal_degenerate(capsys):
    code, _, err = run(capsys, "extremal", "--lagrangian", "x*yp", "--x0", "0", "--y0", "0",
                       "--x1", "1", "--y1", "1")
    assert code == 4 and "not second order" in err


# -- brach solve -----------------------------------------------------------

def test_brach_solve_text(capsys):
    code, out, _ = run(capsys, *SOLVE_A)
    assert code == 0
    assert out.splitlines() == ["a      = 1.239374053", "theta1 = 4.051628024",
                                "T      = 1.018832360"]


def test_brach_solve_second_example(capsys):
    code, rep, _ = run_json(capsys, "brach", "solve", "--x0", "1", "--y0", "3", "--x1", "15",
                            "--y1", "1")
    assert code == 0
    assert rep["time"] == pytest.approx(2.406837209, abs=1e-6)


def test_brach_solve_json_matches_text(capsys):
    _, out, _ = run(capsys, *SOLVE_A)
    _, rep, _ = run_json(capsys, *SOLVE_A)
    text = {k.strip(): float(v) for k, v in (line.split("=") for line in out.splitlines())}
    assert text["a"] == pytest.approx(rep["a"], rel=1e-9)
    assert text["theta1"] == pytest.approx(rep["theta1"], rel=1e-9)
    assert text["T"] == pytest.approx(rep["time"], rel=1e-9)


def test_brach_solve_infeasible(capsys):
    code, _, err = run(capsys, "brach", "solve", "--x0", "3", "--y0", "1", "--x1", "0", "--y1", "2")
    assert code == 4 and "infeasible" in err


def test_brach_solve_ascending(capsys):
    code, _, err = run(capsys, "brach", "solve", "--x0", "0", "--y0", "1", "--x1", "1", "--y1", "2")
    assert code == 4 and "ascending endpoint unsupported" in err


def test_brach_solve_artifacts(capsys, tmp_path):
    csv, svg = tmp_path / "c.csv", tmp_path / "c.svg"
    code, _, _ = run(capsys, *SOLVE_A, "--samples", "50", "--csv", str(csv), "--svg", str(svg))
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "x,y" and len(lines) == 52
    assert lines[1] == "0.0,2.0"
    x, y = map(float, lines[-1].split(","))
    assert x == pytest.approx(3.0, abs=1e-9) and y == pytest.approx(1.0, abs=1e-9)
    text = svg.read_text()
    assert text.count("<polyline") == 1 and 'stroke="blue"' in text


# -- brach compare ---------------------------------------------------------

def test_brach_compare_times(capsys, tmp_path):
    svg = tmp_path / "cmp.svg"
    csv = tmp_path / "cmp.csv"
    code, rep, err = run_json(capsys, *COMPARE_A, "--svg", str(svg), "--csv", str(csv))
    assert code == 0 and err == ""
    times = [r["time"] for r in rep["rows"]]
    for got, want in zip(times, (1.018832361, 1.428571428, 1.151743820)):
        assert got == pytest.approx(want, abs=1e-6)
    assert [r["label"] for r in rep["rows"]] == ["cycloid", "line", "arc"]
    assert rep["warnings"] == []
    body = svg.read_text()
    assert body.count("<polyline") == 3
    for color in ("blue", "black", "red"):
        assert f'stroke="{color}"' in body
    header, first = csv.read_text().splitlines()[:2]
    assert header == "label,x,y" and first == '"cycloid",0.0,2.0'


def test_brach_compare_text_table(capsys):
    code, out, _ = run(capsys, *COMPARE_A)
    assert code == 0
    assert out.splitlines() == ["curve    time", "cycloid  1.018832360", "line     1.428571429",
                                "arc      1.151743821"]


def test_brach_compare_cycloid_only(capsys):
    code, rep, _ = run_json(capsys, "brach", "compare", "--x0", "0", "--y0", "2", "--x1", "3",
                            "--y1", "1")
    assert code == 0
    assert len(rep["rows"]) == 1 and rep["rows"][0]["label"] == "cycloid"


def test_brach_compare_row_errors(capsys):
    code, rep, _ = run_json(capsys, *COMPARE_A, "--curve", "up:2 + x", "--curve", "bad:2 - x^^2")
    assert code == 0
    rows = {r["label"]: r for r in rep["rows"]}
    assert rows["up"]["time"] is None and ">= y0" in rows["up"]["error"]
    assert rows["bad"]["error"].startswith("syntax error")
    assert rows["line"]["error"] is None


def test_brach_compare_warns_when_beaten(capsys):
    # a curve that does not end at (x1, y1) can be faster; the table still prints
    code, rep, err = run_json(capsys, "brach", "compare", "--x0", "0", "--y0", "2", "--x1", "3",
                              "--y1", "1", "--curve", "deep:2 - 2*arctan(x)")
    assert code == 0
    assert rep["warnings"] and "warning: cycloid is not the fastest" in err


# -- determinism -----------------------------------------------------------

@pytest.mark.parametrize("argv", [SOLVE_A, COMPARE_A])
def test_repeated_runs_are_byte_identical(capsys, tmp_path, argv):
    outputs = []
    for i in range(3):
        csv, svg = tmp_path / f"{i}.csv", tmp_path / f"{i}.svg"
        _, out, _ = run(capsys, *argv, "--format", "json", "--csv", str(csv), "--svg", str(svg))
        outputs.append((out, csv.read_bytes(), svg.read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "varcal", *SOLVE_A], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0
    assert "T      = 1.018832360" in proc.stdout


def test_missing_required_flag_exits_2():
    proc = subprocess.run([sys.executable, "-m", "varcal", "brach", "solve", "--x0", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
