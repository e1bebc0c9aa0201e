import copy
import json
import math

import pytest

from lpzeros.cli import main

LEGENDRE = {
    "p": 2,
    "n": 2,
    "support": [-1.0, 1.0],
    "base_measure": {"type": "lebesgue"},
    "weight": {"family": "constant"},
    "t_domain": [-1.0, 1.0],
}

MASS = {
    "p": 2,
    "n": 0,
    "support": [-1.0, 1.0],
    "base_measure": {"type": "lebesgue"},
    "weight": {"family": "constant"},
    "mass": {
        "j": {"family": "constant", "value": 1.0},
        "y": {"family": "affine", "intercept": 2.0, "slope": 1.0},
    },
    "t_domain": [-1.0, 2.0],
}


@pytest.fixture
def config_file(tmp_path):
    def write(doc, name="prob.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def test_solve_prints_json_with_zeros(config_file, capsys):
    rc = main(["solve", "--config", config_file(LEGENDRE), "--t", "0.0"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    want = [-math.sqrt(0.6), 0.0, math.sqrt(0.6)]
    assert doc["zeros"] == pytest.approx(want, abs=1e-10)
    assert doc["low_coeffs"] == pytest.approx([0.0, -0.6, 0.0], abs=1e-10)
    assert doc["optimality_residual"] <= 1e-10
    assert doc["report"]["weight_verdict"] == "constant"


def test_solve_reports_sensitivities(config_file, capsys):
    rc = main(["solve", "--config", config_file(MASS), "--t", "0.0"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["zeros"] == pytest.approx([2.0 / 3.0], abs=1e-10)
    entry = doc["report"]["entries"][0]
    assert entry["dzero_dt"] == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert entry["condition_value"] == pytest.approx(0.5625, rel=1e-9)
    assert entry["direction"] == "increasing"
    assert entry["theorem_applies"] is True


def test_solve_writes_file(config_file, tmp_path, capsys):
    out = tmp_path / "result.json"
    rc = main(["solve", "--config", config_file(LEGENDRE), "--t", "0.0", "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(out.read_text())
    assert len(doc["zeros"]) == 3


def test_bad_config_exits_two_and_names_problem(config_file, capsys):
    doc = copy.deepcopy(LEGENDRE)
    doc["p"] = 1.5
    rc = main(["solve", "--config", config_file(doc), "--t", "0.0"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "configuration error" in err and ">= 2" in err


def test_missing_file_exits_two(capsys):
    rc = main(["solve", "--config", "/nonexistent/prob.json", "--t", "0.0"])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_out_of_domain_t_exits_two(config_file, capsys):
    rc = main(["solve", "--config", config_file(MASS), "--t", "5.0"])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_unreachable_tolerance_exits_three(config_file, capsys):
    doc = copy.deepcopy(LEGENDRE)
    doc["p"] = 4
    doc["solver"] = {"residual_tol": 1e-30, "max_newton_iters": 8}
    rc = main(["solve", "--config", config_file(doc), "--t", "0.0"])
    assert rc == 3
    assert "solver error" in capsys.readouterr().err


def test_sweep_writes_csv(config_file, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main([
        "sweep", "--config", config_file(MASS),
        "--t-start", "0.0", "--t-stop", "1.0", "--steps", "5",
        "--out", str(out),
    ])
    assert rc == 0
    assert "wrote 5 records" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x_0,dxdt_0,fd_0,cond_0,weight_mono,residual,iters"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert first[3] == ""  # endpoint has no central difference
    mid = lines[3].split(",")
    assert float(mid[3]) == pytest.approx(1.0 / 3.0, abs=1e-8)
    assert mid[5] == "constant"


def test_sweep_cold_matches_warm(config_file, tmp_path):
    base = ["sweep", "--config", config_file(MASS),
            "--t-start", "0.0", "--t-stop", "1.0", "--steps", "5"]
    warm, cold = tmp_path / "w.csv", tmp_path / "c.csv"
    assert main(base + ["--out", str(warm)]) == 0
    assert main(base + ["--out", str(cold), "--cold"]) == 0
    # p = 2 solves are exact either way, so the files match byte for byte
    # except possibly the iteration column; compare the numeric columns
    for lw, lc in zip(warm.read_text().splitlines()[1:], cold.read_text().splitlines()[1:]):
        for cw, cc in zip(lw.split(",")[:5], lc.split(",")[:5]):
            if cw or cc:
                assert float(cw) == pytest.approx(float(cc), abs=1e-12)


def test_sweep_jsonl_round_trip(config_file, tmp_path):
    out = tmp_path / "sweep.jsonl"
    rc = main([
        "sweep", "--config", config_file(LEGENDRE),
        "--t-start", "-0.5", "--t-stop", "0.5", "--steps", "3",
        "--out", str(out), "--format", "jsonl",
    ])
    assert rc == 0
    docs = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(docs) == 3
    assert "condition" not in docs[0]  # no mass point in this problem
    assert "fd" not in docs[0] and "fd" in docs[1]
    assert docs[1]["zeros"] == pytest.approx(docs[0]["zeros"], abs=1e-9)


def test_sweep_deterministic(config_file, tmp_path):
    args = ["sweep", "--config", config_file(MASS),
            "--t-start", "0.0", "--t-stop", "1.0", "--steps", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_range_error_exits_two(config_file, capsys):
    rc = main([
        "sweep", "--config", config_file(MASS),
        "--t-start", "-1.0", "--t-stop", "1.0",
        "--out", "/dev/null",
    ])
    assert rc == 2
    assert "parameter domain" in capsys.readouterr().err


def test_validate_passes_and_prints_lines(config_file, capsys):
    rc = main([
        "validate", "--config", config_file(MASS),
        "--t-start", "0.0", "--t-stop", "0.5", "--steps", "5",
    ])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 6
    assert all(line.startswith("PASS ") for line in out)
    assert out[0].split()[1].rstrip(":") == "optimality_residual"


def test_validate_exponential_weight(config_file, capsys):
    doc = {
        "p": 4,
        "n": 2,
        "support": [-1.0, 1.0],
        "base_measure": {"type": "lebesgue"},
        "weight": {"family": "exponential"},
        "t_domain": [-2.0, 2.0],
    }
    rc = main([
        "validate", "--config", config_file(doc),
        "--t-start", "0.0", "--t-stop", "1.0", "--steps", "5",
    ])
    assert rc == 0
    assert all(line.startswith("PASS ") for line in capsys.readouterr().out.splitlines())
