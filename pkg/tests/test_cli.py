"""Command-line contract: flags, exit codes, JSON/CSV output."""

import json

import numpy as np
import pytest

from discordant.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_werner_zero(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code = main(
        ["analyze", "--family", "werner", "--d", "3", "--lambda", "0",
         "--starts", "8", "-o", str(out_path)]
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["agreement"] is True
    for side in ("A", "B"):
        assert report["structural"][side]["zero_discord"] is True
        assert report["numeric"][side]["D"] <= 1e-6
    assert report["circulant_theorem"]["A"]["zero_discord"] is True
    assert report["completely_classical"]["zero_discord"] is True
    assert report["tolerances"]["numeric_zero"] == 1e-6
    assert report["tolerances"]["numeric_nonzero"] == 1e-5


def test_analyze_isotropic_nonzero(capsys):
    code, out, _ = run_cli(
        ["analyze", "--family", "isotropic", "--d", "3", "--lambda", "0.4",
         "--starts", "8"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["agreement"] is True
    for side in ("A", "B"):
        assert report["structural"][side]["zero_discord"] is False
        assert report["numeric"][side]["D"] >= 1e-5


def test_analyze_single_side(capsys):
    code, out, _ = run_cli(
        ["analyze", "--family", "werner", "--d", "2", "--lambda", "0",
         "--side", "A"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["sides"] == ["A"]
    assert "B" not in report["numeric"]


def test_analyze_invalid_state_exits_2(capsys):
    code, _, err = run_cli(
        ["analyze", "--family", "werner", "--d", "2", "--lambda", "1"], capsys
    )
    assert code == 2
    assert "error" in err


def test_analyze_missing_input_exits_2(capsys):
    code, _, err = run_cli(["analyze"], capsys)
    assert code == 2


def test_analyze_nonexistent_file_exits_2(capsys):
    code, _, err = run_cli(["analyze", "/nonexistent/state.json"], capsys)
    assert code == 2


def test_analyze_disagreement_exits_3(capsys):
    # an absurd structural tolerance declares everything zero-discord while
    # the numeric oracle still sees a discordant state
    code, out, _ = run_cli(
        ["analyze", "--family", "isotropic", "--d", "2", "--lambda", "0.9",
         "--tol", "1e6"],
        capsys,
    )
    assert code == 3
    report = json.loads(out)
    assert report["agreement"] is False


def test_build_analyze_round_trip(capsys, tmp_path):
    state_path = tmp_path / "state.json"
    assert main(
        ["build", "--family", "werner", "--d", "3", "--lambda", "0.1",
         "-o", str(state_path)]
    ) == 0
    obj = json.loads(state_path.read_text())
    assert obj["kind"] == "circulant"
    code, out, _ = run_cli(
        ["analyze", str(state_path), "--starts", "8"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["agreement"] is True
    assert report["structural"]["A"]["zero_discord"] is False


def test_build_bell_keeps_weights(capsys, tmp_path):
    state_path = tmp_path / "bell.json"
    assert main(
        ["build", "--family", "bell", "--d", "3", "--alpha", "1",
         "--pi", "0.1,0.13,0.10333333333333333", "-o", str(state_path)]
    ) == 0
    obj = json.loads(state_path.read_text())
    assert obj["kind"] == "bell"
    code, out, _ = run_cli(["analyze", str(state_path), "--starts", "8"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["bell_theorem"]["zero_discord"] is True
    assert report["bell_theorem"]["alpha"] == 1
    assert report["agreement"] is True


def test_build_werner_boundary_emits(capsys, tmp_path):
    # build is raw assembly: the λ=1 point serializes even though it is not PSD
    state_path = tmp_path / "raw.json"
    assert main(
        ["build", "--family", "werner", "--d", "2", "--lambda", "1",
         "-o", str(state_path)]
    ) == 0
    obj = json.loads(state_path.read_text())
    assert obj["kind"] == "circulant"
    # analyzing it fails validation
    code, _, err = run_cli(["analyze", str(state_path)], capsys)
    assert code == 2


def test_build_orthogonal_dense(capsys, tmp_path):
    state_path = tmp_path / "o2.json"
    assert main(
        ["build", "--family", "orthogonal", "--d", "2", "--abc", "1,0,0",
         "-o", str(state_path)]
    ) == 0
    obj = json.loads(state_path.read_text())
    assert obj["kind"] == "dense"
    code, out, _ = run_cli(["analyze", str(state_path)], capsys)
    assert code == 0
    report = json.loads(out)
    # (a,b,c)=(1,0,0) sits on the zero-discord line b=c
    assert report["structural"]["A"]["zero_discord"] is True


def test_verify_d2_passes(capsys):
    code, out, _ = run_cli(
        ["verify", "--d", "2", "--seed", "7", "--starts", "12"], capsys
    )
    assert code == 0
    assert "overall: PASS" in out
    assert "numeric-agreement" in out


def test_verify_d5_skips_numeric(capsys):
    code, out, _ = run_cli(["verify", "--d", "5", "--seed", "7"], capsys)
    assert code == 0
    assert "numeric-agreement: skipped" in out
    assert "overall: PASS" in out


def test_verify_d4_exits_2(capsys):
    code, _, err = run_cli(["verify", "--d", "4"], capsys)
    assert code == 2
    assert "prime" in err.lower()


def test_verify_json_format(capsys):
    code, out, _ = run_cli(
        ["verify", "--d", "3", "--seed", "1", "--draws", "4", "--starts", "8",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert len(report["suites"]) == 5


def test_simplex_csv_contract(capsys, tmp_path):
    csv_path = tmp_path / "grid.csv"
    code = main(
        ["simplex", "--grid", "11", "--every", "5", "-o", str(csv_path)]
    )
    assert code == 0
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "b,c,separable,zero_discord,numeric_discord"
    assert len(lines) == 67  # header + 66 grid points
    first = lines[1].split(",")
    assert first[:4] == ["0", "0", "1", "1"]
    assert float(first[4]) <= 1e-9
    # unsampled points leave the numeric field empty
    assert lines[2].split(",")[4] == ""


def test_simplex_rejects_other_dimensions(capsys):
    code, _, err = run_cli(["simplex", "--d", "3"], capsys)
    assert code == 2


def test_simplex_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["simplex", "--grid", "6", "--every", "3", "-o", str(p1)])
    main(["simplex", "--grid", "6", "--every", "3", "-o", str(p2)])
    assert p1.read_text() == p2.read_text()


def test_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("DISCORDANT_SEED", "99")
    code, out, _ = run_cli(
        ["analyze", "--family", "werner", "--d", "2", "--lambda", "0",
         "--seed", "5"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["seed"] == 99


def test_seed_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("DISCORDANT_SEED", "not-a-number")
    code, _, err = run_cli(
        ["analyze", "--family", "werner", "--d", "2", "--lambda", "0"], capsys
    )
    assert code == 2


def test_bell_pi_renormalization(capsys, tmp_path):
    # π values off by ≤ 1e−6 in total weight are renormalized; each π value
    # enters the weight matrix d times, so keep the bump below 1e−6/d
    state_path = tmp_path / "bell.json"
    pi = [0.1, 0.13, 0.10333333333333333 + 2e-7]
    code = main(
        ["build", "--family", "bell", "--d", "3", "--alpha", "0",
         "--pi", ",".join(str(x) for x in pi), "-o", str(state_path)]
    )
    assert code == 0
    obj = json.loads(state_path.read_text())
    assert abs(sum(sum(row) for row in obj["p"]) - 1.0) < 1e-12
    # but a grossly wrong total is an input error
    code, _, err = run_cli(
        ["build", "--family", "bell", "--d", "3", "--alpha", "0",
         "--pi", "0.2,0.2,0.2"],
        capsys,
    )
    assert code == 2


def test_family_flag_validation(capsys):
    code, _, err = run_cli(["analyze", "--family", "werner", "--d", "3"], capsys)
    assert code == 2  # missing --lambda
    code, _, err = run_cli(
        ["analyze", "--family", "orthogonal", "--d", "2", "--abc", "1,0"], capsys
    )
    assert code == 2  # wrong arity
    code, _, err = run_cli(
        ["analyze", "--family", "bell", "--d", "3", "--alpha", "1",
         "--pi", "0.1,0.9"],
        capsys,
    )
    assert code == 2  # π arity mismatch
