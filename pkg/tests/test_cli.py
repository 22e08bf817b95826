"""Exit codes, output formats, and reproducibility of the command line."""

import json
import subprocess
import sys

from lowersets import bounds as bnd
from lowersets import cli, core


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- count ---------------------------------------------------------------------

def test_count_single_cell(capsys):
    code, out, _ = run(["count", "--d", "2", "--n", "10"], capsys)
    assert code == 0
    assert out == "d,n,p_d_n\n2,10,42\n"


def test_count_dimension_one(capsys):
    code, out, _ = run(["count", "--d", "1", "--n", "100"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "1,100,1"


def test_count_three_dimensional(capsys):
    code, out, _ = run(["count", "--d", "3", "--n", "3"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "3,3,6"


def test_count_range_sweep(capsys):
    code, out, _ = run(["count", "--d", "2..3", "--n", "1..4"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d,n,p_d_n"
    assert len(lines) == 1 + 8
    assert lines[1] == "2,1,1"
    assert lines[-1] == "3,4,13"


def test_count_methods_agree(capsys):
    _, auto_out, _ = run(["count", "--d", "2..3", "--n", "1..6"], capsys)
    _, dfs_out, _ = run(
        ["count", "--d", "2..3", "--n", "1..6", "--method", "dfs"], capsys)
    assert auto_out == dfs_out


def test_count_json_format(capsys):
    code, out, _ = run(
        ["count", "--d", "2", "--n", "3..4", "--format", "json"], capsys)
    assert code == 0
    objs = json.loads(out)
    assert objs == [{"d": 2, "n": 3, "p_d_n": 3}, {"d": 2, "n": 4, "p_d_n": 5}]


def test_count_jsonl_format(capsys):
    code, out, _ = run(
        ["count", "--d", "2", "--n", "3..4", "--format", "jsonl"], capsys)
    assert code == 0
    rows = [json.loads(line) for line in out.strip().split("\n")]
    assert [r["p_d_n"] for r in rows] == [3, 5]


def test_count_out_file(tmp_path, capsys):
    target = tmp_path / "counts.csv"
    code, out, _ = run(
        ["count", "--d", "2", "--n", "5", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert target.read_text() == "d,n,p_d_n\n2,5,7\n"


def test_count_budget_exceeded(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "5")
    code, _, err = run(["count", "--d", "2", "--n", "10", "--method", "dfs"],
                       capsys)
    assert code == 2
    assert "budget" in err


def test_count_bad_budget_env(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "zero")
    code, _, err = run(["count", "--d", "2", "--n", "3"], capsys)
    assert code == 1
    assert cli.BUDGET_ENV in err


# -- usage errors ---------------------------------------------------------------

def test_no_subcommand_exits_one(capsys):
    assert run([], capsys)[0] == 1


def test_unknown_flag_exits_one(capsys):
    code, _, err = run(["count", "--d", "2", "--n", "3", "--bogus"], capsys)
    assert code == 1
    assert "usage" in err


def test_descending_range_exits_one(capsys):
    assert run(["count", "--d", "5..2", "--n", "3"], capsys)[0] == 1


def test_non_integer_range_exits_one(capsys):
    assert run(["count", "--d", "two", "--n", "3"], capsys)[0] == 1


# -- enumerate -------------------------------------------------------------------

def test_enumerate_matches_library_order(capsys):
    code, out, _ = run(["enumerate", "--d", "2", "--n", "3"], capsys)
    assert code == 0
    expected = [core.to_json_line(q) for q in core.enumerate_lower_sets(2, 3)]
    assert out == "\n".join(expected) + "\n"
    assert len(expected) == 3


def test_enumerate_empty_size(capsys):
    code, out, _ = run(["enumerate", "--d", "3", "--n", "0"], capsys)
    assert code == 0
    assert out == "[]\n"


def test_enumerate_budget_exceeded(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "2")
    assert run(["enumerate", "--d", "2", "--n", "6"], capsys)[0] == 2


def test_enumerate_rejects_bad_dim(capsys):
    assert run(["enumerate", "--d", "0", "--n", "3"], capsys)[0] == 1


# -- bounds ----------------------------------------------------------------------

def test_bounds_sweep_all_pass(capsys):
    code, out, _ = run(["bounds", "--d", "2..4", "--n", "3..8"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == bnd.BOUNDS_CSV_HEADER
    assert len(lines) == 1 + 18
    for line in lines[1:]:
        flags = line.split(",")[-1]
        assert ":fail" not in flags and ":boundary" not in flags


def test_bounds_edge_row_is_boundary_not_failure(capsys):
    code, out, _ = run(["bounds", "--d", "2", "--n", "2"], capsys)
    assert code == 0
    assert "thm1:boundary" in out.strip().split("\n")[1]


def test_bounds_n_one_skips_ratio_bound(capsys):
    code, out, _ = run(["bounds", "--d", "2", "--n", "1"], capsys)
    assert code == 0
    assert "thm2:skipped" in out.strip().split("\n")[1]


def test_bounds_requires_d_at_least_two(capsys):
    code, _, err = run(["bounds", "--d", "1", "--n", "5"], capsys)
    assert code == 1
    assert "d >= 2" in err


def test_bounds_jsonl_round_trip(capsys):
    code, out, _ = run(
        ["bounds", "--d", "2", "--n", "4..5", "--format", "jsonl"], capsys)
    assert code == 0
    rows = [json.loads(line) for line in out.strip().split("\n")]
    assert [r["n"] for r in rows] == [4, 5]
    header = bnd.BOUNDS_CSV_HEADER.split(",")
    assert all(list(r) == header for r in rows)
    assert all(r["flags"].count(":") == r["flags"].count(";") + 1 for r in rows)


# -- discretize ------------------------------------------------------------------

def test_discretize_grid_certifies_exactly(capsys):
    code, out, _ = run(
        ["discretize", "--d", "1", "--n", "2", "--m", "2", "--grid"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["c1"] == 1.0
    assert payload["c2"] == 1.0
    assert payload["m"] == 2


def test_discretize_single_point_fails_targets(capsys):
    code, out, _ = run(
        ["discretize", "--d", "2", "--n", "3", "--m", "1", "--seed", "5"],
        capsys)
    assert code == 3
    assert json.loads(out)["c1"] < 1e-9


def test_discretize_search_reports_m_found(capsys):
    code, out, _ = run(
        ["discretize", "--d", "2", "--n", "3", "--search", "--seed", "7",
         "--trials", "20"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["search"]["m_found"] == payload["m"]
    assert payload["c1"] >= 0.5 and payload["c2"] <= 1.5


def test_discretize_search_exhaustion_exits_three(capsys):
    code, _, err = run(
        ["discretize", "--d", "2", "--n", "3", "--search", "--seed", "1",
         "--c1", "0.999", "--c2", "1.001", "--m-max", "4"], capsys)
    assert code == 3
    assert "no qualifying m" in err


def test_discretize_randomized_needs_seed(capsys):
    code, _, err = run(["discretize", "--d", "2", "--n", "3", "--m", "8"],
                       capsys)
    assert code == 1
    assert "seed" in err


def test_discretize_m_and_search_conflict(capsys):
    code, _, _ = run(
        ["discretize", "--d", "2", "--n", "3", "--m", "8", "--search",
         "--seed", "1"], capsys)
    assert code == 1


def test_discretize_grid_with_search_rejected(capsys):
    code, _, _ = run(
        ["discretize", "--d", "2", "--n", "3", "--search", "--grid",
         "--seed", "1"], capsys)
    assert code == 1


def test_discretize_bad_targets_rejected(capsys):
    code, _, err = run(
        ["discretize", "--d", "2", "--n", "3", "--m", "8", "--seed", "1",
         "--c1", "1.2"], capsys)
    assert code == 1
    assert "c1" in err


def test_discretize_points_out(tmp_path, capsys):
    report = tmp_path / "report.json"
    points = tmp_path / "points.csv"
    code, _, _ = run(
        ["discretize", "--d", "2", "--n", "3", "--m", "16", "--seed", "7",
         "--out", str(report), "--points-out", str(points)], capsys)
    assert code == 0
    assert json.loads(report.read_text())["m"] == 16
    rows = points.read_text().strip().split("\n")
    assert len(rows) == 16
    assert all(len(row.split(",")) == 2 for row in rows)


# -- reproducibility ---------------------------------------------------------------

def test_seeded_runs_are_byte_identical(tmp_path, capsys):
    outputs = []
    for label in ("first", "second"):
        report = tmp_path / ("%s.json" % label)
        points = tmp_path / ("%s.csv" % label)
        code, _, _ = run(
            ["discretize", "--d", "2", "--n", "4", "--search", "--seed", "11",
             "--trials", "5", "--out", str(report),
             "--points-out", str(points)], capsys)
        assert code == 0
        outputs.append((report.read_bytes(), points.read_bytes()))
    assert outputs[0] == outputs[1]


def test_unseeded_deterministic_commands_repeat(capsys):
    first = run(["bounds", "--d", "2..3", "--n", "2..5"], capsys)
    second = run(["bounds", "--d", "2..3", "--n", "2..5"], capsys)
    assert first == second


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "lowersets.cli", "count", "--d", "2", "--n", "4"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "d,n,p_d_n\n2,4,5\n"
