import json

import pytest

from jetspace.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    assert rc == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# happy paths
# ---------------------------------------------------------------------------

def test_dim_do(capsys):
    payload = run_json(capsys, "dim-do", "--n", "1", "--a", "0", "--b", "0",
                       "--N", "1")
    assert payload["schema"] == "jetspace/1"
    assert payload["dim"] == 4
    assert payload["candidates"] == 5
    assert payload["n"] == 1 and payload["N"] == 1


def test_dim_do_negative_twist(capsys):
    payload = run_json(capsys, "dim-do", "--n", "2", "--a", "0", "--b", "-1",
                       "--N", "1")
    assert payload["dim"] == 3


def test_growth_table_csv(capsys):
    rc, out, err = run(capsys, "growth-table", "--n", "2", "--a", "0",
                       "--b", "0", "--nmax", "2")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "N,dim,delta,expected_delta,match"
    assert lines[1] == "0,1,,,"
    assert lines[2] == "1,9,8,8,true"
    assert lines[3] == "2,36,27,27,true"
    footer = json.loads(lines[4])
    assert footer["M"] == 0
    assert footer["verdict"] is True
    assert footer["P_coeffs"] == ["1", "3", "13/4", "3/2", "1/4"]


def test_growth_table_json(capsys):
    payload = run_json(capsys, "growth-table", "--n", "1", "--a", "0",
                       "--b", "0", "--nmax", "3", "--format", "json")
    assert payload["M"] == 0
    assert payload["verdict"] is True
    assert [r["dim"] for r in payload["rows"]] == [1, 4, 9, 16]
    assert payload["rows"][0]["delta"] is None
    assert payload["first_failure"] is None
    assert payload["P_coeffs"] == ["1", "2", "1"]


def test_cohomology_full_profile(capsys):
    payload = run_json(capsys, "cohomology", "--n", "2", "--k", "-4")
    assert payload["h"] == [0, 0, 3]
    assert payload["chi"] == 3


def test_cohomology_single_group_closed_and_cech(capsys):
    closed = run_json(capsys, "cohomology", "--n", "2", "--k", "-3",
                      "--i", "2", "--method", "closed")
    cech = run_json(capsys, "cohomology", "--n", "2", "--k", "-3",
                    "--i", "2", "--method", "cech")
    assert closed["h"] == cech["h"] == 1
    assert closed["method"] == "closed" and cech["method"] == "cech"


def test_cohomology_sym_tangent(capsys):
    payload = run_json(capsys, "cohomology", "--n", "2", "--k", "1", "--j", "0")
    assert payload["h0"] == 8
    assert payload["chi"] == 8


def test_symbol_single_operator(capsys):
    payload = run_json(capsys, "symbol", "--op",
                       "1 * x^(0,0) d^(2,0) + 1 * x^(0,0) d^(0,2)",
                       "--N", "2")
    assert payload["size"] == 1
    assert payload["m"] == 2
    assert payload["entries"][0][0] == (
        "1 * x^(0,0) s^(0,2) + 1 * x^(0,0) s^(2,0)")
    assert payload["constant_coefficient"] is True
    assert payload["torus_operator"] is True


def test_symbol_matrix(capsys):
    matrix = json.dumps([
        ["1 * x^(0,0) d^(1,0)", "0 * x^(0,0) d^(0,0)"],
        ["0 * x^(0,0) d^(0,0)", "1 * x^(0,0) d^(0,1)"],
    ])
    payload = run_json(capsys, "symbol", "--matrix", matrix, "--N", "1")
    assert payload["size"] == 2
    assert payload["entries"][0][0] == "1 * x^(0,0) s^(1,0)"
    assert payload["entries"][0][1] == "0 * x^(0,0) s^(0,0)"


def test_elliptic_check_real_wave(capsys):
    payload = run_json(capsys, "elliptic-check", "--mode", "real", "--op",
                       "1 * x^(0,0) d^(2,0) + -1 * x^(0,0) d^(0,2)",
                       "--N", "2")
    assert payload["verdict"] == "false"
    assert payload["witness"] is not None


def test_elliptic_check_real_laplacian(capsys):
    payload = run_json(capsys, "elliptic-check", "--mode", "real", "--op",
                       "1 * x^(0,0) d^(2,0) + 1 * x^(0,0) d^(0,2)",
                       "--N", "2")
    assert payload["verdict"] == "true"
    assert payload["witness"] is None


def test_elliptic_check_algebraic(capsys):
    payload = run_json(capsys, "elliptic-check", "--mode", "algebraic",
                       "--op", "1 * x^(0,0) d^(2,0) + 1 * x^(0,0) d^(0,2)",
                       "--N", "2")
    assert payload["elliptic"] is False
    assert payload["witness_defining_poly"] == [1, 0, 1]
    assert payload["witness_real"] is False


def test_jet_derive(capsys):
    payload = run_json(capsys, "jet", "--derive", "1 * x^(1,1)", "--N", "2")
    assert payload["action"] == "derive"
    jet = payload["jet"]
    assert "1 * x^(0,0) dx^(1,1)" in jet
    assert "1 * x^(1,1) dx^(0,0)" in jet


def test_jet_free_rank(capsys):
    payload = run_json(capsys, "jet", "--free-rank", "--m", "2", "--r", "1",
                       "--N", "2")
    assert payload["rank"] == 6


def test_jet_cyclic(capsys):
    payload = run_json(capsys, "jet", "--cyclic", "0,0,1", "--N", "1")
    assert payload["invariants"] == ["t", "t^3"]
    assert payload["torsion"] is True
    assert payload["length"] == 4
    assert payload["free_rank"] == 0


def test_induced_map(capsys):
    payload = run_json(capsys, "induced-map", "--n", "1", "--a", "2",
                       "--b", "1", "--i", "0", "--op", "1 * x^(0,0) d^(1,0)")
    assert payload["source_basis"] == [[0, 2], [1, 1], [2, 0]]
    assert payload["target_basis"] == [[0, 1], [1, 0]]
    assert payload["matrix"] == [["0", "1", "0"], ["0", "0", "2"]]
    assert payload["rank"] == 2


def test_block_op(capsys):
    payload = run_json(capsys, "block-op", "--n", "1", "--m", "0", "--d", "2",
                       "--op", "1 * x^(3,0) d^(1,0)")
    assert payload["order"] == 1
    assert payload["report"]["ok"] is True
    assert payload["report"]["preserves_second_summand"] is True


# ---------------------------------------------------------------------------
# output handling and determinism
# ---------------------------------------------------------------------------

def test_identical_invocations_identical_bytes(capsys):
    args = ("growth-table", "--n", "1", "--a", "0", "--b", "1", "--nmax", "2")
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert out1.endswith("\n")


def test_json_keys_sorted(capsys):
    rc, out, _ = run(capsys, "dim-do", "--n", "1", "--a", "0", "--b", "0",
                     "--N", "0")
    keys = [line.split('"')[1] for line in out.splitlines()
            if line.startswith('  "')]
    assert keys == sorted(keys)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out, err = run(capsys, "cohomology", "--n", "1", "--k", "3",
                       "--output", str(target))
    assert rc == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["h"] == [4, 0]


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_usage_error_missing_args(capsys):
    rc, out, err = run(capsys, "dim-do", "--n", "1")
    assert rc == 1
    assert "usage" in err.lower()


def test_usage_error_unknown_command(capsys):
    rc, out, err = run(capsys, "frobnicate")
    assert rc == 1


def test_usage_error_bad_operator_text(capsys):
    rc, out, err = run(capsys, "symbol", "--op", "nonsense", "--N", "1")
    assert rc == 1
    assert "usage error" in err


def test_usage_error_nonsquare_matrix(capsys):
    rc, out, err = run(capsys, "symbol", "--matrix",
                       '[["1 * x^(0,0) d^(1,0)"], ["1 * x^(0,0) d^(0,1)"]]',
                       "--N", "1")
    assert rc == 1


def test_usage_error_jet_needs_exactly_one_action(capsys):
    rc, out, err = run(capsys, "jet", "--N", "1")
    assert rc == 1
    rc, out, err = run(capsys, "jet", "--free-rank", "--cyclic", "0,1",
                       "--m", "1", "--r", "1", "--N", "1")
    assert rc == 1


def test_precondition_exit(capsys):
    rc, out, err = run(capsys, "cohomology", "--n", "0", "--k", "1")
    assert rc == 2
    assert "precondition failed" in err


def test_precondition_cech_out_of_range(capsys):
    rc, out, err = run(capsys, "cohomology", "--n", "2", "--k", "40",
                       "--i", "0", "--method", "cech")
    assert rc == 2


def test_inconsistency_exit(capsys):
    # sweep budget too small to see the growth law stabilize
    rc, out, err = run(capsys, "growth-table", "--n", "1", "--a", "0",
                       "--b", "-2", "--nmax", "1")
    assert rc == 3
    assert "internal inconsistency" in err


# ---------------------------------------------------------------------------
# environment budget cap
# ---------------------------------------------------------------------------

def test_env_cap_rejects_large_order(monkeypatch, capsys):
    monkeypatch.setenv("JETSPACE_NMAX_OVERRIDE", "1")
    rc, out, err = run(capsys, "dim-do", "--n", "1", "--a", "0", "--b", "0",
                       "--N", "2")
    assert rc == 2
    assert "budget cap" in err


def test_env_cap_allows_within_budget(monkeypatch, capsys):
    monkeypatch.setenv("JETSPACE_NMAX_OVERRIDE", "1")
    payload = run_json(capsys, "dim-do", "--n", "1", "--a", "0", "--b", "0",
                       "--N", "1")
    assert payload["dim"] == 4


def test_env_cap_clamps_default_sweep(monkeypatch, capsys):
    monkeypatch.setenv("JETSPACE_NMAX_OVERRIDE", "1")
    rc, out, err = run(capsys, "growth-table", "--n", "1", "--a", "0",
                       "--b", "0")
    assert rc == 0
    lines = out.splitlines()
    assert lines[-2].startswith("1,")       # sweep stopped at N = 1
    rc2 = main(["growth-table", "--n", "1", "--a", "0", "--b", "0",
                "--nmax", "3"])
    capsys.readouterr()
    assert rc2 == 2


def test_env_cap_invalid_value(monkeypatch, capsys):
    monkeypatch.setenv("JETSPACE_NMAX_OVERRIDE", "many")
    rc, out, err = run(capsys, "dim-do", "--n", "1", "--a", "0", "--b", "0",
                       "--N", "1")
    assert rc == 1
    assert "JETSPACE_NMAX_OVERRIDE" in err
