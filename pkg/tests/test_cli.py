"""CLI behavior: rendering, exit codes, determinism."""

import pytest

from ruinwalk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["finite", "--x", "dpois:1,0"]) == 1  # missing --y/--u/--t
    assert main(["finite", "--bogus"]) == 1
    capsys.readouterr()


def test_validation_errors(capsys):
    code, _, err = run(capsys, "classify", "--x", "pmf:0.5,0.6", "--y", "dpois:1,0")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "finite", "--x", "dpois:1,0", "--y", "dpois:2,0",
                     "--u", "5..2", "--t", "1")
    assert code == 2
    code, _, _ = run(capsys, "ultimate", "--x", "dpois:1,0", "--y", "dpois:2,0",
                     "--u-max", "-1")
    assert code == 2


def test_numerical_error_exit(capsys):
    # retained mean sits just under 4 with the truncation bound reaching it:
    # the classifier refuses to guess, which surfaces as a numerical failure
    code, _, err = run(capsys, "ultimate", "--x", "dpois:4,0", "--y", "pmf:1",
                       "--u-max", "2")
    assert code == 3
    assert "numerical" in err


def test_finite_csv_golden(capsys):
    code, out, _ = run(capsys, "finite", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u", "0..2", "--t", "1..2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "T\\u,0,1,2"
    assert lines[1] == "1,0.736,0.92,0.981"
    assert lines[2] == "2,0.564,0.788,0.909"
    assert lines[3].startswith("# error_bound:")


def test_finite_tsv_and_digits(capsys):
    code, out, _ = run(capsys, "finite", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u", "0", "--t", "1", "--format", "tsv", "--digits", "1")
    assert code == 0
    assert out.splitlines()[1] == "1\t0.7"


def test_raw_roundtrip(capsys):
    from ruinwalk import ModelSpec, make_displaced_poisson, survival_finite

    code, out, _ = run(capsys, "finite", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u", "0..3", "--t", "2", "--format", "csv", "--raw")
    assert code == 0
    cells = out.splitlines()[1].split(",")[1:]
    m = ModelSpec(x=make_displaced_poisson(1.0, 0), y=make_displaced_poisson(2.0, 0))
    g = survival_finite(m, u_max=3, t_max=2)
    for u, cell in enumerate(cells):
        assert float(cell) == g.value(u, 2)


def test_ultimate_row_reference(capsys):
    code, out, _ = run(capsys, "ultimate", "--x", "dpois:1,1", "--y", "dpois:0.9,1",
                       "--u-max", "40", "--format", "csv")
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert row[0] == "inf"
    assert row[31] == "0.954" and row[41] == "0.983"
    assert "# case: C s.1" in out


def test_ultimate_diagnostics_markdown(capsys):
    code, out, _ = run(capsys, "ultimate", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u-max", "3")
    assert code == 0
    for key in ("case: A", "margin:", "n_solve:", "precision_bits:",
                "determinant:", "residual_master:", "residual_constraint:"):
        assert key in out


def test_classify_output(capsys):
    code, out, _ = run(capsys, "classify", "--x", "dpois:0.5,2",
                       "--y", "dpois:0.3333333333333333,1")
    assert code == 0
    assert "case: D v.1" in out
    assert "min_s_atom: 3" in out


def test_simulate_deterministic(capsys):
    args = ("simulate", "--x", "dpois:1,0", "--y", "dpois:2,0",
            "--u", "1", "--t", "5", "--trials", "4000", "--seed", "9")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "estimate: " in out1 and "stderr: " in out1


def test_conjecture_subcommand(capsys):
    code, out, _ = run(capsys, "conjecture", "--which", "2", "--x", "dpois:1,1",
                       "--y", "dpois:1.9,0", "--n-max", "12", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,D_n"
    assert "# violations: 0" in out
    # wrong case for the requested trace
    code, _, _ = run(capsys, "conjecture", "--which", "1", "--x", "dpois:1,1",
                     "--y", "dpois:1.9,0", "--n-max", "12")
    assert code == 2


def test_verify_paper_table1(capsys):
    code, out, _ = run(capsys, "verify-paper", "--table", "1")
    assert code == 0
    assert "0 flagged, 0 failed" in out
    assert "result: ok" in out


def test_verify_paper_table4_flags(capsys):
    code, out, _ = run(capsys, "verify-paper", "--table", "4")
    assert code == 0  # flagged cells are expected, not failures
    assert "flag" in out
    assert "FAIL" not in out


def test_byte_identical_output(capsys):
    args = ("ultimate", "--x", "dpois:1,1", "--y", "dpois:1.9,0", "--u-max", "10")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_env_precision_override(capsys, monkeypatch):
    monkeypatch.setenv("RUINWALK_PRECISION_BITS", "512")
    code, out, _ = run(capsys, "ultimate", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u-max", "2")
    assert code == 0
    assert "precision_bits: 512" in out
    # explicit flag beats the environment
    code, out, _ = run(capsys, "ultimate", "--x", "dpois:1,0", "--y", "dpois:2,0",
                       "--u-max", "2", "--precision-bits", "640")
    assert "precision_bits: 640" in out
    monkeypatch.setenv("RUINWALK_PRECISION_BITS", "not-a-number")
    code, _, _ = run(capsys, "ultimate", "--x", "dpois:1,0", "--y", "dpois:2,0",
                     "--u-max", "2")
    assert code == 2
