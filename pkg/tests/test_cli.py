"""Command-line behaviour: output formats, precision plumbing, exit codes.

Exit code contract: 0 success, 1 usage/domain errors, 2 numerical
failures.  Everything is driven through main(argv) in-process; one
subprocess test confirms the installed entry points.
"""

import json
import math
import shutil
import subprocess
import sys

import pytest

from sphconv import Problem, eval_method_6, solve_method_5
from sphconv.bench import CSV_HEADER
from sphconv.cli import main


# ------------------------------------------------------------------- eval

def test_eval_json_matches_library(capsys):
    rc = main(["eval", "--method", "m6", "-N", "3", "--alpha", "1.1",
               "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["method"] == "gegenbauer"
    assert payload["value"] == eval_method_6(Problem(3, 1.1)).value
    assert payload["n"] == 3 and payload["alpha"] == 1.1


def test_eval_alias_and_full_name_agree(capsys):
    main(["eval", "--method", "m6", "-N", "2", "--alpha", "0.8", "--format", "json"])
    via_alias = json.loads(capsys.readouterr().out)["value"]
    main(["eval", "--method", "gegenbauer", "-N", "2", "--alpha", "0.8",
          "--format", "json"])
    via_name = json.loads(capsys.readouterr().out)["value"]
    assert via_alias == via_name


def test_eval_degrees_flag(capsys):
    main(["eval", "--method", "m4", "-N", "2", "--alpha", "90", "--degrees",
          "--format", "json"])
    in_degrees = json.loads(capsys.readouterr().out)
    main(["eval", "--method", "m4", "-N", "2", "--alpha", str(math.pi / 2),
          "--format", "json"])
    in_radians = json.loads(capsys.readouterr().out)
    assert in_degrees["value"] == in_radians["value"]


def test_eval_plain_and_csv_formats(capsys):
    rc = main(["eval", "--method", "m5", "-N", "2", "--alpha", "1.0"])
    assert rc == 0
    plain = capsys.readouterr().out
    assert "value=" in plain and "method=volterra" in plain
    rc = main(["eval", "--method", "m5", "-N", "2", "--alpha", "1.0",
               "--format", "csv"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "method,n,alpha,value,seconds,digits,truncation"
    assert lines[1].startswith("volterra,2,")


def test_eval_digits_flag_controls_precision(capsys):
    main(["eval", "--method", "m1", "-N", "4", "--alpha", "1.0",
          "--digits", "48", "--format", "json"])
    assert json.loads(capsys.readouterr().out)["digits"] == 48


def test_eval_digits_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("SPHCONV_DIGITS", "40")
    main(["eval", "--method", "m1", "-N", "4", "--alpha", "1.0",
          "--format", "json"])
    assert json.loads(capsys.readouterr().out)["digits"] == 40
    # explicit flag wins over the environment
    main(["eval", "--method", "m1", "-N", "4", "--alpha", "1.0",
          "--digits", "52", "--format", "json"])
    assert json.loads(capsys.readouterr().out)["digits"] == 52


# -------------------------------------------------------------- exit codes

def test_underbudget_digits_exit_2(capsys):
    rc = main(["eval", "--method", "m1", "-N", "20", "--alpha", "1.0",
               "--digits", "16"])
    assert rc == 2
    assert "PrecisionFailure" in capsys.readouterr().err


def test_bad_n_exit_1(capsys):
    rc = main(["eval", "--method", "m6", "-N", "0", "--alpha", "1.0"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_unknown_method_exit_1(capsys):
    rc = main(["eval", "--method", "m9", "-N", "2", "--alpha", "1.0"])
    assert rc == 1
    assert "unknown method" in capsys.readouterr().err


def test_bad_digits_string_exit_1(capsys):
    rc = main(["eval", "--method", "m1", "-N", "2", "--alpha", "1.0",
               "--digits", "plenty"])
    assert rc == 1
    assert "--digits" in capsys.readouterr().err


def test_usage_errors_exit_1(capsys):
    # argparse would exit 2 by default; the parser remaps usage to 1
    assert main(["eval", "--method", "m6", "-N", "2"]) == 1
    assert main(["frobnicate"]) == 1
    capsys.readouterr()


# --------------------------------------------------------------------- scan

def test_scan_emits_grid(capsys):
    rc = main(["scan", "--method", "m6", "-N", "2", "--alpha-start", "0.5",
               "--alpha-stop", "2.5", "--count", "4"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "method,n,alpha,value,seconds,digits,truncation"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert float(first[2]) == 0.5
    assert float(first[3]) == eval_method_6(Problem(2, 0.5)).value


# ------------------------------------------------------------------- coeffs

def test_coeffs_matches_solver(capsys):
    rc = main(["coeffs", "--method", "m5", "-N", "4", "--j-max", "5",
               "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    want = solve_method_5(Problem(4, 1.0)).c[:6]
    assert payload["provenance"] == "volterra"
    assert payload["c"] == pytest.approx(list(want), rel=0, abs=0)


def test_coeffs_rejects_non_spectral_method(capsys):
    rc = main(["coeffs", "--method", "m1", "-N", "4"])
    assert rc == 1
    assert "m4/m5/m6" in capsys.readouterr().err


# ------------------------------------------------------------------- asympt

def test_asympt_json_pole_identity(capsys):
    rc = main(["asympt", "-N", "50", "--alpha", "0.9", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pole_average"] == pytest.approx(payload["value"], rel=1e-12)
    assert payload["envelope"] == pytest.approx(
        4 * math.pi / math.sin(0.9) ** 2, rel=1e-13)


# -------------------------------------------------------------------- bench

def test_bench_writes_file_and_summary(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    rc = main(["bench", "--n-values", "1", "--alpha-start", "0.5",
               "--alpha-stop", "2.0", "--count", "2", "--methods", "m6",
               "--reference", "method_6", "--repeats", "1", "--out", str(out)])
    assert rc == 0
    text = out.read_text(encoding="utf-8")
    assert text.splitlines()[0] == CSV_HEADER
    assert len(text.splitlines()) == 3
    assert "median" in capsys.readouterr().out


def test_bench_missing_flags_exit_1(capsys):
    rc = main(["bench", "--methods", "m6"])
    assert rc == 1
    assert "bench needs" in capsys.readouterr().err


def test_bench_stdout_json(capsys):
    rc = main(["bench", "--n-values", "2", "--alpha-start", "0.5",
               "--alpha-stop", "2.0", "--count", "2", "--methods", "m4,m6",
               "--reference", "method_6", "--repeats", "1", "--format", "json"])
    assert rc == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert {r["method"] for r in rows} == {"galerkin", "gegenbauer"}


# ------------------------------------------------------------------- verify

def test_verify_quick_passes(capsys):
    rc = main(["verify", "--quick"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[A1] PASS" in out and "ALL PASS" in out


# -------------------------------------------------------------- entry points

def test_installed_entry_points():
    got = subprocess.run(
        [sys.executable, "-m", "sphconv", "eval", "--method", "m6",
         "-N", "2", "--alpha", "1.0", "--format", "json"],
        capture_output=True, text=True, timeout=120)
    assert got.returncode == 0
    assert json.loads(got.stdout)["method"] == "gegenbauer"
    script = shutil.which("sphconv")
    assert script, "console script not installed"
    got = subprocess.run([script, "eval", "--method", "m6", "-N", "2",
                          "--alpha", "1.0"], capture_output=True, text=True,
                         timeout=120)
    assert got.returncode == 0
