import contextlib
import io
import json
import os
import subprocess
import sys

import pytest

from daehee.cli import main


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "daehee", *args], capture_output=True, text=True, env=full_env
    )


def main_output(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert main(args) == 0
    return buf.getvalue()


def test_table_daehee_csv():
    out = run("table", "--family", "daehee", "--n-max", "3", "--format", "csv")
    assert out.returncode == 0
    assert out.stdout == "n,value\n0,1\n1,-1/2\n2,2/3\n3,-3/2\n"


def test_table_degenerate_at_lambda_zero_matches_daehee():
    degenerate = run("table", "--family", "degen-daehee-2nd", "--n-max", "2", "--lambda", "0")
    classical = run("table", "--family", "daehee", "--n-max", "2")
    assert degenerate.returncode == classical.returncode == 0
    assert degenerate.stdout == classical.stdout
    assert json.loads(classical.stdout)[1] == {"n": 1, "value": [["-1/2", 0, 0, 0], ["1", 0, 1, 0]]}


def test_table_stirling1():
    out = run("table", "--family", "stirling1", "--n-max", "3")
    assert out.returncode == 0
    rows = json.loads(out.stdout)
    assert rows[-1] == {"n": 3, "row": ["0", "2", "-3", "1"]}


def test_series_bernoulli():
    out = run("series", "--family", "bernoulli", "--n-max", "2")
    assert out.returncode == 0
    assert json.loads(out.stdout) == {
        "order": 2,
        "coeffs": [
            [["1", 0, 0, 0]],
            [["-1/2", 0, 0, 0], ["1", 0, 1, 0]],
            [["1/12", 0, 0, 0], ["-1/2", 0, 1, 0], ["1/2", 0, 2, 0]],
        ],
    }


def test_series_degen_daehee_order_zero():
    out = run("series", "--family", "degen-daehee-2nd", "--n-max", "0")
    assert out.returncode == 0
    assert out.stdout == '{"order": 0, "coeffs": [[["1", 0, 0, 0]]]}\n'


def test_series_invalid_family():
    out = run("series", "--family", "fibonacci", "--n-max", "2")
    assert out.returncode == 2
    assert "usage:" in out.stderr and out.stdout == ""


def test_verify_full_battery_markdown():
    out = run("verify", "--n-max", "12", "--r-max", "4", "--d-max", "3", "--format", "markdown")
    assert out.returncode == 0, out.stdout
    lines = out.stdout.splitlines()
    assert lines[0] == "| identity | status | params | cases | note |"
    assert len(lines) == 2 + 16
    assert all("| pass |" in line for line in lines[2:])


def test_verify_trivial():
    out = run("verify", "--n-max", "0")
    assert out.returncode == 0
    assert all(r["status"] == "pass" for r in json.loads(out.stdout))


def test_verify_fault_injection_exit_one():
    out = run("verify", "--n-max", "3", "--r-max", "2", "--inject-fault", "thm2")
    assert out.returncode == 1
    failed = [r for r in json.loads(out.stdout) if r["status"] == "fail"]
    assert [r["identity"] for r in failed] == ["thm2"]
    assert failed[0]["witness"]["lhs"] != failed[0]["witness"]["rhs"]


def test_verify_output_is_deterministic():
    args = ["verify", "--n-max", "4", "--r-max", "2", "--d-max", "2"]
    assert main_output(args) == main_output(args)


def test_verify_timing_flag():
    data = json.loads(main_output(["verify", "--n-max", "1", "--r-max", "1", "--timing"]))
    assert all("elapsed_ms" in r for r in data)


def test_verify_k_set_with_negatives():
    data = json.loads(main_output(["verify", "--n-max", "3", "--r-max", "1", "--k-set", "-2", "-1", "4"]))
    eq32 = next(r for r in data if r["identity"] == "eq32")
    assert eq32["params"]["k_set"] == [-2, -1, 4]


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--family", "degen-bernoulli", "--n-max", "2", "--format", "csv"],
        ["table", "--family", "daehee", "--n-max", "2", "--order-r", "2"],
        ["table", "--family", "stirling2", "--n-max", "-1"],
        ["verify", "--n-max", "2", "--format", "csv"],
        ["verify", "--n-max", "2", "--r-max", "0"],
        ["table", "--family", "daehee", "--n-max", "2", "--lambda", "abc"],
        ["table", "--n-max", "2"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_nmax_limit_from_environment():
    out = run("table", "--family", "daehee", "--n-max", "6", env={"DAEHEE_NMAX_LIMIT": "5"})
    assert out.returncode == 2 and "DAEHEE_NMAX_LIMIT" in out.stderr
    assert run("table", "--family", "daehee", "--n-max", "5", env={"DAEHEE_NMAX_LIMIT": "5"}).returncode == 0


def test_substitution_flags_and_csv():
    out = main_output(["table", "--family", "degen-bernoulli", "--n-max", "1", "--format", "csv", "--lambda", "1/2"])
    assert out == "n,value\n0,1\n1,-1/4\n"
    out = main_output(["table", "--family", "bernoulli", "--n-max", "1", "--x", "1"])
    assert json.loads(out) == [{"n": 0, "value": "1"}, {"n": 1, "value": "1/2"}]


def test_higher_family_negative_order():
    out = json.loads(main_output(["table", "--family", "higher-degen-daehee-2nd", "--order-r", "-1", "--n-max", "1", "--x", "0"]))
    # ((1+lam*L)^{1/lam} - 1)/L = 1 + (1-lam)/2 * L + ..., so D^(-1)_1 = (1 - lam)/2
    assert out[1]["value"] == [["1/2", 0, 0, 0], ["-1/2", 1, 0, 0]]


def test_output_path(tmp_path):
    target = tmp_path / "table.md"
    main_output(["table", "--family", "stirling2", "--n-max", "2", "--format", "markdown", "--output-path", str(target)])
    assert target.read_text().startswith("| n | k | value |")
