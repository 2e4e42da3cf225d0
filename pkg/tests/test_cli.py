"""Command-line interface tests (run in-process via main)."""

import json

import pytest

from stabreg.cli import (
    EXIT_NO_CANDIDATES,
    EXIT_OK,
    EXIT_UNDECIDED,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsageErrors:
    def test_missing_subcommand(self, capsys):
        code, _, _ = run(capsys, )
        assert code == EXIT_USAGE

    def test_bad_family(self, capsys):
        code, _, _ = run(capsys, "angle", "--family", "cranknicolson")
        assert code == EXIT_USAGE

    def test_bdf_without_steps(self, capsys):
        code, _, err = run(capsys, "angle", "--family", "bdf")
        assert code == EXIT_USAGE and err

    def test_enright_slow_gate(self, capsys):
        code, _, err = run(capsys, "angle", "--family", "enright", "--steps", "6")
        assert code == EXIT_USAGE
        assert "allow-slow" in err

    def test_imex_requires_betas(self, capsys):
        code, _, _ = run(capsys, "angle", "--family", "imex")
        assert code == EXIT_USAGE


class TestAngleCommand:
    def test_bdf3_text(self, capsys):
        code, out, _ = run(capsys, "angle", "--family", "bdf", "--steps", "3")
        assert code == EXIT_OK
        assert "86.032366860211647332" in out

    def test_bdf3_json_schema(self, capsys):
        code, out, _ = run(
            capsys, "angle", "--family", "bdf", "--steps", "3", "--json"
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert set(doc) == {
            "tool",
            "version",
            "command",
            "inputs",
            "results",
            "precision_bits",
            "elapsed_ms",
        }
        assert doc["command"] == "angle"
        assert doc["precision_bits"] == 0
        assert doc["elapsed_ms"] == 0  # deterministic without --timing
        res = doc["results"][0]
        assert res["quantity"] == "angle_tangent"
        assert res["approx"].startswith("14.417705545479805")

    def test_json_deterministic(self, capsys):
        _, out1, _ = run(
            capsys, "angle", "--family", "bdf", "--steps", "3", "--json"
        )
        _, out2, _ = run(
            capsys, "angle", "--family", "bdf", "--steps", "3", "--json"
        )
        assert out1 == out2


class TestClassifyCommand:
    def test_schur(self, capsys):
        code, out, _ = run(capsys, "classify", "--coeffs", '["1/2", "1"]')
        assert code == EXIT_OK
        assert "SCHUR" in out

    def test_complex_pairs(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--coeffs", '[["1", "0"], ["0", "1"], ["1", "0"]]'
        )
        assert code == EXIT_OK
        assert "OUTSIDE" in out

    def test_float_rejected(self, capsys):
        code, _, _ = run(capsys, "classify", "--coeffs", "[0.5, 1.0]")
        assert code == EXIT_USAGE


class TestMemberCommand:
    def test_degree_drop(self, capsys):
        code, out, _ = run(
            capsys, "member", "--family", "bdf", "--steps", "2", "--mu", "3/2/0"
        )
        assert code == EXIT_OK
        assert "Excluded" in out

    def test_inside(self, capsys):
        code, out, _ = run(
            capsys, "member", "--family", "bdf", "--steps", "2", "--mu=-1/0"
        )
        assert code == EXIT_OK
        assert "In" in out

    def test_imex_point(self, capsys):
        code, out, _ = run(
            capsys,
            "member",
            "--family",
            "imex",
            "--beta1",
            "3/8",
            "--beta0",
            "3/4",
            "--xi",
            "-2",
            "--eta",
            "1",
        )
        assert code == EXIT_OK


class TestRlcCommand:
    def test_csv_stdout(self, capsys):
        code, out, _ = run(
            capsys, "rlc", "--family", "bdf", "--steps", "2", "--samples", "16"
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "branch,t,re,im"
        assert len(lines) > 10
        for line in lines[1:]:
            branch, t, re, im = line.split(",")
            int(branch)
            float(t), float(re), float(im)

    def test_csv_and_plot_files(self, capsys, tmp_path):
        csv = tmp_path / "curve.csv"
        png = tmp_path / "curve.png"
        code, _, _ = run(
            capsys,
            "rlc",
            "--family",
            "bdf",
            "--steps",
            "3",
            "--samples",
            "32",
            "--out",
            str(csv),
            "--plot",
            str(png),
        )
        assert code == EXIT_OK
        assert csv.read_text().startswith("branch,t,re,im\n")
        assert png.stat().st_size > 1000


class TestImexScan:
    def test_sector(self, capsys):
        code, out, _ = run(capsys, "imex-scan", "--mode", "sector", "--grid", "8")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["none_exceed_half"] is True
        opt = doc["optimum"]
        assert opt["beta1"] == "3/8" and opt["beta0"] == "3/4"
        assert opt["is_half"] is True


class TestTables:
    def test_table1(self, capsys):
        code, out, _ = run(capsys, "tables", "--which", "1")
        assert code == EXIT_OK
        for printed in (
            "86.032366860211647332",
            "73.351670474578482110",
            "51.839755836049910392",
            "17.839777792245700102",
        ):
            assert printed in out

    def test_table2_gated(self, capsys):
        code, out, err = run(capsys, "tables", "--which", "2")
        assert code == EXIT_OK
        assert "27.056933440109472532" in out
        assert "7.1406622283653916403" in out
        assert "3.2907685080317853840" not in out  # k = 5 needs --allow-slow
        assert "allow-slow" in err

    def test_table3(self, capsys):
        code, out, _ = run(capsys, "tables", "--which", "3")
        assert code == EXIT_OK
        for printed in (
            "7.049703546891172",
            "2.727199466336645",
            "1.357947301777465",
            "0.559931687924882",
        ):
            assert printed in out
