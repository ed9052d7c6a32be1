#!/usr/bin/env python3
"""
Test suite for the command line front end
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from core import cli

PROJECT_ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestArgumentHandling:
    """Argument preprocessing and field resolution"""

    def test_negative_values_glued(self):
        argv = ["h3", "--p", "3", "--modulus", "-1,1,1", "--omega", "-g"]
        assert cli._glue_negative_values(argv) == ["h3", "--p", "3", "--modulus=-1,1,1", "--omega=-g"]

    def test_missing_field(self, capsys):
        code, _ = run(capsys, "h3", "--omega", "g")
        assert code == cli.EXIT_INPUT

    def test_unknown_catalog_key(self, capsys):
        code, _ = run(capsys, "h3", "--q", "99")
        assert code == cli.EXIT_INPUT

    def test_reducible_modulus(self, capsys):
        code, _ = run(capsys, "h3", "--p", "2", "--modulus", "1,0,1")
        assert code == cli.EXIT_INPUT

    def test_trivial_omega(self, capsys):
        code, _ = run(capsys, "h3", "--p", "3", "--modulus", "1,0,1", "--omega", "1")
        assert code == cli.EXIT_INPUT


class TestH3Command:
    """h3 reports"""

    def test_q4_with_oracle(self, capsys):
        code, report = run(capsys, "h3", "--p", "2", "--modulus", "1,1,1", "--omega", "g", "--oracle")
        assert code == cli.EXIT_OK
        assert report["command"] == "h3"
        assert report["result"]["dim"] == 3
        assert report["agree"] is True
        assert report["oracle"]["oracle_dim"] == 3
        assert set(report) == {"command", "field", "omega", "result", "oracle", "agree", "timing_ms"}

    def test_other_q9_modulus(self, capsys):
        code, report = run(capsys, "h3", "--p", "3", "--modulus", "-1,1,1", "--omega", "g", "--basis")
        assert code == cli.EXIT_OK
        assert report["result"]["basis"] == ["Psi(5,3)"]
        assert report["field"]["modulus"] == [2, 1, 1]
        assert report["omega"] == {"value": "g", "order": 8}

    def test_catalog_and_default_omega(self, capsys):
        code, report = run(capsys, "h3", "--q", "4", "--expand")
        assert code == cli.EXIT_OK
        assert report["omega"]["value"] == "g"
        assert report["result"]["basis"] == ["F(1,2,0)", "E1(1,2)", "E1(2,4)"]
        assert report["result"]["polynomials"]["F(1,2,0)"] == "U1*U2^2"

    def test_prime_default_omega(self, capsys):
        code, report = run(capsys, "h3", "--p", "5", "--prime", "--basis")
        assert code == cli.EXIT_OK
        assert report["omega"] == {"value": "4", "order": 2}
        assert report["result"]["basis"] == ["E1(1,5)"]

    def test_by_degree(self, capsys):
        code, report = run(capsys, "h3", "--q", "4", "--by-degree")
        assert code == cli.EXIT_OK
        assert report["result"]["by_degree"] == [
            {"d": 3, "basis": 2, "h3": 2},
            {"d": 6, "basis": 1, "h3": 1},
        ]

    def test_text_format(self, capsys):
        code, out = run(capsys, "h3", "--q", "4", "--basis", "--format", "text")
        assert code == cli.EXIT_OK
        assert "E1(2,4)" in out
        assert "h3" in out

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run(capsys, "h3", "--q", "9", "--out", str(target))
        assert code == cli.EXIT_OK
        assert out == ""
        assert json.loads(target.read_text())["result"]["dim"] == 5

    def test_cross_check_failure(self, capsys, mocker):
        failing = mocker.Mock()
        failing.agree = False
        failing.to_dict.return_value = {"agree": False}
        mocker.patch.object(cli, "cross_check_h3", return_value=failing)
        code, report = run(capsys, "h3", "--q", "4", "--oracle")
        assert code == cli.EXIT_CROSS_CHECK
        assert report["agree"] is False


class TestH2Command:
    """h2 reports"""

    def test_q9(self, capsys):
        code, report = run(capsys, "h2", "--p", "3", "--modulus", "1,0,1", "--omega", "g", "--oracle", "--basis")
        assert code == cli.EXIT_OK
        assert report["result"]["dim"] == 1
        assert report["result"]["basis"] == ["J2(1,3)"]
        assert report["agree"] is True

    def test_prime_field(self, capsys):
        code, report = run(capsys, "h2", "--p", "5", "--prime", "--omega", "2")
        assert code == cli.EXIT_OK
        assert report["result"]["dim"] == 0

    def test_dihedral_with_oracle(self, capsys):
        code, report = run(capsys, "h2", "--p", "3", "--prime", "--omega", "2", "--oracle")
        assert code == cli.EXIT_OK
        assert report["oracle"]["oracle_dim"] == 0


class TestVerifyCommand:
    """verify on single cochains"""

    def test_cocycle(self, capsys):
        code, report = run(capsys, "verify", "--q", "8", "F(1,2,4)")
        assert code == cli.EXIT_OK
        assert report["result"]["cocycle"] is True
        assert report["result"]["admissible"] is True
        assert report["result"]["delta"] == "0"

    def test_not_a_cocycle(self, capsys):
        code, report = run(capsys, "verify", "--p", "2", "--modulus", "1,0,1,1", "--omega", "g", "F(1,1,1)")
        assert code == cli.EXIT_NEGATIVE
        assert report["result"]["cocycle"] is False
        assert report["result"]["delta"] != "0"

    def test_gamma(self, capsys):
        code, report = run(capsys, "verify", "--q", "9", "Gamma(1,1,3,3)")
        assert code == cli.EXIT_OK
        assert report["result"]["polynomial"] == "U1*U2^4*T3^3 + (2*g+2)*U1*U2*T3^6"

    def test_bad_spec(self, capsys):
        code, _ = run(capsys, "verify", "--q", "9", "Nope(1)")
        assert code == cli.EXIT_INPUT

    def test_space_inside_spec(self, capsys):
        code, _ = run(capsys, "verify", "--q", "4", "F(1 2)")
        assert code == cli.EXIT_INPUT

    def test_unclassifiable_gamma(self, capsys):
        code, _ = run(capsys, "verify", "--q", "9", "Gamma(3,1,1,3)")
        assert code == cli.EXIT_INPUT


class TestFieldCommand:
    """field descriptions"""

    def test_orders(self, capsys):
        code, report = run(capsys, "field", "--p", "3", "--modulus", "1,0,1")
        assert code == cli.EXIT_OK
        assert report["result"]["q"] == 9
        orders = {row["element"]: row["order"] for row in report["result"]["orders"]}
        assert len(orders) == 8
        assert orders["g"] == 4
        assert orders["g+1"] == 8
        assert orders["2"] == 2

    def test_single_omega(self, capsys):
        code, report = run(capsys, "field", "--q", "16", "--omega", "g^5")
        assert code == cli.EXIT_OK
        assert report["omega"]["order"] == 3
        assert report["result"]["orders"] == [{"element": "g^2+g", "order": 3}]


class TestSweepCommand:
    """sweep over catalog fields"""

    def test_small_sweep(self, capsys):
        code, report = run(capsys, "sweep", "--fields", "3,4")
        assert code == cli.EXIT_OK
        rows = report["result"]["rows"]
        assert [(row["q"], row["omega"]) for row in rows] == [("3", "2"), ("4", "g"), ("4", "g+1")]
        assert all(row["agree"] for row in rows)
        assert report["agree"] is True

    @pytest.mark.slow
    def test_parallel_matches_serial(self, capsys):
        _, serial = run(capsys, "sweep", "--fields", "4,5", "--jobs", "1")
        _, parallel = run(capsys, "sweep", "--fields", "4,5", "--jobs", "2")
        assert serial["result"]["rows"] == parallel["result"]["rows"]


@pytest.mark.integration
class TestModuleEntryPoint:
    """python -m core.cli"""

    def test_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "core.cli", "h3", "--q", "4"],
            cwd=PROJECT_ROOT, capture_output=True, text=True, timeout=300,
        )
        assert proc.returncode == 0, proc.stderr
        assert json.loads(proc.stdout)["result"]["dim"] == 3
