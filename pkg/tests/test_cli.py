import json
import os
import subprocess
import sys

import pytest

from tyang.cli import InputError, main, run_scenario

SCENARIO_DIR = os.path.join(
    os.path.dirname(__file__), "..", "src", "tyang", "data", "scenarios"
)


def scenario_path(name):
    return os.path.join(SCENARIO_DIR, name)


class TestRunScenario:
    def test_rank1_certificate_scenario(self):
        report, code = run_scenario(scenario_path("rank1-L12.json"))
        assert code == 0
        assert report["overall"] == "pass"
        cert = next(c for c in report["checks"] if c["id"] == "rank1-certificate")
        assert cert["data"]["P"] == ["3", "4", "1"]

    def test_negative_control_fails_with_witness(self):
        report, code = run_scenario(scenario_path("twisted-negative-control.json"))
        assert code == 1
        refl = next(c for c in report["checks"] if c["id"] == "reflection-equation")
        assert refl["status"] == "fail"
        assert "point" in refl["witness"]
        # The deliberate failure is the expected outcome.
        assert report["expectations"] == "pass"

    def test_all_positive_scenarios_pass(self):
        for name in sorted(os.listdir(SCENARIO_DIR)):
            if "negative" in name:
                continue
            report, code = run_scenario(scenario_path(name))
            assert code == 0, (name, report)

    def test_only_filter(self):
        report, code = run_scenario(
            scenario_path("daha-principal-l2.json"), only="relations"
        )
        assert [c["id"] for c in report["checks"]] == ["relations"]
        assert code == 0

    def test_only_unknown_check(self):
        with pytest.raises(InputError):
            run_scenario(scenario_path("daha-principal-l2.json"), only="nope")

    def test_max_dim_guard(self):
        with pytest.raises(InputError):
            run_scenario(scenario_path("yangian-L12-tensor.json"), max_dim=2)


class TestDeterminism:
    def test_reports_byte_identical(self, tmp_path):
        outs = []
        for run in (1, 2):
            out = tmp_path / f"rep{run}.json"
            code = main(["run", scenario_path("rank1-L12.json"), "--out", str(out)])
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestMainEntry:
    def test_list_pipelines(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "verify-yangian" in out and "appendix" in out

    def test_malformed_json_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["run", str(bad)]) == 2

    def test_missing_file_exit_2(self):
        assert main(["run", "/nonexistent/scenario.json"]) == 2

    def test_stdout_report(self, capsys):
        code = main(["run", scenario_path("appendix-k2-l2.json")])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["overall"] == "pass"

    def test_installed_entrypoint_if_present(self):
        # Exercise the module as a script, mirroring console usage.
        env = dict(os.environ)
        src = os.path.join(os.path.dirname(__file__), "..", "src")
        env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
        proc = subprocess.run(
            [sys.executable, "-m", "tyang.cli", "list"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 0
        assert "classify" in proc.stdout
