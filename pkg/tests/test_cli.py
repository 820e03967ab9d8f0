import json
import subprocess
import sys

import pytest

from vcausal.cli import main


def write_sim_config(path, beta_t="inf", rate=2000.0, visibility=0.94):
    config = {
        "preset": "ego_red",
        "geometry": {"alpha": "90deg"},
        "source": {"pair_rate": rate, "visibility": visibility},
        "hypothesis": {"beta_t": beta_t, "beta": 1.3e-3, "theta_u": "83.6deg"},
    }
    path.write_text(json.dumps(config))
    return path


class TestCurve:
    def test_single_point_rest_frame(self, capsys):
        assert main(["curve", "--rho", "0.5", "--dt", "0", "--beta", "0"]) == 0
        assert capsys.readouterr().out.strip() == "2.00000000e+00"

    def test_rho_out_of_domain_exits_one(self, capsys):
        assert main(["curve", "--rho", "2", "--dt", "0", "--beta", "0"]) == 1
        assert "rho" in capsys.readouterr().err

    def test_preset_csv(self, tmp_path, capsys):
        out = tmp_path / "fig1.csv"
        code = main(
            ["curve", "--presets", "ego_red,ego_green,tabletop_blue", "--output", str(out)]
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "beta,ego_red,ego_green,tabletop_blue"
        assert len(lines) == 201
        for row in lines[1:]:
            assert len(row.split(",")) == 4

    def test_unknown_preset_exits_two(self, capsys):
        assert main(["curve", "--presets", "nope"]) == 2
        assert "available" in capsys.readouterr().err

    def test_mixing_modes_exits_two(self, capsys):
        assert main(["curve", "--presets", "ego_red", "--rho", "0.5"]) == 2

    def test_no_mode_exits_two(self, capsys):
        assert main(["curve"]) == 2

    def test_cmb_report_option(self, tmp_path, capsys):
        out = tmp_path / "fig1.csv"
        report = tmp_path / "cmb.json"
        code = main(
            [
                "curve",
                "--presets",
                "ego_red",
                "--output",
                str(out),
                "--cmb-report",
                str(report),
            ]
        )
        assert code == 0
        data = json.loads(report.read_text())
        assert data["ego_red"]["regime"] == "flat regime for CMB"
        assert abs(data["ego_red"]["bound"] / 4.85e6 - 1.0) < 0.01

    def test_determinism(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["curve", "--presets", "ego_red", "--output", str(a)])
        main(["curve", "--presets", "ego_red", "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestCoherence:
    def test_filtered_value(self, capsys):
        assert main(["coherence", "--lambda", "813nm", "--filter", "40nm"]) == 0
        assert "7.2917" in capsys.readouterr().out

    def test_with_budget_combination(self, tmp_path, capsys):
        budget = tmp_path / "budget.json"
        budget.write_text(
            json.dumps(
                {
                    "delta_d": "215um",
                    "distance": "1175m",
                    "lambda_d": "813nm",
                    "dlambda_d": "70nm",
                    "dlambda_F": "40nm",
                }
            )
        )
        code = main(
            ["coherence", "--lambda", "813nm", "--filter", "40nm", "--budget", str(budget)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "215.12" in out
        assert "effective rho" in out

    def test_zero_bandwidth_exits_one(self, capsys):
        assert main(["coherence", "--lambda", "813nm", "--filter", "0nm"]) == 1

    def test_bad_unit_exits_two(self, capsys):
        assert main(["coherence", "--lambda", "813nm", "--filter", "40floops"]) == 2


class TestCoverage:
    def test_east_west_zero(self, capsys):
        assert main(["coverage", "--alpha", "90deg"]) == 0
        assert "0.00000000e+00" in capsys.readouterr().out

    def test_fraction_inversion(self, capsys):
        assert main(["coverage", "--fraction", "0.05"]) == 0
        assert "71.8051" in capsys.readouterr().out

    def test_monte_carlo_with_seed(self, capsys):
        code = main(["coverage", "--alpha", "71.8deg", "--mc", "200000", "--seed", "3"])
        assert code == 0
        assert "Monte Carlo" in capsys.readouterr().out

    def test_monte_carlo_without_seed_exits_two(self, capsys):
        assert main(["coverage", "--alpha", "71.8deg", "--mc", "1000"]) == 2
        assert "--seed" in capsys.readouterr().err

    def test_alpha_out_of_range_exits_one(self, capsys):
        assert main(["coverage", "--alpha", "120deg"]) == 1


class TestSchedule:
    def test_split_validation_report(self, capsys):
        code = main(
            [
                "schedule",
                "--kind",
                "split",
                "--days",
                "4",
                "--window",
                "0.492s",
                "--validate",
                "--rho",
                "1.83e-7",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "4.92000000e-01" in out
        assert "12-hour rule:        pass" in out

    def test_two_hour_standard_plan_reports_failure(self, capsys):
        code = main(
            [
                "schedule",
                "--kind",
                "standard",
                "--per-setting",
                "20s",
                "--overhead",
                "5s",
                "--cycles",
                "36",
                "--validate",
            ]
        )
        assert code == 0
        assert "FAIL (span below 12 h)" in capsys.readouterr().out

    def test_three_days_exits_one(self, capsys):
        assert main(["schedule", "--kind", "split", "--days", "3", "--window", "1s"]) == 1
        assert "4 days" in capsys.readouterr().err

    def test_save_round_trips(self, tmp_path, capsys):
        saved = tmp_path / "sched.json"
        code = main(
            ["schedule", "--kind", "split", "--days", "4", "--window", "0.492s", "--save", str(saved)]
        )
        assert code == 0
        from vcausal import MeasurementSchedule, build_split_days

        assert MeasurementSchedule.from_dict(
            json.loads(saved.read_text())
        ) == build_split_days(4, 0.492)


class TestSimulate:
    def test_quantum_run_writes_outputs(self, tmp_path, capsys):
        config = write_sim_config(tmp_path / "sim.json")
        out_dir = tmp_path / "out"
        code = main(
            ["simulate", "--config", str(config), "--seed", "1", "--output-dir", str(out_dir)]
        )
        assert code == 0
        for name in (
            "tally.csv",
            "tally.json",
            "estimates.csv",
            "estimates.json",
            "drop_report.json",
            "run_metadata.json",
            "bound_comparison.json",
        ):
            assert (out_dir / name).exists()
        comparison = json.loads((out_dir / "bound_comparison.json").read_text())
        assert abs(comparison["ratio"] - 1.0) < 0.1
        drop = json.loads((out_dir / "drop_report.json").read_text())
        assert drop["n_drop_bins"] == 0
        meta = json.loads((out_dir / "run_metadata.json").read_text())
        assert meta["seed"] == 1
        assert "PCG64" in meta["rng_algorithm"]

    def test_deterministic_outputs(self, tmp_path):
        config = write_sim_config(tmp_path / "sim.json")
        dir_a, dir_b = tmp_path / "a", tmp_path / "b"
        main(["simulate", "--config", str(config), "--seed", "9", "--output-dir", str(dir_a)])
        main(["simulate", "--config", str(config), "--seed", "9", "--output-dir", str(dir_b)])
        assert (dir_a / "tally.csv").read_bytes() == (dir_b / "tally.csv").read_bytes()
        assert (dir_a / "estimates.csv").read_bytes() == (dir_b / "estimates.csv").read_bytes()

    def test_drop_with_bound_request_exits_one(self, tmp_path, capsys):
        config = write_sim_config(tmp_path / "sim.json", beta_t=1.0 + 1e-9)
        out_dir = tmp_path / "out"
        code = main(
            ["simulate", "--config", str(config), "--seed", "2", "--output-dir", str(out_dir)]
        )
        assert code == 1
        assert "drop" in capsys.readouterr().err
        drop = json.loads((out_dir / "drop_report.json").read_text())
        assert drop["n_drop_bins"] > 0
        assert not (out_dir / "bound_comparison.json").exists()

    def test_drop_without_bound_request_exits_zero(self, tmp_path, capsys):
        config = write_sim_config(tmp_path / "sim.json", beta_t=1.0 + 1e-9)
        out_dir = tmp_path / "out"
        code = main(
            [
                "simulate",
                "--config",
                str(config),
                "--seed",
                "2",
                "--output-dir",
                str(out_dir),
                "--no-bound",
            ]
        )
        assert code == 0

    def test_missing_config_exits_two(self, tmp_path, capsys):
        assert main(["simulate", "--config", str(tmp_path / "none.json"), "--seed", "1"]) == 2

    def test_invalid_json_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["simulate", "--config", str(bad), "--seed", "1"]) == 2

    def test_seed_required(self, tmp_path, capsys):
        config = write_sim_config(tmp_path / "sim.json")
        assert main(["simulate", "--config", str(config)]) == 2

    def test_config_without_hypothesis_exits_two(self, tmp_path, capsys):
        config = tmp_path / "sim.json"
        config.write_text(json.dumps({"preset": "ego_red"}))
        assert main(["simulate", "--config", str(config), "--seed", "1"]) == 2
        assert "hypothesis" in capsys.readouterr().err


class TestHelpAndEntryPoint:
    @pytest.mark.parametrize(
        "sub", ["curve", "coherence", "coverage", "schedule", "simulate"]
    )
    def test_subcommand_help_exits_zero(self, sub, capsys):
        assert main([sub, "--help"]) == 0
        assert "--" in capsys.readouterr().out

    def test_no_arguments_exits_two(self, capsys):
        assert main([]) == 2

    def test_module_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "vcausal", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "vcausal" in result.stdout
