"""Tests for run configuration, result tables, sweep runners, and the CLI."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from qsync import (
    ConfigError,
    RunConfig,
    SystemParams,
    arnold_tongue,
    run_evolve,
    run_qsurface,
    run_smeasure,
    run_spin1,
    run_steady,
    run_tongue,
    steady_state_closed_form,
    __version__,
)
from qsync.sweeps import _fmt_float


def resolve(command, **raw):
    return RunConfig.resolve(command, raw)


def run_cli(*args, env_extra=None, stdin_data=None):
    env = dict(os.environ)
    env.pop("QSYNC_JOBS", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "qsync", *args],
        capture_output=True,
        text=True,
        env=env,
        input=stdin_data,
    )
    return proc


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#") and ln]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


class TestResolve:
    def test_unknown_key_named_in_error(self):
        with pytest.raises(ConfigError, match="nonsense"):
            resolve("steady", nonsense="5", gamma_g="1", gamma_d="1")

    def test_missing_required_key(self):
        with pytest.raises(ConfigError, match="gamma_d"):
            resolve("steady", gamma_g="1")

    def test_model_must_match_command(self):
        with pytest.raises(ConfigError):
            resolve("steady", model="spin1", gamma_g="1", gamma_d="1")
        with pytest.raises(ConfigError):
            resolve("spin1", model="tls", alpha="1", beta="1")

    def test_bad_format_rejected(self):
        with pytest.raises(ConfigError, match="format"):
            resolve("steady", gamma_g="1", gamma_d="1", format="xml")

    def test_unparseable_number(self):
        with pytest.raises(ConfigError, match="gamma_g"):
            resolve("steady", gamma_g="ten", gamma_d="1")

    def test_axis_requires_all_three_bounds(self):
        with pytest.raises(ConfigError, match="sweep_stop"):
            resolve(
                "steady", gamma_g="1", gamma_d="1",
                sweep="epsilon", sweep_start="0", sweep_count="5",
            )

    def test_axis_bounds_without_name(self):
        with pytest.raises(ConfigError, match="sweep_start"):
            resolve("steady", gamma_g="1", gamma_d="1", sweep_start="0")

    def test_axis_unknown_name(self):
        with pytest.raises(ConfigError, match="sweep"):
            resolve(
                "steady", gamma_g="1", gamma_d="1",
                sweep="omega", sweep_start="0", sweep_stop="1", sweep_count="2",
            )

    def test_axis_count_and_order_validated(self):
        with pytest.raises(ConfigError, match="count"):
            resolve(
                "steady", gamma_g="1", gamma_d="1",
                sweep="epsilon", sweep_start="0", sweep_stop="1", sweep_count="0",
            )
        with pytest.raises(ConfigError, match="exceeds"):
            resolve(
                "steady", gamma_g="1", gamma_d="1",
                sweep="epsilon", sweep_start="2", sweep_stop="1", sweep_count="3",
            )

    def test_degenerate_rates_rejected_up_front(self):
        with pytest.raises(ConfigError):
            resolve("steady", gamma_g="0", gamma_d="0")

    def test_jobs_key_beats_environment(self, monkeypatch):
        monkeypatch.setenv("QSYNC_JOBS", "7")
        cfg = resolve("steady", gamma_g="1", gamma_d="1", jobs="2")
        assert cfg.jobs == 2

    def test_jobs_from_environment(self, monkeypatch):
        monkeypatch.setenv("QSYNC_JOBS", "3")
        cfg = resolve("steady", gamma_g="1", gamma_d="1")
        assert cfg.jobs == 3

    def test_jobs_must_be_positive(self):
        with pytest.raises(ConfigError, match="jobs"):
            resolve("steady", gamma_g="1", gamma_d="1", jobs="0")

    def test_tongue_default_grid_in_smaller_rate_units(self):
        cfg = resolve("tongue", gamma_g="10", gamma_d="1")
        assert cfg.epsilon_start == 0.0
        assert cfg.epsilon_stop == 1.0
        assert cfg.epsilon_count == 81
        assert cfg.delta_start == -2.0
        assert cfg.delta_stop == 2.0
        assert cfg.delta_count == 81

    def test_tongue_unit_falls_back_to_larger_rate(self):
        cfg = resolve("tongue", gamma_g="4", gamma_d="0")
        assert cfg.epsilon_stop == 4.0
        assert cfg.delta_stop == 8.0

    def test_smeasure_defaults_to_single_member_family(self):
        cfg = resolve("smeasure", gamma_g="1", gamma_d="2", delta="0.5")
        assert cfg.family == "delta"
        assert cfg.family_start == 0.5
        assert cfg.family_stop == 0.5
        assert cfg.family_count == 1
        assert cfg.n_phi_measure == 361

    def test_evolve_omega_defaults(self):
        cfg = resolve("evolve", gamma_g="1", gamma_d="1")
        assert cfg.omega == 0.0
        cfg = resolve("evolve", gamma_g="1", gamma_d="1", omega0="5", delta="2")
        assert cfg.omega == 3.0
        cfg = resolve("evolve", gamma_g="1", gamma_d="1", omega="1.5")
        assert cfg.omega == 1.5

    def test_evolve_rejects_inconsistent_frequencies(self):
        with pytest.raises(ConfigError):
            resolve(
                "evolve", gamma_g="1", gamma_d="1",
                omega0="5", omega="1", delta="2",
            )

    def test_evolve_rejects_unnormalizable_init(self):
        with pytest.raises(ConfigError, match="norm"):
            resolve(
                "evolve", gamma_g="1", gamma_d="1",
                init_mx="1", init_my="1", init_mz="1",
            )

    def test_evolve_default_step_tracks_fastest_scale(self):
        cfg = resolve("evolve", gamma_g="10", gamma_d="1", epsilon="2")
        assert cfg.dt == 0.01 / 11.0
        assert cfg.t_final == 20.0

    def test_reserved_command_key_round_trips(self):
        cfg = RunConfig.resolve(
            "steady", {"command": "steady", "gamma_g": "1", "gamma_d": "1"}
        )
        assert cfg.command == "steady"
        with pytest.raises(ConfigError):
            RunConfig.resolve(
                "steady", {"command": "tongue", "gamma_g": "1", "gamma_d": "1"}
            )


class TestFloatFormatting:
    def test_seventeen_digit_roundtrip(self):
        rng = np.random.default_rng(83)
        for _ in range(200):
            x = float(rng.normal() * 10.0 ** rng.integers(-8, 8))
            assert float(_fmt_float(x)) == x

    def test_negative_zero_normalized(self):
        assert _fmt_float(-0.0) == "0"

    def test_integral_values_stay_compact(self):
        assert _fmt_float(10.0) == "10"
        assert _fmt_float(-2.0) == "-2"


class TestSteadyRunner:
    def test_single_point_values(self):
        cfg = resolve("steady", gamma_g="10", gamma_d="1", epsilon="2")
        table = run_steady(cfg)
        assert table.columns == [
            "gamma_g", "gamma_d", "epsilon", "delta",
            "mx", "my", "mz", "mx_oracle", "my_oracle", "mz_oracle",
            "max_residual",
        ]
        assert table.status == ["ok"]
        row = dict(zip(table.columns, table.rows[0]))
        np.testing.assert_allclose(row["mx"], 72.0 / 153.0, atol=1e-15)
        np.testing.assert_allclose(row["mz"], 1089.0 / 1683.0, atol=1e-15)
        np.testing.assert_allclose(row["mx_oracle"], row["mx"], atol=1e-10)
        assert row["max_residual"] < 1e-12

    def test_sweep_with_degenerate_cell(self):
        cfg = resolve(
            "steady", gamma_g="0", gamma_d="0",
            sweep="gamma_d", sweep_start="0", sweep_stop="1", sweep_count="2",
        )
        table = run_steady(cfg)
        assert table.status == ["non-unique", "ok"]
        np.testing.assert_allclose(table.rows[0, 4:], 0.0, atol=0)
        assert np.all(np.isfinite(table.rows))

    def test_sweep_with_invalid_cell(self):
        cfg = resolve(
            "steady", gamma_g="1", gamma_d="1",
            sweep="epsilon", sweep_start="-1", sweep_stop="1", sweep_count="3",
        )
        table = run_steady(cfg)
        assert table.status == ["invalid", "ok", "ok"]
        assert np.all(np.isfinite(table.rows))

    def test_sweep_values_match_closed_form(self):
        cfg = resolve(
            "steady", gamma_g="3", gamma_d="1", delta="1",
            sweep="epsilon", sweep_start="0", sweep_stop="2", sweep_count="5",
        )
        table = run_steady(cfg)
        for row in table.rows:
            p = SystemParams(
                gamma_g=row[0], gamma_d=row[1], epsilon=row[2], delta=row[3]
            )
            m = steady_state_closed_form(p)
            np.testing.assert_allclose(row[4:7], m.as_array(), atol=1e-15)


class TestTongueRunner:
    def test_matches_library_tongue(self):
        cfg = resolve(
            "tongue", gamma_g="10", gamma_d="1",
            epsilon_start="0", epsilon_stop="1", epsilon_count="3",
            delta_start="-1", delta_stop="1", delta_count="3",
        )
        table = run_tongue(cfg)
        tongue = arnold_tongue(
            SystemParams(gamma_g=10.0, gamma_d=1.0),
            np.linspace(0.0, 1.0, 3),
            np.linspace(-1.0, 1.0, 3),
        )
        assert table.rows.shape == (9, 5)
        np.testing.assert_allclose(
            table.rows[:, 2], tongue.s_max.reshape(-1), atol=1e-15
        )
        np.testing.assert_allclose(
            table.rows[:, 3], tongue.phi_star.reshape(-1), atol=1e-15
        )
        # epsilon-major ordering
        np.testing.assert_allclose(
            table.rows[:, 0], np.repeat(np.linspace(0.0, 1.0, 3), 3), atol=0
        )

    def test_deforming_status_beyond_threshold(self):
        cfg = resolve(
            "tongue", gamma_g="1", gamma_d="10",
            epsilon_start="2", epsilon_stop="2", epsilon_count="1",
            delta_start="3", delta_stop="3", delta_count="1",
        )
        table = run_tongue(cfg)
        assert table.status == ["deforming"]
        np.testing.assert_allclose(table.rows[0, 4], 32.0 / 265.0, atol=1e-15)

    def test_zero_drive_rows_stay_ok(self):
        cfg = resolve(
            "tongue", gamma_g="10", gamma_d="1",
            epsilon_start="0", epsilon_stop="0", epsilon_count="1",
            delta_start="0", delta_stop="0", delta_count="1",
        )
        table = run_tongue(cfg)
        assert table.status == ["ok"]
        assert table.rows[0, 2] == 0.0


class TestSmeasureRunner:
    def test_family_curves_ordered_by_drive(self):
        cfg = resolve(
            "smeasure", gamma_g="10", gamma_d="1", delta="0",
            family="epsilon", family_start="0", family_stop="1", family_count="3",
            n_phi_measure="361",
        )
        table = run_smeasure(cfg)
        assert table.rows.shape == (3 * 361, 3)
        curves = table.rows[:, 2].reshape(3, 361)
        at_zero = curves[:, 180]
        assert at_zero[0] == 0.0
        assert at_zero[0] < at_zero[1] < at_zero[2]

    def test_single_member_matches_closed_form(self):
        cfg = resolve("smeasure", gamma_g="10", gamma_d="1", epsilon="2")
        table = run_smeasure(cfg)
        m = steady_state_closed_form(
            SystemParams(gamma_g=10.0, gamma_d=1.0, epsilon=2.0)
        )
        phis = table.rows[:, 1]
        np.testing.assert_allclose(
            table.rows[:, 2], m.mx * np.cos(phis) / 8.0, atol=1e-15
        )


class TestQsurfaceRunner:
    def test_normalization_check_recorded(self):
        cfg = resolve("qsurface", gamma_g="10", gamma_d="1", epsilon="2")
        table = run_qsurface(cfg)
        assert abs(table.checks["q_norm"] - 1.0) < 1e-6
        assert table.rows.shape == (181 * 361, 3)
        assert np.all(table.rows[:, 2] >= 0.0)


class TestEvolveRunner:
    def test_relaxes_to_driven_steady_state(self):
        cfg = resolve(
            "evolve", gamma_g="10", gamma_d="1", epsilon="2",
            init_mz="-1", t_final="20",
        )
        table = run_evolve(cfg)
        m = steady_state_closed_form(
            SystemParams(gamma_g=10.0, gamma_d=1.0, epsilon=2.0)
        )
        np.testing.assert_allclose(table.rows[-1, 1:4], m.as_array(), atol=1e-6)
        assert table.checks["max_trace_drift"] < 1e-12

    def test_lab_frame_equals_rotating_frame_at_zero_omega(self):
        cfg = resolve(
            "evolve", gamma_g="3", gamma_d="1", epsilon="1", t_final="2"
        )
        table = run_evolve(cfg)
        np.testing.assert_allclose(table.rows[:, 4], table.rows[:, 1], atol=0)
        np.testing.assert_allclose(table.rows[:, 5], table.rows[:, 2], atol=0)

    def test_lab_frame_rotates_with_omega(self):
        cfg = resolve(
            "evolve", gamma_g="3", gamma_d="1", epsilon="1",
            omega="2", t_final="1", dt="0.25",
        )
        table = run_evolve(cfg)
        t = table.rows[:, 0]
        mx, my = table.rows[:, 1], table.rows[:, 2]
        np.testing.assert_allclose(
            table.rows[:, 4], mx * np.cos(2.0 * t) - my * np.sin(2.0 * t), atol=1e-14
        )


class TestSpin1Runner:
    def test_reference_row(self):
        cfg = resolve("spin1", alpha="3", beta="1")
        table = run_spin1(cfg)
        row = dict(zip(table.columns, table.rows[0]))
        np.testing.assert_allclose(row["p1"], 9.0 / 13.0, atol=1e-12)
        np.testing.assert_allclose(row["m8_oracle"], 5.0 / 13.0, atol=1e-12)
        np.testing.assert_allclose(row["m3_paper"], -126.0 / (70.0 * math.sqrt(3.0)), atol=1e-15)
        np.testing.assert_allclose(row["purity"], 91.0 / 169.0, atol=1e-12)
        assert row["paper_formula_physical"] == 0.0
        assert table.status == ["ok"]

    def test_symmetric_point_paper_state_is_physical_but_wrong(self):
        cfg = resolve("spin1", alpha="1", beta="1")
        table = run_spin1(cfg)
        row = dict(zip(table.columns, table.rows[0]))
        assert row["paper_formula_physical"] == 1.0
        assert abs(row["m3_paper"] - row["m3_oracle"]) > 0.5

    def test_sweep_through_singular_point(self):
        cfg = resolve(
            "spin1", alpha="0", beta="1",
            sweep="alpha", sweep_start="0", sweep_stop="1", sweep_count="2",
        )
        table = run_spin1(cfg)
        assert table.status == ["paper-formula-singular", "ok"]
        row0 = dict(zip(table.columns, table.rows[0]))
        # oracle columns stay meaningful at the singular point
        np.testing.assert_allclose(row0["pm1"], 1.0, atol=1e-12)
        np.testing.assert_allclose(row0["m3_paper"], 0.0, atol=0)
        assert np.all(np.isfinite(table.rows))


class TestSerialization:
    def make_table(self):
        return run_steady(resolve("steady", gamma_g="10", gamma_d="1", epsilon="2"))

    def test_csv_layout(self):
        text = self.make_table().to_csv_text()
        lines = text.splitlines()
        assert lines[0] == "# config-begin"
        end = lines.index("# config-end")
        assert f"# version = {__version__}" in lines[end + 1]
        header, rows = csv_rows(text)
        assert header[-1] == "status"
        assert rows[0][-1] == "ok"
        assert text.endswith("\n")
        mx = float(rows[0][header.index("mx")])
        np.testing.assert_allclose(mx, 72.0 / 153.0, atol=0)

    def test_csv_echo_lines_form_valid_config(self):
        table = self.make_table()
        lines = table.to_csv_text().splitlines()
        begin = lines.index("# config-begin")
        end = lines.index("# config-end")
        raw = {}
        for ln in lines[begin + 1 : end]:
            key, _, value = ln[2:].partition(" = ")
            raw[key] = value
        assert raw.pop("command") == "steady"
        cfg = resolve("steady", **raw)
        assert cfg.gamma_g == 10.0
        assert cfg.epsilon == 2.0

    def test_json_layout(self):
        table = self.make_table()
        doc = json.loads(table.to_json_text())
        assert set(doc) == {"meta", "columns", "status"}
        assert doc["meta"]["command"] == "steady"
        assert doc["meta"]["version"] == __version__
        assert doc["meta"]["config"]["gamma_g"] == "10"
        assert doc["status"] == ["ok"]
        np.testing.assert_allclose(
            doc["columns"]["mx"][0], 72.0 / 153.0, atol=0
        )

    def test_render_is_reproducible(self):
        a = self.make_table()
        b = self.make_table()
        assert a.to_csv_text() == b.to_csv_text()
        assert a.to_json_text() == b.to_json_text()

    def test_jobs_do_not_change_rows(self):
        base = dict(
            gamma_g="10", gamma_d="1",
            sweep="epsilon", sweep_start="0", sweep_stop="2", sweep_count="9",
        )
        t1 = run_steady(resolve("steady", jobs="1", **base))
        t4 = run_steady(resolve("steady", jobs="4", **base))
        assert t1.to_csv_text() == t4.to_csv_text()

    def test_wall_clock_not_serialized(self):
        table = self.make_table()
        table.wall_clock_s = 1.234
        assert "1.234" not in table.to_csv_text()
        assert "wall" not in table.to_json_text()

    def test_write_to_file(self, tmp_path):
        table = self.make_table()
        out = tmp_path / "steady.csv"
        table.write(str(out), "csv")
        assert out.read_text() == table.to_csv_text()


class TestCli:
    def test_steady_stdout(self):
        proc = run_cli("steady", "--set", "gamma_g=10", "--set", "gamma_d=1",
                       "--set", "epsilon=2")
        assert proc.returncode == 0
        assert proc.stderr == ""
        header, rows = csv_rows(proc.stdout)
        row = dict(zip(header, rows[0]))
        np.testing.assert_allclose(float(row["mx"]), 72.0 / 153.0, atol=1e-15)

    def test_config_file_with_flag_override(self, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text(
            "# a steady-state run\n"
            "gamma_g = 10\n"
            "gamma_d = 1\n"
            "epsilon = 1\n"
        )
        proc = run_cli(
            "steady", "--config", str(conf), "--set", "epsilon=2"
        )
        assert proc.returncode == 0
        assert "# epsilon = 2" in proc.stdout

    def test_unknown_key_exits_2_stderr_only(self):
        proc = run_cli("steady", "--set", "gamma_g=1", "--set", "gamma_d=1",
                       "--set", "bogus=1")
        assert proc.returncode == 2
        assert proc.stdout == ""
        assert "bogus" in proc.stderr

    def test_malformed_config_file_exits_2(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("gamma_g = 1\nnot a pair\n")
        proc = run_cli("steady", "--config", str(conf))
        assert proc.returncode == 2
        assert "bad.conf:2" in proc.stderr

    def test_missing_config_file_exits_2(self):
        proc = run_cli("steady", "--config", "/nonexistent/x.conf")
        assert proc.returncode == 2
        assert proc.stdout == ""

    def test_numeric_failure_exits_3(self):
        proc = run_cli(
            "evolve", "--set", "gamma_g=0", "--set", "gamma_d=50",
            "--set", "init_mz=1", "--set", "t_final=10", "--set", "dt=1",
        )
        assert proc.returncode == 3
        assert "trace" in proc.stderr

    def test_json_output(self):
        proc = run_cli("spin1", "--set", "alpha=3", "--set", "beta=1",
                       "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        np.testing.assert_allclose(
            doc["columns"]["p1"][0], 9.0 / 13.0, atol=1e-12
        )

    def test_out_flag_writes_file(self, tmp_path):
        out = tmp_path / "run.csv"
        proc = run_cli("steady", "--set", "gamma_g=3", "--set", "gamma_d=1",
                       "--out", str(out))
        assert proc.returncode == 0
        assert proc.stdout == ""
        assert out.read_text().startswith("# config-begin")

    def test_version_flag(self):
        proc = run_cli("--version")
        assert proc.returncode == 0
        assert __version__ in proc.stdout

    def test_byte_identical_across_jobs(self):
        args = (
            "tongue", "--set", "gamma_g=10", "--set", "gamma_d=1",
            "--set", "epsilon_count=5", "--set", "delta_count=5",
        )
        ref = run_cli(*args, "--jobs", "1")
        alt = run_cli(*args, "--jobs", "3")
        env = run_cli(*args, env_extra={"QSYNC_JOBS": "4"})
        assert ref.returncode == alt.returncode == env.returncode == 0
        assert ref.stdout == alt.stdout == env.stdout

    def test_echo_round_trip_reproduces_file(self, tmp_path):
        out = tmp_path / "tongue.csv"
        proc = run_cli(
            "tongue", "--set", "gamma_g=10", "--set", "gamma_d=1",
            "--set", "epsilon_count=3", "--set", "delta_count=3",
            "--out", str(out),
        )
        assert proc.returncode == 0
        first = out.read_bytes()
        lines = first.decode().splitlines()
        begin = lines.index("# config-begin")
        end = lines.index("# config-end")
        conf = tmp_path / "echo.conf"
        conf.write_text(
            "".join(ln[2:] + "\n" for ln in lines[begin + 1 : end])
        )
        proc2 = run_cli("tongue", "--config", str(conf))
        assert proc2.returncode == 0
        assert out.read_bytes() == first
        # the echo carries the original out path, so stdout stayed quiet
        assert proc2.stdout == ""
