"""Velocity sweeps: phase vs Doppler accuracy, determinism and failure handling."""
import io
from dataclasses import replace

import numpy as np
import pytest

from radvel.config import AppSettings
from radvel.core import default_radar_config, derive_params, validate_config
from radvel.errors import ConfigError
from radvel.experiment.results import (
    COMPARE_HEADERS,
    CaseFailure,
    CompareResult,
    format_compare,
    write_compare_table,
)
from radvel.experiment.runner import ExperimentRunner, case_seed, run_case

CFG = validate_config(default_radar_config())
BIN = derive_params(CFG).doppler_resolution


def _settings(snr_db=None, **sim) -> AppSettings:
    settings = AppSettings()
    return replace(settings, simulator=replace(settings.simulator, snr_db=snr_db, **sim))


def _table(result: CompareResult) -> str:
    buf = io.StringIO()
    write_compare_table(result, buf)
    return buf.getvalue()


# ===================================================================
# Seeds
# ===================================================================

class TestCaseSeed:
    def test_deterministic(self):
        assert case_seed(42, 3) == case_seed(42, 3)

    def test_distinct_per_case_and_base(self):
        seeds = {case_seed(42, i) for i in range(50)}
        assert len(seeds) == 50
        assert case_seed(42, 0) != case_seed(43, 0)

    def test_negative_base_is_masked(self):
        assert 0 <= case_seed(-1, 0) < 2**64


# ===================================================================
# Single case
# ===================================================================

class TestRunCase:
    def test_row_fields(self):
        case = run_case(CFG, _settings(), 0.02, seed=0, n_frames=3)
        row = case.row
        assert row.velocity_mps == 0.02
        assert row.truth_mps == pytest.approx(0.02)
        assert row.frames == 3
        assert row.mae_phase < 1e-6
        # 0.02 m/s rounds to the first Doppler bin
        assert row.doppler_mps == pytest.approx(BIN)
        assert row.mae_doppler == pytest.approx(BIN - 0.02)
        assert list(case.frame_rows.columns) == ["truth_mps", "phase_mps", "doppler_mps"]

    def test_resolution_velocity_is_exact_for_doppler(self):
        row = run_case(CFG, _settings(), 0.0341, seed=0, n_frames=3).row
        assert row.mae_doppler < 1e-4


# ===================================================================
# Sweeps
# ===================================================================

class TestSweep:
    def test_noiseless_phase_beats_doppler(self):
        velocities = list(np.linspace(0.005, 0.10, 20))
        result = ExperimentRunner(_settings()).run(velocities, n_frames=3)
        assert result.ok
        assert len(result.rows) == 20
        assert [r.velocity_mps for r in result.rows] == pytest.approx(list(velocities))
        assert result.mae_ratio is not None and result.mae_ratio <= 0.25

    def test_sub_resolution_with_noise(self):
        velocities = [0.005, 0.01, 0.02, 0.03]
        result = ExperimentRunner(_settings(snr_db=30.0)).run(velocities, seed=42, n_frames=20)
        assert result.ok
        assert all(r.frames == 20 for r in result.rows)
        assert all(r.mae_phase < 0.003 for r in result.rows)
        assert result.mean_mae_doppler > 0.008
        assert result.mean_mae_phase < result.mean_mae_doppler

    def test_parallel_matches_serial(self):
        runner = ExperimentRunner(_settings(snr_db=30.0))
        velocities = [0.01, 0.02, 0.05]
        serial = runner.run(velocities, seed=7, n_frames=3, workers=1)
        parallel = runner.run(velocities, seed=7, n_frames=3, workers=2)
        assert _table(serial) == _table(parallel)

    def test_same_seed_same_table(self):
        runner = ExperimentRunner(_settings(snr_db=20.0))
        a = runner.run([0.02, 0.04], seed=1, n_frames=3)
        b = runner.run([0.02, 0.04], seed=1, n_frames=3)
        assert _table(a) == _table(b)

    def test_failed_case_is_recorded(self):
        runner = ExperimentRunner(_settings(distance_m=0.5))
        result = runner.run([0.02, 2.0], n_frames=3)
        assert not result.ok
        assert [f.velocity_mps for f in result.failures] == [2.0]
        assert result.failures[0].error.startswith("RangeError")
        assert len(result.cases) + len(result.failures) == 2


class TestVelocityChecks:
    def test_empty(self):
        with pytest.raises(ConfigError):
            ExperimentRunner().run([])

    @pytest.mark.parametrize("v", [11.4, -12.0, float("nan")])
    def test_outside_unambiguous_range(self, v):
        with pytest.raises(ConfigError):
            ExperimentRunner().run([0.01, v])

    def test_bad_workers(self):
        with pytest.raises(ConfigError):
            ExperimentRunner(_settings()).run([0.01], n_frames=1, workers=0)


# ===================================================================
# Output
# ===================================================================

class TestCompareOutput:
    def test_table_header_and_rows(self):
        result = ExperimentRunner(_settings()).run([0.01, 0.02], n_frames=3)
        lines = _table(result).splitlines()
        assert lines[0] == ",".join(COMPARE_HEADERS)
        assert len(lines) == 3
        assert lines[1].startswith("0.01,")
        assert lines[1].endswith(",3")

    def test_table_to_path(self, tmp_path):
        result = ExperimentRunner(_settings()).run([0.01], n_frames=3)
        path = tmp_path / "out" / "compare.csv"
        n = write_compare_table(result, path)
        assert n == path.stat().st_size

    def test_empty_result(self):
        result = CompareResult(failures=[CaseFailure(0.5, "RangeError: boom")])
        assert _table(result) == ",".join(COMPARE_HEADERS) + "\n"
        assert result.mae_ratio is None
        text = format_compare(result)
        assert "FAILED v=0.5: RangeError: boom" in text

    def test_format_lists_buckets(self):
        result = ExperimentRunner(_settings()).run([0.01, 0.06], n_frames=3)
        text = format_compare(result)
        assert "PHASE vs DOPPLER" in text
        assert "[0, 0.0341) phase" in text
        assert "Phase/Doppler:" in text
