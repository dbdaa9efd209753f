"""Radar config validation, derived parameters and settings loading."""
import json
import math
from dataclasses import replace

import pytest

from radvel.config import AppSettings, load_settings
from radvel.core import (
    default_radar_config,
    derive_params,
    fit_granularity,
    load_radar_config,
    next_pow2,
    radar_config_from_dict,
    radar_config_to_dict,
    save_radar_config,
    validate_config,
    velocity_granularity,
)
from radvel.errors import ConfigError


def _cfg(**overrides):
    return replace(default_radar_config(), **overrides)


class TestDerivedParams:
    def test_default_wavelength(self):
        p = derive_params(validate_config(default_radar_config()))
        assert p.wavelength == pytest.approx(3.8934e-3, rel=1e-4)

    def test_default_doppler_resolution_is_3_41_cm_per_s(self):
        p = derive_params(validate_config(default_radar_config()))
        assert p.doppler_resolution == pytest.approx(0.0341, abs=5e-5)

    def test_range_axis(self):
        p = derive_params(validate_config(default_radar_config()))
        assert p.range_fft_size == 256
        assert p.range_bin_spacing == pytest.approx(0.1953, rel=1e-3)
        assert p.max_range == pytest.approx(p.range_bin_spacing * 127)

    def test_phase_factor_and_unambiguous_velocity(self):
        p = derive_params(validate_config(default_radar_config()))
        assert p.phase_velocity_factor == pytest.approx(p.wavelength / (4 * math.pi))
        assert p.max_unambiguous_velocity == pytest.approx(11.318, rel=1e-3)

    def test_non_power_of_two_samples_pad_up(self):
        p = derive_params(validate_config(_cfg(samples_per_chirp=200)))
        assert p.range_fft_size == 256

    def test_granularity_for_small_phase_step(self):
        cfg = validate_config(default_radar_config())
        p = derive_params(cfg)
        step = math.radians(0.057)
        assert velocity_granularity(p, cfg, step) == pytest.approx(0.00358, rel=1e-2)
        assert fit_granularity(p, cfg, step) == pytest.approx(
            velocity_granularity(p, cfg, step) / 663
        )


def test_next_pow2():
    assert [next_pow2(n) for n in (1, 2, 3, 255, 256, 257)] == [1, 2, 4, 256, 256, 512]


class TestValidateConfig:
    def test_default_is_valid(self):
        cfg = default_radar_config()
        assert validate_config(cfg) is cfg

    @pytest.mark.parametrize("field", ["carrier_freq", "sample_rate", "frame_period"])
    def test_non_positive_rejected(self, field):
        with pytest.raises(ConfigError, match=field):
            validate_config(_cfg(**{field: 0.0}))

    def test_nan_rejected(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg(chirp_slope=float("nan")))

    def test_zero_rx_rejected(self):
        with pytest.raises(ConfigError, match="num_rx"):
            validate_config(_cfg(num_rx=0))

    def test_bool_count_rejected(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg(num_rx=True))

    def test_sampling_longer_than_chirp_rejected(self):
        # 1024 samples at 10 MHz = 102.4 us > 86 us
        with pytest.raises(ConfigError, match="active sampling"):
            validate_config(_cfg(samples_per_chirp=1024))

    def test_burst_longer_than_frame_rejected(self):
        with pytest.raises(ConfigError, match="chirp burst"):
            validate_config(_cfg(chirps_per_frame=3000))


class TestRadarConfigJson:
    def test_round_trip(self, tmp_path):
        cfg = _cfg(num_rx=4)
        path = save_radar_config(cfg, tmp_path / "radar.json")
        assert load_radar_config(path) == cfg

    def test_num_rx_optional(self):
        raw = radar_config_to_dict(default_radar_config())
        del raw["num_rx"]
        assert radar_config_from_dict(raw).num_rx == 1

    def test_unknown_key_rejected(self):
        raw = radar_config_to_dict(default_radar_config())
        raw["bandwidth"] = 4e9
        with pytest.raises(ConfigError, match="bandwidth"):
            radar_config_from_dict(raw)

    def test_missing_key_rejected(self):
        raw = radar_config_to_dict(default_radar_config())
        del raw["chirp_slope"]
        with pytest.raises(ConfigError, match="chirp_slope"):
            radar_config_from_dict(raw)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_radar_config(path)

    def test_shipped_default_matches_builtin(self):
        from pathlib import Path

        path = Path(__file__).resolve().parent.parent / "config" / "radar_default.json"
        assert load_radar_config(path) == default_radar_config()


class TestSettings:
    def test_missing_default_file_gives_defaults(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("RADVEL_LOG_LEVEL", raising=False)
        monkeypatch.delenv("RADVEL_OUTPUT_DIR", raising=False)
        assert load_settings() == AppSettings()

    def test_missing_explicit_file_raises(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_settings(tmp_path / "nope.yaml")

    def test_yaml_sections(self, tmp_path, monkeypatch):
        monkeypatch.delenv("RADVEL_LOG_LEVEL", raising=False)
        path = tmp_path / "s.yaml"
        path.write_text("pipeline:\n  n_peaks: 7\nsimulator:\n  snr_db: null\n")
        s = load_settings(path)
        assert s.pipeline.n_peaks == 7
        assert s.pipeline.min_frames == 3
        assert s.simulator.snr_db is None

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "s.yaml"
        path.write_text("pipeline:\n  n_peak: 7\n")
        with pytest.raises(ConfigError, match="n_peak"):
            load_settings(path)

    def test_misspelled_section_rejected(self, tmp_path):
        path = tmp_path / "s.yaml"
        path.write_text("pipline:\n  n_peaks: 7\n")
        with pytest.raises(ConfigError, match="pipline"):
            load_settings(path)

    def test_env_overrides(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RADVEL_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("RADVEL_OUTPUT_DIR", str(tmp_path / "out"))
        path = tmp_path / "s.yaml"
        path.write_text("logging:\n  level: WARNING\n")
        s = load_settings(path)
        assert s.logging.level == "DEBUG"
        assert s.reporting.output_dir == str(tmp_path / "out")

    def test_shipped_settings_match_defaults(self, monkeypatch):
        from pathlib import Path

        monkeypatch.delenv("RADVEL_LOG_LEVEL", raising=False)
        monkeypatch.delenv("RADVEL_OUTPUT_DIR", raising=False)
        path = Path(__file__).resolve().parent.parent / "config" / "default_config.yaml"
        assert load_settings(path) == AppSettings()
