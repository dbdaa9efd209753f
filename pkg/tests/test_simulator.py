"""FMCW simulator: determinism, noise, transients, motion and truth."""
from dataclasses import replace

import numpy as np
import pytest

from radvel.core import default_radar_config, validate_config
from radvel.errors import ConfigError, QuantizationError, RangeError
from radvel.models import EgoTrajectory, NoiseSpec, Reflector, Scene, VelocitySegment
from radvel.simulator import distance_at, mean_velocity, synth_capture, synth_chirp
from radvel.simulator.motion import distances_at, velocity_at

CFG = validate_config(default_radar_config())
ONE = Scene(reflectors=(Reflector(2.0, 1.0),))


def _capture(velocity=0.0, n_frames=3, snr_db=None, seed=0, scene=ONE, cfg=CFG, headroom=0.25):
    return synth_capture(
        cfg, scene, EgoTrajectory.constant(velocity), NoiseSpec(snr_db, seed), n_frames, headroom
    )


class TestDeterminism:
    def test_static_noiseless_frames_identical(self):
        capture, _ = _capture(0.0, n_frames=5)
        first = capture.frames[0].iq
        assert all(np.array_equal(f.iq, first) for f in capture.frames[1:])

    def test_same_seed_same_capture(self):
        a, _ = _capture(0.02, snr_db=30.0, seed=42)
        b, _ = _capture(0.02, snr_db=30.0, seed=42)
        assert a.same_samples(b)

    def test_different_seed_different_capture(self):
        a, _ = _capture(0.02, snr_db=30.0, seed=1)
        b, _ = _capture(0.02, snr_db=30.0, seed=2)
        assert not a.same_samples(b)

    def test_frame_noise_independent_of_capture_length(self):
        short, _ = _capture(0.02, n_frames=2, snr_db=20.0, seed=7)
        long, _ = _capture(0.02, n_frames=4, snr_db=20.0, seed=7)
        assert short.frames[1].same_samples(long.frames[1])

    def test_source_and_shape(self):
        capture, _ = _capture(n_frames=2)
        assert capture.source == "simulator"
        assert capture.frames[0].iq.shape == (664, 1, 256, 2)
        assert capture.frames[0].iq.dtype == np.int16


class TestSignal:
    def test_headroom_scaling(self):
        capture, _ = _capture(n_frames=1)
        peak = np.abs(capture.frames[0].samples).max()
        assert peak == pytest.approx(0.25 * 32767, abs=1.0)

    def test_chirp_matches_frame(self):
        capture, _ = _capture(0.05, n_frames=1)
        scale = 0.25 * 32767
        chirp = synth_chirp(CFG, ONE, EgoTrajectory.constant(0.05), 0.0) * scale
        assert np.abs(capture.frames[0].samples[0, 0] - chirp).max() <= 0.75

    def test_noise_level_matches_snr(self):
        clean, _ = _capture(n_frames=1)
        noisy, _ = _capture(n_frames=1, snr_db=10.0, seed=3)
        residual = noisy.frames[0].samples - clean.frames[0].samples
        expected = 0.25 * 32767 / np.sqrt(10.0) / np.sqrt(2.0)
        assert residual.real.std() == pytest.approx(expected, rel=0.05)
        assert residual.imag.std() == pytest.approx(expected, rel=0.05)

    def test_rx_channels_replicate_scene(self):
        cfg = validate_config(replace(default_radar_config(), num_rx=3))
        capture, _ = _capture(0.02, n_frames=1, cfg=cfg)
        iq = capture.frames[0].iq
        assert np.array_equal(iq[:, 0], iq[:, 1])
        assert np.array_equal(iq[:, 0], iq[:, 2])

    def test_transient_reflector(self):
        scene = Scene(reflectors=(Reflector(3.0, 0.8, appear_frame=1, disappear_frame=3),))
        capture, _ = _capture(n_frames=4, scene=scene)
        present = [bool(np.any(f.iq)) for f in capture.frames]
        assert present == [False, True, True, False]

    def test_clipping_raises(self):
        scene = Scene(reflectors=(Reflector(2.0, 1.0), Reflector(5.0, 1.0)))
        with pytest.raises(QuantizationError):
            _capture(n_frames=1, scene=scene, headroom=1.0)


class TestValidation:
    def test_reflector_beyond_range(self):
        with pytest.raises(ConfigError):
            _capture(scene=Scene(reflectors=(Reflector(30.0, 1.0),)))

    def test_bad_amplitude(self):
        with pytest.raises(ConfigError):
            _capture(scene=Scene(reflectors=(Reflector(2.0, 1.5),)))

    def test_transient_order(self):
        scene = Scene(reflectors=(Reflector(2.0, 1.0, appear_frame=3, disappear_frame=3),))
        with pytest.raises(ConfigError):
            _capture(scene=scene)

    def test_ego_passes_reflector(self):
        with pytest.raises(RangeError):
            _capture(velocity=1.0, scene=Scene(reflectors=(Reflector(0.1, 1.0),)))

    def test_bad_headroom(self):
        with pytest.raises(ConfigError):
            _capture(headroom=0.0)


class TestTruth:
    def test_constant_velocity(self):
        _, truth = _capture(0.02, n_frames=3)
        assert [r.frame for r in truth] == [0, 1, 2]
        assert [r.time_s for r in truth] == pytest.approx([0.0, 0.2, 0.4])
        assert all(r.velocity_mps == pytest.approx(0.02) for r in truth)

    def test_piecewise_mean_over_burst(self):
        burst = 663 * CFG.chirp_repetition_time
        traj = EgoTrajectory(
            segments=(VelocitySegment(0.0, 0.0), VelocitySegment(burst / 2, 0.04))
        )
        _, truth = synth_capture(CFG, ONE, traj, NoiseSpec(), 2)
        assert truth[0].velocity_mps == pytest.approx(0.02)
        assert truth[1].velocity_mps == pytest.approx(0.04)


class TestMotion:
    TRAJ = EgoTrajectory(segments=(VelocitySegment(0.0, 0.1), VelocitySegment(1.0, -0.1)))

    def test_distance(self):
        assert distance_at(self.TRAJ, 2.0, 0.5) == pytest.approx(1.95)
        assert distance_at(self.TRAJ, 2.0, 1.5) == pytest.approx(1.95)

    def test_mean_velocity(self):
        assert mean_velocity(self.TRAJ, 0.5, 1.5) == pytest.approx(0.0)
        assert mean_velocity(self.TRAJ, 0.0, 1.0) == pytest.approx(0.1)

    def test_instantaneous_when_interval_empty(self):
        assert mean_velocity(self.TRAJ, 1.2, 1.2) == -0.1
        assert velocity_at(self.TRAJ, 0.3) == 0.1

    def test_negative_time(self):
        with pytest.raises(ValueError):
            distances_at(self.TRAJ, 2.0, np.array([-0.1]))

    def test_passing_raises(self):
        with pytest.raises(RangeError):
            distance_at(EgoTrajectory.constant(1.0), 0.5, 1.0)
