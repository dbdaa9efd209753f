"""Unit and property tests for the FFT, window, peak and unwrap kernels."""
import numpy as np
import pytest

from radvel.dsp import fft_complex, hann_window, naive_dft, top_n_peaks, unwrap_phase
from radvel.errors import SizeError

SIZES = [2**k for k in range(11)]  # 1 .. 1024


def _random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# ===================================================================
# FFT
# ===================================================================

class TestFFT:
    @pytest.mark.parametrize("n", SIZES)
    def test_matches_direct_dft(self, n):
        rng = np.random.default_rng(n)
        # 100 random inputs as columns, transformed along axis 0
        x = _random_complex(rng, (n, 100))
        got = fft_complex(x, axis=0)
        ref = naive_dft(x)
        err = np.abs(got - ref).max() / np.abs(ref).max()
        assert err < 1e-9

    @pytest.mark.parametrize("n", [3, 6, 100, 664])
    def test_rejects_non_power_of_two(self, n):
        with pytest.raises(SizeError):
            fft_complex(np.zeros(n))

    def test_rejects_empty(self):
        with pytest.raises(SizeError):
            fft_complex(np.zeros(0))

    def test_inverse_round_trip(self):
        x = _random_complex(np.random.default_rng(1), 64)
        assert np.allclose(fft_complex(fft_complex(x), inverse=True), x, atol=1e-12)

    def test_impulse_is_flat(self):
        x = np.zeros(16)
        x[0] = 1.0
        assert np.allclose(fft_complex(x), np.ones(16))

    def test_tone_lands_in_its_bin(self):
        n = 32
        x = np.exp(2j * np.pi * 5 * np.arange(n) / n)
        spec = np.abs(fft_complex(x))
        assert int(np.argmax(spec)) == 5
        assert spec[5] == pytest.approx(n)

    @pytest.mark.parametrize("seed", range(10))
    def test_parseval(self, seed):
        rng = np.random.default_rng(seed)
        n = int(2 ** rng.integers(0, 11))
        x = _random_complex(rng, n)
        energy = np.sum(np.abs(x) ** 2)
        spectral = np.sum(np.abs(fft_complex(x)) ** 2) / n
        assert spectral == pytest.approx(energy, rel=1e-9)

    def test_naive_dft_any_length(self):
        x = _random_complex(np.random.default_rng(2), 7)
        assert np.allclose(naive_dft(x), np.fft.fft(x), atol=1e-10)


# ===================================================================
# Window
# ===================================================================

class TestHannWindow:
    def test_single_sample(self):
        assert hann_window(1).tolist() == [1.0]

    def test_symmetric_with_zero_ends(self):
        w = hann_window(9)
        assert w[0] == pytest.approx(0.0)
        assert w[-1] == pytest.approx(0.0)
        assert w[4] == pytest.approx(1.0)
        assert np.allclose(w, w[::-1])

    def test_formula(self):
        n = 16
        k = np.arange(n)
        assert np.allclose(hann_window(n), 0.5 * (1 - np.cos(2 * np.pi * k / (n - 1))))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            hann_window(0)


# ===================================================================
# Peaks
# ===================================================================

class TestTopNPeaks:
    def test_basic(self):
        peaks = top_n_peaks([0, 1, 0, 5, 0, 3, 0], 2, 1, 5)
        assert peaks.bins == [3, 5]

    def test_sorted_by_magnitude(self):
        peaks = top_n_peaks([0, 1, 0, 5, 0, 3, 0], 10, 1, 5)
        assert peaks.bins == [3, 5, 1]
        assert [p.magnitude for p in peaks] == [5.0, 3.0, 1.0]

    def test_ties_go_to_lower_bin(self):
        peaks = top_n_peaks([0, 2, 0, 2, 0, 2, 0], 2, 1, 5)
        assert peaks.bins == [1, 3]

    def test_plateau_is_not_a_peak(self):
        assert len(top_n_peaks([0, 0, 4, 4, 0, 0], 3, 1, 4)) == 0

    def test_window_edges_compare_one_sided(self):
        # bin 1 beats bin 2 inside the window even though bin 0 is larger
        peaks = top_n_peaks([9, 5, 1, 0, 0, 0], 1, 1, 4)
        assert peaks.bins == [1]

    def test_values_outside_window_are_ignored(self):
        rng = np.random.default_rng(3)
        base = rng.random(32)
        other = base.copy()
        other[:4] = rng.random(4) * 10
        other[20:] = rng.random(12) * 10
        assert top_n_peaks(base, 5, 4, 19) == top_n_peaks(other, 5, 4, 19)

    def test_threshold(self):
        peaks = top_n_peaks([0, 1, 0, 5, 0, 3, 0], 5, 1, 5, threshold=2.0)
        assert peaks.bins == [3, 5]

    def test_default_range_skips_dc_and_negative_half(self):
        mags = np.zeros(16)
        mags[0] = 100.0
        mags[10] = 50.0
        mags[4] = 1.0
        assert top_n_peaks(mags, 5).bins == [4]

    def test_zero_n(self):
        assert len(top_n_peaks([0, 1, 0], 0, 0, 2)) == 0

    def test_bad_range(self):
        with pytest.raises(ValueError):
            top_n_peaks([0, 1, 0], 1, 2, 1)
        with pytest.raises(ValueError):
            top_n_peaks([0, 1, 0], 1, 0, 3)


# ===================================================================
# Unwrap
# ===================================================================

def _wrap(x):
    return np.angle(np.exp(1j * np.asarray(x)))


class TestUnwrap:
    def test_randomized_invariants(self):
        rng = np.random.default_rng(1234)
        for _ in range(1000):
            n = int(rng.integers(1, 64))
            x = rng.uniform(-20.0, 20.0, n)
            out = unwrap_phase(x)

            d = np.diff(out)
            assert np.all(d > -np.pi - 1e-9)
            assert np.all(d <= np.pi + 1e-9)

            turns = (out - x) / (2 * np.pi)
            assert np.allclose(turns, np.round(turns), atol=1e-12 * max(1.0, np.abs(out).max()))
            assert out[0] == x[0]

    def test_wrapped_ramp_recovered(self):
        k = np.arange(100)
        ramp = 0.5 * k
        out = unwrap_phase(_wrap(ramp))
        assert np.allclose(out, ramp, atol=1e-12 * 50)

    def test_negative_ramp_recovered(self):
        ramp = -0.013852 * np.arange(664) + 1.0
        assert np.allclose(unwrap_phase(_wrap(ramp)), ramp, atol=1e-9)

    def test_already_unwrapped_is_unchanged(self):
        x = np.linspace(-1.0, 1.0, 20)
        assert np.array_equal(unwrap_phase(x), x)

    def test_single_sample(self):
        assert unwrap_phase([2.5]).tolist() == [2.5]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            unwrap_phase([])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            unwrap_phase([0.0, np.nan, 1.0])
