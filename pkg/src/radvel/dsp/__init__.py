"""Numeric kernels: FFT, windows, peak picking and phase unwrapping."""
from radvel.dsp.fft import fft_complex, naive_dft
from radvel.dsp.peaks import top_n_peaks
from radvel.dsp.unwrap import unwrap_phase
from radvel.dsp.window import hann_window

__all__ = ["fft_complex", "naive_dft", "top_n_peaks", "unwrap_phase", "hann_window"]
