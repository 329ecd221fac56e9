"""1-D signal primitives: smoothing, velocity, DFT, auto-correlation, peaks.

All operations are pure functions over immutable inputs and are safe to call
concurrently.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyInput,
    TooShort,
    WindowEven,
    WindowTooLarge,
    ZeroVariance,
)

__all__ = [
    "TimeSeries",
    "Spectrum",
    "LagSeries",
    "smooth_ma",
    "gradient",
    "velocity",
    "dft",
    "amplitude_spectrum",
    "autocorrelate",
    "find_peaks",
]


@dataclass(frozen=True)
class TimeSeries:
    """A uniformly sampled scalar signal."""

    samples: np.ndarray
    rate: float
    units: str = ""

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", arr)
        if self.rate <= 0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("samples must be a non-empty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        """Sample instants in seconds, t[i] = i / rate."""
        return np.arange(self.samples.size) / self.rate


@dataclass(frozen=True)
class Spectrum:
    """One-sided amplitude spectrum of a real signal."""

    frequencies: np.ndarray
    amplitudes: np.ndarray
    n_input: int


@dataclass(frozen=True)
class LagSeries:
    """Normalized auto-correlation over non-negative lags."""

    lags: np.ndarray
    values: np.ndarray
    rate: float

    @property
    def lag_seconds(self) -> np.ndarray:
        return self.lags / self.rate


def smooth_ma(s: TimeSeries, window: int = 5) -> TimeSeries:
    """Centered moving average (order-0 Savitzky-Golay) with replicate-edge padding."""
    if window < 1 or window % 2 == 0:
        raise WindowEven(f"window must be odd and positive, got {window}")
    n = len(s)
    if window > n:
        raise WindowTooLarge(f"window {window} exceeds signal length {n}")
    if np.ptp(s.samples) == 0:  # constants are preserved exactly
        return TimeSeries(s.samples.copy(), s.rate, s.units)
    half = window // 2
    padded = np.concatenate(
        [np.full(half, s.samples[0]), s.samples, np.full(half, s.samples[-1])]
    )
    kernel = np.full(window, 1.0 / window)
    out = np.convolve(padded, kernel, mode="valid")
    return TimeSeries(out, s.rate, s.units)


def gradient(s: TimeSeries) -> np.ndarray:
    """Per-sample differences: central in the interior, one-sided at the ends."""
    if len(s) < 2:
        raise TooShort("gradient needs at least 2 samples")
    return np.gradient(s.samples)


def velocity(s: TimeSeries) -> TimeSeries:
    """Displacement gradient scaled by the sampling rate."""
    g = gradient(s)
    units = f"{s.units}/s" if s.units else "1/s"
    return TimeSeries(g * s.rate, s.rate, units)


def dft(samples) -> np.ndarray:
    """Full complex DFT, A_k = sum_m a_m exp(-2*pi*i*m*k/n)."""
    arr = np.asarray(samples, dtype=float)
    if arr.size < 1:
        raise EmptyInput("dft of empty vector")
    return np.fft.fft(arr)


def amplitude_spectrum(s: TimeSeries) -> Spectrum:
    """One-sided amplitude spectrum; paired bins doubled, DC/Nyquist not."""
    n = len(s)
    if n < 2:
        raise TooShort("amplitude spectrum needs at least 2 samples")
    coeffs = dft(s.samples)
    half = n // 2
    amps = np.abs(coeffs[: half + 1]) / n
    # bins 1..ceil(n/2)-1 have a mirrored negative-frequency partner
    for k in range(1, half + 1):
        if not (n % 2 == 0 and k == half):
            amps[k] *= 2.0
    freqs = np.arange(half + 1) * s.rate / n
    return Spectrum(frequencies=freqs, amplitudes=amps, n_input=n)


def autocorrelate(s: TimeSeries) -> LagSeries:
    """Mean-removed self-correlation over non-negative lags, unit at lag 0."""
    if len(s) < 2:
        raise TooShort("autocorrelation needs at least 2 samples")
    if np.ptp(s.samples) == 0:
        raise ZeroVariance("constant signal has no auto-correlation structure")
    v = s.samples - np.mean(s.samples)
    full = np.correlate(v, v, mode="full")
    n = len(s)
    nonneg = full[n - 1 :]
    if nonneg[0] <= 0 or not np.isfinite(nonneg[0]):
        raise ZeroVariance("signal variance vanishes at working precision")
    values = nonneg / nonneg[0]
    values[0] = 1.0
    return LagSeries(lags=np.arange(n), values=values, rate=s.rate)


def _plateau_maxima(x: np.ndarray) -> list:
    """Strict local maxima; a plateau counts once at its leftmost index.

    Plateaus touching either boundary are not peaks (no confirmed descent).
    """
    n = len(x)
    peaks = []
    i = 1
    while i < n - 1:
        if x[i] > x[i - 1]:
            j = i
            while j + 1 < n and x[j + 1] == x[i]:
                j += 1
            if j + 1 < n and x[j + 1] < x[i]:
                peaks.append(i)
            i = j + 1
        else:
            i += 1
    return peaks


def _greedy_select(indices, heights, min_height, min_distance) -> list:
    """Tallest-first greedy spacing filter; height ties keep the earlier index."""
    eligible = [
        (i, h) for i, h in zip(indices, heights) if h >= min_height
    ]
    eligible.sort(key=lambda p: (-p[1], p[0]))
    kept = []
    for i, _ in eligible:
        if all(abs(i - k) >= min_distance for k in kept):
            kept.append(i)
    kept.sort()
    return kept


def find_peaks(s: TimeSeries, min_height: float, min_distance: int) -> list:
    """Indices of retained peaks, ascending; may be empty."""
    if min_distance < 1:
        raise ValueError(f"min_distance must be >= 1, got {min_distance}")
    candidates = _plateau_maxima(s.samples)
    return _greedy_select(
        candidates, s.samples[candidates], min_height, min_distance
    )
