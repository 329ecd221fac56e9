"""Trial-level analysis: beat grid, analysis window, cycle segmentation,
spectral arc length smoothness, and the per-trial metric bundle.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidParams,
    MetricError,
    NoCycles,
    NoValidSubmovements,
    SegmentTooShort,
    SignalError,
    TooFewBeats,
    WindowEmpty,
    ZeroDC,
)
from .joints import JointId
from .signals import (
    LagSeries,
    Spectrum,
    TimeSeries,
    amplitude_spectrum,
    autocorrelate,
    find_peaks,
    smooth_ma,
    velocity,
)
from .trc import MotionCapture, channel

__all__ = [
    "BeatGrid",
    "SparcParams",
    "CycleSegmentation",
    "TrialMetrics",
    "build_beat_grid",
    "analysis_window",
    "segment_cycles",
    "sparc",
    "trial_smoothness",
    "autocorr_score",
    "compute_trial_metrics",
]

# the first four beats are the accustomization phase; analysis starts at the fifth
ANALYSIS_START_BEAT = 4
SMOOTHING_WINDOW = 5
MIN_SUBMOVEMENT_SAMPLES = 4


@dataclass(frozen=True)
class BeatGrid:
    tempo_bpm: float
    offset_s: float
    beat_times: np.ndarray

    @property
    def period_s(self) -> float:
        return 60.0 / self.tempo_bpm


@dataclass(frozen=True)
class SparcParams:
    """Tunables of the spectral arc length measure."""

    omega_c_max: float = 20.0 * math.pi  # rad/s, i.e. a 10 Hz cap
    amplitude_threshold: float = 0.05
    pad_factor: int = 4

    def __post_init__(self):
        if self.omega_c_max <= 0:
            raise InvalidParams(f"omega_c_max must be positive, got {self.omega_c_max}")
        if not 0 < self.amplitude_threshold < 1:
            raise InvalidParams(
                f"amplitude_threshold must be in (0, 1), got {self.amplitude_threshold}"
            )
        if self.pad_factor < 1:
            raise InvalidParams(f"pad_factor must be >= 1, got {self.pad_factor}")

    def cache_key(self):
        return (self.omega_c_max, self.amplitude_threshold, self.pad_factor)


@dataclass(frozen=True)
class Submovement:
    start: int
    end: int  # inclusive
    kind: str  # "adduction" | "abduction"

    @property
    def n_samples(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class CycleSegmentation:
    peak_indices: tuple
    trough_indices: tuple
    submovements: tuple
    n_dropped: int = 0

    @property
    def n_cycles(self) -> int:
        return len(self.peak_indices) - 1


def build_beat_grid(tempo_bpm: float, offset_s: float, duration_s: float) -> BeatGrid:
    """Arithmetic beat ladder offset_s, offset_s + T, ... within the trial."""
    if tempo_bpm <= 0:
        raise InvalidParams(f"tempo must be positive, got {tempo_bpm}")
    if duration_s <= offset_s:
        raise InvalidParams("trial duration must exceed the beat offset")
    period = 60.0 / tempo_bpm
    n_beats = int(math.floor((duration_s - offset_s) / period + 1e-9)) + 1
    if n_beats < 5:
        raise TooFewBeats(
            f"only {n_beats} beats fit in {duration_s:.3f}s at {tempo_bpm}bpm; need 5"
        )
    return BeatGrid(
        tempo_bpm=tempo_bpm,
        offset_s=offset_s,
        beat_times=offset_s + np.arange(n_beats) * period,
    )


def window_start_index(grid: BeatGrid, rate: float) -> int:
    """First sample index at or after the fifth beat."""
    if len(grid.beat_times) <= ANALYSIS_START_BEAT:
        raise TooFewBeats("beat grid has fewer than 5 beats")
    return int(math.ceil(grid.beat_times[ANALYSIS_START_BEAT] * rate - 1e-9))


def analysis_window(s: TimeSeries, grid: BeatGrid) -> TimeSeries:
    """Suffix of the signal from the fifth beat onward."""
    start = window_start_index(grid, s.rate)
    if start >= len(s) or start < 0:
        raise WindowEmpty(
            f"fifth beat at {grid.beat_times[ANALYSIS_START_BEAT]:.3f}s is past the signal end"
        )
    return TimeSeries(s.samples[start:], s.rate, s.units)


def segment_cycles(s: TimeSeries, grid: BeatGrid) -> CycleSegmentation:
    """Split an abduction/adduction displacement into peak->trough->peak spans.

    Peaks must clear the signal mean and be at least two beat periods apart.
    """
    min_distance = max(1, round(2 * grid.period_s * s.rate))
    peaks = find_peaks(s, float(np.mean(s.samples)), min_distance)
    if len(peaks) < 2:
        raise NoCycles(f"found {len(peaks)} peak(s); need at least 2 for a cycle")
    troughs = []
    for p1, p2 in zip(peaks[:-1], peaks[1:]):
        between = s.samples[p1 + 1 : p2]
        troughs.append(p1 + 1 + int(np.argmin(between)))
    subs = []
    dropped = 0
    for p1, t, p2 in zip(peaks[:-1], troughs, peaks[1:]):
        for piece in (
            Submovement(p1, t, "adduction"),
            Submovement(t, p2, "abduction"),
        ):
            if piece.n_samples >= MIN_SUBMOVEMENT_SAMPLES:
                subs.append(piece)
            else:
                dropped += 1
    return CycleSegmentation(
        peak_indices=tuple(peaks),
        trough_indices=tuple(troughs),
        submovements=tuple(subs),
        n_dropped=dropped,
    )


def sparc(speed_segment: TimeSeries, params: SparcParams = SparcParams()) -> float:
    """Negative arc length of the normalized magnitude spectrum of a speed profile.

    The spectrum of the zero-padded segment is normalized by its DC magnitude;
    the cutoff is the last frequency (capped at omega_c_max) where the
    normalized spectrum still reaches the amplitude threshold; the arc length
    is accumulated over a frequency axis rescaled to [0, 1].
    """
    n = len(speed_segment)
    if n < MIN_SUBMOVEMENT_SAMPLES:
        raise SegmentTooShort(f"segment of {n} samples; need {MIN_SUBMOVEMENT_SAMPLES}")
    nfft = 1
    while nfft < params.pad_factor * n:
        nfft *= 2
    mag = np.abs(np.fft.fft(speed_segment.samples, nfft))
    if mag[0] == 0:
        raise ZeroDC("all-zero speed segment")
    omega = 2 * math.pi * np.arange(nfft // 2 + 1) * speed_segment.rate / nfft
    vhat = mag[: nfft // 2 + 1] / mag[0]

    capped = omega <= params.omega_c_max + 1e-12
    vhat_c = vhat[capped]
    omega_c_idx = int(np.flatnonzero(vhat_c >= params.amplitude_threshold)[-1])
    if omega_c_idx == 0:
        return 0.0
    omega_c = omega[omega_c_idx]
    band = vhat[: omega_c_idx + 1]
    domega = np.diff(omega[: omega_c_idx + 1]) / omega_c
    return float(-np.sum(np.sqrt(domega**2 + np.diff(band) ** 2)))


def trial_smoothness(
    seg: CycleSegmentation,
    vel: TimeSeries,
    params: SparcParams = SparcParams(),
):
    """Mean SPARC over the speed profile of each submovement."""
    speed = np.abs(vel.samples)
    values = []
    skipped = 0
    for sub in seg.submovements:
        piece = TimeSeries(speed[sub.start : sub.end + 1], vel.rate, vel.units)
        try:
            values.append(sparc(piece, params))
        except MetricError:
            skipped += 1
    if not values:
        raise NoValidSubmovements(
            f"no submovement yielded a SPARC value ({skipped} skipped)"
        )
    return float(np.mean(values)), values


def autocorr_score(lagseries: LagSeries) -> float:
    """Mean absolute normalized auto-correlation, lag 0 included."""
    return float(np.mean(np.abs(lagseries.values)))


@dataclass
class TrialMetrics:
    """Computed kinematic scores and chart-ready series for one trial."""

    trial_id: str
    mean_speed_mps: float | None
    smoothness: float | None
    autocorr: float | None
    per_submovement_sparc: list
    n_cycles: int | None
    analysis_start_s: float
    duration_s: float
    score: float
    absent: dict = field(default_factory=dict)  # metric name -> reason string
    # chart series (full-trial displacement channels; window-local kinematics)
    displacement_primary_y: TimeSeries | None = None
    displacement_shoulder_y: TimeSeries | None = None
    displacement_hand_z: TimeSeries | None = None
    velocity_series: TimeSeries | None = None
    lag_series: LagSeries | None = None
    spectrum: Spectrum | None = None
    beat_times: np.ndarray | None = None
    upper_limit_m: float = 0.0
    lower_limit_m: float = 0.0
    segmentation: CycleSegmentation | None = None


def compute_trial_metrics(
    record,
    capture: MotionCapture,
    params: SparcParams = SparcParams(),
) -> TrialMetrics:
    """Run the full per-trial pipeline.

    Degenerate conditions (too few beats, no cycles, flat signal) mark the
    affected metric absent with a reason; the other charts are still produced.
    """
    rate = capture.header.data_rate
    duration = capture.duration_s
    absent = {}

    primary_y = smooth_ma(channel(capture, record.primary_joint, "y"), SMOOTHING_WINDOW)
    try:
        shoulder_y = smooth_ma(
            channel(capture, JointId.SHOULDER_RIGHT, "y"), SMOOTHING_WINDOW
        )
    except Exception:
        shoulder_y = None
    try:
        hand_z = smooth_ma(channel(capture, record.primary_joint, "z"), SMOOTHING_WINDOW)
    except Exception:
        hand_z = None

    metrics = TrialMetrics(
        trial_id=record.trial_id,
        mean_speed_mps=None,
        smoothness=None,
        autocorr=None,
        per_submovement_sparc=[],
        n_cycles=None,
        analysis_start_s=0.0,
        duration_s=duration,
        score=record.score,
        absent=absent,
        displacement_primary_y=primary_y,
        displacement_shoulder_y=shoulder_y,
        displacement_hand_z=hand_z,
        upper_limit_m=record.upper_limit_m,
        lower_limit_m=record.lower_limit_m,
    )

    try:
        grid = build_beat_grid(record.tempo_bpm, record.beat_offset_s, duration)
    except (TooFewBeats, InvalidParams) as exc:
        for name in ("mean_speed_mps", "smoothness", "autocorr", "spectrum", "velocity"):
            absent[name] = str(exc)
        return metrics
    metrics.beat_times = grid.beat_times
    metrics.analysis_start_s = float(grid.beat_times[ANALYSIS_START_BEAT])

    try:
        window = analysis_window(primary_y, grid)
    except WindowEmpty as exc:
        for name in ("mean_speed_mps", "smoothness", "autocorr", "spectrum", "velocity"):
            absent[name] = str(exc)
        return metrics

    vel = velocity(window)
    metrics.velocity_series = vel
    metrics.mean_speed_mps = float(np.mean(np.abs(vel.samples)))

    try:
        metrics.lag_series = autocorrelate(window)
        metrics.autocorr = autocorr_score(metrics.lag_series)
    except SignalError as exc:
        absent["autocorr"] = str(exc)

    try:
        metrics.spectrum = amplitude_spectrum(window)
    except SignalError as exc:
        absent["spectrum"] = str(exc)

    try:
        seg = segment_cycles(window, grid)
        metrics.segmentation = seg
        metrics.n_cycles = seg.n_cycles
        metrics.smoothness, metrics.per_submovement_sparc = trial_smoothness(
            seg, vel, params
        )
    except (NoCycles, NoValidSubmovements) as exc:
        absent["smoothness"] = str(exc)

    return metrics
