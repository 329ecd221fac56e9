"""rehabmetrics: kinematic quality analytics for music-entrained
motor tele-rehabilitation.

Ingests skeletal motion-capture trials (.trc) with session manifests,
computes per-trial quality metrics (displacement, velocity, spectral arc
length smoothness, auto-correlation periodicity, amplitude spectrum),
aggregates them per session and patient, and serves chart-ready JSON to a
clinician dashboard.
"""

from .aggregate import (
    PatientSummary,
    SessionSummary,
    engagement_series,
    summarize_patient,
    summarize_session,
)
from .joints import JointId
from .metrics import (
    BeatGrid,
    CycleSegmentation,
    SparcParams,
    TrialMetrics,
    analysis_window,
    autocorr_score,
    build_beat_grid,
    compute_trial_metrics,
    segment_cycles,
    sparc,
    trial_smoothness,
)
from .signals import (
    LagSeries,
    Spectrum,
    TimeSeries,
    amplitude_spectrum,
    autocorrelate,
    dft,
    find_peaks,
    gradient,
    smooth_ma,
    velocity,
)
from .store import PatientRecord, SessionRecord, SessionStore, TrialRecord
from .synth import SynthParams, synth_trial
from .trc import MotionCapture, TrcHeader, channel, parse_trc, write_trc

__version__ = "0.1.0"
