"""Synthetic exercise trials with known ground truth, for tests and demos.

The hand oscillates between the movement limits at half the beat rate
(apex on every other beat); the shoulder optionally drifts upward during
adduction to mimic the compensatory pattern clinicians look for.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .joints import KINECT_JOINTS
from .store import TrialRecord
from .trc import MotionCapture, TrcHeader

__all__ = ["SynthParams", "synth_trial", "STANDING_POSE_M"]

# plausible standing pose, meters in Kinect camera space (x right, y up, z depth)
STANDING_POSE_M = {
    "SpineBase": (0.00, 0.95, 2.00),
    "SpineMid": (0.00, 1.20, 2.00),
    "Neck": (0.00, 1.45, 2.00),
    "Head": (0.00, 1.60, 2.00),
    "ShoulderLeft": (-0.20, 1.40, 2.00),
    "ElbowLeft": (-0.25, 1.15, 2.00),
    "WristLeft": (-0.27, 0.95, 2.00),
    "HandLeft": (-0.28, 0.90, 2.00),
    "ShoulderRight": (0.20, 1.40, 2.00),
    "ElbowRight": (0.45, 1.35, 2.00),
    "WristRight": (0.65, 1.30, 2.00),
    "HandRight": (0.70, 1.10, 2.00),
    "HipLeft": (-0.10, 0.90, 2.00),
    "KneeLeft": (-0.10, 0.50, 2.00),
    "AnkleLeft": (-0.10, 0.10, 2.00),
    "FootLeft": (-0.10, 0.05, 1.90),
    "HipRight": (0.10, 0.90, 2.00),
    "KneeRight": (0.10, 0.50, 2.00),
    "AnkleRight": (0.10, 0.10, 2.00),
    "FootRight": (0.10, 0.05, 1.90),
    "SpineShoulder": (0.00, 1.38, 2.00),
    "HandTipLeft": (-0.29, 0.85, 2.00),
    "ThumbLeft": (-0.26, 0.90, 2.00),
    "HandTipRight": (0.72, 1.05, 2.00),
    "ThumbRight": (0.68, 1.10, 2.00),
}


@dataclass(frozen=True)
class SynthParams:
    tempo_bpm: float = 100.0
    duration_s: float = 18.0
    rate_hz: float = 30.0
    upper_limit_m: float = 1.40
    lower_limit_m: float = 0.80
    noise_sigma: float = 0.0
    shoulder_drift_m: float = 0.0
    seed: int = 0
    trial_id: str = "trial1"
    track_name: str = "synthetic"
    score: float = 100.0
    started_at: str = "2026-01-05T09:00:00Z"

    def __post_init__(self):
        if self.rate_hz <= 0:
            raise InvalidParams(f"rate_hz must be positive, got {self.rate_hz}")
        if self.tempo_bpm <= 0:
            raise InvalidParams(f"tempo_bpm must be positive, got {self.tempo_bpm}")
        if self.upper_limit_m <= self.lower_limit_m:
            raise InvalidParams("upper_limit_m must exceed lower_limit_m")
        if self.noise_sigma < 0 or self.shoulder_drift_m < 0:
            raise InvalidParams("noise_sigma and shoulder_drift_m must be >= 0")
        if self.duration_s < 5 * 60.0 / self.tempo_bpm:
            raise InvalidParams(
                f"duration {self.duration_s}s fits fewer than 5 beats at "
                f"{self.tempo_bpm}bpm"
            )


def synth_trial(p: SynthParams = SynthParams()):
    """Deterministic synthetic trial; returns (MotionCapture, TrialRecord)."""
    n = round(p.duration_s * p.rate_hz)
    t = np.arange(n) / p.rate_hz
    cycle_s = 2 * 60.0 / p.tempo_bpm  # one adduction + one abduction
    phase = np.cos(2 * math.pi * t / cycle_s)

    midpoint = (p.upper_limit_m + p.lower_limit_m) / 2
    halfspan = (p.upper_limit_m - p.lower_limit_m) / 2
    hand_y = midpoint + halfspan * phase
    if p.noise_sigma > 0:
        rng = np.random.default_rng(p.seed)
        hand_y = hand_y + rng.normal(0.0, p.noise_sigma, n)

    shoulder_rest = STANDING_POSE_M["ShoulderRight"][1]
    shoulder_y = shoulder_rest + p.shoulder_drift_m * np.maximum(0.0, -phase)

    markers = {}
    for name in KINECT_JOINTS:
        x0, y0, z0 = STANDING_POSE_M[name]
        coords = np.empty((3, n))
        coords[0] = x0
        coords[1] = y0
        coords[2] = z0
        markers[name] = coords
    markers["HandRight"][1] = hand_y
    markers["ShoulderRight"][1] = shoulder_y

    # captures are written in mm, the conventional .trc unit
    markers = {name: coords * 1000.0 for name, coords in markers.items()}

    header = TrcHeader(
        data_rate=p.rate_hz,
        camera_rate=p.rate_hz,
        num_frames=n,
        num_markers=len(KINECT_JOINTS),
        units="mm",
        orig_data_rate=p.rate_hz,
        orig_data_start_frame=1,
        orig_num_frames=n,
        marker_names=tuple(KINECT_JOINTS),
    )
    capture = MotionCapture(header=header, time=t, markers=markers)
    record = TrialRecord(
        trial_id=p.trial_id,
        trc_path=f"{p.trial_id}.trc",
        track_name=p.track_name,
        tempo_bpm=p.tempo_bpm,
        beat_offset_s=0.0,
        upper_limit_m=p.upper_limit_m,
        lower_limit_m=p.lower_limit_m,
        score=p.score,
        primary_joint="HandRight",
        started_at=p.started_at,
    )
    return capture, record
