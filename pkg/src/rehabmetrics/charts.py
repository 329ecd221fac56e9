"""Chart-ready payloads for the drill-down dashboard.

Every payload is a plain dict of the shape
``{kind, x: {values, unit}, series: {...}, annotations: {...}}`` with all
series the same length as ``x``. The dashboard renders these generically.
"""

import numpy as np

from .metrics import TrialMetrics

__all__ = [
    "CHART_KINDS",
    "trial_chart_payloads",
    "session_overview_payload",
    "engagement_payload",
    "metrics_payload",
]

CHART_KINDS = (
    "displacement",
    "velocity",
    "autocorrelation",
    "spectrum",
    "session_overview",
    "engagement",
)


def _payload(kind, x_values, x_unit, series, annotations=None, missing_reason=None):
    out = {
        "kind": kind,
        "x": {"values": list(x_values), "unit": x_unit},
        "series": {name: list(vals) for name, vals in series.items()},
        "annotations": annotations or {},
    }
    if missing_reason:
        out["missing_reason"] = missing_reason
    return out


def metrics_payload(m: TrialMetrics) -> dict:
    """The metric bundle served by /metrics and printed by `analyze --json`."""
    return {
        "trial_id": m.trial_id,
        "mean_speed_mps": m.mean_speed_mps,
        "smoothness": m.smoothness,
        "autocorr": m.autocorr,
        "per_submovement_sparc": list(m.per_submovement_sparc),
        "n_cycles": m.n_cycles,
        "analysis_start_s": m.analysis_start_s,
        "duration_s": m.duration_s,
        "score": m.score,
        "absent": dict(m.absent),
    }


def trial_chart_payloads(m: TrialMetrics, primary_joint: str) -> list:
    """The four trial-level chart payloads."""
    charts = []

    disp = m.displacement_primary_y
    annotations = {
        "upper_limit": m.upper_limit_m,
        "lower_limit": m.lower_limit_m,
        "beat_times": list(m.beat_times) if m.beat_times is not None else [],
        "analysis_start": m.analysis_start_s,
    }
    series = {f"y-{primary_joint}": disp.samples}
    if m.displacement_shoulder_y is not None:
        series["y-Right Shoulder"] = m.displacement_shoulder_y.samples
    if m.displacement_hand_z is not None:
        series[f"z-{primary_joint}"] = m.displacement_hand_z.samples
    charts.append(_payload("displacement", disp.times, "s", series, annotations))

    if m.velocity_series is not None:
        vel = m.velocity_series
        charts.append(
            _payload(
                "velocity",
                vel.times + m.analysis_start_s,
                "s",
                {"velocity": vel.samples},
                {"analysis_start": m.analysis_start_s},
            )
        )
    else:
        charts.append(
            _payload("velocity", [], "s", {"velocity": []},
                     missing_reason=m.absent.get("velocity", "not computed"))
        )

    if m.lag_series is not None:
        charts.append(
            _payload(
                "autocorrelation",
                m.lag_series.lag_seconds,
                "s",
                {"autocorrelation": m.lag_series.values},
            )
        )
    else:
        charts.append(
            _payload("autocorrelation", [], "s", {"autocorrelation": []},
                     missing_reason=m.absent.get("autocorr", "not computed"))
        )

    if m.spectrum is not None:
        charts.append(
            _payload(
                "spectrum",
                m.spectrum.frequencies,
                "Hz",
                {"amplitude": m.spectrum.amplitudes},
            )
        )
    else:
        charts.append(
            _payload("spectrum", [], "Hz", {"amplitude": []},
                     missing_reason=m.absent.get("spectrum", "not computed"))
        )
    return charts


def session_overview_payload(summary) -> dict:
    """Smoothness and auto-correlation per trial index (nulls render as gaps)."""
    return _payload(
        "session_overview",
        [i + 1 for i in range(len(summary.rows))],
        "trial",
        {
            "smoothness": [r.smoothness for r in summary.rows],
            "autocorrelation": [r.autocorr for r in summary.rows],
        },
        {"trial_ids": [r.trial_id for r in summary.rows]},
    )


def engagement_payload(engagement) -> dict:
    """Per-week or per-month session counts."""
    buckets = [b for b, _ in engagement]
    counts = [c for _, c in engagement]
    return _payload("engagement", buckets, "bucket", {"sessions": counts})
