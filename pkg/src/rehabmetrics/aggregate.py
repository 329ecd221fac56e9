"""Session- and patient-level roll-ups of per-trial metrics.

Absent metrics are excluded from means entirely (never zero-filled), so a
degenerate trial cannot drag a session average toward fabricated values.
"""

import datetime as dt
from dataclasses import dataclass, field

from .errors import EmptySession

__all__ = [
    "TrialRow",
    "SessionSummary",
    "PatientSummary",
    "summarize_session",
    "summarize_patient",
    "engagement_series",
]


@dataclass(frozen=True)
class TrialRow:
    trial_id: str
    mean_velocity: float | None
    smoothness: float | None
    autocorr: float | None
    score: float
    duration_s: float


@dataclass(frozen=True)
class SessionSummary:
    session_id: str
    started_at: str
    rows: tuple
    mean_velocity: float | None
    smoothness: float | None
    autocorr: float | None
    mean_score: float
    total_duration_s: float


@dataclass(frozen=True)
class PatientSummary:
    patient_id: str
    display_name: str
    n_sessions: int
    total_exercise_time_s: float
    average_score: float | None
    sessions: tuple  # SessionSummary rows in stored order
    engagement: tuple  # ((bucket_label, count), ...)


def _mean_present(values):
    present = [v for v in values if v is not None]
    return sum(present) / len(present) if present else None


def summarize_session(session, metrics) -> SessionSummary:
    """Roll one session's TrialMetrics into a summary table.

    `metrics` maps trial_id -> TrialMetrics and must cover every trial
    (possibly with absent fields).
    """
    if not session.trials:
        raise EmptySession(f"session {session.session_id!r} has no trials")
    rows = []
    for trial in session.trials:
        m = metrics[trial.trial_id]
        rows.append(
            TrialRow(
                trial_id=trial.trial_id,
                mean_velocity=m.mean_speed_mps,
                smoothness=m.smoothness,
                autocorr=m.autocorr,
                score=trial.score,
                duration_s=m.duration_s,
            )
        )
    return SessionSummary(
        session_id=session.session_id,
        started_at=session.started_at,
        rows=tuple(rows),
        mean_velocity=_mean_present(r.mean_velocity for r in rows),
        smoothness=_mean_present(r.smoothness for r in rows),
        autocorr=_mean_present(r.autocorr for r in rows),
        mean_score=sum(r.score for r in rows) / len(rows),
        total_duration_s=sum(r.duration_s for r in rows),
    )


def summarize_patient(patient, summaries, granularity: str = "week") -> PatientSummary:
    """Patient-level roll-up over that patient's session summaries."""
    total_time = sum(s.total_duration_s for s in summaries)
    scores = [r.score for s in summaries for r in s.rows]
    return PatientSummary(
        patient_id=patient.patient_id,
        display_name=patient.display_name,
        n_sessions=len(summaries),
        total_exercise_time_s=total_time,
        average_score=sum(scores) / len(scores) if scores else None,
        sessions=tuple(summaries),
        engagement=tuple(
            engagement_series([s.started_at for s in summaries], granularity)
        ),
    )


def _parse_stamp(stamp: str) -> dt.date:
    return dt.datetime.fromisoformat(stamp.replace("Z", "+00:00")).date()


def _week_label(day: dt.date) -> str:
    year, week, _ = day.isocalendar()
    return f"{year}-W{week:02d}"


def _month_label(day: dt.date) -> str:
    return f"{day.year}-{day.month:02d}"


def engagement_series(timestamps, granularity: str = "week"):
    """Ordered (bucket, session count) list, contiguous from first to last.

    Weekly buckets are ISO-8601 weeks; monthly buckets are calendar months.
    Gaps between active buckets appear with count 0.
    """
    if granularity not in ("week", "month"):
        raise ValueError(f"granularity must be 'week' or 'month', got {granularity!r}")
    days = sorted(_parse_stamp(s) for s in timestamps)
    if not days:
        return []
    if granularity == "week":
        label = _week_label
        # walk monday-to-monday so every ISO week between the ends appears
        cursor = days[0] - dt.timedelta(days=days[0].isoweekday() - 1)
        step = lambda d: d + dt.timedelta(days=7)
    else:
        label = _month_label
        cursor = days[0].replace(day=1)
        step = lambda d: (d.replace(day=28) + dt.timedelta(days=4)).replace(day=1)

    counts = {}
    for day in days:
        counts[label(day)] = counts.get(label(day), 0) + 1
    series = []
    last = label(days[-1])
    while True:
        key = label(cursor)
        series.append((key, counts.get(key, 0)))
        if key == last:
            break
        cursor = step(cursor)
    return series
