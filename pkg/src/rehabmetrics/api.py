"""HTTP JSON API serving the patient -> session -> trial drill-down.

Read-only: no endpoint mutates the store. All responses go through the same
serializer as the CLI (see jsonutil), carry an ETag content hash, and use
plain-JSON numbers (no NaN/Inf).
"""

import hashlib
import threading

from fastapi import FastAPI, Request
from fastapi.responses import Response

from .aggregate import summarize_patient, summarize_session
from .charts import (
    engagement_payload,
    metrics_payload,
    session_overview_payload,
    trial_chart_payloads,
)
from .errors import NotFound, RehabError
from .jsonutil import dumps
from .metrics import SparcParams, compute_trial_metrics
from .store import SessionStore

__all__ = ["AnalysisService", "create_app"]


class AnalysisService:
    """Store access plus an internally synchronized per-trial metrics cache."""

    def __init__(self, store_dir, params: SparcParams = SparcParams()):
        self.store = SessionStore(store_dir)
        self.params = params
        self._cache = {}
        self._lock = threading.Lock()

    def trial_metrics(self, session_id: str, trial_id: str):
        record, capture = self.store.get_trial(session_id, trial_id)
        content_hash = hashlib.sha256(
            record.trc_path.read_bytes()
        ).hexdigest()
        key = (content_hash, record.trial_id, self.params.cache_key())
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return record, cached
        metrics = compute_trial_metrics(record, capture, self.params)
        with self._lock:
            self._cache[key] = metrics
        return record, metrics

    def session_summary(self, session_id: str):
        session = self.store.get_session(session_id)
        metrics = {
            t.trial_id: self.trial_metrics(session_id, t.trial_id)[1]
            for t in session.trials
        }
        return session, summarize_session(session, metrics)

    def patient_summary(self, patient_id: str, granularity: str = "week"):
        patient = self.store.get_patient(patient_id)
        summaries = [self.session_summary(sid)[1] for sid in patient.sessions]
        return summarize_patient(patient, summaries, granularity)

    def trial_charts(self, session_id: str, trial_id: str):
        """All six chart kinds: the four trial charts plus the parent
        session-overview and patient-engagement context charts."""
        record, metrics = self.trial_metrics(session_id, trial_id)
        session, summary = self.session_summary(session_id)
        patient = self.patient_summary(session.patient_id)
        charts = trial_chart_payloads(metrics, record.primary_joint)
        charts.append(session_overview_payload(summary))
        charts.append(engagement_payload(patient.engagement))
        return charts


def _session_summary_payload(summary) -> dict:
    return {
        "session_id": summary.session_id,
        "started_at": summary.started_at,
        "trials": [
            {
                "trial_id": r.trial_id,
                "mean_velocity": r.mean_velocity,
                "smoothness": r.smoothness,
                "autocorr": r.autocorr,
                "score": r.score,
                "duration_s": r.duration_s,
            }
            for r in summary.rows
        ],
        "mean_velocity": summary.mean_velocity,
        "smoothness": summary.smoothness,
        "autocorr": summary.autocorr,
        "mean_score": summary.mean_score,
        "total_duration_s": summary.total_duration_s,
        "overview_chart": session_overview_payload(summary),
    }


def _patient_summary_payload(p) -> dict:
    return {
        "patient_id": p.patient_id,
        "display_name": p.display_name,
        "n_sessions": p.n_sessions,
        "total_exercise_time_s": p.total_exercise_time_s,
        "average_score": p.average_score,
        "sessions": [
            {
                "session_id": s.session_id,
                "date": s.started_at,
                "mean_velocity": s.mean_velocity,
                "smoothness": s.smoothness,
                "autocorr": s.autocorr,
            }
            for s in p.sessions
        ],
        "engagement": engagement_payload(p.engagement),
    }


def create_app(store_dir, params: SparcParams = SparcParams(), cors_origin=None):
    service = AnalysisService(store_dir, params)
    app = FastAPI(title="rehabmetrics", docs_url=None, redoc_url=None)

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["GET"],
            allow_headers=["*"],
        )

    def respond(request: Request, payload, status=200):
        body = dumps(payload)
        etag = '"' + hashlib.sha256(body.encode()).hexdigest() + '"'
        if status == 200 and request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return Response(
            content=body,
            status_code=status,
            media_type="application/json",
            headers={"ETag": etag},
        )

    def not_found(request, resource_id, message):
        return respond(request, {"error": message, "id": resource_id}, status=404)

    @app.get("/api/patients")
    def patients(request: Request):
        return respond(
            request,
            [
                {
                    "patient_id": p.patient_id,
                    "display_name": p.display_name,
                    "n_sessions": len(p.sessions),
                }
                for p in service.store.list_patients()
            ],
        )

    @app.get("/api/patients/{patient_id}")
    def patient(request: Request, patient_id: str):
        try:
            summary = service.patient_summary(patient_id)
        except NotFound as exc:
            return not_found(request, patient_id, str(exc))
        return respond(request, _patient_summary_payload(summary))

    @app.get("/api/patients/{patient_id}/engagement")
    def engagement(request: Request, patient_id: str, granularity: str = "week"):
        if granularity not in ("week", "month"):
            return respond(
                request,
                {"error": f"invalid granularity {granularity!r}", "id": patient_id},
                status=422,
            )
        try:
            summary = service.patient_summary(patient_id, granularity)
        except NotFound as exc:
            return not_found(request, patient_id, str(exc))
        return respond(request, engagement_payload(summary.engagement))

    @app.get("/api/sessions/{session_id}")
    def session(request: Request, session_id: str):
        try:
            _, summary = service.session_summary(session_id)
        except NotFound as exc:
            return not_found(request, session_id, str(exc))
        return respond(request, _session_summary_payload(summary))

    @app.get("/api/sessions/{session_id}/trials/{trial_id}/metrics")
    def trial_metrics(request: Request, session_id: str, trial_id: str):
        try:
            _, metrics = service.trial_metrics(session_id, trial_id)
        except NotFound as exc:
            return not_found(request, f"{session_id}/{trial_id}", str(exc))
        return respond(request, metrics_payload(metrics))

    @app.get("/api/sessions/{session_id}/trials/{trial_id}/charts")
    def trial_charts(request: Request, session_id: str, trial_id: str):
        try:
            charts = service.trial_charts(session_id, trial_id)
        except NotFound as exc:
            return not_found(request, f"{session_id}/{trial_id}", str(exc))
        return respond(request, charts)

    @app.exception_handler(404)
    async def fallback_404(request: Request, exc):
        body = dumps({"error": "no such route", "id": str(request.url.path)})
        return Response(content=body, status_code=404, media_type="application/json")

    @app.exception_handler(RehabError)
    async def domain_error(request: Request, exc: RehabError):
        body = dumps({"error": str(exc), "id": str(request.url.path)})
        return Response(content=body, status_code=500, media_type="application/json")

    app.state.service = service
    return app
