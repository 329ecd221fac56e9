"""Operator command line: ingest, analyze, synth, serve."""

import json
import math
import os
import socket
import sys
from pathlib import Path

import click

from .api import AnalysisService, create_app
from .charts import metrics_payload, trial_chart_payloads
from .errors import (
    InvalidParams,
    MissingCapture,
    NotFound,
    SchemaViolation,
    StoreError,
    TrcError,
)
from .jsonutil import dumps
from .metrics import SparcParams
from .store import SessionStore
from .synth import SynthParams, synth_trial
from .trc import write_trc

EXIT_SCHEMA = 2
EXIT_MISSING_CAPTURE = 3
EXIT_IO = 4
EXIT_NOT_FOUND = 5


def _resolve_store(store):
    # the MOMU_STORE environment variable overrides the flag
    return os.environ.get("MOMU_STORE") or store


@click.group()
def main():
    """Kinematic analytics for music-entrained tele-rehabilitation."""


@main.command()
@click.argument("manifest", type=click.Path())
@click.option("--store", default="store", show_default=True, help="Store directory.")
@click.option("--lenient", is_flag=True, help="Accept unknown manifest fields.")
def ingest(manifest, store, lenient):
    """Ingest a session manifest and its .trc captures into the store."""
    manifest = Path(manifest)
    try:
        doc = json.loads(manifest.read_text())
    except OSError as exc:
        click.echo(f"error: cannot read manifest: {exc}", err=True)
        sys.exit(EXIT_IO)
    except json.JSONDecodeError as exc:
        click.echo(f"error: manifest is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_SCHEMA)
    try:
        session = SessionStore(_resolve_store(store)).ingest_session(
            doc, manifest.parent, lenient=lenient
        )
    except SchemaViolation as exc:
        click.echo(f"error: schema violation: {exc}", err=True)
        sys.exit(EXIT_SCHEMA)
    except (MissingCapture, TrcError) as exc:
        click.echo(f"error: capture problem: {exc}", err=True)
        sys.exit(EXIT_MISSING_CAPTURE)
    except (StoreError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(session.session_id)


@main.group()
def analyze():
    """Compute metrics for stored data."""


@analyze.command("trial")
@click.argument("session_id")
@click.argument("trial_id")
@click.option("--store", default="store", show_default=True)
@click.option("--json", "fmt", flag_value="json", default=True, help="JSON output (default).")
@click.option("--csv", "fmt", flag_value="csv", help="CSV chart samples instead of JSON.")
@click.option("--sparc-omega-max", type=float, default=10.0, show_default=True,
              help="SPARC cutoff cap in Hz.")
@click.option("--sparc-threshold", type=float, default=0.05, show_default=True,
              help="SPARC amplitude threshold.")
@click.option("--pad-factor", type=int, default=4, show_default=True,
              help="SPARC zero-padding factor.")
def analyze_trial(session_id, trial_id, store, fmt, sparc_omega_max, sparc_threshold, pad_factor):
    """Emit the metric bundle and chart payloads for one trial."""
    try:
        params = SparcParams(
            omega_c_max=2 * math.pi * sparc_omega_max,
            amplitude_threshold=sparc_threshold,
            pad_factor=pad_factor,
        )
    except InvalidParams as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SCHEMA)
    service = AnalysisService(_resolve_store(store), params)
    try:
        record, metrics = service.trial_metrics(session_id, trial_id)
        charts = service.trial_charts(session_id, trial_id)
    except NotFound as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NOT_FOUND)
    if fmt == "csv":
        click.echo("kind,series,x,value")
        for chart in charts:
            xs = chart["x"]["values"]
            for name, values in chart["series"].items():
                for x, v in zip(xs, values):
                    value = "" if v is None else v
                    click.echo(f"{chart['kind']},{name},{x},{value}")
    else:
        click.echo(dumps({"metrics": metrics_payload(metrics), "charts": charts}))


@main.command()
@click.option("--tempo", default=100.0, show_default=True, help="Beats per minute.")
@click.option("--duration", default=18.0, show_default=True, help="Trial length, seconds.")
@click.option("--noise", default=0.0, show_default=True, help="Gaussian noise sigma, meters.")
@click.option("--drift", default=0.0, show_default=True,
              help="Compensatory shoulder rise amplitude, meters.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="synth_session", show_default=True, type=click.Path())
@click.option("--trials", default=1, show_default=True, help="Trials in the session.")
@click.option("--patient", default="patient1", show_default=True)
@click.option("--session", default="session1", show_default=True)
@click.option("--started-at", default="2026-01-05T09:00:00Z", show_default=True)
def synth(tempo, duration, noise, drift, seed, out, trials, patient, session, started_at):
    """Generate a synthetic session: manifest.json plus trialN.trc files."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    manifest_trials = []
    try:
        for i in range(1, trials + 1):
            params = SynthParams(
                tempo_bpm=tempo,
                duration_s=duration,
                noise_sigma=noise,
                shoulder_drift_m=drift,
                seed=seed + i - 1,
                trial_id=f"trial{i}",
                started_at=f"2026-01-05T09:{(i - 1):02d}:00Z",
            )
            capture, record = synth_trial(params)
            (out / f"trial{i}.trc").write_text(write_trc(capture, f"trial{i}.trc"))
            manifest_trials.append(
                {
                    "trial_id": record.trial_id,
                    "trc_file": f"trial{i}.trc",
                    "track_name": record.track_name,
                    "tempo_bpm": record.tempo_bpm,
                    "beat_offset_s": record.beat_offset_s,
                    "upper_limit_m": record.upper_limit_m,
                    "lower_limit_m": record.lower_limit_m,
                    "score": record.score,
                    "primary_joint": record.primary_joint,
                    "started_at": record.started_at,
                }
            )
    except InvalidParams as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SCHEMA)
    manifest = {
        "patient_id": patient,
        "display_name": f"Synthetic Patient {patient}",
        "session_id": session,
        "started_at": started_at,
        "trials": manifest_trials,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    click.echo(str(out))


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True, help="HOST:PORT to bind.")
@click.option("--store", default="store", show_default=True)
@click.option("--cors-origin", default=None, help="Allow this origin via CORS.")
@click.option("--static-dir", default=None, type=click.Path(),
              help="Serve a built dashboard from this directory at /.")
def serve(addr, store, cors_origin, static_dir):
    """Serve the read-only JSON API (and optionally the dashboard) over HTTP."""
    import uvicorn

    host, _, port = addr.rpartition(":")
    host = host or "127.0.0.1"
    try:
        port = int(port)
        probe = socket.socket()
        probe.bind((host, port))
        probe.close()
    except (ValueError, OSError) as exc:
        click.echo(f"error: cannot bind {addr}: {exc}", err=True)
        sys.exit(EXIT_IO)
    app = create_app(_resolve_store(store), cors_origin=cors_origin)
    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="dashboard")
    click.echo(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
