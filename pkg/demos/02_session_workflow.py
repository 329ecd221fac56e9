"""End-to-end workflow: generate a session, ingest it, read the roll-ups.

Uses the same service layer the HTTP API runs on, against a throwaway
store under /tmp.

Run: python3 demos/02_session_workflow.py
"""

import json
import tempfile
from pathlib import Path

from click.testing import CliRunner

from rehabmetrics.api import AnalysisService
from rehabmetrics.cli import main

root = Path(tempfile.mkdtemp(prefix="rehabmetrics_demo_"))
out = root / "synth"
store = root / "store"

runner = CliRunner()
r = runner.invoke(main, ["synth", "--trials", "6", "--noise", "0.005",
                         "--seed", "3", "--out", str(out)])
assert r.exit_code == 0, r.output
print(f"generated 6 trials in {out}")

r = runner.invoke(main, ["ingest", str(out / "manifest.json"), "--store", str(store)])
assert r.exit_code == 0, r.output
session_id = r.output.strip()
print(f"ingested session {session_id!r} into {store}")

service = AnalysisService(store)

record, metrics = service.trial_metrics(session_id, "trial1")
print(f"\ntrial1: mean speed {metrics.mean_speed_mps:.3f} m/s, "
      f"smoothness {metrics.smoothness:.3f}, "
      f"autocorr {metrics.autocorr:.3f}, {metrics.n_cycles} cycles")

_, summary = service.session_summary(session_id)
print(f"session means: smoothness {summary.smoothness:.3f}, "
      f"autocorr {summary.autocorr:.3f}, "
      f"total {summary.total_duration_s:.0f} s")

patient = service.patient_summary("patient1")
print(f"patient1: {patient.n_sessions} session(s), "
      f"{patient.total_exercise_time_s:.0f} s of exercise, "
      f"engagement buckets {list(patient.engagement)}")

manifest = json.loads((out / "manifest.json").read_text())
print(f"\nmanifest had {len(manifest['trials'])} trials; "
      f"serve it with:\n  rehabmetrics serve --store {store}")
