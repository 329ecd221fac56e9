"""Directory-backed persistence for patients, sessions, and trials.

Layout: ``<store>/<patient_id>/patient.json`` plus one
``<store>/<patient_id>/<session_id>/`` directory per session holding
``manifest.json`` and the referenced ``.trc`` captures. Manifests are the
schema documented in docs/manifest.md. Writes are temp-then-rename so a
crash mid-ingest never corrupts previously stored sessions.
"""

import json
import os
import shutil
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateSessionId,
    MissingCapture,
    NotFound,
    SchemaViolation,
    TrcError,
)
from .joints import resolve_joint
from .trc import MotionCapture, parse_trc

__all__ = [
    "TrialRecord",
    "SessionRecord",
    "PatientRecord",
    "SessionStore",
]

_TRIAL_FIELDS = {
    "trial_id": str,
    "trc_file": str,
    "track_name": str,
    "tempo_bpm": (int, float),
    "beat_offset_s": (int, float),
    "upper_limit_m": (int, float),
    "lower_limit_m": (int, float),
    "score": (int, float),
    "primary_joint": str,
    "started_at": str,
}
_TRIAL_OPTIONAL = {"beat_offset_s", "primary_joint"}
_TOP_FIELDS = {
    "patient_id": str,
    "display_name": str,
    "session_id": str,
    "started_at": str,
    "trials": list,
}


@dataclass(frozen=True)
class TrialRecord:
    trial_id: str
    trc_path: Path
    track_name: str
    tempo_bpm: float
    upper_limit_m: float
    lower_limit_m: float
    score: float
    started_at: str
    beat_offset_s: float = 0.0
    primary_joint: str = "HandRight"

    def __post_init__(self):
        if self.upper_limit_m <= self.lower_limit_m:
            raise SchemaViolation(
                f"trial {self.trial_id}",
                f"upper_limit_m {self.upper_limit_m} must exceed "
                f"lower_limit_m {self.lower_limit_m}",
            )
        if self.tempo_bpm <= 0:
            raise SchemaViolation(
                f"trial {self.trial_id}", f"tempo_bpm must be positive, got {self.tempo_bpm}"
            )


@dataclass(frozen=True)
class SessionRecord:
    session_id: str
    patient_id: str
    started_at: str
    trials: tuple

    def trial(self, trial_id: str) -> TrialRecord:
        for t in self.trials:
            if t.trial_id == trial_id:
                return t
        raise NotFound(f"trial {trial_id!r} not in session {self.session_id!r}")


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    display_name: str
    sessions: tuple  # ordered session ids


def _check_type(path, value, expected):
    if isinstance(expected, tuple):
        ok = isinstance(value, expected) and not isinstance(value, bool)
    else:
        ok = isinstance(value, expected)
    if not ok:
        raise SchemaViolation(path, f"expected {expected}, got {type(value).__name__}")


def validate_manifest(doc: dict, lenient: bool = False) -> dict:
    """Validate a session manifest; returns the document with defaults filled."""
    if not isinstance(doc, dict):
        raise SchemaViolation("manifest", "top level must be a JSON object")
    for name, typ in _TOP_FIELDS.items():
        if name not in doc:
            raise SchemaViolation(name, "required field missing")
        _check_type(name, doc[name], typ)
    if not lenient:
        unknown = set(doc) - set(_TOP_FIELDS)
        if unknown:
            raise SchemaViolation(sorted(unknown)[0], "unknown field (use --lenient to allow)")
    if not doc["trials"]:
        raise SchemaViolation("trials", "at least one trial required")
    if not doc["display_name"]:
        raise SchemaViolation("display_name", "must be non-empty")

    seen = set()
    trials = []
    for i, trial in enumerate(doc["trials"]):
        where = f"trials[{i}]"
        if not isinstance(trial, dict):
            raise SchemaViolation(where, "must be a JSON object")
        out = {"beat_offset_s": 0.0, "primary_joint": "HandRight"}
        for name, typ in _TRIAL_FIELDS.items():
            if name not in trial:
                if name in _TRIAL_OPTIONAL:
                    continue
                raise SchemaViolation(f"{where}.{name}", "required field missing")
            _check_type(f"{where}.{name}", trial[name], typ)
            out[name] = trial[name]
        if not lenient:
            unknown = set(trial) - set(_TRIAL_FIELDS)
            if unknown:
                raise SchemaViolation(
                    f"{where}.{sorted(unknown)[0]}", "unknown field (use --lenient to allow)"
                )
        if out["upper_limit_m"] <= out["lower_limit_m"]:
            raise SchemaViolation(
                f"{where} ({out['trial_id']})",
                "upper_limit_m must exceed lower_limit_m",
            )
        if out["tempo_bpm"] <= 0:
            raise SchemaViolation(f"{where}.tempo_bpm", "must be positive")
        if out["trial_id"] in seen:
            raise SchemaViolation(f"{where}.trial_id", f"duplicate id {out['trial_id']!r}")
        seen.add(out["trial_id"])
        trials.append(out)

    clean = {k: doc[k] for k in _TOP_FIELDS}
    clean["trials"] = sorted(trials, key=lambda t: t["started_at"])
    return clean


class SessionStore:
    """Single-writer, multi-reader store over a plain directory tree."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._capture_cache = {}
        self._lock = threading.Lock()

    # --- ingestion ---------------------------------------------------------

    def ingest_session(self, manifest: dict, base_dir, lenient: bool = False) -> SessionRecord:
        """Validate, copy captures, and persist one session atomically."""
        base_dir = Path(base_dir)
        clean = validate_manifest(manifest, lenient=lenient)
        patient_id = clean["patient_id"]
        session_id = clean["session_id"]

        canonical = dict(clean)
        canonical["trials"] = [
            {**t, "trc_file": Path(t["trc_file"]).name} for t in clean["trials"]
        ]

        session_dir = self.root / patient_id / session_id
        if session_dir.exists():
            stored = json.loads((session_dir / "manifest.json").read_text())
            if stored == canonical:
                return self._load_session(patient_id, session_id)
            raise DuplicateSessionId(
                f"session {session_id!r} already stored with a different manifest"
            )

        # parse every capture up front so a broken file aborts the whole ingest
        captures = {}
        for trial in clean["trials"]:
            src = base_dir / trial["trc_file"]
            if not src.is_file():
                raise MissingCapture(f"trial {trial['trial_id']!r}: no such file {src}")
            text = src.read_text()
            parse_trc(text)  # raises TrcError on malformation
            captures[trial["trial_id"]] = (Path(trial["trc_file"]).name, text)

        with self._lock:
            patient_dir = self.root / patient_id
            patient_dir.mkdir(parents=True, exist_ok=True)
            self._write_atomic(
                patient_dir / "patient.json",
                json.dumps(
                    {"patient_id": patient_id, "display_name": clean["display_name"]},
                    indent=2,
                ),
            )
            tmp_dir = Path(
                tempfile.mkdtemp(prefix=f".{session_id}.", dir=patient_dir)
            )
            try:
                for trial in clean["trials"]:
                    fname, text = captures[trial["trial_id"]]
                    (tmp_dir / fname).write_text(text)
                (tmp_dir / "manifest.json").write_text(json.dumps(canonical, indent=2))
                os.replace(tmp_dir, session_dir)
            except BaseException:
                shutil.rmtree(tmp_dir, ignore_errors=True)
                raise
        return self._load_session(patient_id, session_id)

    @staticmethod
    def _write_atomic(path: Path, text: str):
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    # --- lookups -----------------------------------------------------------

    def list_patients(self) -> list:
        patients = []
        for pdir in sorted(self.root.iterdir() if self.root.is_dir() else []):
            meta = pdir / "patient.json"
            if not meta.is_file():
                continue
            info = json.loads(meta.read_text())
            sessions = self._session_ids(pdir)
            patients.append(
                PatientRecord(
                    patient_id=info["patient_id"],
                    display_name=info["display_name"],
                    sessions=tuple(sessions),
                )
            )
        return patients

    def get_patient(self, patient_id: str) -> PatientRecord:
        meta = self.root / patient_id / "patient.json"
        if not meta.is_file():
            raise NotFound(f"patient {patient_id!r} not found")
        info = json.loads(meta.read_text())
        return PatientRecord(
            patient_id=info["patient_id"],
            display_name=info["display_name"],
            sessions=tuple(self._session_ids(self.root / patient_id)),
        )

    def _session_ids(self, pdir: Path) -> list:
        found = []
        for sdir in pdir.iterdir():
            if sdir.name.startswith("."):  # leftover temp dir from a crash
                continue
            if sdir.is_dir() and (sdir / "manifest.json").is_file():
                manifest = json.loads((sdir / "manifest.json").read_text())
                found.append((manifest["started_at"], manifest["session_id"]))
        found.sort()
        return [sid for _, sid in found]

    def get_session(self, session_id: str) -> SessionRecord:
        for pdir in self.root.iterdir() if self.root.is_dir() else []:
            if not pdir.is_dir():
                continue
            sdir = pdir / session_id
            if (sdir / "manifest.json").is_file():
                return self._load_session(pdir.name, session_id)
        raise NotFound(f"session {session_id!r} not found")

    def _load_session(self, patient_id: str, session_id: str) -> SessionRecord:
        sdir = self.root / patient_id / session_id
        manifest = json.loads((sdir / "manifest.json").read_text())
        trials = tuple(
            TrialRecord(
                trial_id=t["trial_id"],
                trc_path=sdir / t["trc_file"],
                track_name=t["track_name"],
                tempo_bpm=float(t["tempo_bpm"]),
                beat_offset_s=float(t.get("beat_offset_s", 0.0)),
                upper_limit_m=float(t["upper_limit_m"]),
                lower_limit_m=float(t["lower_limit_m"]),
                score=float(t["score"]),
                primary_joint=resolve_joint(t.get("primary_joint", "HandRight")),
                started_at=t["started_at"],
            )
            for t in manifest["trials"]
        )
        return SessionRecord(
            session_id=session_id,
            patient_id=patient_id,
            started_at=manifest["started_at"],
            trials=trials,
        )

    def get_trial(self, session_id: str, trial_id: str):
        """Returns (TrialRecord, MotionCapture); the parse is cached."""
        session = self.get_session(session_id)
        record = session.trial(trial_id)
        key = str(record.trc_path)
        with self._lock:
            capture = self._capture_cache.get(key)
        if capture is None:
            capture = parse_trc(record.trc_path.read_text())
            with self._lock:
                self._capture_cache[key] = capture
        return record, capture
