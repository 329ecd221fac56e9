"""Reading, validation, and writing of .trc motion-capture files.

The accepted layout is the conventional Motion Analysis one (see
docs/trc-format.md): five header lines, a marker-name row, an axis-label row,
a blank line, then tab-separated data rows. Any run of tabs/spaces is a valid
delimiter on read; tabs are emitted on write. Dropout gaps (empty or
non-finite cells) are linearly interpolated and counted per channel.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CountMismatch,
    JointNotFound,
    MalformedHeader,
    NonMonotonicTime,
    TrcError,
    UnparsableNumber,
)
from .joints import joints_match, resolve_joint
from .signals import TimeSeries

__all__ = ["TrcHeader", "MotionCapture", "parse_trc", "write_trc", "channel"]

VALID_UNITS = ("mm", "cm", "m")

_HEADER_FIELDS = (
    "DataRate",
    "CameraRate",
    "NumFrames",
    "NumMarkers",
    "Units",
    "OrigDataRate",
    "OrigDataStartFrame",
    "OrigNumFrames",
)

_METERS_PER_UNIT = {"mm": 0.001, "cm": 0.01, "m": 1.0}


@dataclass(frozen=True)
class TrcHeader:
    data_rate: float
    camera_rate: float
    num_frames: int
    num_markers: int
    units: str
    orig_data_rate: float
    orig_data_start_frame: int
    orig_num_frames: int
    marker_names: tuple

    def __post_init__(self):
        object.__setattr__(self, "marker_names", tuple(self.marker_names))
        if self.data_rate <= 0:
            raise MalformedHeader(f"DataRate must be positive, got {self.data_rate}")
        if self.num_frames < 1:
            raise MalformedHeader(f"NumFrames must be >= 1, got {self.num_frames}")
        if self.num_markers < 1:
            raise MalformedHeader(f"NumMarkers must be >= 1, got {self.num_markers}")
        if len(self.marker_names) != self.num_markers:
            raise MalformedHeader(
                f"{len(self.marker_names)} marker names for NumMarkers={self.num_markers}"
            )
        if self.units not in VALID_UNITS:
            raise MalformedHeader(f"Units must be one of {VALID_UNITS}, got {self.units!r}")


@dataclass(frozen=True)
class MotionCapture:
    """A parsed .trc recording: header + per-marker xyz time series."""

    header: TrcHeader
    time: np.ndarray
    markers: dict  # marker name -> (3, num_frames) float array, file units
    warnings: tuple = ()
    gap_counts: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "time", np.asarray(self.time, dtype=float))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        n = self.header.num_frames
        if self.time.shape != (n,):
            raise CountMismatch(f"time has {self.time.size} samples, header says {n}")
        if n > 1 and not np.all(np.diff(self.time) > 0):
            raise NonMonotonicTime("time vector is not strictly increasing")
        for name in self.header.marker_names:
            arr = self.markers[name]
            if arr.shape != (3, n):
                raise CountMismatch(f"marker {name!r} has shape {arr.shape}, expected (3, {n})")
            if not np.all(np.isfinite(arr)):
                raise TrcError(f"marker {name!r} contains non-finite samples after gap fill")

    @property
    def duration_s(self) -> float:
        return self.header.num_frames / self.header.data_rate


def _split_cells(line: str):
    """Cells of a row; tab-aware so empty cells and spaced names survive."""
    if "\t" in line:
        return [c.strip() for c in line.split("\t")]
    return line.split()


def _parse_float(token, row, col):
    try:
        value = float(token)
    except ValueError:
        raise UnparsableNumber(
            f"cannot parse number {token!r} at row {row}, column {col}", row, col
        ) from None
    return value


def _fill_gaps(values: np.ndarray):
    """Linear interpolation over NaN runs; edge gaps take the nearest value."""
    bad = ~np.isfinite(values)
    n_gaps = int(bad.sum())
    if n_gaps == 0:
        return values, 0
    good = np.flatnonzero(~bad)
    if good.size == 0:
        raise TrcError("channel has no valid samples to interpolate from")
    idx = np.arange(values.size)
    filled = np.interp(idx, good, values[good])
    return filled, n_gaps


def parse_trc(text: str) -> MotionCapture:
    """Parse a .trc document. Raises a TrcError subclass on any malformation."""
    try:
        return _parse_trc(text)
    except TrcError:
        raise
    except Exception as exc:  # totality over arbitrary byte input
        raise MalformedHeader(f"unparsable .trc document: {exc}") from exc


def _parse_trc(text: str) -> MotionCapture:
    lines = text.splitlines()
    if len(lines) < 6:
        raise MalformedHeader(f"expected at least 6 lines, got {len(lines)}")
    if not lines[0].split("\t")[0].strip().startswith("PathFileType"):
        raise MalformedHeader("line 1 must start with 'PathFileType'")

    field_names = lines[1].split()
    field_values = _split_cells(lines[2])
    if "DataRate" not in field_names or "NumMarkers" not in field_names:
        raise MalformedHeader("line 2 must name the DataRate/NumMarkers header fields")
    fields = {}
    for i, name in enumerate(field_names):
        fields[name] = field_values[i] if i < len(field_values) else ""

    warnings = []

    def _num(name, default=None):
        raw = fields.get(name, "")
        if raw == "":
            if default is None:
                raise MalformedHeader(f"missing header field {name}")
            return default
        return _parse_float(raw, 3, field_names.index(name) + 1)

    data_rate = _num("DataRate")
    camera_rate = _num("CameraRate", data_rate)
    num_frames = int(_num("NumFrames"))
    num_markers = int(_num("NumMarkers"))
    units = fields.get("Units", "").strip().lower()
    if units == "":
        units = "mm"
        warnings.append("Units field missing; assuming mm")
    if units not in VALID_UNITS:
        raise MalformedHeader(f"Units must be one of {VALID_UNITS}, got {units!r}")
    orig_data_rate = _num("OrigDataRate", data_rate)
    orig_start = int(_num("OrigDataStartFrame", 1))
    orig_frames = int(_num("OrigNumFrames", num_frames))

    marker_cells = lines[3].split("\t") if "\t" in lines[3] else None
    if marker_cells is not None:
        names = [c.strip() for c in marker_cells[2::3] if c.strip()]
    else:
        names = lines[3].split()[2:]
    if not names:
        raise MalformedHeader("no marker names on line 4")
    if len(names) != num_markers:
        warnings.append(
            f"{len(names)} marker names but NumMarkers={num_markers}; using the lesser"
        )
        num_markers = min(num_markers, len(names))
        names = names[:num_markers]

    # line 5 is the Xn/Yn/Zn axis-label row; tolerated but not interpreted
    data_lines = [
        (i + 1, ln) for i, ln in enumerate(lines[5:], start=5) if ln.strip()
    ]
    if not data_lines:
        raise CountMismatch("no data rows found")

    n_cols = 2 + 3 * num_markers
    times = []
    data = np.full((len(data_lines), 3 * num_markers), np.nan)
    for r, (lineno, ln) in enumerate(data_lines):
        cells = _split_cells(ln)
        if len(cells) < 2:
            raise CountMismatch(f"data row at line {lineno} has fewer than 2 columns")
        if "\t" not in ln and len(cells) != n_cols:
            raise CountMismatch(
                f"data row at line {lineno} has {len(cells)} columns, expected {n_cols}"
            )
        _parse_float(cells[0], lineno, 1)  # Frame# must at least be numeric
        times.append(_parse_float(cells[1], lineno, 2))
        for c in range(3 * num_markers):
            cell = cells[c + 2] if c + 2 < len(cells) else ""
            if cell == "":
                continue  # dropout gap
            data[r, c] = _parse_float(cell, lineno, c + 3)

    n_rows = len(data_lines)
    if n_rows != num_frames:
        warnings.append(
            f"data block has {n_rows} rows but NumFrames={num_frames}; using the lesser"
        )
        num_frames = min(num_frames, n_rows)
        times = times[:num_frames]
        data = data[:num_frames]

    time = np.asarray(times, dtype=float)
    if num_frames > 1 and not np.all(np.diff(time) > 0):
        raise NonMonotonicTime("Time column is not strictly increasing")
    expected = time[0] + np.arange(num_frames) / data_rate
    if np.max(np.abs(time - expected)) > 1e-6:
        warnings.append("Time column deviates from 1/DataRate grid; regularized")
        time = expected

    header = TrcHeader(
        data_rate=data_rate,
        camera_rate=camera_rate,
        num_frames=num_frames,
        num_markers=num_markers,
        units=units,
        orig_data_rate=orig_data_rate,
        orig_data_start_frame=orig_start,
        orig_num_frames=orig_frames,
        marker_names=tuple(names),
    )

    markers = {}
    gap_counts = {}
    for m, name in enumerate(names):
        coords = np.empty((3, num_frames))
        for a, axis in enumerate("xyz"):
            filled, n_gaps = _fill_gaps(data[:, 3 * m + a])
            coords[a] = filled
            if n_gaps:
                gap_counts[f"{name}.{axis}"] = n_gaps
        markers[name] = coords
    if gap_counts:
        warnings.append(f"interpolated {sum(gap_counts.values())} dropout gap(s)")

    return MotionCapture(
        header=header,
        time=time,
        markers=markers,
        warnings=tuple(warnings),
        gap_counts=gap_counts,
    )


def write_trc(mc: MotionCapture, name: str = "capture.trc") -> str:
    """Serialize a MotionCapture to .trc text with 6-decimal fixed formatting."""
    h = mc.header
    lines = [f"PathFileType\t4\t(X/Y/Z)\t{name}"]
    lines.append("\t".join(_HEADER_FIELDS))
    lines.append(
        "\t".join(
            [
                f"{h.data_rate:.6f}",
                f"{h.camera_rate:.6f}",
                str(h.num_frames),
                str(h.num_markers),
                h.units,
                f"{h.orig_data_rate:.6f}",
                str(h.orig_data_start_frame),
                str(h.orig_num_frames),
            ]
        )
    )
    name_cells = ["Frame#", "Time"]
    axis_cells = ["", ""]
    for i, marker in enumerate(h.marker_names, start=1):
        name_cells += [marker, "", ""]
        axis_cells += [f"X{i}", f"Y{i}", f"Z{i}"]
    lines.append("\t".join(name_cells))
    lines.append("\t".join(axis_cells))
    lines.append("")
    for r in range(h.num_frames):
        cells = [str(r + 1), f"{mc.time[r]:.6f}"]
        for marker in h.marker_names:
            coords = mc.markers[marker]
            cells += [f"{coords[a, r]:.6f}" for a in range(3)]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def channel(mc: MotionCapture, joint, axis: str) -> TimeSeries:
    """One coordinate column of one joint as a TimeSeries in meters."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be one of x/y/z, got {axis!r}")
    for marker in mc.header.marker_names:
        if joints_match(marker, joint):
            scale = _METERS_PER_UNIT[mc.header.units]
            samples = mc.markers[marker]["xyz".index(axis)] * scale
            return TimeSeries(samples, mc.header.data_rate, "m")
    raise JointNotFound(resolve_joint(joint), mc.header.marker_names)
