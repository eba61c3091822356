"""Profile input parsing and segment table output.

Supported input formats:

* ``plain``: one float per line.
* ``tsv``: three tab-separated columns (label, position, value).
* ``bedgraph``: standard 4-column chrom/start/end/value; every interval row
  contributes exactly one measurement, with its start used as the position.

Comment lines (leading ``#``) and ``track`` lines are skipped. Missing or
non-numeric values ("", "NA", "nan") are rejected with the offending line
number, never imputed.

The segment table is written with 6 significant digits for the float columns
(mean, z, p_value); the ``bed`` variant is the same rows without the header.
All indices in memory are 0-based half-open; when the profile carries genomic
positions, output coordinates are positions[start] .. positions[end-1] + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ProfileParseError, ValidationError
from .stats import TINY_P

FLOAT_FORMAT = ".6g"


@dataclass(frozen=True)
class Profile:
    """An ordered sequence of measurements, optionally with genomic positions."""

    values: np.ndarray
    positions: np.ndarray | None = None
    label: str | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise ValidationError("profile must contain at least one value")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise ValidationError(f"non-finite value at index {bad}")
        values = values.copy() if values.flags.writeable else values
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if self.positions is not None:
            positions = np.asarray(self.positions, dtype=np.int64)
            if positions.shape != values.shape:
                raise ValidationError("positions and values must have the same length")
            if positions.size > 1 and not np.all(np.diff(positions) > 0):
                raise ValidationError("positions must be strictly increasing")
            positions = positions.copy() if positions.flags.writeable else positions
            positions.flags.writeable = False
            object.__setattr__(self, "positions", positions)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SegmentRecord:
    """One reported segment: half-open index interval plus its statistics."""

    start: int
    end: int
    mean: float
    z: float
    log_p: float
    significant: bool

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValidationError(f"invalid segment interval [{self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def p_value(self) -> float:
        """Tail probability in [0, 1]; clamped at the smallest positive double."""
        p = math.exp(min(self.log_p, 0.0))
        return p if p > 0.0 else TINY_P

    @property
    def p_underflow(self) -> bool:
        """True when the exact p-value is below the smallest positive double."""
        return math.exp(min(self.log_p, 0.0)) == 0.0


def _decode(source) -> str:
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProfileParseError(f"input is not UTF-8 text: {exc}") from None
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return _decode(data)
    return data


def _skip(line: str) -> bool:
    stripped = line.strip()
    return not stripped or stripped.startswith("#") or stripped.startswith("track")


def _parse_value(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ProfileParseError(f"malformed numeric field {token!r}", line=lineno) from None
    if not math.isfinite(value):
        raise ProfileParseError(f"non-finite value {token!r}", line=lineno)
    return value


def parse_profile(source, format: str = "plain") -> Profile:
    """Parse a text profile in ``plain``, ``tsv``, or ``bedgraph`` format."""
    text = _decode(source)
    values: list[float] = []
    positions: list[int] = []
    label: str | None = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        if _skip(line):
            continue
        if format == "plain":
            values.append(_parse_value(line.strip(), lineno))
            continue
        fields = line.rstrip("\n").split("\t")
        if format == "tsv":
            if len(fields) < 3:
                raise ProfileParseError("expected 3 tab-separated columns (label, position, value)",
                                        line=lineno)
            row_label, pos_token, value_token = fields[0], fields[1], fields[2]
        elif format == "bedgraph":
            if len(fields) < 4:
                raise ProfileParseError("expected 4 bedGraph columns (chrom, start, end, value)",
                                        line=lineno)
            row_label, pos_token, value_token = fields[0], fields[1], fields[3]
        else:
            raise ValidationError(f"unknown profile format {format!r}")
        if label is None:
            label = row_label
        elif row_label != label:
            raise ProfileParseError(
                f"multiple labels in one file ({label!r} then {row_label!r}); "
                "segment one profile at a time", line=lineno)
        try:
            positions.append(int(pos_token))
        except ValueError:
            raise ProfileParseError(f"malformed position field {pos_token!r}", line=lineno) from None
        values.append(_parse_value(value_token, lineno))

    if not values:
        raise ProfileParseError("empty input: no data lines found")
    if format == "plain":
        return Profile(np.array(values))
    return Profile(np.array(values), positions=np.array(positions, dtype=np.int64), label=label)


def read_profile(path, format: str = "plain") -> Profile:
    """Parse a profile from a file path."""
    return parse_profile(Path(path).read_bytes(), format=format)


OUTPUT_COLUMNS = ("label", "start", "end", "mean", "z", "p_value", "significant")


def _record_row(record: SegmentRecord, profile: Profile) -> str:
    if profile.positions is not None:
        start = int(profile.positions[record.start])
        end = int(profile.positions[record.end - 1]) + 1
    else:
        start, end = record.start, record.end
    label = profile.label if profile.label is not None else "."
    return "\t".join((
        label,
        str(start),
        str(end),
        format(record.mean, FLOAT_FORMAT),
        format(record.z, FLOAT_FORMAT),
        format(record.p_value, FLOAT_FORMAT),
        "1" if record.significant else "0",
    ))


def write_segments(result, profile: Profile, format: str = "tsv") -> bytes:
    """Serialize a segmentation result as a tsv (with header) or bed table."""
    if format not in ("tsv", "bed"):
        raise ValidationError(f"unknown output format {format!r}")
    records = sorted(result.records, key=lambda r: r.start)
    lines = []
    if format == "tsv":
        lines.append("#" + "\t".join(OUTPUT_COLUMNS))
    for record in records:
        if record.end > len(profile):
            raise ValidationError(f"segment [{record.start}, {record.end}) exceeds profile length")
        lines.append(_record_row(record, profile))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_segments(source) -> list[SegmentRecord]:
    """Parse a segment table written by write_segments (tsv or bed)."""
    text = _decode(source)
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != len(OUTPUT_COLUMNS):
            raise ProfileParseError(f"expected {len(OUTPUT_COLUMNS)} columns, got {len(fields)}",
                                    line=lineno)
        try:
            start, end = int(fields[1]), int(fields[2])
            mean, z, p = float(fields[3]), float(fields[4]), float(fields[5])
        except ValueError as exc:
            raise ProfileParseError(str(exc), line=lineno) from None
        if not (0.0 <= p <= 1.0):
            raise ProfileParseError(f"p_value {p} outside [0, 1]", line=lineno)
        significant = fields[6].strip() in ("1", "True", "true")
        records.append(SegmentRecord(start=start, end=end, mean=mean, z=z,
                                     log_p=math.log(p) if p > 0 else -math.inf,
                                     significant=significant))
    return records

