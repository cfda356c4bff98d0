"""Pen-trace domain types and the JSONL stroke-file format.

A stroke is the trace between one pen-down and the next pen-up, sampled
uniformly in time. Coordinates live in a y-up mathematical frame internally;
records captured with a screen origin (y growing downward) carry a
``y_down: true`` flag and are flipped once at ingest.

File format, one JSON object per line::

    {"id": "<string>", "label": "<name>|null", "y_down": true|false,
     "points": [[x, y, t], ...]}

x and y are decimal numbers, t is a non-negative integer in milliseconds
since the stroke start, strictly increasing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import StrokeFormatError
from .primitives import PrimitiveId, primitive_by_name


class Point(NamedTuple):
    x: float
    y: float
    t: int  # milliseconds since stroke start


@dataclass(frozen=True)
class Stroke:
    """Immutable time-ordered pen trace with at least two points."""

    id: str
    points: tuple[Point, ...]
    label: PrimitiveId | None = None

    def __post_init__(self):
        if len(self.points) < 2:
            raise StrokeFormatError(f"stroke {self.id!r}: needs >= 2 points")
        prev_t = None
        for p in self.points:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise StrokeFormatError(f"stroke {self.id!r}: non-finite coordinate")
            if prev_t is not None and p.t <= prev_t:
                raise StrokeFormatError(
                    f"stroke {self.id!r}: timestamps not strictly increasing "
                    f"({prev_t} then {p.t})"
                )
            prev_t = p.t

    @property
    def n(self) -> int:
        return len(self.points)

    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points], dtype=float)

    def ys(self) -> np.ndarray:
        return np.array([p.y for p in self.points], dtype=float)

    def ts(self) -> np.ndarray:
        return np.array([p.t for p in self.points], dtype=int)

    def with_coords(self, xs: Iterable[float], ys: Iterable[float]) -> "Stroke":
        """Same id, label and timestamps; replaced coordinates."""
        pts = tuple(
            Point(float(x), float(y), p.t)
            for x, y, p in zip(xs, ys, self.points, strict=True)
        )
        return Stroke(self.id, pts, self.label)


DATASET_SOURCES = ("isolated", "paragraph-extracted", "synthetic")


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of strokes from one acquisition source."""

    strokes: tuple[Stroke, ...]
    source: str = "isolated"

    def __post_init__(self):
        if self.source not in DATASET_SOURCES:
            raise StrokeFormatError(f"unknown dataset source {self.source!r}")

    def __len__(self) -> int:
        return len(self.strokes)

    def labelled(self) -> "Dataset":
        """Checked view for training: every stroke must carry a label."""
        for s in self.strokes:
            if s.label is None:
                raise StrokeFormatError(f"stroke {s.id!r} has no label")
        return self


def _parse_record(obj, line_no: int) -> Stroke:
    if not isinstance(obj, dict):
        raise StrokeFormatError("record is not a JSON object", line_no)
    try:
        stroke_id = obj["id"]
        label_name = obj["label"]
        y_down = obj["y_down"]
        raw_points = obj["points"]
    except KeyError as exc:
        raise StrokeFormatError(f"missing field {exc.args[0]!r}", line_no) from None
    if not isinstance(stroke_id, str):
        raise StrokeFormatError("id must be a string", line_no)
    if not isinstance(y_down, bool):
        raise StrokeFormatError("y_down must be true or false", line_no)
    if not isinstance(raw_points, list) or len(raw_points) < 2:
        raise StrokeFormatError("points must be a list of >= 2 [x, y, t] triples", line_no)

    points = []
    prev_t = None
    for triple in raw_points:
        if not (isinstance(triple, list) and len(triple) == 3):
            raise StrokeFormatError(f"bad point {triple!r}", line_no)
        x, y, t = triple
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
            raise StrokeFormatError(f"non-numeric coordinate in {triple!r}", line_no)
        if isinstance(t, bool) or not isinstance(t, int) or t < 0:
            raise StrokeFormatError(
                f"t must be a non-negative integer millisecond, got {t!r}", line_no
            )
        if prev_t is not None and t <= prev_t:
            raise StrokeFormatError(
                f"timestamps not strictly increasing ({prev_t} then {t})", line_no
            )
        prev_t = t
        y_val = -float(y) if y_down else float(y)
        points.append(Point(float(x), y_val, t))

    label = primitive_by_name(label_name) if label_name is not None else None
    try:
        return Stroke(stroke_id, tuple(points), label)
    except StrokeFormatError as exc:
        raise StrokeFormatError(str(exc), line_no) from None


def load_strokes(path: str | Path, source: str = "isolated") -> Dataset:
    """Parse a JSONL stroke file; any malformed line aborts with its number."""
    text = Path(path).read_text(encoding="utf-8")
    strokes = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise StrokeFormatError(f"invalid JSON ({exc.msg})", line_no) from None
        strokes.append(_parse_record(obj, line_no))
    return Dataset(tuple(strokes), source=source)


def stroke_to_record(stroke: Stroke) -> dict:
    """Canonical dict form of one stroke (y-up frame, y_down always false)."""
    return {
        "id": stroke.id,
        "label": stroke.label.name if stroke.label is not None else None,
        "y_down": False,
        "points": [[p.x, p.y, p.t] for p in stroke.points],
    }


def dumps_stroke(stroke: Stroke) -> str:
    return json.dumps(stroke_to_record(stroke), separators=(",", ":"))


def save_strokes(dataset: Dataset, path: str | Path) -> None:
    """Write the canonical JSONL serialization; load(save(d)) == d."""
    lines = [dumps_stroke(s) for s in dataset.strokes]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
