"""Critical points and the three directional encodings of a stroke.

The chain is: find the points where the x- or y-motion changes sign
(plus the two endpoints), then describe the stroke by the directions
between those points. Three encodings of those directions:

* DF  - crisp direction codes between consecutive critical points,
* EDF - crisp codes between every pair of critical points,
* FDF - each consecutive angle split over its two nearest of the eight
  directions with triangular memberships, then averaged per direction
  into a fixed 8-vector.

Direction codes run 1..8 counter-clockwise from the positive x axis in
steps of 45 degrees, so code 1 is rightward, 3 is up, 5 is leftward,
7 is down. Sectors are half-open on their counter-clockwise edge: code d
owns [center - pi/8, center + pi/8).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStrokeError
from .ink import Stroke

SECTOR = math.pi / 4
HALF_SECTOR = math.pi / 8


def wrap_angle(theta: float) -> float:
    """Map any angle into (-pi, pi]; values already in range pass through
    untouched (the reduction would otherwise cost a rounding step)."""
    if -math.pi < theta <= math.pi:
        return theta
    w = math.fmod(theta + math.pi, 2.0 * math.pi)
    if w < 0.0:
        w += 2.0 * math.pi
    w -= math.pi
    return math.pi if w == -math.pi else w


def direction_center(d: int) -> float:
    """Center angle of direction code d, in (-pi, pi]."""
    return wrap_angle((d - 1) * SECTOR)


DIRECTION_CENTERS = tuple(direction_center(d) for d in range(1, 9))


@dataclass(frozen=True)
class CriticalPointSet:
    """Indices (0-based, strictly increasing) and coordinates of the
    critical points of one stroke. Both endpoints are always present,
    so k >= 2."""

    stroke_id: str
    indices: tuple[int, ...]
    coords: tuple[tuple[float, float], ...]

    def __post_init__(self):
        assert len(self.indices) == len(self.coords)
        assert len(self.indices) >= 2
        assert all(a < b for a, b in zip(self.indices, self.indices[1:]))

    @property
    def k(self) -> int:
        return len(self.indices)


def _sign_change_marks(seq: np.ndarray) -> set[int]:
    # first difference taken as sgn(v_i - v_{i+1}); a change between
    # consecutive differences marks the middle sample (the extremum itself)
    d = np.sign(seq[:-1] - seq[1:])
    if len(d) < 2:
        return set()
    where = np.nonzero(d[:-1] != d[1:])[0] + 1
    return set(int(i) for i in where)


def extract_critical_points(stroke: Stroke) -> CriticalPointSet:
    """Union of x-motion and y-motion sign changes plus both endpoints."""
    xs = stroke.xs()
    ys = stroke.ys()
    marks = _sign_change_marks(xs) | _sign_change_marks(ys)
    marks |= {0, stroke.n - 1}
    indices = tuple(sorted(marks))
    coords = tuple((float(xs[i]), float(ys[i])) for i in indices)
    return CriticalPointSet(stroke.id, indices, coords)


def angle_between(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Full-quadrant angle of the displacement a -> b, in (-pi, pi]."""
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("coincident critical points")
    return math.atan2(dy, dx)


def deg2dir(theta: float) -> int:
    """Crisp direction code for an angle; each 45-degree sector owns its
    clockwise edge."""
    t = wrap_angle(theta)
    e = HALF_SECTOR
    if -e <= t < e:
        return 1
    if e <= t < 3 * e:
        return 2
    if 3 * e <= t < 5 * e:
        return 3
    if 5 * e <= t < 7 * e:
        return 4
    if t >= 7 * e or t < -7 * e:
        return 5
    if -7 * e <= t < -5 * e:
        return 6
    if -5 * e <= t < -3 * e:
        return 7
    return 8  # [-3pi/8, -pi/8)


def fuzzy_membership(theta_c: float, theta: float) -> float:
    """Triangular membership of theta against a direction center theta_c;
    1 at the center, 0 one full sector away, clamped below at 0."""
    return max(0.0, 1.0 - abs(wrap_angle(theta_c - theta)) / SECTOR)


@dataclass(frozen=True)
class FuzzyDirection:
    """An angle split over its two neighboring direction codes.

    d1 is the crisp sector (dominant, m1 >= m2); d2 is the cyclically
    adjacent code on the other side of the angle. m1 + m2 = 1.
    """

    d1: int
    m1: float
    d2: int
    m2: float


def fuzzify(theta: float) -> FuzzyDirection:
    t = wrap_angle(theta)
    d1 = deg2dir(t)
    offset = wrap_angle(t - direction_center(d1))
    if offset >= 0.0:
        d2 = d1 % 8 + 1  # counter-clockwise neighbor (also the exact-center tie)
    else:
        d2 = (d1 - 2) % 8 + 1
    m1 = fuzzy_membership(direction_center(d1), t)
    m2 = fuzzy_membership(direction_center(d2), t)
    return FuzzyDirection(d1, m1, d2, m2)


@dataclass(frozen=True)
class FeatureVector:
    """kind is one of df/edf/fdf; values are direction codes for df/edf
    and 8 per-direction means for fdf."""

    kind: str
    values: tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def _consecutive_angles(cps: CriticalPointSet) -> list[float]:
    angles = []
    for a, b in zip(cps.coords, cps.coords[1:]):
        try:
            angles.append(angle_between(a, b))
        except ValueError:
            continue  # coincident pair, skip
    if not angles:
        raise DegenerateStrokeError(
            f"stroke {cps.stroke_id!r}: all critical points coincide"
        )
    return angles


def compute_df(cps: CriticalPointSet) -> FeatureVector:
    """Directions between consecutive critical points; nominal length k-1
    (coincident pairs are skipped)."""
    codes = [deg2dir(t) for t in _consecutive_angles(cps)]
    return FeatureVector("df", tuple(float(c) for c in codes))


def compute_edf(cps: CriticalPointSet) -> FeatureVector:
    """Directions for every pair (l, m), l < m, row-major; always length
    k(k-1)/2. A coincident pair repeats the previous entry so the length
    contract holds; a leading run of coincident pairs borrows the first
    valid entry."""
    codes: list[float] = []
    pending = 0  # coincident pairs seen before any valid angle
    for l in range(cps.k):
        for m in range(l + 1, cps.k):
            try:
                codes.append(float(deg2dir(angle_between(cps.coords[l], cps.coords[m]))))
            except ValueError:
                if codes:
                    codes.append(codes[-1])
                else:
                    pending += 1
    if not codes:
        raise DegenerateStrokeError(
            f"stroke {cps.stroke_id!r}: all critical points coincide"
        )
    codes = [codes[0]] * pending + codes
    return FeatureVector("edf", tuple(codes))


# A membership this small is rounding noise from an angle sitting on a
# direction center; counting it as a deposit would let one ulp shift the
# per-direction mean by a whole 1/count step.
ZERO_MASS_EPS = 1e-12


def compute_fdf(cps: CriticalPointSet) -> FeatureVector:
    """Fuzzy directional feature: every consecutive angle deposits its two
    memberships, zero-mass deposits are dropped, and each direction's
    deposits are averaged. Directions nobody touched stay 0."""
    sums = [0.0] * 8
    counts = [0] * 8
    for theta in _consecutive_angles(cps):
        fz = fuzzify(theta)
        for d, m in ((fz.d1, fz.m1), (fz.d2, fz.m2)):
            if m > ZERO_MASS_EPS:
                sums[d - 1] += m
                counts[d - 1] += 1
    values = tuple(
        sums[i] / counts[i] if counts[i] else 0.0 for i in range(8)
    )
    return FeatureVector("fdf", values)


def embed_histogram(fv: FeatureVector) -> np.ndarray:
    """Normalized occurrence histogram of DF/EDF codes over the 8 bins.

    This is how the variable-length encodings are fed to the fixed-input
    classifiers; FDF passes through as-is elsewhere.
    """
    if fv.kind not in ("df", "edf"):
        raise ValueError(f"histogram embedding applies to df/edf, not {fv.kind}")
    if not fv.values:
        raise ValueError("empty code list")
    hist = np.zeros(8)
    for c in fv.values:
        hist[int(c) - 1] += 1.0
    return hist / hist.sum()


def feature_record(stroke: Stroke) -> dict:
    """Debug/overlay dump for one stroke: critical indices plus all three
    encodings in one JSON-ready object."""
    cps = extract_critical_points(stroke)
    return {
        "id": stroke.id,
        "critical_indices": list(cps.indices),
        "df": [int(v) for v in compute_df(cps).values],
        "edf": [int(v) for v in compute_edf(cps).values],
        "fdf": list(compute_fdf(cps).values),
    }
