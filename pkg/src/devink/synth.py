"""Labelled synthetic primitive strokes.

Recorded corpora are small and not always shareable, so training and the
benchmark runs use generated ink: each supported primitive has a fixed
skeleton path, and variation is layered on top as a per-writer rotation
and scale, per-sample coordinate jitter, and a monotone warp of the
sampling density standing in for writing-speed changes.

Determinism contract: every random draw comes from a substream keyed by
(seed, tag, primitive, writer, sample), so a fixed seed reproduces the
dataset byte for byte and adding writers or samples never disturbs the
ones already generated.  The draw order inside a substream is part of
that contract; reordering draws is a format break.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import UnknownPrimitiveError
from .ink import Dataset, Point, Stroke
from .primitives import PrimitiveId, primitive_by_name

# Skeletons live in a unit box with y pointing up, as (anchor list, base
# point count).  Because the classifiers summarize transition directions,
# most shapes are chosen so that no two share a direction multiset (order
# alone does not separate a direction histogram).  Two deliberate
# exceptions, T against R and t against e, repeat a multiset and differ
# only by a half-sector lean: graded direction memberships resolve the
# lean while hard sector counts cannot, which is the case the fuzzy
# features exist for.  Anchor counts loosely track how wiggly each shape
# is so the complexity ordering (e and R simplest, gh and k busiest)
# survives smoothing.
_SKELETONS: dict[str, tuple[tuple[tuple[float, float], ...], int]] = {
    # right-leaning S-curl: E, SE, SW, SE, E
    "u": (
        ((0.20, 0.92), (0.60, 0.98), (0.82, 0.80), (0.55, 0.60),
         (0.30, 0.45), (0.45, 0.22), (0.75, 0.12)),
        78,
    ),
    # upward wave, the only north-dominant shape: N, NE, NNW, ENE
    "i": (
        ((0.35, 0.10), (0.22, 0.38), (0.45, 0.60), (0.30, 0.85),
         (0.55, 0.95)),
        69,
    ),
    # top bar, diagonal into a drop: E, SW, S
    "e": (
        ((0.15, 0.85), (0.80, 0.85), (0.45, 0.50), (0.45, 0.12)),
        54,
    ),
    # e leaned east by half a sector; same direction codes as e, apart
    # only in within-sector slant
    "t": (
        ((0.08, 0.76), (0.71, 0.91), (0.45, 0.49), (0.54, 0.12)),
        54,
    ),
    # dense zigzag with a tall right flank
    "k": (
        ((0.15, 0.90), (0.40, 0.75), (0.20, 0.55), (0.45, 0.40),
         (0.25, 0.20), (0.60, 0.15), (0.80, 0.35), (0.80, 0.80)),
        96,
    ),
    # plain angle-seven: E then a straight drop
    "R": (
        ((0.20, 0.88), (0.75, 0.88), (0.70, 0.50), (0.72, 0.12)),
        54,
    ),
    # the seven leaned east by half a sector; same direction codes as R,
    # apart only in within-sector slant
    "T": (
        ((0.12, 0.80), (0.65, 0.93), (0.69, 0.55), (0.80, 0.18)),
        54,
    ),
    # open bowl rising into a tall final drop: S, SE, NE, N, S
    "v": (
        ((0.25, 0.80), (0.32, 0.50), (0.55, 0.38), (0.75, 0.50),
         (0.78, 0.85), (0.80, 0.45), (0.78, 0.12)),
        72,
    ),
    # hook that returns west: S, SE, ENE, NNW, W
    "g": (
        ((0.30, 0.88), (0.28, 0.40), (0.45, 0.15), (0.72, 0.25),
         (0.60, 0.55), (0.30, 0.60)),
        66,
    ),
    # northeast zigzag climbing out the top: NE, SE, NE, SE, N
    "gh": (
        ((0.12, 0.55), (0.30, 0.85), (0.45, 0.60), (0.62, 0.90),
         (0.78, 0.68), (0.85, 0.90)),
        90,
    ),
    # double right bulge closing west: E, SE, SW, SE, SW, W
    "D": (
        ((0.30, 0.90), (0.65, 0.95), (0.80, 0.70), (0.60, 0.50),
         (0.80, 0.30), (0.55, 0.10), (0.25, 0.20)),
        84,
    ),
    # left-entry bowl: W, SW, SE, E, NE
    "c": (
        ((0.75, 0.90), (0.40, 0.88), (0.22, 0.60), (0.38, 0.30),
         (0.70, 0.25), (0.80, 0.50)),
        84,
    ),
}

DEFAULT_PRIMITIVES = tuple(primitive_by_name(n) for n in _SKELETONS)

# Device frame: unit box scaled and centred on a tablet-like coordinate
# range, so jitter_sigma is in the same units a digitizer would report.
_BOX = 160.0
_MARGIN = 20.0
_TICK_MS = 10

# Substream tags (second entry of the rng key).
_WRITER_STREAM = 1
_SAMPLE_STREAM = 2


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for one generated dataset.

    Defaults are the calibrated benchmark settings: strong enough jitter
    that raw critical points are visibly unstable, mild writer affines
    that keep classes separable.
    """

    primitives: tuple[PrimitiveId, ...] = DEFAULT_PRIMITIVES
    writers: int = 20
    samples_per_writer: int = 10
    jitter_sigma: float = 1.6
    rotation_range: float = 0.04
    scale_range: tuple[float, float] = (0.9, 1.1)
    speed_warp: float = 0.35
    seed: int = 42

    def __post_init__(self):
        if not self.primitives:
            raise ValueError("primitives must be non-empty")
        if self.writers < 1 or self.samples_per_writer < 1:
            raise ValueError("writers and samples_per_writer must be >= 1")
        if self.jitter_sigma < 0:
            raise ValueError("jitter_sigma must be >= 0")
        if self.rotation_range < 0:
            raise ValueError("rotation_range must be >= 0")
        lo, hi = self.scale_range
        if not (0 < lo <= hi):
            raise ValueError("scale_range must satisfy 0 < lo <= hi")
        if self.speed_warp < 0:
            raise ValueError("speed_warp must be >= 0")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def skeleton_names() -> tuple[str, ...]:
    return tuple(_SKELETONS)


def _skeleton(prim: PrimitiveId) -> tuple[np.ndarray, int]:
    try:
        anchors, base = _SKELETONS[prim.name]
    except KeyError:
        raise UnknownPrimitiveError(
            f"no skeleton for primitive {prim.name!r}; "
            f"available skeletons: {', '.join(_SKELETONS)}"
        ) from None
    return np.asarray(anchors, dtype=float), base


def _sample_path(anchors: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Evaluate a smooth curve through the anchors at parameters in [0, 1]."""
    m = len(anchors) - 1
    curve = CubicSpline(np.arange(m + 1), anchors, axis=0, bc_type="natural")
    return curve(ts * m)


def _density_warp(u: np.ndarray, a: float) -> np.ndarray:
    """Monotone [0,1] -> [0,1] warp; a > 0 crowds points toward the start
    (a slow beginning), a < 0 toward the end, a = 0 is the identity."""
    if a == 0.0:
        return u
    return np.expm1(a * u) / np.expm1(a)


def generate_synthetic(cfg: SynthConfig) -> Dataset:
    """Generate writers x samples strokes for every configured primitive."""
    strokes = []
    center = _MARGIN + _BOX / 2.0
    for prim in cfg.primitives:
        anchors, base_points = _skeleton(prim)
        for writer in range(cfg.writers):
            wrng = np.random.default_rng([cfg.seed, _WRITER_STREAM, writer])
            theta = wrng.uniform(-cfg.rotation_range, cfg.rotation_range)
            sx = wrng.uniform(*cfg.scale_range)
            sy = wrng.uniform(*cfg.scale_range)
            rot = np.array(
                [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
            )
            affine = rot @ np.diag([sx, sy])
            for sample in range(cfg.samples_per_writer):
                srng = np.random.default_rng(
                    [cfg.seed, _SAMPLE_STREAM, prim.index, writer, sample]
                )
                skew = srng.uniform(-cfg.speed_warp, cfg.speed_warp)
                count_scale = srng.uniform(
                    1.0 / (1.0 + cfg.speed_warp), 1.0 + cfg.speed_warp
                )
                n = max(12, round(base_points * count_scale))
                u = _density_warp(np.linspace(0.0, 1.0, n), skew)
                path = _sample_path(anchors, u) * _BOX + _MARGIN
                path = (path - center) @ affine.T + center
                path += srng.normal(0.0, cfg.jitter_sigma, size=(n, 2))
                points = tuple(
                    Point(float(x), float(y), _TICK_MS * j)
                    for j, (x, y) in enumerate(path)
                )
                strokes.append(
                    Stroke(
                        id=f"{prim.name}-w{writer:02d}-s{sample:02d}",
                        points=points,
                        label=prim,
                    )
                )
    return Dataset(strokes=tuple(strokes), source="synthetic")
