"""Noise removal for raw pen traces.

Two smoothers, both applied to the x-sequence and the y-sequence of a stroke
independently and both length-preserving:

* ``dwt_denoise`` - Daubechies-8-tap (db4) wavelet decomposition with every
  detail band zeroed before reconstruction, i.e. a pure low-pass
  reconstruction. Boundaries are handled by half-sample symmetric extension
  and the transform keeps full expanded bands, so reconstruction with the
  details kept is exact (see tests).

* ``knotless_spline_smooth`` - least-squares cubic fitting over a variable
  span. Candidate spans start at half the stroke and shrink in steps of an
  eighth until just above a fifth of the initial span; the span with the
  smallest mean squared residual wins and its endpoints become knots. Knot
  count and placement are therefore outputs of the search, never inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SequenceTooShortError
from .ink import Stroke

# Orthonormal Daubechies scaling filter with 8 taps (four vanishing moments).
# Listed as the synthesis low-pass; the other three filters follow from the
# standard quadrature-mirror relations.
DB4_SCALING = np.array(
    [
        0.23037781330885523,
        0.7148465705525415,
        0.6308807679295904,
        -0.02798376941698385,
        -0.18703481171888114,
        0.030841381835986965,
        0.032883011666982945,
        -0.010597401784997278,
    ]
)

_REC_LO = DB4_SCALING
_DEC_LO = _REC_LO[::-1].copy()
_REC_HI = np.array(
    [(-1.0) ** k * _REC_LO[len(_REC_LO) - 1 - k] for k in range(len(_REC_LO))]
)
_DEC_HI = _REC_HI[::-1].copy()
FILTER_LEN = len(DB4_SCALING)


def _sym_extend(seq: np.ndarray, pad: int) -> np.ndarray:
    """Half-sample symmetric extension: edge samples are repeated mirrored."""
    left = seq[pad - 1 :: -1] if pad > 0 else seq[:0]
    right = seq[: len(seq) - pad - 1 : -1]
    return np.concatenate([left, seq, right])


def _analyze_level(seq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One decomposition step: (approximation, detail) at half rate.

    Only coefficients whose filter support fully overlaps the extended signal
    are kept, so a constant sequence yields constant approximations at every
    depth. Band length is floor((n + 7) / 2).
    """
    pad = FILTER_LEN - 1
    ext = _sym_extend(seq, pad)
    lo = np.convolve(ext, _DEC_LO, mode="valid")[1::2]
    hi = np.convolve(ext, _DEC_HI, mode="valid")[1::2]
    return lo, hi


def _synthesize_level(
    approx: np.ndarray, detail: np.ndarray, out_len: int
) -> np.ndarray:
    """Invert one decomposition step back to ``out_len`` samples."""
    pad = FILTER_LEN - 1
    full_len = out_len + 2 * pad + FILTER_LEN - 1
    up_a = np.zeros(full_len)
    up_d = np.zeros(full_len)
    up_a[FILTER_LEN : FILTER_LEN + 2 * len(approx) : 2] = approx
    up_d[FILTER_LEN : FILTER_LEN + 2 * len(detail) : 2] = detail
    rec = np.convolve(up_a, _REC_LO) + np.convolve(up_d, _REC_HI)
    start = 2 * (FILTER_LEN - 1)
    return rec[start : start + out_len]


def dwt_denoise(seq: np.ndarray, levels: int = 1) -> np.ndarray:
    """Low-pass a sequence by zeroing all detail bands of a db4 decomposition.

    Output length equals input length. Raises SequenceTooShortError when any
    level would see fewer samples than the 8-tap filter support.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    seq = np.asarray(seq, dtype=float)
    lengths = []
    cur = seq
    for level in range(1, levels + 1):
        if len(cur) < FILTER_LEN:
            raise SequenceTooShortError(
                f"level {level} sees {len(cur)} samples but the filter needs "
                f"{FILTER_LEN}; use fewer levels"
            )
        lengths.append(len(cur))
        cur, _ = _analyze_level(cur)
    for out_len in reversed(lengths):
        cur = _synthesize_level(cur, np.zeros_like(cur), out_len)
    return cur


@dataclass(frozen=True)
class SpanSchedule:
    """Descending candidate window sizes for the cubic span search."""

    initial: int
    step: int
    floor_span: int
    candidates: tuple[int, ...]


def span_schedule(n: int) -> SpanSchedule:
    """Schedule for an n-point sequence: start at n/2, shrink by n/8 down to
    the smallest candidate still above a fifth of the initial span."""
    initial = n // 2
    step = n // 8
    floor_span = -(-initial // 5)  # ceil(0.2 * initial)
    candidates = []
    span = initial
    while span > floor_span:
        candidates.append(span)
        if step == 0:
            break
        span -= step
    if not candidates:
        candidates = [initial]
    return SpanSchedule(initial, step, floor_span, tuple(candidates))


@dataclass(frozen=True)
class SplineFit:
    """Winning cubic over one span, in index normalized to [0, 1]."""

    coefficients: tuple[float, float, float, float]
    span_start: int
    span_end: int  # inclusive
    mse: float

    def values(self) -> np.ndarray:
        length = self.span_end - self.span_start + 1
        u = np.linspace(0.0, 1.0, length)
        a0, a1, a2, a3 = self.coefficients
        return a0 + u * (a1 + u * (a2 + u * a3))


def _fit_cubic(window: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares cubic via the 4x4 normal equations; returns (coefs, mse)."""
    u = np.linspace(0.0, 1.0, len(window))
    v = np.vander(u, 4, increasing=True)
    gram = v.T @ v
    rhs = v.T @ window
    coefs = np.linalg.solve(gram, rhs)
    resid = v @ coefs - window
    return coefs, float(np.mean(resid * resid))


def _degenerate_fit(seq: np.ndarray, window_start: int) -> SplineFit:
    """Fewer than 4 points left: a polynomial through all of them (copies the
    tail unchanged up to rounding)."""
    window = seq[window_start:]
    u = np.linspace(0.0, 1.0, len(window)) if len(window) > 1 else np.zeros(1)
    v = np.vander(u, len(window), increasing=True)
    coefs = np.zeros(4)
    coefs[: len(window)] = np.linalg.solve(v, window)
    return SplineFit(
        tuple(float(a) for a in coefs),
        window_start,
        len(seq) - 1,
        0.0,
    )


def spline_span_search(
    seq: np.ndarray, window_start: int, schedule: SpanSchedule | None = None
) -> SplineFit:
    """Try every candidate span anchored at ``window_start`` and keep the fit
    with the smallest mean squared residual; ties go to the larger span."""
    seq = np.asarray(seq, dtype=float)
    remaining = len(seq) - window_start
    if remaining < 1:
        raise SequenceTooShortError(f"no points left at index {window_start}")
    if remaining < 4:
        return _degenerate_fit(seq, window_start)
    if schedule is None:
        schedule = span_schedule(len(seq))

    spans = []
    for cand in schedule.candidates:
        span = max(4, min(cand, remaining))
        if span not in spans:
            spans.append(span)

    best: SplineFit | None = None
    for span in spans:  # descending by construction
        window = seq[window_start : window_start + span]
        coefs, mse = _fit_cubic(window)
        if best is None or mse < best.mse:
            best = SplineFit(
                tuple(float(a) for a in coefs),
                window_start,
                window_start + span - 1,
                mse,
            )
    assert best is not None
    return best


def smooth_sequence(seq: np.ndarray) -> tuple[np.ndarray, list[SplineFit]]:
    """Cover a sequence with MSE-optimal cubic spans and return the smoothed
    values plus the chosen fits. Consecutive spans share their boundary point;
    a tail shorter than 4 points is copied unchanged."""
    seq = np.asarray(seq, dtype=float)
    n = len(seq)
    out = seq.copy()
    if n < 4:
        return out, []
    schedule = span_schedule(n)
    fits = []
    start = 0
    while n - start >= 4:
        fit = spline_span_search(seq, start, schedule)
        out[fit.span_start : fit.span_end + 1] = fit.values()
        fits.append(fit)
        start = fit.span_end
    return out, fits


def knotless_spline_smooth(stroke: Stroke) -> Stroke:
    """Smooth x and y independently with the variable-span cubic search.

    Strokes with fewer than 4 points are returned unchanged.
    """
    if stroke.n < 4:
        return stroke
    sx, _ = smooth_sequence(stroke.xs())
    sy, _ = smooth_sequence(stroke.ys())
    return stroke.with_coords(sx, sy)
