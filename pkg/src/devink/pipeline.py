"""Preprocess -> feature -> classifier wiring shared by the CLI, the
evaluation harness and the HTTP service.

The three stages are configured by plain strings so that a model file can
record its own pipeline and a loaded model can re-run it on new ink.
"""

from __future__ import annotations

from .classifiers import (
    RankedCandidates,
    TrainedModel,
    classify,
    train_dtw,
    train_gaussian,
    train_svm,
)
from .features import (
    compute_df,
    compute_edf,
    compute_fdf,
    embed_histogram,
    extract_critical_points,
)
from .ink import Dataset, Stroke
from .preprocess import dwt_denoise, knotless_spline_smooth

PREPROCESS_METHODS = ("raw", "dwt", "spline")
FEATURE_KINDS = ("df", "edf", "fdf")
CLASSIFIER_KINDS = ("gaussian", "dtw", "svm")

# One analysis level halves the band that carries jitter; deeper levels buy
# little on strokes this short and would have to travel inside the model
# file, so the depth is fixed here instead.
DWT_LEVELS = 1


def validate_combo(preprocess: str, feature: str, classifier: str) -> None:
    """Reject pipeline configurations outside the supported design space."""
    if preprocess not in PREPROCESS_METHODS:
        raise ValueError(
            f"unknown preprocess method {preprocess!r}; "
            f"choose one of {', '.join(PREPROCESS_METHODS)}"
        )
    if feature not in FEATURE_KINDS:
        raise ValueError(
            f"unknown feature kind {feature!r}; "
            f"choose one of {', '.join(FEATURE_KINDS)}"
        )
    if classifier not in CLASSIFIER_KINDS:
        raise ValueError(
            f"unknown classifier {classifier!r}; "
            f"choose one of {', '.join(CLASSIFIER_KINDS)}"
        )
    if classifier == "dtw" and feature == "fdf":
        raise ValueError(
            "dtw aligns variable-length direction-code sequences, but fdf is "
            "a fixed-length 8-vector; use feature df or edf with dtw"
        )


def preprocess_stroke(stroke: Stroke, method: str, levels: int = DWT_LEVELS) -> Stroke:
    """Return the smoothed stroke for the given method.

    A stroke shorter than the 8-tap wavelet filter support has no detail
    band to remove, so the dwt method passes it through unchanged (the
    spline search already does the same below 4 points).
    """
    if method == "raw":
        return stroke
    if method == "spline":
        return knotless_spline_smooth(stroke)
    if method == "dwt":
        if stroke.n < 8:
            return stroke
        return stroke.with_coords(
            dwt_denoise(stroke.xs(), levels), dwt_denoise(stroke.ys(), levels)
        )
    raise ValueError(f"unknown preprocess method {method!r}")


def feature_input(stroke: Stroke, feature: str, classifier: str):
    """Extract the representation the given classifier consumes.

    dtw works on the direction-code sequence itself; gaussian and svm need
    fixed-length vectors, so df and edf go through the histogram embedding
    while fdf is already an 8-vector.
    """
    cps = extract_critical_points(stroke)
    if feature == "fdf":
        return compute_fdf(cps).as_array()
    fv = compute_df(cps) if feature == "df" else compute_edf(cps)
    if classifier == "dtw":
        return fv.values
    return embed_histogram(fv)


def train_model(
    dataset: Dataset,
    *,
    preprocess: str,
    feature: str,
    classifier: str,
    svm_c: float = 10.0,
    svm_gamma: float = 1.0,
    dtw_tau: float = 0.0,
    levels: int = DWT_LEVELS,
) -> TrainedModel:
    """Train a classifier on a fully labelled dataset and wrap it with the
    pipeline settings it was trained under."""
    validate_combo(preprocess, feature, classifier)
    dataset.labelled()
    inputs = []
    for s in dataset.strokes:
        sm = preprocess_stroke(s, preprocess, levels)
        inputs.append((s.id, feature_input(sm, feature, classifier), s.label))
    if classifier == "gaussian":
        model = train_gaussian([(vec, pid) for _, vec, pid in inputs])
    elif classifier == "svm":
        model = train_svm(
            [(vec, pid) for _, vec, pid in inputs], C=svm_c, gamma=svm_gamma
        )
    else:
        model = train_dtw(inputs, feature_kind=feature, tau=dtw_tau)
    return TrainedModel(
        kind=classifier, feature=feature, preprocess=preprocess, model=model
    )


def recognize(
    tm: TrainedModel, stroke: Stroke, levels: int = DWT_LEVELS
) -> RankedCandidates:
    """Run one stroke through the model's own pipeline."""
    sm = preprocess_stroke(stroke, tm.preprocess, levels)
    return classify(tm, feature_input(sm, tm.feature, tm.kind))
