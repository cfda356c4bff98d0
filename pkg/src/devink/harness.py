"""Dataset splitting, cross-validated N-best evaluation and report files.

A "report" is one pipeline (preprocess, feature, classifier) evaluated by
stratified k-fold cross validation: per-rank-threshold accuracy, per-fold
accuracies, and a rank-1 confusion matrix over the full 69-class registry.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import pipeline
from .classifiers import (
    TrainedModel,
    classify,
    train_dtw,
    train_gaussian,
    train_svm,
)
from .errors import TrainingDataError
from .ink import Dataset
from .primitives import PRIMITIVE_COUNT

REPORT_FORMAT = "devink-report"
REPORT_VERSION = 1


def split_folds(
    dataset: Dataset, folds: int, seed: int
) -> list[tuple[Dataset, Dataset]]:
    """Stratified k-fold split; every fold serves once as the test side.

    Deterministic for a fixed seed: classes are visited in registry order
    and each class's samples are shuffled by one seeded generator.
    """
    if folds < 2:
        raise ValueError("folds must be >= 2")
    dataset.labelled()
    by_class: dict = {}
    for i, s in enumerate(dataset.strokes):
        by_class.setdefault(s.label, []).append(i)
    for pid, idx in sorted(by_class.items(), key=lambda kv: kv[0].index):
        if len(idx) < folds:
            raise TrainingDataError(
                f"class {pid.name!r} has {len(idx)} samples; "
                f"{folds}-fold split needs at least {folds}"
            )
    rng = np.random.default_rng(seed)
    test_parts: list[list[int]] = [[] for _ in range(folds)]
    for pid, idx in sorted(by_class.items(), key=lambda kv: kv[0].index):
        order = rng.permutation(len(idx))
        for pos, j in enumerate(order):
            test_parts[pos % folds].append(idx[j])
    out = []
    for part in test_parts:
        test_set = set(part)
        train = tuple(s for i, s in enumerate(dataset.strokes) if i not in test_set)
        test = tuple(s for i, s in enumerate(dataset.strokes) if i in test_set)
        out.append(
            (Dataset(train, source=dataset.source), Dataset(test, source=dataset.source))
        )
    return out


@dataclass(frozen=True)
class EvalReport:
    """Cross-validation result for one pipeline configuration."""

    config: dict
    alphas: tuple[int, ...]
    accuracy: dict[int, float]  # pooled over folds, keyed by alpha
    fold_accuracies: tuple[dict[int, float], ...]
    confusion: np.ndarray  # (69, 69) rank-1 counts, rows = true class

    def __post_init__(self):
        assert self.confusion.shape == (PRIMITIVE_COUNT, PRIMITIVE_COUNT)

    def __eq__(self, other):
        return (
            isinstance(other, EvalReport)
            and self.config == other.config
            and self.alphas == other.alphas
            and self.accuracy == other.accuracy
            and self.fold_accuracies == other.fold_accuracies
            and np.array_equal(self.confusion, other.confusion)
        )


def evaluate(
    dataset: Dataset,
    *,
    preprocess: str,
    feature: str,
    classifier: str,
    folds: int = 5,
    alphas: tuple[int, ...] = (1, 2, 5),
    seed: int = 0,
    svm_c: float = 10.0,
    svm_gamma: float = 1.0,
    dtw_tau: float = 0.0,
    levels: int = pipeline.DWT_LEVELS,
) -> EvalReport:
    """Train on each fold's 80% side, score its 20% side, pool the results.

    A test stroke counts as correct at threshold alpha when the true label
    sits at rank <= alpha; the confusion matrix uses rank 1 only.
    """
    pipeline.validate_combo(preprocess, feature, classifier)
    if not alphas or any(a < 1 for a in alphas):
        raise ValueError("alphas must be positive rank thresholds")
    alphas = tuple(sorted(alphas))

    # Features depend only on (preprocess, feature), not the fold, so
    # extract once up front instead of once per fold.
    feats = {
        s.id: pipeline.feature_input(
            pipeline.preprocess_stroke(s, preprocess, levels), feature, classifier
        )
        for s in dataset.strokes
    }

    fold_accs: list[dict[int, float]] = []
    hits = {a: 0 for a in alphas}
    total = 0
    confusion = np.zeros((PRIMITIVE_COUNT, PRIMITIVE_COUNT), dtype=int)
    for train, test in split_folds(dataset, folds, seed):
        entries = [(feats[s.id], s.label) for s in train.strokes]
        if classifier == "gaussian":
            model = train_gaussian(entries)
        elif classifier == "svm":
            model = train_svm(entries, C=svm_c, gamma=svm_gamma)
        else:
            model = train_dtw(
                [(s.id, feats[s.id], s.label) for s in train.strokes],
                feature_kind=feature,
                tau=dtw_tau,
            )
        tm = TrainedModel(
            kind=classifier, feature=feature, preprocess=preprocess, model=model
        )
        fold_hits = {a: 0 for a in alphas}
        for s in test.strokes:
            ranked = classify(tm, feats[s.id])
            try:
                rank = ranked.rank_of(s.label)
            except KeyError:
                # svm rankings only cover trained classes; an absent true
                # label is simply wrong at every threshold
                rank = None
            for a in alphas:
                if rank is not None and rank <= a:
                    fold_hits[a] += 1
                    hits[a] += 1
            top = ranked.top(1)[0][0]
            confusion[s.label.index - 1, top.index - 1] += 1
        fold_accs.append({a: fold_hits[a] / len(test.strokes) for a in alphas})
        total += len(test.strokes)

    return EvalReport(
        config={
            "preprocess": preprocess,
            "feature": feature,
            "classifier": classifier,
            "folds": folds,
            "seed": seed,
            "svm_c": svm_c,
            "svm_gamma": svm_gamma,
            "dtw_tau": dtw_tau,
            "levels": levels,
        },
        alphas=alphas,
        accuracy={a: hits[a] / total for a in alphas},
        fold_accuracies=tuple(fold_accs),
        confusion=confusion,
    )


def _report_dict(report: EvalReport) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "config": report.config,
        "alphas": list(report.alphas),
        "accuracy": {str(a): report.accuracy[a] for a in report.alphas},
        "fold_accuracies": [
            {str(a): f[a] for a in report.alphas} for f in report.fold_accuracies
        ],
        "confusion": report.confusion.tolist(),
    }


def emit_report(
    report: EvalReport | list[EvalReport] | tuple[EvalReport, ...],
    path: str | Path,
    fmt: str = "json",
) -> None:
    """Write one report (json: the complete record) or several (csv: one
    accuracy row per pipeline, columns are the rank thresholds)."""
    reports = [report] if isinstance(report, EvalReport) else list(report)
    path = Path(path)
    if fmt == "json":
        if len(reports) == 1:
            payload: dict = _report_dict(reports[0])
        else:
            payload = {
                "format": REPORT_FORMAT,
                "version": REPORT_VERSION,
                "reports": [_report_dict(r) for r in reports],
            }
        path.write_text(
            json.dumps(payload, separators=(",", ":"), sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return
    if fmt == "csv":
        alphas = reports[0].alphas if reports else ()
        for r in reports:
            if r.alphas != alphas:
                raise ValueError("csv output needs a common alpha set across reports")
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["preprocess", "feature", "classifier"] + [f"alpha_{a}" for a in alphas]
            )
            for r in reports:
                writer.writerow(
                    [r.config["preprocess"], r.config["feature"], r.config["classifier"]]
                    + [f"{r.accuracy[a]:.4f}" for a in alphas]
                )
        return
    raise ValueError(f"unknown report format {fmt!r}; choose json or csv")
