"""Cross-validation harness and report emission tests."""

import json

import numpy as np
import pytest

from devink.errors import TrainingDataError
from devink.harness import (
    REPORT_FORMAT,
    REPORT_VERSION,
    emit_report,
    evaluate,
    split_folds,
)
from devink.ink import Dataset, Point, Stroke
from devink.primitives import primitive_by_name
from devink.synth import SynthConfig, generate_synthetic


def _line_stroke(sid, label_name, dx, dy, n=20, x0=0.0, y0=0.0):
    lbl = primitive_by_name(label_name)
    pts = tuple(
        Point(x0 + dx * k, y0 + dy * k, 10 * k) for k in range(n)
    )
    return Stroke(sid, pts, lbl)


def _toy_dataset(per_class=10):
    strokes = []
    for i in range(per_class):
        strokes.append(_line_stroke(f"u{i}", "u", 3.0, 0.1 * i))
        strokes.append(_line_stroke(f"e{i}", "e", 0.1 * i, 3.0))
    return Dataset(tuple(strokes), source="isolated")


# ---------------------------------------------------------------------------
# fold splitting


def test_folds_partition_the_dataset():
    ds = _toy_dataset(per_class=10)
    folds = split_folds(ds, 5, seed=0)
    assert len(folds) == 5
    all_test_ids = []
    for train, test in folds:
        train_ids = {s.id for s in train.strokes}
        test_ids = {s.id for s in test.strokes}
        assert train_ids.isdisjoint(test_ids)
        assert train_ids | test_ids == {s.id for s in ds.strokes}
        all_test_ids.extend(test_ids)
    # every stroke is tested exactly once across the folds
    assert sorted(all_test_ids) == sorted(s.id for s in ds.strokes)


def test_folds_are_stratified():
    ds = _toy_dataset(per_class=10)
    for _, test in split_folds(ds, 5, seed=3):
        by_class = {}
        for s in test.strokes:
            by_class[s.label.name] = by_class.get(s.label.name, 0) + 1
        assert by_class == {"u": 2, "e": 2}


def test_split_is_seed_deterministic():
    ds = _toy_dataset()
    a = split_folds(ds, 5, seed=11)
    b = split_folds(ds, 5, seed=11)
    assert [(tr.strokes, te.strokes) for tr, te in a] == [
        (tr.strokes, te.strokes) for tr, te in b
    ]
    c = split_folds(ds, 5, seed=12)
    assert any(
        te_a.strokes != te_c.strokes for (_, te_a), (_, te_c) in zip(a, c)
    )


def test_split_rejects_underfilled_class():
    strokes = tuple(_line_stroke(f"u{i}", "u", 3.0, 0.0, x0=float(i)) for i in range(3))
    strokes += tuple(
        _line_stroke(f"e{i}", "e", 0.0, 3.0, x0=float(i)) for i in range(5)
    )
    with pytest.raises(TrainingDataError, match=r"'u' has 3 samples.*5-fold"):
        split_folds(Dataset(strokes), 5, seed=0)


def test_split_rejects_single_fold():
    with pytest.raises(ValueError):
        split_folds(_toy_dataset(), 1, seed=0)


# ---------------------------------------------------------------------------
# evaluate


def test_separable_classes_score_perfectly():
    # axis-aligned lines vs verticals are trivially separable in any of
    # the direction features, so every fold must come back clean
    report = evaluate(
        _toy_dataset(per_class=10),
        preprocess="raw",
        feature="fdf",
        classifier="gaussian",
        folds=5,
        alphas=(1, 2),
        seed=0,
    )
    assert report.accuracy == {1: 1.0, 2: 1.0}
    assert len(report.fold_accuracies) == 5
    assert all(f[1] == 1.0 for f in report.fold_accuracies)
    u = primitive_by_name("u")
    e = primitive_by_name("e")
    assert report.confusion[u.index - 1, u.index - 1] == 10
    assert report.confusion[e.index - 1, e.index - 1] == 10
    assert report.confusion.sum() == 20


def test_nbest_accuracy_never_decreases():
    ds = generate_synthetic(
        SynthConfig(writers=5, samples_per_writer=5, seed=3)
    )
    report = evaluate(
        ds,
        preprocess="spline",
        feature="fdf",
        classifier="gaussian",
        folds=5,
        alphas=(1, 2, 5),
        seed=0,
    )
    assert report.accuracy[1] <= report.accuracy[2] <= report.accuracy[5]
    assert report.confusion.sum() == len(ds)


def test_evaluate_is_deterministic():
    ds = generate_synthetic(SynthConfig(writers=5, samples_per_writer=5, seed=3))
    kw = dict(preprocess="dwt", feature="edf", classifier="gaussian", folds=5, seed=4)
    assert evaluate(ds, **kw) == evaluate(ds, **kw)


def test_report_config_echoes_inputs():
    report = evaluate(
        _toy_dataset(),
        preprocess="raw",
        feature="df",
        classifier="svm",
        folds=2,
        alphas=(1,),
        seed=9,
        svm_c=5.0,
        svm_gamma=0.7,
    )
    cfg = report.config
    assert cfg["preprocess"] == "raw"
    assert cfg["feature"] == "df"
    assert cfg["classifier"] == "svm"
    assert cfg["folds"] == 2
    assert cfg["seed"] == 9
    assert cfg["svm_c"] == 5.0
    assert cfg["svm_gamma"] == 0.7


# ---------------------------------------------------------------------------
# report files


def _tiny_report(**kw):
    defaults = dict(
        preprocess="raw", feature="fdf", classifier="gaussian", folds=2, alphas=(1, 2)
    )
    defaults.update(kw)
    return evaluate(_toy_dataset(per_class=4), seed=0, **defaults)


def test_json_report_round_trips(tmp_path):
    report = _tiny_report()
    p = tmp_path / "report.json"
    emit_report(report, p)
    doc = json.loads(p.read_text())
    assert doc["format"] == REPORT_FORMAT
    assert doc["version"] == REPORT_VERSION
    assert doc["alphas"] == [1, 2]
    assert doc["accuracy"] == {"1": 1.0, "2": 1.0}
    assert np.array_equal(np.array(doc["confusion"]), report.confusion)


def test_json_report_bytes_are_stable(tmp_path):
    report = _tiny_report()
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    emit_report(report, p1)
    emit_report(report, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_bytes().endswith(b"\n")


def test_multi_report_csv_has_one_row_per_combo(tmp_path):
    reports = [
        _tiny_report(feature="fdf"),
        _tiny_report(feature="edf"),
    ]
    p = tmp_path / "sweep.csv"
    emit_report(reports, p, fmt="csv")
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "preprocess,feature,classifier,alpha_1,alpha_2"
    assert len(lines) == 3
    assert lines[1].startswith("raw,fdf,gaussian,")
    assert lines[2].startswith("raw,edf,gaussian,")
    for cell in lines[1].split(",")[3:]:
        float(cell)


def test_csv_rejects_mismatched_alphas(tmp_path):
    reports = [_tiny_report(alphas=(1, 2)), _tiny_report(alphas=(1,))]
    with pytest.raises(ValueError):
        emit_report(reports, tmp_path / "bad.csv", fmt="csv")


def test_unknown_format_rejected(tmp_path):
    with pytest.raises(ValueError, match="yaml"):
        emit_report(_tiny_report(), tmp_path / "r.yaml", fmt="yaml")
