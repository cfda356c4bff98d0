"""Three classifiers over the 69-primitive registry, plus model files.

* Gaussian second-order statistics: per class a mean and covariance over
  8-vectors (FDF, or histogram-embedded DF/EDF); scoring is the
  log-likelihood of a full-covariance normal density.
* DTW nearest-average: per class a bag of direction-code templates;
  scoring is the average DTW distance with a circular mod-8 local cost.
  Leader clustering with radius tau thins the template bags.
* Multi-class SVM: one-vs-one RBF machines trained by a deterministic
  sequential-minimal-optimization solver written here (no external SVM
  dependency, the solver is part of what this package is about).

Every classifier ranks deterministically: ties fall back to class index.
Gaussian and DTW rankings always cover all 69 primitives; classes absent
from the model score -inf and sink to the bottom. Model files are
canonical JSON and round-trip bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ConvergenceError, ModelFormatError, TrainingDataError
from .primitives import REGISTRY_VERSION, PrimitiveId, all_primitives, primitive_by_index

FEATURE_KINDS = ("df", "edf", "fdf")
PREPROCESS_KINDS = ("raw", "dwt", "spline")


@dataclass(frozen=True)
class RankedCandidates:
    """Classes best-first as (primitive, score); scores never increase
    down the list and equal scores are ordered by class index."""

    entries: tuple[tuple[PrimitiveId, float], ...]

    def top(self, n: int) -> tuple[tuple[PrimitiveId, float], ...]:
        return self.entries[:n]

    def rank_of(self, primitive: PrimitiveId) -> int:
        """1-based position of a primitive in the ranking."""
        for rank, (pid, _) in enumerate(self.entries, start=1):
            if pid == primitive:
                return rank
        raise KeyError(primitive.name)


def _ranked(scored: dict[PrimitiveId, float], fill_all_69: bool) -> RankedCandidates:
    if fill_all_69:
        full = {pid: scored.get(pid, -math.inf) for pid in all_primitives()}
    else:
        full = dict(scored)
    order = sorted(full.items(), key=lambda kv: (-kv[1], kv[0].index))
    return RankedCandidates(tuple(order))


# ---------------------------------------------------------------------------
# Gaussian


@dataclass(frozen=True)
class GaussianClassModel:
    classes: tuple[PrimitiveId, ...]
    means: np.ndarray  # (c, 8)
    covariances: np.ndarray  # (c, 8, 8), positive-definite
    counts: tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, GaussianClassModel)
            and self.classes == other.classes
            and self.counts == other.counts
            and np.array_equal(self.means, other.means)
            and np.array_equal(self.covariances, other.covariances)
        )


def _regularize(cov: np.ndarray) -> np.ndarray:
    """Add lam*I (lam from the trace, 1e-6 floor) until Cholesky succeeds."""
    trace = float(np.trace(cov))
    lam = 1e-6 * trace / 8.0 if trace > 0.0 else 1e-6
    out = cov.copy()
    for _ in range(100):
        try:
            np.linalg.cholesky(out)
            return out
        except np.linalg.LinAlgError:
            out = out + lam * np.eye(8)
    raise ConvergenceError("covariance regularization did not reach positive-definite")


def train_gaussian(
    features: Sequence[tuple[Sequence[float], PrimitiveId]],
    classes: Sequence[PrimitiveId] | None = None,
) -> GaussianClassModel:
    """Per-class mean and unbiased covariance over 8-vectors.

    classes defaults to the labels present; passing an explicit roster
    makes a missing class an error instead of a silent omission.
    """
    by_class: dict[PrimitiveId, list[np.ndarray]] = {}
    for vec, pid in features:
        by_class.setdefault(pid, []).append(np.asarray(vec, dtype=float))
    roster = (
        tuple(sorted(by_class, key=lambda p: p.index))
        if classes is None
        else tuple(classes)
    )
    if not roster:
        raise TrainingDataError("no training samples")
    means, covs, counts = [], [], []
    for pid in roster:
        rows = by_class.get(pid)
        if not rows:
            raise TrainingDataError(f"class {pid.name!r} has no samples")
        x = np.stack(rows)
        beta = len(rows)
        mu = x.mean(axis=0)
        if beta >= 2:
            centered = x - mu
            cov = centered.T @ centered / (beta - 1)
        else:
            cov = np.zeros((8, 8))
        means.append(mu)
        covs.append(_regularize(cov))
        counts.append(beta)
    return GaussianClassModel(roster, np.stack(means), np.stack(covs), tuple(counts))


LOG_NORM_CONST = -4.0 * math.log(2.0 * math.pi)  # -(8/2) log 2pi


def gaussian_log_likelihood(model: GaussianClassModel, t: np.ndarray) -> np.ndarray:
    """Log density of t under each class, in roster order."""
    t = np.asarray(t, dtype=float)
    if t.shape != (8,) or not np.all(np.isfinite(t)):
        raise ValueError("input must be a finite 8-vector")
    out = np.empty(len(model.classes))
    for i in range(len(model.classes)):
        chol = np.linalg.cholesky(model.covariances[i])
        logdet = 2.0 * float(np.sum(np.log(np.diag(chol))))
        z = np.linalg.solve(chol, t - model.means[i])
        out[i] = LOG_NORM_CONST - 0.5 * logdet - 0.5 * float(z @ z)
    return out


def score_gaussian(model: GaussianClassModel, t: Sequence[float]) -> RankedCandidates:
    logp = gaussian_log_likelihood(model, np.asarray(t, dtype=float))
    return _ranked(
        {pid: float(lp) for pid, lp in zip(model.classes, logp)}, fill_all_69=True
    )


# ---------------------------------------------------------------------------
# DTW


def _circ_cost(p: int, q: int) -> int:
    d = abs(p - q)
    return min(d, 8 - d)


def dtw_distance(a: Sequence[int], b: Sequence[int]) -> float:
    """Unwindowed dynamic-time-warping cost between two code sequences.

    Steps (i-1,j), (i,j-1), (i-1,j-1); local cost is the circular
    direction distance, so codes 8 and 1 cost 1 apart, not 7.
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("dtw needs non-empty sequences")
    a = [int(v) for v in a]
    b = [int(v) for v in b]
    m = len(b)
    prev = [0.0] * m
    prev[0] = float(_circ_cost(a[0], b[0]))
    for j in range(1, m):
        prev[j] = prev[j - 1] + _circ_cost(a[0], b[j])
    for i in range(1, len(a)):
        cur = [0.0] * m
        cur[0] = prev[0] + _circ_cost(a[i], b[0])
        for j in range(1, m):
            cur[j] = _circ_cost(a[i], b[j]) + min(prev[j], prev[j - 1], cur[j - 1])
        prev = cur
    return prev[-1]


class DtwTemplate(NamedTuple):
    stroke_id: str
    codes: tuple[int, ...]


@dataclass(frozen=True)
class DtwTemplateSet:
    feature_kind: str  # df or edf
    templates: dict[PrimitiveId, tuple[DtwTemplate, ...]]

    def __post_init__(self):
        for pid, bag in self.templates.items():
            if not bag:
                raise TrainingDataError(f"class {pid.name!r} has an empty template bag")
            for t in bag:
                if not t.codes:
                    raise TrainingDataError(f"empty template for class {pid.name!r}")


def _leader_indices(seqs: Sequence[Sequence[int]], tau: float) -> list[int]:
    """Single-pass leader clustering; returns indices of cluster founders."""
    reps: list[int] = []
    for i, s in enumerate(seqs):
        for r in reps:
            if dtw_distance(seqs[r], s) <= tau:
                break
        else:
            reps.append(i)
    return reps


def cluster_templates(
    seqs: Sequence[Sequence[int]], tau: float
) -> list[tuple[int, ...]]:
    """Representatives (founding members) after leader clustering with
    radius tau. tau=0 merges only DTW-identical sequences; a huge tau
    collapses everything onto the first input."""
    return [tuple(int(v) for v in seqs[i]) for i in _leader_indices(seqs, tau)]


def train_dtw(
    entries: Sequence[tuple[str, Sequence[int], PrimitiveId]],
    feature_kind: str,
    tau: float = 0.0,
) -> DtwTemplateSet:
    """Cluster each class's code sequences and retain the representatives."""
    if feature_kind not in ("df", "edf"):
        raise ValueError("dtw templates hold df or edf codes")
    by_class: dict[PrimitiveId, list[tuple[str, tuple[int, ...]]]] = {}
    for stroke_id, codes, pid in entries:
        by_class.setdefault(pid, []).append(
            (stroke_id, tuple(int(v) for v in codes))
        )
    if not by_class:
        raise TrainingDataError("no training samples")
    templates = {}
    for pid in sorted(by_class, key=lambda p: p.index):
        rows = by_class[pid]
        keep = _leader_indices([codes for _, codes in rows], tau)
        templates[pid] = tuple(DtwTemplate(*rows[i]) for i in keep)
    return DtwTemplateSet(feature_kind, templates)


def classify_dtw(templates: DtwTemplateSet, t: Sequence[int]) -> RankedCandidates:
    """Rank primitives by ascending average template distance; scores are
    the negated averages so the usual best-first ordering applies."""
    scored = {}
    for pid, bag in templates.templates.items():
        avg = sum(dtw_distance(tpl.codes, t) for tpl in bag) / len(bag)
        scored[pid] = -avg
    return _ranked(scored, fill_all_69=True)


# ---------------------------------------------------------------------------
# SVM


def rbf_kernel(u: np.ndarray, v: np.ndarray, gamma: float) -> np.ndarray:
    """exp(-gamma * squared distance) for rows of u against rows of v."""
    u = np.atleast_2d(u)
    v = np.atleast_2d(v)
    d2 = (
        np.sum(u * u, axis=1)[:, None]
        + np.sum(v * v, axis=1)[None, :]
        - 2.0 * (u @ v.T)
    )
    return np.exp(-gamma * np.maximum(d2, 0.0))


KKT_TOL = 1e-3
# One iteration updates one pair of multipliers in O(n); problems here are
# a few hundred points, so this cap is far beyond normal convergence.
SMO_MAX_ITERS = 200_000


def smo_solve(
    kernel: np.ndarray, y: np.ndarray, c: float, tol: float = KKT_TOL
) -> tuple[np.ndarray, float]:
    """SMO with maximal-violating-pair selection; returns (alpha, b).

    Each iteration picks the most violating pair of multipliers and solves
    the two-variable subproblem analytically. The pair criterion compares
    errors directly, so no running bias estimate is involved (a stale bias
    can manufacture phantom violations that no pair step repairs); b is
    recovered from the final pair once the gap closes. Deterministic: ties
    in the arg-extrema go to the lowest index.
    """
    y = y.astype(float)
    alpha = np.zeros(len(y))
    # u_i = sum_j alpha_j y_j K(x_j, x_i), maintained incrementally
    u = np.zeros(len(y))

    def most_violating() -> tuple[int, int, float, float]:
        # "up" multipliers may grow their y-scaled value, "low" may shrink;
        # at the optimum min_up(E) >= max_low(E) within the tolerance.
        # Both sets are non-empty for any feasible alpha with two classes.
        e = u - y
        up = ((y > 0.0) & (alpha < c)) | ((y < 0.0) & (alpha > 0.0))
        low = ((y > 0.0) & (alpha > 0.0)) | ((y < 0.0) & (alpha < c))
        e_up = np.where(up, e, np.inf)
        e_low = np.where(low, e, -np.inf)
        i = int(np.argmin(e_up))
        j = int(np.argmax(e_low))
        return i, j, float(e_low[j] - e_up[i]), float(e_up[i] + e_low[j])

    for _ in range(SMO_MAX_ITERS):
        i1, i2, gap, e_sum = most_violating()
        if gap <= 2.0 * tol:
            # midpoint bias keeps every per-point violation within tol
            return alpha, -0.5 * e_sum
        a1_old, a2_old = alpha[i1], alpha[i2]
        y1, y2 = y[i1], y[i2]
        e1, e2 = u[i1] - y1, u[i2] - y2
        s = y1 * y2
        if s > 0:
            lo = max(0.0, a1_old + a2_old - c)
            hi = min(c, a1_old + a2_old)
        else:
            lo = max(0.0, a2_old - a1_old)
            hi = min(c, c + a2_old - a1_old)
        eta = kernel[i1, i1] + kernel[i2, i2] - 2.0 * kernel[i1, i2]
        if eta > 0.0:
            a2 = min(hi, max(lo, a2_old + y2 * (e1 - e2) / eta))
        else:
            # flat or concave along the pair: the gain
            #   g*(a2 - a2_old) - eta/2*(a2 - a2_old)^2
            # is maximized at an end of the feasible segment
            g = y2 * (e1 - e2)
            gain_lo = g * (lo - a2_old) - 0.5 * eta * (lo - a2_old) ** 2
            gain_hi = g * (hi - a2_old) - 0.5 * eta * (hi - a2_old) ** 2
            a2 = hi if gain_hi >= gain_lo else lo
        # Snap to the segment ends and then to the exact box bounds: the
        # segment ends are computed from other multipliers and can carry a
        # few ulps of dirt, and a multiplier sitting one ulp inside 0 or c
        # stays in the selection sets with no usable room.
        snap = 1e-10 * c
        if a2 - lo < snap:
            a2 = lo
        elif hi - a2 < snap:
            a2 = hi
        if a2 < snap:
            a2 = 0.0
        elif a2 > c - snap:
            a2 = c
        if a2 == a2_old:
            # The feasible segment collapsed to float dirt. Clean the pair
            # onto exact bounds, rebuild the cache and re-select; if there
            # is nothing to clean the solver genuinely cannot move.
            cleaned = alpha.copy()
            for idx in (i1, i2):
                if 0.0 < cleaned[idx] < snap:
                    cleaned[idx] = 0.0
                elif c - snap < cleaned[idx] < c:
                    cleaned[idx] = c
            if np.array_equal(cleaned, alpha):
                raise ConvergenceError(
                    f"smo cannot improve; worst KKT violation {gap / 2.0:.3e} "
                    f"(tol {tol:g})"
                )
            alpha[:] = cleaned
            u[:] = (alpha * y) @ kernel
            continue
        a1 = a1_old + s * (a2_old - a2)
        if a1 < snap:
            a1 = 0.0
        elif a1 > c - snap:
            a1 = c
        d1 = a1 - a1_old
        d2 = a2 - a2_old
        alpha[i1] = a1
        alpha[i2] = a2
        u += y1 * d1 * kernel[i1] + y2 * d2 * kernel[i2]
    _, _, gap, _ = most_violating()
    raise ConvergenceError(
        f"smo hit {SMO_MAX_ITERS} iterations; worst KKT violation "
        f"{gap / 2.0:.3e} (tol {tol:g})"
    )


@dataclass(frozen=True)
class SvmBinary:
    """One pairwise machine; decision > 0 votes for pos."""

    pos: PrimitiveId
    neg: PrimitiveId
    support_vectors: np.ndarray  # (m, 8)
    dual_coef: np.ndarray  # (m,), alpha_i * y_i
    bias: float

    def decision(self, t: np.ndarray, gamma: float) -> float:
        k = rbf_kernel(self.support_vectors, t.reshape(1, -1), gamma)[:, 0]
        return float(self.dual_coef @ k + self.bias)

    def __eq__(self, other):
        return (
            isinstance(other, SvmBinary)
            and self.pos == other.pos
            and self.neg == other.neg
            and self.bias == other.bias
            and np.array_equal(self.support_vectors, other.support_vectors)
            and np.array_equal(self.dual_coef, other.dual_coef)
        )


@dataclass(frozen=True)
class SvmModel:
    classes: tuple[PrimitiveId, ...]
    machines: tuple[SvmBinary, ...]
    C: float
    gamma: float


DEFAULT_SVM_C = 10.0
DEFAULT_SVM_GAMMA = 1.0


def train_svm(
    features: Sequence[tuple[Sequence[float], PrimitiveId]],
    C: float = DEFAULT_SVM_C,
    gamma: float = DEFAULT_SVM_GAMMA,
) -> SvmModel:
    """One-vs-one RBF machines over every class pair, trained by smo_solve."""
    by_class: dict[PrimitiveId, list[np.ndarray]] = {}
    for vec, pid in features:
        by_class.setdefault(pid, []).append(np.asarray(vec, dtype=float))
    roster = tuple(sorted(by_class, key=lambda p: p.index))
    if len(roster) < 2:
        raise TrainingDataError("svm needs at least two classes")
    machines = []
    for a_idx in range(len(roster)):
        for b_idx in range(a_idx + 1, len(roster)):
            pos, neg = roster[a_idx], roster[b_idx]
            x = np.vstack([np.stack(by_class[pos]), np.stack(by_class[neg])])
            y = np.concatenate(
                [np.ones(len(by_class[pos])), -np.ones(len(by_class[neg]))]
            )
            kernel = rbf_kernel(x, x, gamma)
            alpha, bias = smo_solve(kernel, y, C)
            keep = alpha > 0.0
            machines.append(
                SvmBinary(pos, neg, x[keep].copy(), (alpha * y)[keep].copy(), bias)
            )
    return SvmModel(roster, tuple(machines), float(C), float(gamma))


def predict_svm(model: SvmModel, t: Sequence[float]) -> RankedCandidates:
    """All machines vote; ranking by votes, then summed winning margins,
    then class index. The composite score is votes plus a margin fraction
    in [0, 1) so one float preserves the full ordering."""
    t = np.asarray(t, dtype=float)
    votes = {pid: 0 for pid in model.classes}
    margin = {pid: 0.0 for pid in model.classes}
    for mac in model.machines:
        d = mac.decision(t, model.gamma)
        winner = mac.pos if d >= 0.0 else mac.neg
        votes[winner] += 1
        margin[winner] += abs(d)
    scored = {}
    for pid in model.classes:
        m = margin[pid]
        scored[pid] = votes[pid] + m / (1.0 + m)
    return _ranked(scored, fill_all_69=False)


# ---------------------------------------------------------------------------
# model files


MODEL_FORMAT = "devink-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class TrainedModel:
    """A classifier plus the pipeline it was trained under, as saved to disk."""

    kind: str  # gaussian | dtw | svm
    feature: str  # df | edf | fdf
    preprocess: str  # raw | dwt | spline
    model: GaussianClassModel | DtwTemplateSet | SvmModel


def _payload(tm: TrainedModel) -> dict:
    m = tm.model
    if tm.kind == "gaussian":
        assert isinstance(m, GaussianClassModel)
        return {
            "classes": [p.index for p in m.classes],
            "counts": list(m.counts),
            "means": m.means.tolist(),
            "covariances": m.covariances.tolist(),
        }
    if tm.kind == "dtw":
        assert isinstance(m, DtwTemplateSet)
        return {
            "feature_kind": m.feature_kind,
            "templates": [
                [
                    pid.index,
                    [[t.stroke_id, list(t.codes)] for t in m.templates[pid]],
                ]
                for pid in sorted(m.templates, key=lambda p: p.index)
            ],
        }
    if tm.kind == "svm":
        assert isinstance(m, SvmModel)
        return {
            "C": m.C,
            "gamma": m.gamma,
            "classes": [p.index for p in m.classes],
            "machines": [
                {
                    "pos": mac.pos.index,
                    "neg": mac.neg.index,
                    "support_vectors": mac.support_vectors.tolist(),
                    "dual_coef": mac.dual_coef.tolist(),
                    "bias": mac.bias,
                }
                for mac in m.machines
            ],
        }
    raise ModelFormatError(f"unknown model kind {tm.kind!r}")


def dumps_model(tm: TrainedModel) -> str:
    if tm.feature not in FEATURE_KINDS or tm.preprocess not in PREPROCESS_KINDS:
        raise ModelFormatError(
            f"bad pipeline tags feature={tm.feature!r} preprocess={tm.preprocess!r}"
        )
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "registry_version": REGISTRY_VERSION,
        "kind": tm.kind,
        "feature": tm.feature,
        "preprocess": tm.preprocess,
        "payload": _payload(tm),
    }
    return json.dumps(doc, separators=(",", ":"))


def save_model(tm: TrainedModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(tm) + "\n", encoding="utf-8")


def _load_payload(kind: str, payload: dict) -> GaussianClassModel | DtwTemplateSet | SvmModel:
    if kind == "gaussian":
        classes = tuple(primitive_by_index(i) for i in payload["classes"])
        return GaussianClassModel(
            classes,
            np.array(payload["means"], dtype=float),
            np.array(payload["covariances"], dtype=float),
            tuple(int(c) for c in payload["counts"]),
        )
    if kind == "dtw":
        templates = {
            primitive_by_index(idx): tuple(
                DtwTemplate(sid, tuple(int(c) for c in codes)) for sid, codes in bag
            )
            for idx, bag in payload["templates"]
        }
        return DtwTemplateSet(payload["feature_kind"], templates)
    if kind == "svm":
        machines = tuple(
            SvmBinary(
                primitive_by_index(mp["pos"]),
                primitive_by_index(mp["neg"]),
                np.array(mp["support_vectors"], dtype=float).reshape(-1, 8),
                np.array(mp["dual_coef"], dtype=float),
                float(mp["bias"]),
            )
            for mp in payload["machines"]
        )
        classes = tuple(primitive_by_index(i) for i in payload["classes"])
        return SvmModel(classes, machines, float(payload["C"]), float(payload["gamma"]))
    raise ModelFormatError(f"unknown model kind {kind!r}")


def load_model(path: str | Path) -> TrainedModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not a model file")
    if doc.get("version") != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {doc.get('version')!r}")
    try:
        kind = doc["kind"]
        feature = doc["feature"]
        preprocess = doc["preprocess"]
        model = _load_payload(kind, doc["payload"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model payload: {exc}") from None
    if feature not in FEATURE_KINDS or preprocess not in PREPROCESS_KINDS:
        raise ModelFormatError(
            f"bad pipeline tags feature={feature!r} preprocess={preprocess!r}"
        )
    return TrainedModel(kind, feature, preprocess, model)


def classify(tm: TrainedModel, feature_input) -> RankedCandidates:
    """Dispatch to the right scorer for a loaded model."""
    if tm.kind == "gaussian":
        return score_gaussian(tm.model, feature_input)
    if tm.kind == "dtw":
        return classify_dtw(tm.model, feature_input)
    if tm.kind == "svm":
        return predict_svm(tm.model, feature_input)
    raise ModelFormatError(f"unknown model kind {tm.kind!r}")
