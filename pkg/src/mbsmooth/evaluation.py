"""Accuracy evaluation, k-fold cross-validation and the paired t-test."""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats

from .backoff import ig_backoff_estimate, naive_backoff_estimate
from .errors import DegenerateVariance, LengthMismatch, TooFewCases
from .instances import Instance, InstanceBase
from .metrics import MetricConfig
from .neighbors import MAJORITY, classify
from .weighting import INFORMATION_GAIN, FeatureWeights, compute_weights, discretize_weights

KNN = "knn"
NAIVE_BACKOFF = "naive_backoff"
IG_BACKOFF = "ig_backoff"


@dataclass(frozen=True)
class EvalConfig:
    """How to classify test cases.

    ``weights`` fixes the feature weights; otherwise they are computed from
    each training base with ``scheme`` (and discretised into ``bins`` when
    given). Vector-valued features need fixed weights.
    """

    method: str = KNN
    scheme: str = INFORMATION_GAIN
    k: int = 1
    voting: str = MAJORITY
    bins: int | None = None
    weights: FeatureWeights | None = None

    def weights_for(self, base: InstanceBase) -> FeatureWeights:
        w = self.weights if self.weights is not None else compute_weights(base, self.scheme)
        if self.bins:
            w = discretize_weights(w, self.bins)
        return w


def _predict(base: InstanceBase, query, config: EvalConfig, metric: MetricConfig | None):
    if config.method == KNN:
        label, _ = classify(base, query, metric, config.k, config.voting)
        return label
    if config.method == NAIVE_BACKOFF:
        return naive_backoff_estimate(base, query)[0].argmax()
    if config.method == IG_BACKOFF:
        return ig_backoff_estimate(base, query, metric.weights)[0].argmax()
    raise ValueError(f"unknown method {config.method!r}")


def thread_count() -> int:
    env = os.environ.get("MBSMOOTH_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cap))
        except ValueError:
            pass
    return cap


def predict_all(base: InstanceBase, cases: Sequence[Instance], config: EvalConfig) -> list[str]:
    """Predicted label for every case, in input order."""
    weights = config.weights_for(base)
    metric = MetricConfig.for_base(base, weights)
    threads = thread_count()
    if threads == 1 or len(cases) < 64:
        return [_predict(base, c.values, config, metric) for c in cases]
    chunks = np.array_split(np.arange(len(cases)), threads)

    def run(idx):
        return [_predict(base, cases[i].values, config, metric) for i in idx]

    with ThreadPoolExecutor(threads) as pool:
        parts = list(pool.map(run, chunks))
    return [label for part in parts for label in part]


@dataclass
class EvalReport:
    accuracy: float
    n_cases: int
    confusion: dict[tuple[str, str], int] = field(default_factory=dict)
    per_fold: list[float] | None = None
    stddev: float | None = None

    @property
    def correct(self) -> int:
        return sum(n for (g, p), n in self.confusion.items() if g == p)

    @property
    def mean_fold_accuracy(self) -> float | None:
        return None if self.per_fold is None else float(np.mean(self.per_fold))

    def to_dict(self) -> dict:
        nested: dict[str, dict[str, int]] = {}
        for (g, p), n in sorted(self.confusion.items()):
            nested.setdefault(g, {})[p] = n
        out = {"accuracy": self.accuracy, "n_cases": self.n_cases, "confusion": nested}
        if self.per_fold is not None:
            out["per_fold"] = self.per_fold
            out["mean_fold_accuracy"] = self.mean_fold_accuracy
            out["stddev"] = self.stddev
        return out


def _report(gold: Sequence[str], predicted: Sequence[str]) -> EvalReport:
    confusion = Counter(zip(gold, predicted))
    correct = sum(n for (g, p), n in confusion.items() if g == p)
    return EvalReport(correct / len(gold), len(gold), dict(confusion))


def evaluate(base: InstanceBase, test_cases: Sequence[Instance], config: EvalConfig) -> EvalReport:
    if not test_cases:
        raise TooFewCases("no test cases")
    predicted = predict_all(base, test_cases, config)
    return _report([c.label for c in test_cases], predicted)


def fold_indices(
    n: int, folds: int, seed: int | None = None, labels: Sequence[str] | None = None
) -> list[np.ndarray]:
    """Test-fold index arrays partitioning ``range(n)``.

    Cases are shuffled with ``seed`` and cut into contiguous folds; the first
    ``n % folds`` folds get one extra case. With ``labels`` the folds are
    stratified instead: each class's shuffled cases are dealt round-robin.
    """
    if folds < 2:
        raise TooFewCases("need at least 2 folds")
    if n < folds:
        raise TooFewCases(f"{n} cases cannot fill {folds} folds")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    if labels is None:
        return [np.sort(chunk) for chunk in np.array_split(perm, folds)]
    buckets: list[list[int]] = [[] for _ in range(folds)]
    slot = 0
    by_class: dict[str, list[int]] = {}
    for i in perm:
        by_class.setdefault(labels[i], []).append(int(i))
    for label in sorted(by_class):
        for i in by_class[label]:
            buckets[slot % folds].append(i)
            slot += 1
    return [np.sort(np.array(b, dtype=np.int64)) for b in buckets]


def cross_validate(
    cases: Sequence[Instance],
    folds: int = 10,
    seed: int | None = 0,
    config: EvalConfig = EvalConfig(),
    stratify: bool = False,
) -> EvalReport:
    """k-fold cross-validation; weights are recomputed on every training split."""
    cases = list(cases)
    labels = [c.label for c in cases] if stratify else None
    parts = fold_indices(len(cases), folds, seed, labels)
    gold: list[str] = []
    predicted: list[str] = []
    per_fold = []
    for test_idx in parts:
        mask = np.ones(len(cases), dtype=bool)
        mask[test_idx] = False
        train = InstanceBase(c for c, keep in zip(cases, mask) if keep)
        test = [cases[i] for i in test_idx]
        pred = predict_all(train, test, config)
        gold.extend(c.label for c in test)
        predicted.extend(pred)
        per_fold.append(sum(p == c.label for p, c in zip(pred, test)) / len(test))
    report = _report(gold, predicted)
    report.per_fold = per_fold
    report.stddev = float(np.std(per_fold, ddof=1))
    return report


class TTestResult(NamedTuple):
    t_statistic: float
    p_value: float
    significant: bool


def paired_t_test(a: Sequence[float], b: Sequence[float], alpha: float = 0.05) -> TTestResult:
    """Two-tailed paired t-test on ``a - b``.

    All-zero differences give ``t = 0`` with an undefined (NaN) p-value.
    Constant nonzero differences have no finite t and raise
    :class:`DegenerateVariance`.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"paired samples of lengths {a.size} and {b.size}")
    n = a.size
    if n < 2:
        raise LengthMismatch("paired t-test needs at least 2 pairs")
    d = a - b
    mean = float(np.mean(d))
    sd = float(np.std(d, ddof=1))
    scale = max(1.0, float(np.max(np.abs(d))))
    if sd <= 1e-12 * scale:
        if abs(mean) <= 1e-12 * scale:
            return TTestResult(0.0, math.nan, False)
        raise DegenerateVariance("differences are constant and nonzero; t is infinite")
    t = mean / (sd / math.sqrt(n))
    p = float(2 * stats.t.sf(abs(t), n - 1))
    return TTestResult(t, p, p < alpha)
