"""Explicit back-off estimators over schema counts.

These estimators count pattern frequencies directly: for a schema they sum
the class counts of every training instance that agrees with the query on
the schema's non-wildcard features. They never compute pattern distances,
which keeps them independent of the nearest-neighbour code they are compared
against in :func:`equivalence_check`.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidLambdas, NumericFeature
from .instances import UNSEEN, ClassDistribution, InstanceBase, counts_to_distribution
from .metrics import MetricConfig
from .neighbors import (
    MAJORITY,
    Schema,
    classify_with_neighbors,
    enumerate_schemata,
    group_sorted,
    schema_distance,
)
from .weighting import FeatureWeights


class SchemaCounter:
    """Frequency tables ``f(c, schema)`` for one instance base.

    Tables are built lazily per wildcard mask: rows are projected onto the
    non-wildcard features and class counts are accumulated per projection.
    """

    def __init__(self, base: InstanceBase):
        if not base.is_symbolic():
            raise NumericFeature("back-off estimation needs all-symbolic features")
        self.base = base
        self._tables: dict[tuple[bool, ...], dict[tuple, np.ndarray]] = {}

    def _table(self, mask: tuple[bool, ...]) -> dict[tuple, np.ndarray]:
        table = self._tables.get(mask)
        if table is not None:
            return table
        keep = [i for i, m in enumerate(mask) if not m]
        n_classes = len(self.base.classes)
        table = {}
        if not keep:
            table[()] = self.base.label_counts()
        else:
            proj = self.base.codes[:, keep]
            keys, inverse = np.unique(proj, axis=0, return_inverse=True)
            inverse = inverse.reshape(-1)
            flat = np.bincount(
                inverse * n_classes + self.base.label_codes,
                minlength=len(keys) * n_classes,
            ).reshape(len(keys), n_classes)
            for key, counts in zip(map(tuple, keys.tolist()), flat):
                table[key] = counts
        self._tables[mask] = table
        return table

    def counts(self, schema: Schema) -> np.ndarray:
        """Class counts of the instances matching ``schema``."""
        codes = self.base.encode_query(schema.pattern)
        key = tuple(int(codes[i]) for i, m in enumerate(schema.mask) if not m)
        if UNSEEN in key:
            return np.zeros(len(self.base.classes), dtype=np.int64)
        return self._table(schema.mask).get(key, np.zeros(len(self.base.classes), dtype=np.int64))


_counters: "weakref.WeakKeyDictionary[InstanceBase, SchemaCounter]" = weakref.WeakKeyDictionary()


def schema_counter(base: InstanceBase) -> SchemaCounter:
    counter = _counters.get(base)
    if counter is None:
        counter = SchemaCounter(base)
        _counters[base] = counter
    return counter


@dataclass(frozen=True)
class BackoffStep:
    """The schemata whose counts are pooled at one step of a back-off walk."""

    schemata: tuple[Schema, ...]
    level: int
    distance: float = 0.0

    @property
    def wildcard_sets(self) -> list[list[int]]:
        return [list(s.wildcards) for s in self.schemata]


def naive_steps(query: Sequence) -> list[BackoffStep]:
    """One step per wildcard count, ``0..F``."""
    schemata = enumerate_schemata(query)
    steps = []
    for m in range(len(query) + 1):
        group = tuple(s for s in schemata if s.n_wildcards == m)
        steps.append(BackoffStep(group, m, float(m)))
    return steps


def weighted_steps(query: Sequence, weights: FeatureWeights) -> list[BackoffStep]:
    """Schemata grouped by summed wildcard weight, most specific first.

    Schemata whose weight sums differ by at most the tie tolerance share a
    step.
    """
    if len(weights) != len(query):
        raise ValueError(f"{len(weights)} weights for a {len(query)}-feature query")
    schemata = enumerate_schemata(query)
    dists = np.array([schema_distance(s, weights) for s in schemata])
    steps = []
    for level, (d, idx) in enumerate(group_sorted(dists)):
        steps.append(BackoffStep(tuple(schemata[i] for i in idx), level, d))
    return steps


def _pooled_counts(counter: SchemaCounter, step: BackoffStep) -> np.ndarray:
    total = np.zeros(len(counter.base.classes), dtype=np.int64)
    for s in step.schemata:
        total += counter.counts(s)
    return total


def walk_steps(
    base: InstanceBase, steps: Sequence[BackoffStep]
) -> tuple[ClassDistribution, BackoffStep, np.ndarray]:
    """Pooled estimate at the first step whose summed frequency is positive."""
    counter = schema_counter(base)
    for step in steps:
        counts = _pooled_counts(counter, step)
        if counts.sum() > 0:
            return counts_to_distribution(base.classes, counts), step, counts
    # unreachable while the all-wildcard schema is among the steps
    return ClassDistribution.undefined(), steps[-1], np.zeros(len(base.classes), dtype=np.int64)


def _check_query(base: InstanceBase, query: Sequence) -> None:
    if not base.is_symbolic():
        raise NumericFeature("back-off estimation needs all-symbolic features")
    if len(query) != base.arity:
        raise ValueError(f"query has {len(query)} features, base has {base.arity}")
    for i, v in enumerate(query):
        if not isinstance(v, str):
            raise NumericFeature(f"query feature {i} is not a symbol")


def naive_backoff_estimate(base: InstanceBase, query: Sequence) -> tuple[ClassDistribution, int]:
    """Naive Back-off: pool counts over all schemata with ``m`` wildcards,
    for the smallest ``m`` whose pooled frequency is nonzero.

    Returns the distribution and ``m``.
    """
    dist, step = naive_backoff_trace(base, query)
    return dist, step.level


def naive_backoff_trace(base: InstanceBase, query: Sequence) -> tuple[ClassDistribution, BackoffStep]:
    """Like :func:`naive_backoff_estimate` but returns the step whose
    schemata produced the estimate."""
    _check_query(base, query)
    dist, step, _ = walk_steps(base, naive_steps(query))
    return dist, step


def ig_backoff_estimate(
    base: InstanceBase, query: Sequence, weights: FeatureWeights
) -> tuple[ClassDistribution, BackoffStep]:
    """Back-off along the weighted schema ordering.

    Schemata are ranked by the summed weight of their wildcarded features;
    the estimate comes from the first rank with nonzero pooled frequency.
    """
    _check_query(base, query)
    dist, step, _ = walk_steps(base, weighted_steps(query, weights))
    return dist, step


def level_estimates(base: InstanceBase, query: Sequence) -> list[ClassDistribution]:
    """Pooled relative frequencies at every wildcard level ``0..F``."""
    _check_query(base, query)
    counter = schema_counter(base)
    out = []
    for step in naive_steps(query):
        out.append(counts_to_distribution(base.classes, _pooled_counts(counter, step)))
    return out


@dataclass(frozen=True)
class InterpolationConfig:
    """Interpolation weight per wildcard count; levels not listed get 0."""

    lambdas: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        lambdas = {int(i): float(v) for i, v in dict(self.lambdas).items()}
        for i, v in lambdas.items():
            if i < 0:
                raise InvalidLambdas(f"negative level {i}")
            if not math.isfinite(v) or v < 0:
                raise InvalidLambdas(f"lambda for level {i} must be >= 0, got {v}")
        if abs(math.fsum(lambdas.values()) - 1.0) > 1e-9:
            raise InvalidLambdas(f"lambdas sum to {math.fsum(lambdas.values())}, not 1")
        object.__setattr__(self, "lambdas", lambdas)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "InterpolationConfig":
        return cls({i: v for i, v in enumerate(values)})

    @classmethod
    def uniform(cls, arity: int) -> "InterpolationConfig":
        return cls({i: 1.0 / (arity + 1) for i in range(arity + 1)})


def interpolation_estimate(
    base: InstanceBase, query: Sequence, config: InterpolationConfig
) -> ClassDistribution:
    """Fixed-weight linear interpolation of the per-level estimates.

    Levels with zero pooled frequency drop out and the remaining weights are
    renormalised. If every level carrying weight is empty, the estimate falls
    back to the first nonempty level.
    """
    if max(config.lambdas, default=0) > len(query):
        raise InvalidLambdas(
            f"lambda given for level {max(config.lambdas)} but the query has {len(query)} features"
        )
    levels = level_estimates(base, query)
    mix: dict[str, float] = {}
    used = 0.0
    for i, est in enumerate(levels):
        lam = config.lambdas.get(i, 0.0)
        if lam <= 0 or not est.defined:
            continue
        used += lam
        for c, p in est.mass.items():
            mix[c] = mix.get(c, 0.0) + lam * p
    if used <= 0:
        return next(est for est in levels if est.defined)
    total = math.fsum(mix.values())
    return ClassDistribution({c: v / total for c, v in mix.items() if v > 0}, True)


@dataclass(frozen=True)
class EquivalenceReport:
    query: tuple
    passed: bool
    backoff_distribution: ClassDistribution
    knn_distribution: ClassDistribution
    backoff_level: int
    knn_distance: float
    problems: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "query": list(self.query),
            "passed": self.passed,
            "backoff": {"distribution": self.backoff_distribution.to_dict(), "level": self.backoff_level},
            "ib1": {"distribution": self.knn_distribution.to_dict(), "distance": self.knn_distance},
            "problems": list(self.problems),
        }


def equivalence_check(base: InstanceBase, query: Sequence, tol: float = 1e-12) -> EquivalenceReport:
    """Compare Naive Back-off with unweighted-overlap 1-NN majority voting."""
    bo_dist, level = naive_backoff_estimate(base, query)
    config = MetricConfig.overlap(FeatureWeights.uniform(base.arity))
    _, knn_dist, neighbors = classify_with_neighbors(base, query, config, 1, MAJORITY)
    d = neighbors.nearest_distance
    problems = []
    if not (bo_dist.defined and knn_dist.defined):
        problems.append("undefined distribution")
    if not bo_dist.close_to(knn_dist, tol):
        problems.append(f"distributions differ: {bo_dist.to_dict()} vs {knn_dist.to_dict()}")
    if d != float(level):
        problems.append(f"back-off level {level} but nearest bucket at distance {d}")
    return EquivalenceReport(
        tuple(query), not problems, bo_dist, knn_dist, level, d, tuple(problems)
    )
