"""Per-feature distances and the weighted overlap/cosine pattern distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, KindMismatch, MixedArity
from .instances import SYMBOL, UNSEEN, VECTOR, InstanceBase, value_kind
from .weighting import FeatureWeights

OVERLAP = "overlap"
COSINE = "cosine"


@dataclass(frozen=True)
class MetricConfig:
    per_feature_metric: tuple[str, ...]
    weights: FeatureWeights

    def __post_init__(self):
        metrics = tuple(self.per_feature_metric)
        object.__setattr__(self, "per_feature_metric", metrics)
        for m in metrics:
            if m not in (OVERLAP, COSINE):
                raise ValueError(f"unknown feature metric {m!r}")
        if len(metrics) != len(self.weights):
            raise MixedArity(
                f"{len(metrics)} feature metrics but {len(self.weights)} weights"
            )

    @property
    def arity(self) -> int:
        return len(self.per_feature_metric)

    @classmethod
    def overlap(cls, weights: FeatureWeights) -> "MetricConfig":
        return cls((OVERLAP,) * len(weights), weights)

    @classmethod
    def for_base(cls, base: InstanceBase, weights: FeatureWeights | None = None) -> "MetricConfig":
        """Overlap on symbolic positions, cosine on vector positions."""
        weights = weights if weights is not None else FeatureWeights.uniform(base.arity)
        metrics = tuple(OVERLAP if k == SYMBOL else COSINE for k in base.kinds)
        return cls(metrics, weights)

    def check_base(self, base: InstanceBase) -> None:
        if self.arity != base.arity:
            raise MixedArity(f"metric config has arity {self.arity}, base has {base.arity}")
        for i, (m, k) in enumerate(zip(self.per_feature_metric, base.kinds)):
            if (m == OVERLAP) != (k == SYMBOL):
                raise KindMismatch(f"feature {i}: {m} metric on {k} values")


def overlap_delta(x, y) -> float:
    if not isinstance(x, str) or not isinstance(y, str):
        raise KindMismatch("overlap compares symbols only")
    return 0.0 if x == y else 1.0


def cosine_delta(u, v) -> float:
    """Cosine dissimilarity rescaled to [0, 1]: ``(1 - cos) / 2``.

    One zero vector gives 1.0; two zero vectors give 0.0.
    """
    if isinstance(u, str) or isinstance(v, str):
        raise KindMismatch("cosine compares numeric vectors only")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionMismatch(f"vector dimensions differ: {u.shape} vs {v.shape}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0 if nu == nv else 1.0
    cos = float(np.dot(u, v) / (nu * nv))
    return min(max((1.0 - cos) / 2.0, 0.0), 1.0)


def distance(x: Sequence, y: Sequence, config: MetricConfig) -> float:
    """Weighted sum of per-feature distances between two patterns."""
    if len(x) != config.arity or len(y) != config.arity:
        raise MixedArity(
            f"patterns of length {len(x)} and {len(y)} for a {config.arity}-feature metric"
        )
    total = 0.0
    # Accumulate in feature order; distances_to_base does the same so that
    # scalar and vectorised results agree bit for bit.
    for i, metric in enumerate(config.per_feature_metric):
        w = config.weights[i]
        if metric == OVERLAP:
            total += w * overlap_delta(x[i], y[i])
        else:
            total += w * cosine_delta(x[i], y[i])
    return total


def _cosine_column(base: InstanceBase, feature: int, q) -> np.ndarray:
    if value_kind(q) != VECTOR:
        raise KindMismatch(f"feature {feature}: cosine metric needs a vector query value")
    q = np.asarray(q, dtype=float)
    mat = base.vectors(feature)
    if q.shape[0] != mat.shape[1]:
        raise DimensionMismatch(
            f"feature {feature}: query dimension {q.shape[0]}, base dimension {mat.shape[1]}"
        )
    norms = base.vector_norms(feature)
    qn = np.linalg.norm(q)
    out = np.empty(len(base))
    zero = norms == 0
    if qn == 0:
        out[:] = np.where(zero, 0.0, 1.0)
        return out
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = (mat @ q) / (norms * qn)
    out[:] = np.clip((1.0 - cos) / 2.0, 0.0, 1.0)
    out[zero] = 1.0
    return out


def distances_to_base(base: InstanceBase, query: Sequence, config: MetricConfig) -> np.ndarray:
    """Distance from ``query`` to every instance of ``base``, in base order."""
    config.check_base(base)
    if len(query) != base.arity:
        raise MixedArity(f"query has {len(query)} features, base has {base.arity}")
    qcodes = base.encode_query(query)
    total = np.zeros(len(base))
    for i, metric in enumerate(config.per_feature_metric):
        w = config.weights[i]
        if metric == OVERLAP:
            if not isinstance(query[i], str):
                raise KindMismatch(f"feature {i}: overlap metric needs a symbolic query value")
            if qcodes[i] == UNSEEN:
                delta = np.ones(len(base))
            else:
                delta = (base.codes[:, i] != qcodes[i]).astype(float)
        else:
            delta = _cosine_column(base, i, query[i])
        total += w * delta
    return total
