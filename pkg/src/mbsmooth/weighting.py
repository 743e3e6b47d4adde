"""Feature weighting: class entropy, split info and Information Gain."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import EmptyDistribution, NegativeWeight, NumericFeature
from .instances import InstanceBase

UNIFORM = "uniform"
INFORMATION_GAIN = "information_gain"
USER_SUPPLIED = "user_supplied"
SCHEMES = (UNIFORM, INFORMATION_GAIN, USER_SUPPLIED)

# Absolute tolerance under which two computed weights (or weight sums) count
# as tied.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FeatureWeights:
    w: tuple[float, ...]
    scheme: str = USER_SUPPLIED
    bins: int | None = None

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        for i, x in enumerate(w):
            if not math.isfinite(x) or x < 0:
                raise NegativeWeight(f"weight {i} must be finite and >= 0, got {x}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown weighting scheme {self.scheme!r}")
        if self.scheme == UNIFORM and any(x != 1.0 for x in w):
            raise ValueError("uniform weights must all be 1")
        object.__setattr__(self, "w", w)

    def __len__(self):
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, i):
        return self.w[i]

    @classmethod
    def uniform(cls, arity: int) -> "FeatureWeights":
        return cls((1.0,) * arity, UNIFORM)

    def scaled(self, factor: float) -> "FeatureWeights":
        return FeatureWeights(tuple(x * factor for x in self.w), USER_SUPPLIED, self.bins)

    @property
    def total(self) -> float:
        return math.fsum(self.w)


def entropy(dist: Mapping[object, float]) -> float:
    """Shannon entropy in bits of a (not necessarily normalised) distribution."""
    total = math.fsum(dist.values())
    if total <= 0:
        raise EmptyDistribution("entropy of an all-zero distribution")
    h = 0.0
    for m in dist.values():
        if m > 0:
            p = m / total
            h -= p * math.log2(p)
    # -0.0 and tiny negative rounding noise are reported as 0
    return max(h, 0.0)


def _symbolic_column(base: InstanceBase, feature: int):
    if not base.is_symbolic(feature):
        raise NumericFeature(f"feature {feature} holds vectors; IG needs symbols")
    return [inst.values[feature] for inst in base]


def split_info(base: InstanceBase, feature: int) -> float:
    return entropy(Counter(_symbolic_column(base, feature)))


def information_gain(base: InstanceBase, feature: int) -> float:
    """Information Gain of ``feature`` normalised by its split info.

    A single-valued feature has zero split info; its weight is defined as 0.
    """
    column = _symbolic_column(base, feature)
    si = entropy(Counter(column))
    if si <= 0:
        return 0.0
    n = len(column)
    by_value: dict[str, Counter] = defaultdict(Counter)
    for value, inst in zip(column, base):
        by_value[value][inst.label] += 1
    class_entropy = entropy(Counter(inst.label for inst in base))
    conditional = math.fsum(
        sum(c.values()) / n * entropy(c) for c in by_value.values()
    )
    gain = max(class_entropy - conditional, 0.0)
    return gain / si


def compute_weights(
    base: InstanceBase,
    scheme: str = INFORMATION_GAIN,
    user_weights: Sequence[float] | None = None,
    overrides: Mapping[int, float] | None = None,
) -> FeatureWeights:
    """Weights for every feature of ``base`` under the given scheme.

    ``overrides`` supplies fixed weights for individual features when
    computing Information Gain; vector-valued features must be covered by it.
    """
    if scheme == UNIFORM:
        return FeatureWeights.uniform(base.arity)
    if scheme == USER_SUPPLIED:
        if user_weights is None or len(user_weights) != base.arity:
            raise ValueError(f"user_supplied scheme needs {base.arity} weights")
        return FeatureWeights(tuple(user_weights), USER_SUPPLIED)
    if scheme != INFORMATION_GAIN:
        raise ValueError(f"unknown weighting scheme {scheme!r}")
    overrides = dict(overrides or {})
    w = []
    for i in range(base.arity):
        if i in overrides:
            w.append(float(overrides[i]))
        else:
            w.append(information_gain(base, i))
    return FeatureWeights(tuple(w), INFORMATION_GAIN)


def discretize_weights(weights: FeatureWeights, n_bins: int) -> FeatureWeights:
    """Snap weights onto ``n_bins`` evenly spaced representative values.

    The bins are equal-width intervals centred on representatives spaced
    evenly from the smallest to the largest weight, so both extremes are
    representatives themselves and re-discretising is a no-op. A single bin
    maps every weight to the middle of the range.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    w = weights.w
    if not w:
        return FeatureWeights((), weights.scheme, n_bins)
    lo, hi = min(w), max(w)
    if n_bins == 1 or hi - lo <= TIE_TOLERANCE:
        mid = (lo + hi) / 2
        return FeatureWeights((mid,) * len(w), _binned_scheme(weights), n_bins)
    width = (hi - lo) / (n_bins - 1)
    reps = [lo + j * width for j in range(n_bins)]
    reps[-1] = hi
    out = []
    for x in w:
        j = min(int(math.floor((x - lo) / width + 0.5)), n_bins - 1)
        out.append(reps[j])
    return FeatureWeights(tuple(out), _binned_scheme(weights), n_bins)


def _binned_scheme(weights: FeatureWeights) -> str:
    # Binned uniform weights stay valid as "uniform" only if they are all 1.
    return USER_SUPPLIED if weights.scheme == UNIFORM else weights.scheme
