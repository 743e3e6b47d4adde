"""Schemata, nearest-neighbour retrieval and vote aggregation.

``k`` counts distance groups, not instances: every training instance tied
at an included distance is part of the neighbour set. With the overlap
metric a group is a bucket of equal mismatch weight, so ``k=1`` extrapolates
from the most specific populated bucket.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import ArityTooLarge
from .instances import ClassDistribution, Instance, InstanceBase, normalize_counts
from .metrics import MetricConfig, distances_to_base
from .weighting import TIE_TOLERANCE, FeatureWeights

MAX_SCHEMA_ARITY = 30

MAJORITY = "majority"
DUDANI = "dudani"


@dataclass(frozen=True)
class Schema:
    """A query pattern with wildcards (``mask[i]`` true) on some features."""

    pattern: tuple
    mask: tuple[bool, ...]

    @property
    def wildcards(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mask) if m)

    @property
    def n_wildcards(self) -> int:
        return sum(self.mask)

    def matches(self, values: Sequence) -> bool:
        return all(m or v == p for p, m, v in zip(self.pattern, self.mask, values))

    def __str__(self):
        return "(" + ",".join("*" if m else str(p) for p, m in zip(self.pattern, self.mask)) + ")"


def _mask_key(mask: Sequence[bool]) -> tuple[int, int]:
    # feature i is bit i of the mask number
    return sum(mask), sum(1 << i for i, m in enumerate(mask) if m)


def enumerate_schemata(query: Sequence) -> list[Schema]:
    """All ``2**F`` schemata of ``query``, most specific first.

    Order: by number of wildcards, then by the mask read as a binary number
    with feature ``i`` as bit ``i``.
    """
    f = len(query)
    if f > MAX_SCHEMA_ARITY:
        raise ArityTooLarge(f"refusing to enumerate 2**{f} schemata (limit F <= {MAX_SCHEMA_ARITY})")
    pattern = tuple(query)
    masks = []
    for m in range(f + 1):
        for wild in combinations(range(f), m):
            masks.append(tuple(i in wild for i in range(f)))
    masks.sort(key=_mask_key)
    return [Schema(pattern, mask) for mask in masks]


def schema_distance(schema: Schema, weights: FeatureWeights) -> float:
    """Summed weight of the wildcarded features.

    Summed in feature order, like the pattern distance, so a schema's
    distance equals the distance of any instance mismatching exactly on its
    wildcards.
    """
    total = 0.0
    for i, m in enumerate(schema.mask):
        if m:
            total += weights[i]
    return total


def group_sorted(values: np.ndarray, tol: float = TIE_TOLERANCE) -> list[tuple[float, np.ndarray]]:
    """Group indices of ``values`` by value, merging values within ``tol``.

    Returns ``(representative value, indices in ascending index order)`` per
    group, groups in ascending value order. A group's representative is its
    smallest value; chains of near-ties merge transitively.
    """
    if len(values) == 0:
        return []
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    breaks = np.nonzero(np.diff(sorted_vals) > tol)[0] + 1
    groups = []
    for chunk in np.split(np.arange(len(order)), breaks):
        idx = np.sort(order[chunk])
        groups.append((float(sorted_vals[chunk[0]]), idx))
    return groups


@dataclass(frozen=True)
class NeighborGroup:
    distance: float
    members: tuple[Instance, ...]
    rows: tuple[int, ...]


@dataclass(frozen=True)
class NeighborSet:
    groups: tuple[NeighborGroup, ...]
    k_used: int

    def __len__(self):
        return sum(len(g.members) for g in self.groups)

    @property
    def nearest_distance(self) -> float:
        return self.groups[0].distance

    @property
    def members(self) -> list[Instance]:
        return [m for g in self.groups for m in g.members]


def retrieve_neighbors(
    base: InstanceBase, query: Sequence, config: MetricConfig, k: int = 1
) -> NeighborSet:
    """The ``k`` nearest distance groups of ``query`` in ``base``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    dists = distances_to_base(base, query, config)
    if k == 1:
        # fast path: no full sort needed for the nearest bucket
        d0 = dists.min()
        rows = np.nonzero(dists <= d0 + TIE_TOLERANCE)[0]
        # near-tie chains beyond one tolerance step are rare; fall back if present
        if not np.any((dists > d0 + TIE_TOLERANCE) & (dists <= d0 + 2 * TIE_TOLERANCE)):
            group = NeighborGroup(float(d0), tuple(base[r] for r in rows), tuple(int(r) for r in rows))
            return NeighborSet((group,), 1)
    groups = []
    for d, rows in group_sorted(dists)[:k]:
        groups.append(NeighborGroup(d, tuple(base[r] for r in rows), tuple(int(r) for r in rows)))
    return NeighborSet(tuple(groups), len(groups))


def majority_vote(neighbors: NeighborSet) -> ClassDistribution:
    counts: dict[str, float] = defaultdict(float)
    for g in neighbors.groups:
        for m in g.members:
            counts[m.label] += 1.0
    return normalize_counts(counts)


def dudani_weights(distances: Sequence[float]) -> list[float]:
    """Linear vote weights: 1.0 at the nearest distance, 0.0 at the furthest."""
    d1, dk = distances[0], distances[-1]
    if dk - d1 <= 0:
        return [1.0] * len(distances)
    return [(dk - d) / (dk - d1) for d in distances]


def dudani_vote(neighbors: NeighborSet) -> ClassDistribution:
    weights = dudani_weights([g.distance for g in neighbors.groups])
    counts: dict[str, float] = defaultdict(float)
    for w, g in zip(weights, neighbors.groups):
        for m in g.members:
            counts[m.label] += w
    dist = normalize_counts(counts)
    if not dist.defined:
        return majority_vote(neighbors)
    return dist


def classify(
    base: InstanceBase,
    query: Sequence,
    config: MetricConfig,
    k: int = 1,
    voting: str = MAJORITY,
) -> tuple[str, ClassDistribution]:
    label, dist, _ = classify_with_neighbors(base, query, config, k, voting)
    return label, dist


def classify_with_neighbors(base, query, config, k=1, voting=MAJORITY):
    neighbors = retrieve_neighbors(base, query, config, k)
    if voting == MAJORITY:
        dist = majority_vote(neighbors)
    elif voting == DUDANI:
        dist = dudani_vote(neighbors)
    else:
        raise ValueError(f"unknown voting scheme {voting!r}")
    return dist.argmax(), dist, neighbors
