"""Instances, the instance base and class distributions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyBase, MixedArity, MixedKind, NegativeCount

SYMBOL = "symbol"
VECTOR = "vector"

# Query symbols absent from a feature's inventory get this code; it never
# equals a stored code, so they mismatch every training value.
UNSEEN = -1


def value_kind(value: Any) -> str:
    if isinstance(value, str):
        return SYMBOL
    if isinstance(value, np.ndarray) and value.ndim == 1:
        return VECTOR
    if isinstance(value, (tuple, list)) and all(
        isinstance(v, (int, float, np.floating, np.integer)) for v in value
    ):
        return VECTOR
    raise MixedKind(f"unsupported feature value {value!r}")


def as_vector(value: Any) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    arr.setflags(write=False)
    return arr


def _values_equal(a: Any, b: Any) -> bool:
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    return np.array_equal(np.asarray(a), np.asarray(b))


@dataclass(frozen=True, eq=False)
class Instance:
    """A fixed-arity pattern of feature values with its class label."""

    values: tuple
    label: str

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))

    @property
    def arity(self) -> int:
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.label == other.label
            and len(self.values) == len(other.values)
            and all(_values_equal(a, b) for a, b in zip(self.values, other.values))
        )

    def __hash__(self):
        if all(isinstance(v, str) for v in self.values):
            return hash((self.values, self.label))
        return hash((len(self.values), self.label))

    def __repr__(self):
        shown = ", ".join(v if isinstance(v, str) else f"<vec{len(v)}>" for v in self.values)
        return f"Instance(({shown}) -> {self.label})"


class InstanceBase:
    """Immutable table of training instances.

    Besides the instances themselves (in input order) the base keeps the
    per-feature value inventories, the class inventory and integer
    encodings used for vectorised distance computations.
    """

    __slots__ = (
        "_instances",
        "_arity",
        "_kinds",
        "_value_inventory",
        "_class_inventory",
        "_classes",
        "_codes",
        "_label_codes",
        "_symbol_index",
        "_vectors",
        "_vector_norms",
        "__weakref__",
    )

    def __init__(self, instances: Iterable[Instance]):
        instances = tuple(instances)
        if not instances:
            raise EmptyBase("an instance base needs at least one instance")
        arity = instances[0].arity
        for n, inst in enumerate(instances):
            if inst.arity != arity:
                raise MixedArity(
                    f"instance {n} has {inst.arity} features, expected {arity}"
                )

        kinds = []
        for i in range(arity):
            kind = value_kind(instances[0].values[i])
            dim = None if kind == SYMBOL else len(instances[0].values[i])
            for n, inst in enumerate(instances):
                k = value_kind(inst.values[i])
                if k != kind:
                    raise MixedKind(f"feature {i} mixes symbols and vectors (instance {n})")
                if k == VECTOR and len(inst.values[i]) != dim:
                    raise MixedKind(
                        f"feature {i} mixes vector dimensions {dim} and {len(inst.values[i])}"
                    )
            kinds.append(kind)

        n = len(instances)
        codes = np.full((n, arity), UNSEEN, dtype=np.int64)
        symbol_index: list[dict[str, int] | None] = []
        vectors: list[np.ndarray | None] = []
        norms: list[np.ndarray | None] = []
        inventory = []
        for i, kind in enumerate(kinds):
            if kind == SYMBOL:
                index: dict[str, int] = {}
                for r, inst in enumerate(instances):
                    codes[r, i] = index.setdefault(inst.values[i], len(index))
                symbol_index.append(index)
                inventory.append(frozenset(index))
                vectors.append(None)
                norms.append(None)
            else:
                mat = np.array([np.asarray(inst.values[i], dtype=float) for inst in instances])
                nrm = np.linalg.norm(mat, axis=1)
                mat.setflags(write=False)
                nrm.setflags(write=False)
                symbol_index.append(None)
                inventory.append(frozenset())
                vectors.append(mat)
                norms.append(nrm)
        codes.setflags(write=False)

        classes = tuple(sorted({inst.label for inst in instances}))
        class_pos = {c: j for j, c in enumerate(classes)}
        label_codes = np.array([class_pos[inst.label] for inst in instances], dtype=np.int64)
        label_codes.setflags(write=False)

        object.__setattr__(self, "_instances", instances)
        object.__setattr__(self, "_arity", arity)
        object.__setattr__(self, "_kinds", tuple(kinds))
        object.__setattr__(self, "_value_inventory", tuple(inventory))
        object.__setattr__(self, "_class_inventory", frozenset(classes))
        object.__setattr__(self, "_classes", classes)
        object.__setattr__(self, "_codes", codes)
        object.__setattr__(self, "_label_codes", label_codes)
        object.__setattr__(self, "_symbol_index", tuple(symbol_index))
        object.__setattr__(self, "_vectors", tuple(vectors))
        object.__setattr__(self, "_vector_norms", tuple(norms))

    def __setattr__(self, name, value):
        if hasattr(self, "_instances"):
            raise AttributeError("InstanceBase is immutable")
        object.__setattr__(self, name, value)

    def __len__(self):
        return len(self._instances)

    def __iter__(self):
        return iter(self._instances)

    def __getitem__(self, idx):
        return self._instances[idx]

    def __repr__(self):
        return f"InstanceBase(n={len(self)}, arity={self._arity}, classes={list(self._classes)})"

    @property
    def instances(self) -> tuple[Instance, ...]:
        return self._instances

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def kinds(self) -> tuple[str, ...]:
        return self._kinds

    @property
    def value_inventory(self) -> tuple[frozenset, ...]:
        return self._value_inventory

    @property
    def class_inventory(self) -> frozenset:
        return self._class_inventory

    @property
    def classes(self) -> tuple[str, ...]:
        """Class labels in sorted order; the column order of label counts."""
        return self._classes

    @property
    def codes(self) -> np.ndarray:
        """``(n, F)`` integer codes of symbolic values (``-1`` on vector positions)."""
        return self._codes

    @property
    def label_codes(self) -> np.ndarray:
        return self._label_codes

    def is_symbolic(self, feature: int | None = None) -> bool:
        if feature is None:
            return all(k == SYMBOL for k in self._kinds)
        return self._kinds[feature] == SYMBOL

    def encode(self, feature: int, value: str) -> int:
        return self._symbol_index[feature].get(value, UNSEEN)

    def encode_query(self, query: Sequence) -> np.ndarray:
        """Integer codes for the symbolic positions of ``query``."""
        out = np.full(self._arity, UNSEEN, dtype=np.int64)
        for i, kind in enumerate(self._kinds):
            if kind == SYMBOL and isinstance(query[i], str):
                out[i] = self.encode(i, query[i])
        return out

    def vectors(self, feature: int) -> np.ndarray:
        return self._vectors[feature]

    def vector_norms(self, feature: int) -> np.ndarray:
        return self._vector_norms[feature]

    def label_counts(self, rows=None) -> np.ndarray:
        """Class counts (in :attr:`classes` order) over all or selected rows."""
        labels = self._label_codes if rows is None else self._label_codes[rows]
        return np.bincount(labels, minlength=len(self._classes))


def build_instance_base(instances: Iterable[Instance]) -> InstanceBase:
    return InstanceBase(instances)


@dataclass(frozen=True)
class ClassDistribution:
    """Normalised class masses, or an explicitly undefined distribution."""

    mass: Mapping[str, float] = field(default_factory=dict)
    defined: bool = True

    @classmethod
    def undefined(cls) -> "ClassDistribution":
        return cls({}, False)

    def __getitem__(self, label):
        return self.mass.get(label, 0.0)

    def get(self, label, default=0.0):
        return self.mass.get(label, default)

    def argmax(self, tol: float = 1e-12) -> str | None:
        """Most probable label; ties go to the lexicographically smallest."""
        if not self.defined or not self.mass:
            return None
        best = max(self.mass.values())
        return min(c for c, p in self.mass.items() if p >= best - tol)

    def close_to(self, other: "ClassDistribution", tol: float = 1e-12) -> bool:
        if self.defined != other.defined:
            return False
        labels = set(self.mass) | set(other.mass)
        return all(abs(self[c] - other[c]) <= tol for c in labels)

    def to_dict(self) -> dict:
        return dict(sorted(self.mass.items()))


def normalize_counts(counts: Mapping[str, float]) -> ClassDistribution:
    """Turn nonnegative class counts into a distribution.

    Classes with zero count are dropped from the result. A zero total gives
    an undefined distribution rather than an error.
    """
    for label, c in counts.items():
        if c < 0:
            raise NegativeCount(f"negative count {c} for class {label!r}")
    total = sum(counts.values())
    if total <= 0:
        return ClassDistribution.undefined()
    return ClassDistribution({c: v / total for c, v in counts.items() if v > 0}, True)


def counts_to_distribution(classes: Sequence[str], counts) -> ClassDistribution:
    return normalize_counts({c: float(v) for c, v in zip(classes, counts)})
