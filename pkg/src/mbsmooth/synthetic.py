"""Synthetic data: random symbolic instance bases and a toy tagged corpus."""

from __future__ import annotations

import string

import numpy as np

from .instances import Instance, InstanceBase


def random_base(
    rng: np.random.Generator,
    arity: tuple[int, int] = (2, 5),
    max_values: int = 4,
    max_classes: int = 3,
    max_instances: int = 50,
) -> InstanceBase:
    """A small random all-symbolic base.

    Feature ``i`` draws from values ``"v{i}_0" ... "v{i}_{m-1}"`` and labels
    from ``"c0" ...``; sizes are uniform up to the given limits.
    """
    f = int(rng.integers(arity[0], arity[1] + 1))
    n_vals = rng.integers(1, max_values + 1, size=f)
    n_classes = int(rng.integers(1, max_classes + 1))
    n = int(rng.integers(1, max_instances + 1))
    rows = []
    for _ in range(n):
        values = tuple(f"v{i}_{rng.integers(n_vals[i])}" for i in range(f))
        rows.append(Instance(values, f"c{rng.integers(n_classes)}"))
    return InstanceBase(rows)


def random_query(rng: np.random.Generator, base: InstanceBase, p_unseen: float = 0.15) -> tuple[str, ...]:
    """A query mixing inventory values with occasional unseen symbols."""
    query = []
    for i, inventory in enumerate(base.value_inventory):
        if rng.random() < p_unseen:
            query.append(f"unseen{i}")
        else:
            query.append(rng.choice(sorted(inventory)))
    return tuple(str(v) for v in query)


def resample_query(rng: np.random.Generator, instances, p_unseen: float = 0.15) -> tuple[str, ...]:
    """Query built feature by feature from values seen in ``instances``."""
    arity = instances[0].arity
    query = []
    for i in range(arity):
        if rng.random() < p_unseen:
            query.append(f"unseen{i}")
        else:
            query.append(instances[int(rng.integers(len(instances)))].values[i])
    return tuple(query)


# Endings that mark each open-class tag in the synthetic corpus.
OPEN_ENDINGS = {
    "NN": ["ion", "ity", "ment"],
    "NNS": ["ions", "ers", "ies"],
    "VBD": ["ted", "ned", "red"],
    "VBG": ["ting", "ning", "ring"],
    "JJ": ["ous", "ive", "ful"],
    "RB": ["ily", "sly", "tly"],
}
CLOSED_WORDS = {
    "DT": ["the", "a", "this"],
    "IN": ["of", "in", "on", "with"],
    "CC": ["and", "or"],
    "PRP": ["he", "it", "they"],
    "MD": ["will", "can"],
}


def synthetic_tagged_corpus(
    rng: np.random.Generator,
    n_tokens: int = 6000,
    types_per_tag: int = 150,
    suffix_noise: float = 0.1,
    open_rate: float = 0.6,
) -> list[list[tuple[str, str]]]:
    """Sentences whose open-class tags are predictable from word endings.

    Each open-class word type gets a random stem plus one of its tag's
    endings; with probability ``suffix_noise`` it borrows another tag's
    ending instead. Tags are otherwise drawn independently, so left/right
    context carries little information and the first letter none.
    """
    letters = np.array(list(string.ascii_lowercase))
    open_tags = sorted(OPEN_ENDINGS)
    closed_tags = sorted(CLOSED_WORDS)
    vocab: dict[str, list[str]] = {}
    for tag in open_tags:
        words = []
        for _ in range(types_per_tag):
            stem = "".join(rng.choice(letters, size=int(rng.integers(2, 6))))
            source = tag
            if rng.random() < suffix_noise:
                source = open_tags[int(rng.integers(len(open_tags)))]
            ending = OPEN_ENDINGS[source][int(rng.integers(len(OPEN_ENDINGS[source])))]
            words.append(stem + ending)
        vocab[tag] = words
    # Zipf-like type frequencies
    ranks = np.arange(1, types_per_tag + 1)
    zipf = (1.0 / ranks) / np.sum(1.0 / ranks)

    sentences = []
    produced = 0
    while produced < n_tokens:
        length = int(rng.integers(5, 16))
        sent = []
        for _ in range(length):
            if rng.random() < open_rate:
                tag = open_tags[int(rng.integers(len(open_tags)))]
                word = vocab[tag][int(rng.choice(types_per_tag, p=zipf))]
            else:
                tag = closed_tags[int(rng.integers(len(closed_tags)))]
                options = CLOSED_WORDS[tag]
                word = options[int(rng.integers(len(options)))]
            sent.append((word, tag))
        sentences.append(sent)
        produced += length
    return sentences


def add_noise_features(
    rng: np.random.Generator, instances, n_features: int = 3, n_values: int = 8
) -> list[Instance]:
    """Append ``n_features`` class-independent random symbols to every case."""
    out = []
    for inst in instances:
        extra = tuple(f"z{j}_{rng.integers(n_values)}" for j in range(n_features))
        out.append(Instance(inst.values + extra, inst.label))
    return out
