"""
Cosine distance over word vectors
=================================

Each word slot becomes a dense vector; the slot distance is
(1 - cos) / 2, weighted by the slot's Information Gain. Test cases here use
words never seen in training, so the overlap metric only sees mismatches,
while the vectors still place them near related training words.
Distances no longer fall into a few buckets, so a larger k and
distance-weighted voting are used.
"""

import numpy as np

from mbsmooth import EvalConfig, Instance, InstanceBase, compute_weights, evaluate
from mbsmooth.corpus import VectorLexicon, vectorize_cases

rng = np.random.default_rng(2)
dim = 25
centroids = rng.normal(size=(4, dim))  # four word clusters
lexicon = VectorLexicon(dim)


def word(cluster, i):
    w = f"w{cluster}_{i}"
    if w not in lexicon:
        lexicon.entries[w] = centroids[cluster] + 0.4 * rng.normal(size=dim)
    return w


def case(vocab_offset):
    clusters = rng.integers(4, size=4)
    # attachment decided by the clusters of the preposition and the PP noun
    label = "V" if (clusters[2] + clusters[3]) % 2 == 0 else "N"
    values = tuple(word(c, vocab_offset + int(rng.integers(10))) for c in clusters)
    return Instance(values, label)


train = [case(0) for _ in range(400)]
test = [case(100) for _ in range(100)]  # disjoint vocabulary

weights = compute_weights(InstanceBase(train))
print("IG weights:", np.round(weights.w, 3))

overlap = evaluate(InstanceBase(train), test, EvalConfig(weights=weights))
print(f"overlap, k=1        accuracy {overlap.accuracy:.2f}")

vec_train = InstanceBase(vectorize_cases(train, lexicon))
vec_test = vectorize_cases(test, lexicon)
for k in (1, 10, 50):
    rep = evaluate(vec_train, vec_test, EvalConfig(k=k, voting="dudani", weights=weights))
    print(f"cosine, k={k:<3d}      accuracy {rep.accuracy:.2f}")
