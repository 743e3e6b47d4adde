"""Brute-force reference computations, independent of the package code.

Inputs are plain lists of ``(values, label)`` pairs.
"""

import math
from collections import Counter
from itertools import combinations


def h(counts):
    n = sum(counts)
    return -sum(c / n * math.log2(c / n) for c in counts if c)


def ig_oracle(rows, f):
    """Gain ratio of feature f: (H(C) - sum_v P(v) H(C|v)) / si(f), 0 if si = 0."""
    n = len(rows)
    values = sorted({x[f] for x, _ in rows})
    labels = sorted({y for _, y in rows})
    hc = h([sum(1 for _, y in rows if y == c) for c in labels])
    cond = 0.0
    sizes = []
    for v in values:
        sub = [y for x, y in rows if x[f] == v]
        sizes.append(len(sub))
        cond += len(sub) / n * h([sub.count(c) for c in labels])
    si = h(sizes)
    return 0.0 if si == 0 else (hc - cond) / si


def split_info_oracle(rows, f):
    return h(list(Counter(x[f] for x, _ in rows).values()))


def naive_backoff_oracle(rows, query):
    """Walk wildcard levels; at each, sum f(c, schema) over all schemata by
    direct matching of every row against every schema."""
    F = len(query)
    for m in range(F + 1):
        pooled = Counter()
        for wild in combinations(range(F), m):
            for x, y in rows:
                if all(i in wild or x[i] == query[i] for i in range(F)):
                    pooled[y] += 1
        total = sum(pooled.values())
        if total:
            return {c: k / total for c, k in pooled.items()}, m
    raise AssertionError("unreachable")


def hamming_nearest_oracle(rows, query):
    """Class frequencies among rows at minimum Hamming distance."""
    d = [sum(a != b for a, b in zip(x, query)) for x, _ in rows]
    best = min(d)
    hits = Counter(y for (x, y), di in zip(rows, d) if di == best)
    total = sum(hits.values())
    return {c: k / total for c, k in hits.items()}, best
