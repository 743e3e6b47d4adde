"""
Naive Back-off versus 1-nearest-neighbour
=========================================

The back-off estimator pools class counts over all schemata with m
wildcards, for the smallest m that matches anything. The unweighted
overlap 1-NN classifier votes over the nearest Hamming bucket. They give
the same distribution on every query.
"""

import numpy as np

from mbsmooth import FeatureWeights, Instance, InstanceBase, equivalence_check, naive_backoff_estimate
from mbsmooth.backoff import ig_backoff_estimate, naive_backoff_trace, weighted_steps
from mbsmooth.synthetic import random_base, random_query

base = InstanceBase(
    [Instance(("a", "x"), "V"), Instance(("a", "y"), "N"), Instance(("b", "x"), "N")]
)
dist, step = naive_backoff_trace(base, ("a", "z"))
print("back-off level", step.level, "schemata", [str(s) for s in step.schemata], dist.to_dict())
print(equivalence_check(base, ("a", "z")).to_dict())

# randomised comparison
rng = np.random.default_rng(0)
results = [equivalence_check(b, random_query(rng, b)).passed for b in (random_base(rng) for _ in range(500))]
print(f"{sum(results)}/{len(results)} random bases agree")

# With weights the schemata are ranked by the summed weight of their
# wildcards. A heavy third feature pushes every schema that drops it
# behind all schemata that keep it.
pp = FeatureWeights((0.03, 0.03, 0.10, 0.03))
for st in weighted_steps(("ate", "pizza", "with", "fork"), pp):
    print(f"{st.distance:.2f}", " ".join(str(s) for s in st.schemata))

memory = InstanceBase(
    [Instance(("eat", "pizza", "with", "fork"), "V"), Instance(("ate", "pizza", "of", "fork"), "N")]
)
query = ("ate", "pizza", "with", "fork")
print("naive:", naive_backoff_estimate(memory, query))
d, st = ig_backoff_estimate(memory, query, pp)
print("weighted:", d.to_dict(), "via", [str(s) for s in st.schemata])
