"""
Overlap distance and Information Gain weights
=============================================

A handful of PP-attachment cases (verb, object noun, preposition, PP noun)
stored in memory, classified with and without feature weights.
"""

from mbsmooth import (
    Instance,
    InstanceBase,
    MetricConfig,
    FeatureWeights,
    classify,
    compute_weights,
    distance,
    retrieve_neighbors,
)

rows = """\
ate pizza with fork V
ate pizza with cheese N
ate salad with fork V
ate soup with spoon V
saw man with telescope V
saw man with hat N
saw dog of neighbour N
bought shares of company N
bought stake in company N
sold shares to investors V
sold stake to fund V
ate cake with icing N""".splitlines()

base = InstanceBase(Instance(tuple(r.split()[:-1]), r.split()[-1]) for r in rows)
print(base)

# Information Gain per feature, normalised by split info
weights = compute_weights(base, "information_gain")
for name, w in zip(["verb", "noun", "prep", "pp-noun"], weights):
    print(f"{name:8s} {w:.3f}")

# unweighted overlap just counts mismatches
uniform = MetricConfig.overlap(FeatureWeights.uniform(4))
weighted = MetricConfig.overlap(weights)
query = ("bought", "shares", "with", "cash")
print("mismatches to first case:", distance(query, base[0].values, uniform))

# k counts distance groups; every instance tied at a distance is included
for name, cfg in [("IB1", uniform), ("IB1-IG", weighted)]:
    nb = retrieve_neighbors(base, query, cfg, k=1)
    label, dist = classify(base, query, cfg, k=1)
    print(f"{name}: nearest at {nb.nearest_distance:.3f}, {len(nb)} neighbours -> {label} {dist.to_dict()}")
