"""
Guessing the tag of unknown words
=================================

Feature patterns for open-class words are extracted from a synthetic
tagged corpus in which the word ending carries the tag. Adding context
features and pure noise hurts the unweighted metric; Information Gain
weighting ignores them.
"""

import numpy as np

from mbsmooth import EvalConfig, InstanceBase, compute_weights, cross_validate, extract_unknown_word_cases, paired_t_test
from mbsmooth.corpus import tag_lexicon_from_corpus
from mbsmooth.synthetic import OPEN_ENDINGS, add_noise_features, synthetic_tagged_corpus

rng = np.random.default_rng(1)
sentences = synthetic_tagged_corpus(rng, n_tokens=6000)
lexicon = tag_lexicon_from_corpus(sentences)
print(" ".join(f"{w}/{t}" for w, t in sentences[0]))

pdass = extract_unknown_word_cases(sentences, "pdass", lexicon, set(OPEN_ENDINGS))
wide = extract_unknown_word_cases(sentences, "pdddaaasss", lexicon, set(OPEN_ENDINGS))
wide = add_noise_features(rng, wide, n_features=3)
print(pdass[0], wide[0])

w = compute_weights(InstanceBase(wide))
print("IG weights:", np.round(w.w, 3))

results = {}
for name, cases in [("pdass", pdass), ("pdddaaasss+noise", wide)]:
    for scheme in ("uniform", "information_gain"):
        rep = cross_validate(cases, folds=10, seed=0, config=EvalConfig(scheme=scheme))
        results[name, scheme] = rep
        print(f"{name:18s} {scheme:17s} {100 * rep.accuracy:.1f} ({100 * rep.stddev:.1f})")

t = paired_t_test(results["pdddaaasss+noise", "information_gain"].per_fold,
                  results["pdddaaasss+noise", "uniform"].per_fold)
print(f"paired t = {t.t_statistic:.2f}, p = {t.p_value:.2g}")
