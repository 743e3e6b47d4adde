"""Memory-based learning with overlap and Information Gain metrics, and the
back-off smoothing estimators they correspond to."""

from .backoff import (
    BackoffStep,
    EquivalenceReport,
    InterpolationConfig,
    equivalence_check,
    ig_backoff_estimate,
    interpolation_estimate,
    naive_backoff_estimate,
)
from .corpus import (
    FeatureTemplate,
    VectorLexicon,
    extract_unknown_word_cases,
    load_vector_lexicon,
    parse_case_file,
    vectorize_cases,
    write_case_file,
)
from .errors import MBSmoothError
from .evaluation import EvalConfig, EvalReport, cross_validate, evaluate, paired_t_test
from .instances import ClassDistribution, Instance, InstanceBase, build_instance_base, normalize_counts
from .metrics import MetricConfig, cosine_delta, distance, overlap_delta
from .neighbors import (
    NeighborSet,
    Schema,
    classify,
    dudani_vote,
    enumerate_schemata,
    majority_vote,
    retrieve_neighbors,
    schema_distance,
)
from .weighting import (
    FeatureWeights,
    compute_weights,
    discretize_weights,
    entropy,
    information_gain,
    split_info,
)

__version__ = "0.1.0"
