"""coinknn: interchangeable Euclidean and coincidence-dissimilarity
comparators for k-nearest-neighbor classification, plus a skewed-density
generator and a Monte Carlo harness measuring decision-point accuracy."""

from ._kernels import backend_name as kernel_backend
from .densities import (
    BaseDensity,
    GroupSample,
    GroupSpec,
    Normal,
    Transform,
    Uniform,
    sample_group,
    sample_group_2d,
    substream,
    substream_seed,
    transformed_cdf,
    transformed_pdf,
)
from .errors import (
    ConfigError,
    InvalidInputError,
    UndefinedComparisonError,
    UnsupportedConfigurationError,
)
from .experiment import (
    AccuracyStats,
    CellStats,
    ExperimentConfig,
    GroupConfig,
    RealizationResult,
    accuracy_beta,
    attainable_betas,
    reference_point,
    run_experiment,
    run_realization,
    stats_equal,
)
from .knn import NeighborSet, classify, count_by_group, k_nearest
from .sensitivity import (
    LevelSetGrid,
    ProfileCurve,
    level_set_grid,
    profile,
    reference_grid,
    sensitivity_curve,
)
from .similarity import (
    CoincidenceDissimilarity,
    ComparatorKind,
    Euclidean,
    NpSet,
    as_feature_vector,
    coincidence,
    coincidence_nonneg,
    compare,
    compare_many,
    comparator_name,
    dissimilarity,
    euclidean,
    npset_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    # errors
    "ConfigError",
    "InvalidInputError",
    "UndefinedComparisonError",
    "UnsupportedConfigurationError",
    # similarity
    "NpSet",
    "Euclidean",
    "CoincidenceDissimilarity",
    "ComparatorKind",
    "as_feature_vector",
    "npset_decompose",
    "coincidence",
    "coincidence_nonneg",
    "dissimilarity",
    "euclidean",
    "compare",
    "compare_many",
    "comparator_name",
    # densities
    "Uniform",
    "Normal",
    "BaseDensity",
    "Transform",
    "GroupSpec",
    "GroupSample",
    "sample_group",
    "sample_group_2d",
    "transformed_pdf",
    "transformed_cdf",
    "substream",
    "substream_seed",
    # knn
    "NeighborSet",
    "k_nearest",
    "count_by_group",
    "classify",
    # experiment
    "GroupConfig",
    "ExperimentConfig",
    "RealizationResult",
    "AccuracyStats",
    "CellStats",
    "accuracy_beta",
    "attainable_betas",
    "reference_point",
    "run_realization",
    "run_experiment",
    "stats_equal",
    # sensitivity
    "ProfileCurve",
    "reference_grid",
    "profile",
    "sensitivity_curve",
    "LevelSetGrid",
    "level_set_grid",
]
