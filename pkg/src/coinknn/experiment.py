"""Monte Carlo accuracy experiments at the decision point between two groups.

Protocol per realization: resample both groups with that realization's RNG
substream, pool the points, find the k pool members most closely related to
the reference point (the transformed intersection of the two base
densities), and score the balance of the neighborhood with
beta = min(n_A, n_B) / max(n_A, n_B).  A perfectly placed decision point
gives beta = 1.

``run_experiment`` sweeps comparators and k values over R realizations.
Realizations are independent tasks keyed by index; aggregation always runs
in index order, so results are bit-identical no matter how many worker
threads execute the sampling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .densities import BaseDensity, Normal, Transform, Uniform, substream
from .errors import InvalidInputError, UnsupportedConfigurationError
from .similarity import ComparatorKind, compare_many

__all__ = [
    "GroupConfig",
    "ExperimentConfig",
    "RealizationResult",
    "CellStats",
    "AccuracyStats",
    "accuracy_beta",
    "attainable_betas",
    "reference_point",
    "run_realization",
    "run_experiment",
    "stats_equal",
]


@dataclass(frozen=True)
class GroupConfig:
    """One group of an experiment: a base density per axis and a sample count."""

    label: str
    bases: tuple[BaseDensity, ...]
    n: int

    def __post_init__(self):
        if not self.label:
            raise InvalidInputError("group label must be non-empty")
        if self.n < 1:
            raise InvalidInputError("group sample count must be >= 1")
        if len(self.bases) not in (1, 2):
            raise InvalidInputError("groups must have one base density per axis")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full specification of one accuracy experiment.

    Both groups share one transform, applied per axis.  Every k must fit in
    the pooled sample.
    """

    group_a: GroupConfig
    group_b: GroupConfig
    transform: Transform
    comparators: tuple[ComparatorKind, ...]
    k_values: tuple[int, ...]
    realizations: int
    master_seed: int
    dimensions: int = 1

    def __post_init__(self):
        if self.dimensions not in (1, 2):
            raise UnsupportedConfigurationError(
                "only 1- and 2-dimensional experiments are supported"
            )
        for group in (self.group_a, self.group_b):
            if len(group.bases) != self.dimensions:
                raise InvalidInputError(
                    f"group {group.label!r} needs {self.dimensions} base "
                    f"density(ies), got {len(group.bases)}"
                )
        if self.group_a.label == self.group_b.label:
            raise InvalidInputError("groups must carry distinct labels")
        if not self.comparators:
            raise InvalidInputError("at least one comparator is required")
        if not self.k_values:
            raise InvalidInputError("at least one k value is required")
        pool = self.group_a.n + self.group_b.n
        for k in self.k_values:
            if not 1 <= k <= pool:
                raise InvalidInputError(
                    f"k={k} outside the valid range 1..{pool} (pooled sample size)"
                )
        if self.realizations < 1:
            raise InvalidInputError("realizations must be >= 1")


def accuracy_beta(n_a: int, n_b: int) -> float:
    """Balance score min/max of the two neighbor counts, in [0, 1].

    Zero when exactly one count is zero; undefined (an error) when both are.
    """
    if n_a < 0 or n_b < 0:
        raise InvalidInputError("neighbor counts must be non-negative")
    if n_a == 0 and n_b == 0:
        raise InvalidInputError("beta is undefined for two empty groups")
    return min(n_a, n_b) / max(n_a, n_b)


def attainable_betas(k: int) -> np.ndarray:
    """Sorted array of every beta value reachable with n_A + n_B = k."""
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    values = {accuracy_beta(i, k - i) for i in range(k + 1)}
    return np.array(sorted(values), dtype=np.float64)


def _axis_reference(base_a: BaseDensity, base_b: BaseDensity) -> float:
    """Intersection point of the two base densities along one axis.

    Adjacent uniforms meet at the shared endpoint; equal-spread normals
    cross midway between their means.  Anything else is not covered.
    """
    if isinstance(base_a, Uniform) and isinstance(base_b, Uniform):
        if base_a.high == base_b.low:
            return base_a.high
        if base_b.high == base_a.low:
            return base_b.high
        raise UnsupportedConfigurationError(
            "uniform bases must be adjacent (share exactly one endpoint) "
            "to define a decision point"
        )
    if isinstance(base_a, Normal) and isinstance(base_b, Normal):
        if base_a.std == base_b.std:
            return 0.5 * (base_a.mean + base_b.mean)
        raise UnsupportedConfigurationError(
            "normal bases must share one standard deviation "
            "to define a midpoint decision point"
        )
    raise UnsupportedConfigurationError(
        "decision point is only defined for uniform/uniform or normal/normal "
        "base pairs"
    )


def reference_point(config: ExperimentConfig) -> np.ndarray:
    """Transformed decision point, one coordinate per axis."""
    coords = [
        config.transform.apply(_axis_reference(a, b))
        for a, b in zip(config.group_a.bases, config.group_b.bases)
    ]
    return np.array(coords, dtype=np.float64)


def _sample_pool(
    config: ExperimentConfig, realization_index: int
) -> tuple[np.ndarray, np.ndarray]:
    """Pooled feature rows plus an is-group-A mask, group A rows first.

    One substream per realization; within it the draw order is fixed
    (group A axis by axis, then group B), so the pool depends only on
    (master_seed, realization_index).
    """
    rng = substream(config.master_seed, realization_index)
    columns = []
    for group in (config.group_a, config.group_b):
        axes = [base.sample(group.n, rng) for base in group.bases]
        columns.append(np.column_stack([config.transform.apply(x) for x in axes]))
    features = np.concatenate(columns)
    is_a = np.zeros(len(features), dtype=bool)
    is_a[: config.group_a.n] = True
    return features, is_a


@dataclass(frozen=True)
class RealizationResult:
    n_a: int
    n_b: int
    beta: float


def run_realization(
    config: ExperimentConfig,
    comparator: ComparatorKind,
    k: int,
    realization_index: int,
) -> RealizationResult:
    """Measure one (comparator, k) cell on one realization's pool."""
    if not 1 <= k <= config.group_a.n + config.group_b.n:
        raise InvalidInputError("k outside the pooled sample size")
    reference = reference_point(config)
    features, is_a = _sample_pool(config, realization_index)
    values = compare_many(comparator, reference, features)
    order = np.argsort(values, kind="stable")
    n_a = int(is_a[order[:k]].sum())
    n_b = k - n_a
    return RealizationResult(n_a=n_a, n_b=n_b, beta=accuracy_beta(n_a, n_b))


@dataclass(frozen=True, eq=False)
class CellStats:
    """Aggregated beta statistics for one (comparator, k) cell.

    ``hist_values``/``hist_counts`` bin at the exact attainable beta values
    for this k; ``coarse_edges``/``coarse_counts`` give a fixed 20-bin view
    of [0, 1] for plotting.  ``beta_values`` and ``n_a_counts`` keep the
    per-realization outcomes in realization order.
    """

    comparator: ComparatorKind
    k: int
    mean_beta: float
    std_beta: float
    beta_values: np.ndarray
    n_a_counts: np.ndarray
    hist_values: np.ndarray
    hist_counts: np.ndarray
    coarse_edges: np.ndarray
    coarse_counts: np.ndarray


@dataclass(frozen=True, eq=False)
class AccuracyStats:
    """All cells of one experiment, comparator-major, k in configured order."""

    realizations: int
    comparators: tuple[ComparatorKind, ...]
    k_values: tuple[int, ...]
    cells: tuple[CellStats, ...]

    def cell(self, comparator_index: int, k: int) -> CellStats:
        ki = self.k_values.index(k)
        return self.cells[comparator_index * len(self.k_values) + ki]


def _aggregate_cell(
    comparator: ComparatorKind, k: int, n_a: np.ndarray, realizations: int
) -> CellStats:
    n_b = k - n_a
    betas = np.minimum(n_a, n_b) / np.maximum(n_a, n_b)
    grid = attainable_betas(k)
    where = np.searchsorted(grid, betas)
    if not np.array_equal(grid[where], betas):
        raise RuntimeError("observed beta outside the attainable set")
    counts = np.bincount(where, minlength=len(grid))
    coarse_counts, coarse_edges = np.histogram(betas, bins=20, range=(0.0, 1.0))
    return CellStats(
        comparator=comparator,
        k=k,
        mean_beta=float(np.mean(betas)),
        std_beta=float(np.std(betas)),
        beta_values=betas,
        n_a_counts=n_a,
        hist_values=grid,
        hist_counts=counts,
        coarse_edges=coarse_edges,
        coarse_counts=coarse_counts,
    )


def run_experiment(
    config: ExperimentConfig,
    threads: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> AccuracyStats:
    """Run the full sweep: every comparator at every k over R realizations.

    Within a realization all comparators and k values see one shared pool,
    so a single stable sort per comparator serves the whole k sweep.
    ``threads`` only parallelizes realizations; the reduction is performed
    in realization order either way.
    """
    reference = reference_point(config)
    k_arr = np.asarray(config.k_values, dtype=np.int64)
    n_comp = len(config.comparators)
    R = config.realizations
    counts = np.empty((n_comp, len(k_arr), R), dtype=np.int64)

    def measure(r: int) -> np.ndarray:
        features, is_a = _sample_pool(config, r)
        out = np.empty((n_comp, len(k_arr)), dtype=np.int64)
        for ci, comparator in enumerate(config.comparators):
            values = compare_many(comparator, reference, features)
            order = np.argsort(values, kind="stable")
            cum = np.cumsum(is_a[order])
            out[ci] = cum[k_arr - 1]
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for r, cell in enumerate(pool.map(measure, range(R))):
                counts[:, :, r] = cell
                if progress is not None:
                    progress(r + 1, R)
    else:
        for r in range(R):
            counts[:, :, r] = measure(r)
            if progress is not None:
                progress(r + 1, R)

    cells = []
    for ci, comparator in enumerate(config.comparators):
        for ki, k in enumerate(config.k_values):
            cells.append(_aggregate_cell(comparator, k, counts[ci, ki], R))
    return AccuracyStats(
        realizations=R,
        comparators=config.comparators,
        k_values=config.k_values,
        cells=tuple(cells),
    )


def stats_equal(a: AccuracyStats, b: AccuracyStats) -> bool:
    """Exact (bitwise) equality of two experiment results."""
    if a.realizations != b.realizations or len(a.cells) != len(b.cells):
        return False
    for ca, cb in zip(a.cells, b.cells):
        if ca.k != cb.k:
            return False
        if ca.mean_beta != cb.mean_beta or ca.std_beta != cb.std_beta:
            return False
        for field in (
            "beta_values",
            "n_a_counts",
            "hist_values",
            "hist_counts",
            "coarse_edges",
            "coarse_counts",
        ):
            if not np.array_equal(getattr(ca, field), getattr(cb, field)):
                return False
    return True
