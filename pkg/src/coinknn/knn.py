"""Metric-agnostic k-nearest-neighbor retrieval around a reference point.

A plain linear scan plus a stable sort: every query compares the reference
against all candidate points, so any comparator satisfying smaller-is-closer
plugs in unchanged.  Ties in the comparison value are broken by the smaller
point index, which keeps retrieval deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError
from .similarity import ComparatorKind, as_feature_vector, compare_many

__all__ = ["NeighborSet", "k_nearest", "count_by_group", "classify"]


@dataclass(frozen=True, eq=False)
class NeighborSet:
    """The k points most closely related to a reference, nearest first.

    ``values`` is non-decreasing; ``indices`` are positions in the original
    point list and are distinct.
    """

    indices: np.ndarray
    values: np.ndarray
    labels: tuple

    def __len__(self) -> int:
        return len(self.indices)


def _as_points(points) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InvalidInputError("points must be a non-empty (N, M) array")
    return pts


def k_nearest(
    reference: Iterable[float],
    points,
    labels: Sequence,
    k: int,
    kind: ComparatorKind,
) -> NeighborSet:
    """Retrieve the k points with the smallest comparison value.

    ``points`` is (N, M) (or (N,) for 1-D features) with ``labels`` of
    length N.  Exact ties are resolved toward the smaller index.
    """
    ref = as_feature_vector(reference)
    pts = _as_points(points)
    if len(labels) != pts.shape[0]:
        raise InvalidInputError("labels must match the number of points")
    if not 1 <= k <= pts.shape[0]:
        raise InvalidInputError(
            f"k must be between 1 and the number of points ({pts.shape[0]}); got {k}"
        )
    values = compare_many(kind, ref, pts)
    order = np.argsort(values, kind="stable")[:k]
    return NeighborSet(
        indices=order,
        values=values[order],
        labels=tuple(labels[i] for i in order),
    )


def count_by_group(neighbors, label_a="A", label_b="B") -> tuple[int, int]:
    """Count neighbors per group; accepts a NeighborSet or a label sequence."""
    labels = neighbors.labels if isinstance(neighbors, NeighborSet) else neighbors
    n_a = 0
    n_b = 0
    for lab in labels:
        if lab == label_a:
            n_a += 1
        elif lab == label_b:
            n_b += 1
        else:
            raise InvalidInputError(f"unknown group label: {lab!r}")
    return n_a, n_b


def classify(
    reference: Iterable[float],
    points,
    labels: Sequence,
    k: int,
    kind: ComparatorKind,
    label_a="A",
    label_b="B",
):
    """Majority label among the k nearest neighbors.

    An exact tie (possible for even k) goes to the single nearest
    neighbor's label.
    """
    neighbors = k_nearest(reference, points, labels, k, kind)
    n_a, n_b = count_by_group(neighbors, label_a, label_b)
    if n_a > n_b:
        return label_a
    if n_b > n_a:
        return label_b
    return neighbors.labels[0]
