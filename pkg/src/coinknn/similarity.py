"""Comparators between real feature vectors.

Two interchangeable notions of "how related are u and v" live here:

* the Euclidean distance, and
* the coincidence similarity index: a signed multiset Jaccard ratio raised
  to ``d_exponent``, times an interiority ratio (shared mass over the
  smaller vector's total mass) raised to ``e_exponent``.  It is bounded in
  [0, 1], symmetric, and invariant under positive rescaling of both
  arguments.  Its complement, the dissimilarity index, gives
  smaller-is-closer semantics matching a distance.

``compare``/``compare_many`` dispatch on a comparator kind so k-NN and
experiment code never branch on the metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from . import _kernels
from .errors import InvalidInputError, UndefinedComparisonError

__all__ = [
    "NpSet",
    "Euclidean",
    "CoincidenceDissimilarity",
    "ComparatorKind",
    "comparator_name",
    "as_feature_vector",
    "npset_decompose",
    "coincidence",
    "coincidence_nonneg",
    "dissimilarity",
    "euclidean",
    "compare",
    "compare_many",
]


def as_feature_vector(values: Iterable[float]) -> np.ndarray:
    """Validate and convert a feature vector to a float64 array.

    Raises InvalidInputError unless ``values`` is a non-empty 1-D sequence of
    finite numbers.
    """
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("feature vector must be a non-empty 1-D sequence")
    if not np.isfinite(arr).all():
        raise InvalidInputError("feature vector entries must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class NpSet:
    """Split of a real vector into per-coordinate positive and negative masses.

    ``positive[k] = max(v[k], 0)`` and ``negative[k] = min(v[k], 0)``, so
    ``positive + negative`` reconstructs the vector exactly and at most one
    of the two is non-zero in each coordinate.
    """

    positive: np.ndarray
    negative: np.ndarray


def npset_decompose(values: Iterable[float]) -> NpSet:
    """Decompose a finite vector into its positive/negative mass pair."""
    arr = as_feature_vector(values)
    return NpSet(positive=np.maximum(arr, 0.0), negative=np.minimum(arr, 0.0))


@dataclass(frozen=True)
class Euclidean:
    """Euclidean-distance comparator."""


@dataclass(frozen=True)
class CoincidenceDissimilarity:
    """Coincidence-dissimilarity comparator (1 minus the coincidence index).

    ``d_exponent`` sharpens the Jaccard factor without changing how
    candidates rank against each other; ``e_exponent`` weights the
    interiority factor.
    """

    d_exponent: float = 3.0
    e_exponent: float = 1.0

    def __post_init__(self):
        _check_exponents(self.d_exponent, self.e_exponent)


ComparatorKind = Union[Euclidean, CoincidenceDissimilarity]


def comparator_name(kind: ComparatorKind) -> str:
    """Short name used in CSV output and plots."""
    if isinstance(kind, Euclidean):
        return "euclidean"
    if isinstance(kind, CoincidenceDissimilarity):
        return "dissimilarity"
    raise InvalidInputError(f"unknown comparator kind: {kind!r}")


def _check_exponents(d_exponent: float, e_exponent: float) -> None:
    if not (math.isfinite(d_exponent) and d_exponent > 0):
        raise InvalidInputError("d_exponent must be a positive finite real")
    if not (math.isfinite(e_exponent) and e_exponent >= 0):
        raise InvalidInputError("e_exponent must be a non-negative finite real")


def _check_same_length(u: np.ndarray, v: np.ndarray) -> None:
    if u.shape[0] != v.shape[0]:
        raise InvalidInputError(
            f"vector length mismatch: {u.shape[0]} vs {v.shape[0]}"
        )


def coincidence(
    u: Iterable[float],
    v: Iterable[float],
    d_exponent: float = 3.0,
    e_exponent: float = 1.0,
) -> float:
    """Coincidence similarity between two signed vectors, in [0, 1].

    Both vectors are decomposed into positive/negative masses; the index is
    (shared mass / union mass) ** d_exponent * (shared mass / smaller total
    mass) ** e_exponent.  Symmetric, equals 1 exactly for identical non-zero
    vectors, and is undefined when both vectors are zero.
    """
    ua = as_feature_vector(u)
    va = as_feature_vector(v)
    _check_same_length(ua, va)
    _check_exponents(d_exponent, e_exponent)
    out = _kernels.coincidence_from_ref(ua, va.reshape(1, -1), d_exponent, e_exponent)
    value = float(out[0])
    if math.isnan(value):
        raise UndefinedComparisonError(
            "coincidence is undefined when both vectors are zero"
        )
    return value


def coincidence_nonneg(
    u: Iterable[float],
    v: Iterable[float],
    d_exponent: float = 3.0,
    e_exponent: float = 1.0,
) -> float:
    """Coincidence similarity via the simplified all-non-negative form.

    Skips the sign decomposition: shared mass is the coordinate-wise min and
    union mass the coordinate-wise max.  Agrees with ``coincidence`` on
    non-negative inputs; raises on negative coordinates.
    """
    ua = as_feature_vector(u)
    va = as_feature_vector(v)
    _check_same_length(ua, va)
    _check_exponents(d_exponent, e_exponent)
    if (ua < 0).any() or (va < 0).any():
        raise InvalidInputError(
            "coincidence_nonneg requires all coordinates to be non-negative"
        )
    union = float(np.maximum(ua, va).sum())
    if union == 0.0:
        raise UndefinedComparisonError(
            "coincidence is undefined when both vectors are zero"
        )
    shared = float(np.minimum(ua, va).sum())
    if shared == 0.0:
        return 0.0
    smaller = min(float(ua.sum()), float(va.sum()))
    return (shared / union) ** d_exponent * (shared / smaller) ** e_exponent


def dissimilarity(
    u: Iterable[float],
    v: Iterable[float],
    d_exponent: float = 3.0,
    e_exponent: float = 1.0,
) -> float:
    """1 minus the coincidence similarity; 0 for identical non-zero vectors."""
    return 1.0 - coincidence(u, v, d_exponent, e_exponent)


def euclidean(u: Iterable[float], v: Iterable[float]) -> float:
    """Euclidean distance between two equal-length finite vectors."""
    ua = as_feature_vector(u)
    va = as_feature_vector(v)
    _check_same_length(ua, va)
    return float(_kernels.euclidean_from_ref(ua, va.reshape(1, -1))[0])


def compare(kind: ComparatorKind, u: Iterable[float], v: Iterable[float]) -> float:
    """Evaluate a comparator; smaller always means more closely related."""
    if isinstance(kind, Euclidean):
        return euclidean(u, v)
    if isinstance(kind, CoincidenceDissimilarity):
        return dissimilarity(u, v, kind.d_exponent, kind.e_exponent)
    raise InvalidInputError(f"unknown comparator kind: {kind!r}")


def compare_many(
    kind: ComparatorKind,
    reference: Iterable[float],
    points: np.ndarray,
) -> np.ndarray:
    """Comparator values from ``reference`` (M,) to every row of ``points`` (N, M).

    The batch equivalent of ``compare``; this is the hot path the k-NN
    engine, experiment sweeps, and level-set grids run on.
    """
    ref = as_feature_vector(reference)
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != ref.shape[0]:
        raise InvalidInputError(
            f"points must be a 2-D array with rows of length {ref.shape[0]}"
        )
    if not np.isfinite(pts).all():
        raise InvalidInputError("point coordinates must be finite")
    if isinstance(kind, Euclidean):
        return _kernels.euclidean_from_ref(ref, pts)
    if isinstance(kind, CoincidenceDissimilarity):
        out = _kernels.coincidence_from_ref(
            ref, pts, kind.d_exponent, kind.e_exponent
        )
        if np.isnan(out).any():
            raise UndefinedComparisonError(
                "coincidence is undefined when both vectors are zero "
                f"(reference and point row {int(np.flatnonzero(np.isnan(out))[0])})"
            )
        return 1.0 - out
    raise InvalidInputError(f"unknown comparator kind: {kind!r}")
