"""NumPy implementations of the comparator kernels.

Used as the fallback when the compiled extension is unavailable, and as the
reference the compiled kernels are tested against.  All functions expect
float64 arrays (``ref``/``us``/``vs`` shaped (M,) or (N, M), ``pts`` shaped
(N, M)) and do no argument validation; callers in ``coinknn.similarity`` own
the checks.

Rows for which the comparison is undefined (both vectors entirely zero)
come back as NaN; wrappers turn those into errors.
"""

import numpy as np

BACKEND_NAME = "numpy"


def euclidean_from_ref(ref, pts):
    """Euclidean distances from ``ref`` (M,) to each row of ``pts`` (N, M)."""
    diff = pts - ref
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _coincidence(pos_u, neg_u, pos_v, neg_v, d_exponent, e_exponent):
    # shared-mass / union-mass ratio raised to d, times the shared-mass /
    # smaller-total-mass (interiority) ratio raised to e
    shared = (np.minimum(pos_u, pos_v) + np.minimum(neg_u, neg_v)).sum(axis=1)
    union = (np.maximum(pos_u, pos_v) + np.maximum(neg_u, neg_v)).sum(axis=1)
    total_u = (pos_u + neg_u).sum(axis=-1)
    total_v = (pos_v + neg_v).sum(axis=1)
    smaller = np.minimum(total_u, total_v)

    out = np.zeros(union.shape, dtype=np.float64)
    out[union == 0.0] = np.nan
    pos = shared > 0.0
    out[pos] = (shared[pos] / union[pos]) ** d_exponent * (
        shared[pos] / smaller[pos]
    ) ** e_exponent
    return out


def coincidence_from_ref(ref, pts, d_exponent, e_exponent):
    """Coincidence similarity of ``ref`` (M,) against each row of ``pts`` (N, M)."""
    return _coincidence(
        np.maximum(ref, 0.0),
        np.maximum(-ref, 0.0),
        np.maximum(pts, 0.0),
        np.maximum(-pts, 0.0),
        d_exponent,
        e_exponent,
    )


def coincidence_pairs(us, vs, d_exponent, e_exponent):
    """Row-wise coincidence similarity between ``us`` (N, M) and ``vs`` (N, M)."""
    return _coincidence(
        np.maximum(us, 0.0),
        np.maximum(-us, 0.0),
        np.maximum(vs, 0.0),
        np.maximum(-vs, 0.0),
        d_exponent,
        e_exponent,
    )
