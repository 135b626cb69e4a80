"""Backend parity: the compiled kernels must agree with the NumPy fallback."""

import numpy as np
import pytest

from coinknn._kernels import _numpy as numpy_backend

native_backend = pytest.importorskip(
    "coinknn._kernels._native", reason="compiled kernels not built"
)


@pytest.fixture(scope="module")
def batches():
    rng = np.random.default_rng(123)
    out = []
    for m in (1, 2, 5, 8):
        ref = rng.uniform(-10, 10, m)
        pts = rng.uniform(-10, 10, (500, m))
        pts[::7] = np.abs(pts[::7])  # some all-positive rows
        pts[3] = 0.0  # a zero row (defined: ref is non-zero)
        out.append((ref, np.ascontiguousarray(pts)))
    return out


def test_euclidean_parity(batches):
    for ref, pts in batches:
        a = native_backend.euclidean_from_ref(ref, pts)
        b = numpy_backend.euclidean_from_ref(ref, pts)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_coincidence_parity(batches):
    for ref, pts in batches:
        for d, e in ((1.0, 1.0), (3.0, 1.0), (5.0, 0.0), (0.5, 2.0)):
            a = native_backend.coincidence_from_ref(ref, pts, d, e)
            b = numpy_backend.coincidence_from_ref(ref, pts, d, e)
            np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_pairs_parity():
    rng = np.random.default_rng(5)
    us = rng.uniform(-3, 3, (300, 4))
    vs = rng.uniform(-3, 3, (300, 4))
    a = native_backend.coincidence_pairs(us, vs, 3.0, 1.0)
    b = numpy_backend.coincidence_pairs(us, vs, 3.0, 1.0)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_undefined_rows_marked_nan():
    ref = np.zeros(3)
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    for backend in (native_backend, numpy_backend):
        out = backend.coincidence_from_ref(ref, pts, 3.0, 1.0)
        assert np.isnan(out[0])
        assert out[1] == 0.0
