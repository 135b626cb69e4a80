# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled comparator kernels.

Same contracts as ``coinknn._kernels._numpy``: no validation, NaN marks an
undefined comparison (both vectors zero).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN, pow, sqrt

cnp.import_array()

BACKEND_NAME = "native"


def euclidean_from_ref(double[::1] ref not None, double[:, ::1] pts not None):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t m = pts.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, k
    cdef double acc, d
    for i in range(n):
        acc = 0.0
        for k in range(m):
            d = pts[i, k] - ref[k]
            acc += d * d
        ov[i] = sqrt(acc)
    return out


cdef inline double _coincidence_one(const double* u, const double* v,
                                    Py_ssize_t m, double d_exponent,
                                    double e_exponent) noexcept nogil:
    cdef double shared = 0.0, union_ = 0.0, total_u = 0.0, total_v = 0.0
    cdef double up, un, vp, vn, smaller
    cdef Py_ssize_t k
    for k in range(m):
        up = u[k] if u[k] > 0.0 else 0.0
        un = -u[k] if u[k] < 0.0 else 0.0
        vp = v[k] if v[k] > 0.0 else 0.0
        vn = -v[k] if v[k] < 0.0 else 0.0
        shared += (up if up < vp else vp) + (un if un < vn else vn)
        union_ += (up if up > vp else vp) + (un if un > vn else vn)
        total_u += up + un
        total_v += vp + vn
    if union_ == 0.0:
        return NAN
    if shared == 0.0:
        return 0.0
    smaller = total_u if total_u < total_v else total_v
    return pow(shared / union_, d_exponent) * pow(shared / smaller, e_exponent)


def coincidence_from_ref(double[::1] ref not None, double[:, ::1] pts not None,
                         double d_exponent, double e_exponent):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t m = pts.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _coincidence_one(&ref[0], &pts[i, 0], m, d_exponent, e_exponent)
    return out


def coincidence_pairs(double[:, ::1] us not None, double[:, ::1] vs not None,
                      double d_exponent, double e_exponent):
    cdef Py_ssize_t n = us.shape[0]
    cdef Py_ssize_t m = us.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _coincidence_one(&us[i, 0], &vs[i, 0], m, d_exponent, e_exponent)
    return out
