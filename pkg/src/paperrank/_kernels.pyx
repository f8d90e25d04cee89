# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled power-iteration kernels.

Matvecs are row-wise "pull" sums over the in-adjacency, so every output
entry is accumulated in fixed index order whatever the thread count.
Reductions (sums, residual norms) are serial.
"""
import numpy as np
from cython.parallel cimport prange
from libc.math cimport fabs

ctypedef long long idx_t


cdef void _pull(const idx_t[::1] indptr, const idx_t[::1] indices,
                const double[::1] y, double diag, double[::1] out,
                int nthreads) noexcept nogil:
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, k
    cdef double acc
    if nthreads > 1:
        for i in prange(n, num_threads=nthreads, schedule="static"):
            acc = diag * y[i]
            for k in range(indptr[i], indptr[i + 1]):
                acc = acc + y[indices[k]]
            out[i] = acc
    else:
        for i in range(n):
            acc = diag * y[i]
            for k in range(indptr[i], indptr[i + 1]):
                acc = acc + y[indices[k]]
            out[i] = acc


cdef double _sum(const double[::1] x) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0
    for i in range(x.shape[0]):
        s += x[i]
    return s


def scaled_matvec(const idx_t[::1] indptr, const idx_t[::1] indices,
                  const double[::1] inv_f, const double[::1] x,
                  double diag=1.0, int nthreads=0):
    """Return ``L diag(inv_f) x + diag * inv_f * x``."""
    cdef Py_ssize_t n = x.shape[0], i
    y_arr = np.empty(n, dtype=np.float64)
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            y[i] = x[i] * inv_f[i]
        _pull(indptr, indices, y, diag, out, nthreads)
    return out_arr


def damped_power(const idx_t[::1] indptr, const idx_t[::1] indices,
                 const double[::1] inv_f, double p, double tol,
                 Py_ssize_t max_iter, int nthreads=0):
    cdef Py_ssize_t n = inv_f.shape[0], i, it = 0
    cdef double teleport, r = 0.0, s, inv_n = 1.0 / n
    cdef bint converged = False
    v_arr = np.full(n, inv_n, dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    w_arr = np.empty(n, dtype=np.float64)
    hist_arr = np.empty(max_iter, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef double[::1] y = y_arr
    cdef double[::1] w = w_arr
    cdef double[::1] hist = hist_arr
    with nogil:
        while it < max_iter:
            s = 0.0
            for i in range(n):
                y[i] = v[i] * inv_f[i]
                s += v[i]
            _pull(indptr, indices, y, 1.0, w, nthreads)
            teleport = (1.0 - p) * inv_n * s
            r = 0.0
            for i in range(n):
                w[i] = p * w[i] + teleport
                r += fabs(w[i] - v[i])
            hist[it] = r
            it += 1
            if r <= tol:
                converged = True
                break
            if it < max_iter:
                s = _sum(w)
                for i in range(n):
                    v[i] = w[i] / s
    return v_arr, it, hist_arr[:it].copy(), bool(converged)


def dummy_power(const idx_t[::1] indptr, const idx_t[::1] indices,
                const double[::1] inv_f, double tol, Py_ssize_t max_iter,
                int nthreads=0):
    # x[0] is the dummy paper; papers live at x[1:]
    cdef Py_ssize_t n = inv_f.shape[0], i, it = 0
    cdef double r = 0.0, s, x0, inv_n = 1.0 / n
    cdef bint converged = False
    v_arr = np.full(n + 1, 1.0 / (n + 1), dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    pulled_arr = np.empty(n, dtype=np.float64)
    w_arr = np.empty(n + 1, dtype=np.float64)
    hist_arr = np.empty(max_iter, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef double[::1] y = y_arr
    cdef double[::1] pulled = pulled_arr
    cdef double[::1] w = w_arr
    cdef double[::1] hist = hist_arr
    with nogil:
        while it < max_iter:
            for i in range(n):
                y[i] = v[i + 1] * inv_f[i]
            _pull(indptr, indices, y, 0.0, pulled, nthreads)
            w[0] = _sum(y)
            x0 = v[0] * inv_n
            for i in range(n):
                w[i + 1] = x0 + pulled[i]
            r = 0.0
            for i in range(n + 1):
                r += fabs(w[i] - v[i])
            hist[it] = r
            it += 1
            if r <= tol:
                converged = True
                break
            if it < max_iter:
                s = _sum(w)
                for i in range(n + 1):
                    v[i] = w[i] / s
    return v_arr, it, hist_arr[:it].copy(), bool(converged)
