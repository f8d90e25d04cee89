"""Pure-Python (numpy/scipy) versions of the compiled kernels.

Same signatures and semantics as ``_kernels.pyx``; used when the
extension is not built or ``PAPERRANK_PURE_PYTHON`` is set.
"""
import numpy as np
import scipy.sparse as sp


def _rows(indptr, indices):
    n = len(indptr) - 1
    data = np.ones(len(indices))
    return sp.csr_matrix((data, np.asarray(indices), np.asarray(indptr)), shape=(n, n))


def scaled_matvec(indptr, indices, inv_f, x, diag=1.0, nthreads=0):
    y = np.asarray(x, dtype=np.float64) * inv_f
    return diag * y + _rows(indptr, indices) @ y


def damped_power(indptr, indices, inv_f, p, tol, max_iter, nthreads=0):
    inv_f = np.asarray(inv_f)
    n = len(inv_f)
    L = _rows(indptr, indices)
    v = np.full(n, 1.0 / n)
    hist = []
    converged = False
    for it in range(1, max_iter + 1):
        y = v * inv_f
        w = p * (y + L @ y) + (1.0 - p) / n * np.sum(v)
        r = np.sum(np.abs(w - v))
        hist.append(r)
        if r <= tol:
            converged = True
            break
        if it < max_iter:
            v = w / np.sum(w)
    return v, len(hist), np.array(hist), converged


def dummy_power(indptr, indices, inv_f, tol, max_iter, nthreads=0):
    inv_f = np.asarray(inv_f)
    n = len(inv_f)
    L = _rows(indptr, indices)
    v = np.full(n + 1, 1.0 / (n + 1))
    hist = []
    converged = False
    for it in range(1, max_iter + 1):
        y = v[1:] * inv_f
        w = np.empty(n + 1)
        w[0] = np.sum(y)
        w[1:] = v[0] / n + L @ y
        r = np.sum(np.abs(w - v))
        hist.append(r)
        if r <= tol:
            converged = True
            break
        if it < max_iter:
            v = w / np.sum(w)
    return v, len(hist), np.array(hist), converged
