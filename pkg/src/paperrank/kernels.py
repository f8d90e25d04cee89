"""Kernel backend selection.

The Cython extension ``paperrank._kernels`` is used when it imports;
otherwise, or when ``PAPERRANK_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the numpy/scipy fallback in ``_pykernels`` is used.

``PAPERRANK_THREADS`` caps the worker count of the compiled matvec
(0 or unset = serial). Results do not depend on it.
"""
import os

from . import _pykernels

fallback = _pykernels

if os.environ.get("PAPERRANK_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"
impl = _impl


def threads() -> int:
    raw = os.environ.get("PAPERRANK_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"PAPERRANK_THREADS must be an integer, got {raw!r}") from None
    return max(n, 0)


def scaled_matvec(indptr, indices, inv_f, x, diag=1.0):
    return impl.scaled_matvec(indptr, indices, inv_f, x, diag, threads())


def damped_power(indptr, indices, inv_f, p, tol, max_iter):
    return impl.damped_power(indptr, indices, inv_f, p, tol, max_iter, threads())


def dummy_power(indptr, indices, inv_f, tol, max_iter):
    return impl.dummy_power(indptr, indices, inv_f, tol, max_iter, threads())
