"""Paper scoring: citation heuristics and the random-reader eigenvector models.

Every paper implicitly references itself, so with ``f_j`` the reference
count plus one the scaled matrix ``S = L F^-1`` is column-stochastic while
keeping any block structure of ``L``. The damped model

    S(p) x = p S x + (1 - p)/N (e^T x) e

is solved by power iteration without ever forming the dense rank-one
term. The rival dummy-paper model augments the graph with a paper 0
citing and cited by every other paper.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import kernels
from .citegraph import CitationGraph

Normalization = Literal["sum-to-one", "unit-interval", "raw"]

DEFAULT_P = 0.99
DEFAULT_TOL = 1e-10
DUMMY_MAX_ITER = 100_000


class RankError(ValueError):
    """Invalid input to a ranking operation."""


@dataclass(frozen=True)
class DampingParam:
    """Probability of following a citation rather than jumping uniformly."""

    p: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if not (0.0 < p < 1.0):
            raise RankError(f"damping p must lie strictly inside (0, 1), got {self.p}")
        object.__setattr__(self, "p", p)

    def __float__(self) -> float:
        return self.p


def _damping(p: DampingParam | float) -> DampingParam:
    return p if isinstance(p, DampingParam) else DampingParam(p)


@dataclass(frozen=True, eq=False)
class RankVector:
    scores: np.ndarray
    normalization: Normalization = "raw"

    def __post_init__(self) -> None:
        s = np.array(self.scores, dtype=np.float64)
        if s.ndim != 1:
            raise RankError("scores must be one-dimensional")
        if not np.all(np.isfinite(s)):
            raise RankError("scores must be finite")
        if np.any(s < 0):
            raise RankError("scores must be nonnegative")
        if self.normalization not in ("sum-to-one", "unit-interval", "raw"):
            raise RankError(f"unknown normalization {self.normalization!r}")
        s.setflags(write=False)
        object.__setattr__(self, "scores", s)

    def __len__(self) -> int:
        return len(self.scores)

    def __array__(self, dtype=None, copy=None):
        return self.scores if dtype is None else self.scores.astype(dtype)

    @property
    def total(self) -> float:
        return math.fsum(self.scores)


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    iterations: int
    final_residual: float
    converged: bool
    tolerance: float
    residuals: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


def _inv_f(g: CitationGraph) -> np.ndarray:
    return 1.0 / (g.out_degrees().astype(np.float64) + 1.0)


def stochastic_matvec(g: CitationGraph, x) -> np.ndarray:
    """Return ``S x`` with the implicit self-loop on every paper."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape != (g.n_papers,):
        raise RankError(f"x must have length {g.n_papers}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise RankError("x must be finite")
    return kernels.scaled_matvec(g.in_indptr, g.in_indices, _inv_f(g), x, 1.0)


def normalized_citations(g: CitationGraph) -> RankVector:
    """Each citation weighted by one over the citing paper's reference count.

    The citing paper's own (implicit) self-reference counts, so the
    entries sum to N.
    """
    return RankVector(stochastic_matvec(g, np.ones(g.n_papers)), "raw")


def citations(g: CitationGraph) -> RankVector:
    return RankVector(g.in_degrees().astype(np.float64), "raw")


def default_max_iter(tol: float, p: float) -> int:
    return 10 * math.ceil(math.log(tol) / math.log(p))


def _check_budget(tol: float, max_iter: int) -> None:
    if not (tol > 0 and math.isfinite(tol)):
        raise RankError(f"tol must be a positive finite number, got {tol}")
    if max_iter < 1:
        raise RankError(f"max_iter must be at least 1, got {max_iter}")


def paperrank(
    g: CitationGraph,
    p: DampingParam | float = DEFAULT_P,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
) -> tuple[RankVector, ConvergenceReport]:
    """Stationary vector of the damped random-reader model.

    Power iteration from ``e/N`` with 1-norm renormalization. The returned
    vector is the last iterate whose residual ``||S(p) v - v||_1`` was
    measured, so ``report.final_residual`` is exact for it. Failing to
    converge is not an error; check ``report.converged``.
    """
    p = _damping(p).p
    if g.n_papers == 0:
        raise RankError("graph has no papers")
    if max_iter is None:
        max_iter = default_max_iter(tol, p) if tol > 0 else 1
    _check_budget(tol, max_iter)
    v, it, hist, ok = kernels.damped_power(
        g.in_indptr, g.in_indices, _inv_f(g), p, float(tol), int(max_iter)
    )
    report = ConvergenceReport(int(it), float(hist[-1]), bool(ok), float(tol), hist)
    return RankVector(v, "sum-to-one"), report


def dummy_paperrank(
    g: CitationGraph,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
) -> tuple[RankVector, ConvergenceReport]:
    """Stationary vector of the dummy-paper model, length N+1, dummy at index 0.

    Undamped; the augmented matrix is primitive whenever the graph has an
    edge. Reference counts here exclude the self-loop, the dummy supplies
    the extra reference instead.
    """
    if g.n_edges == 0:
        raise RankError(
            "dummy-paper model needs a nonzero citation matrix (hypothesis L != 0)"
        )
    if max_iter is None:
        max_iter = DUMMY_MAX_ITER
    _check_budget(tol, max_iter)
    v, it, hist, ok = kernels.dummy_power(
        g.in_indptr, g.in_indices, _inv_f(g), float(tol), int(max_iter)
    )
    report = ConvergenceReport(int(it), float(hist[-1]), bool(ok), float(tol), hist)
    return RankVector(v, "sum-to-one"), report


def strip_dummy(v: RankVector | np.ndarray) -> RankVector:
    """Drop the dummy entry and renormalize to sum one."""
    s = np.asarray(v, dtype=np.float64)
    if len(s) < 2:
        raise RankError("need at least the dummy entry and one paper")
    rest = s[1:]
    total = math.fsum(rest)
    if total <= 0:
        raise RankError("paper entries sum to zero, cannot renormalize")
    return RankVector(rest / total, "sum-to-one")


def perturbation_estimate(v_star: RankVector | np.ndarray, p: DampingParam | float) -> RankVector:
    """First-order estimate of the damped vector from the undamped one: ``p v* + (1-p)/N e``."""
    p = _damping(p).p
    s = np.asarray(v_star, dtype=np.float64)
    if abs(math.fsum(s) - 1.0) > 1e-9:
        raise RankError("v_star must sum to one")
    return RankVector(p * s + (1.0 - p) / len(s), "sum-to-one")


def to_unit_interval(v: RankVector | np.ndarray) -> RankVector:
    s = np.asarray(v, dtype=np.float64)
    if len(s) == 0:
        raise RankError("empty vector")
    top = s.max()
    if top <= 0:
        raise RankError("all-zero vector has no unit-interval normalization")
    out = s / top
    out[s == top] = 1.0
    return RankVector(out, "unit-interval")
