"""Side-by-side runs of every scoring method, with correlation summaries."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .citegraph import CitationGraph
from .ranking import (
    DEFAULT_P,
    DEFAULT_TOL,
    ConvergenceReport,
    citations,
    dummy_paperrank,
    normalized_citations,
    paperrank,
    strip_dummy,
)

METHODS = ("citations", "normalized", "paperrank", "dummy")


def _constant(x: np.ndarray) -> bool:
    return len(x) < 2 or bool(np.all(x == x[0]))


def spearman(a, b) -> float | None:
    """Spearman rank correlation, ``None`` when either input is constant."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    if _constant(a) or _constant(b):
        return None
    return float(stats.spearmanr(a, b).statistic)


def pearson(a, b) -> float | None:
    a, b = np.asarray(a, float), np.asarray(b, float)
    if _constant(a) or _constant(b):
        return None
    return float(stats.pearsonr(a, b).statistic)


def group_means(scores, groups) -> dict[int, float]:
    scores = np.asarray(scores, float)
    groups = np.asarray(groups)
    return {int(k): float(scores[groups == k].mean()) for k in np.unique(groups)}


@dataclass
class Comparison:
    scores: dict[str, np.ndarray]  # method -> length-N vector (dummy stripped)
    reports: dict[str, ConvergenceReport]

    def correlations(self, reference: str = "paperrank") -> dict[str, tuple[float | None, float | None]]:
        ref = self.scores[reference]
        return {
            m: (spearman(ref, s), pearson(ref, s))
            for m, s in self.scores.items()
            if m != reference
        }

    def group_means(self, groups) -> dict[str, dict[int, float]]:
        return {m: group_means(s, groups) for m, s in self.scores.items()}


def compare_methods(g: CitationGraph, p: float = DEFAULT_P, tol: float = DEFAULT_TOL,
                    max_iter: int | None = None) -> Comparison:
    """Run all four methods. The dummy model is skipped on edgeless graphs."""
    scores = {
        "citations": citations(g).scores,
        "normalized": normalized_citations(g).scores,
    }
    reports = {}
    v, reports["paperrank"] = paperrank(g, p, tol, max_iter)
    scores["paperrank"] = v.scores
    if g.n_edges:
        d, reports["dummy"] = dummy_paperrank(g, tol)
        scores["dummy"] = strip_dummy(d).scores
    return Comparison(scores, reports)
