"""Sparse citation graph over N papers.

Edges are stored in both directions as CSR-style index arrays:
``out_*`` holds, for each citing paper j, the papers it cites (column j
of the citation matrix L), ``in_*`` holds, for each paper i, the papers
citing it (row i of L). Self-loops are never stored.
"""
from __future__ import annotations

import datetime as dt
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for malformed graph input."""


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # src/dst already sorted by (src, dst) and deduplicated
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    indices = np.ascontiguousarray(dst, dtype=np.int64)
    indptr.setflags(write=False)
    indices.setflags(write=False)
    return indptr, indices


@dataclass(frozen=True, eq=False)
class CitationGraph:
    n_papers: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    dropped_self_loops: int = 0

    @property
    def n_edges(self) -> int:
        return int(self.out_indices.shape[0])

    def out_list(self, j: int) -> np.ndarray:
        """Sorted ids of the papers cited by paper ``j``."""
        return self.out_indices[self.out_indptr[j]:self.out_indptr[j + 1]]

    def in_list(self, i: int) -> np.ndarray:
        """Sorted ids of the papers citing paper ``i``."""
        return self.in_indices[self.in_indptr[i]:self.in_indptr[i + 1]]

    @property
    def out_lists(self) -> list[list[int]]:
        return [self.out_list(j).tolist() for j in range(self.n_papers)]

    @property
    def in_lists(self) -> list[list[int]]:
        return [self.in_list(i).tolist() for i in range(self.n_papers)]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def edges(self) -> np.ndarray:
        """(citing, cited) pairs, shape (E, 2), ordered by citing then cited id."""
        citing = np.repeat(np.arange(self.n_papers, dtype=np.int64), self.out_degrees())
        return np.column_stack([citing, self.out_indices])

    def same_edges(self, other: "CitationGraph") -> bool:
        return (
            self.n_papers == other.n_papers
            and np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CitationGraph):
            return NotImplemented
        return self.same_edges(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CitationGraph(n_papers={self.n_papers}, n_edges={self.n_edges})"


def build_graph(n_papers: int, edges: Iterable[Sequence[int]] | np.ndarray) -> CitationGraph:
    """Build a graph from ``(citing, cited)`` pairs.

    Duplicate edges collapse to one. Self-citations are dropped and counted
    in ``dropped_self_loops``. An id outside ``[0, n_papers)`` raises
    :class:`GraphError` naming the offending edge.
    """
    n = int(n_papers)
    if n < 0:
        raise GraphError(f"n_papers must be nonnegative, got {n_papers}")
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("edges must be (citing, cited) pairs")

    bad = (arr < 0) | (arr >= n)
    if bad.any():
        k = int(np.flatnonzero(bad.any(axis=1))[0])
        citing, cited = arr[k]
        raise GraphError(
            f"edge #{k} ({citing} -> {cited}) has an id outside [0, {n})"
        )

    loops = arr[:, 0] == arr[:, 1]
    n_loops = int(loops.sum())
    if n_loops:
        log.warning("dropped %d self-citation edge(s)", n_loops)
        arr = arr[~loops]

    if arr.shape[0]:
        arr = np.unique(arr, axis=0)  # sorted by (citing, cited), deduplicated
    citing, cited = arr[:, 0], arr[:, 1]
    out_indptr, out_indices = _csr(n, citing, cited)
    order = np.lexsort((citing, cited))
    in_indptr, in_indices = _csr(n, cited[order], citing[order])
    return CitationGraph(n, out_indptr, out_indices, in_indptr, in_indices, n_loops)


def bare_citations(g: CitationGraph) -> np.ndarray:
    """Citation count per paper, ``L e`` on the raw matrix."""
    return g.in_degrees().astype(np.int64)


def reference_counts(g: CitationGraph, with_self_loop: bool = False) -> np.ndarray:
    """Reference count per paper, ``e^T L``; ``+1`` each with the implicit self-loop."""
    f = g.out_degrees().astype(np.int64)
    return f + 1 if with_self_loop else f


@dataclass(frozen=True)
class PaperMeta:
    """Bibliographic metadata of one paper.

    ``incomplete`` marks records whose author list is known to be missing;
    only those may carry an empty ``authors`` set.
    """

    paper: int
    authors: frozenset[str]
    journal: str | None
    date: dt.date | None = None
    incomplete: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "authors", frozenset(self.authors))
        if not self.authors and not self.incomplete:
            raise GraphError(
                f"paper {self.paper}: empty author set without incomplete flag"
            )

    @property
    def n_authors(self) -> int:
        return len(self.authors)
