"""Author and journal ranks folded from paper scores.

Each paper's score is split equally among its authors and added whole to
its journal, so the totals are conserved. Windowed variants keep only
papers published on or after ``t - nu`` years; scores are not
renormalized over the window.
"""
from __future__ import annotations

import datetime as dt
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .citegraph import PaperMeta


class AggregationError(ValueError):
    pass


@dataclass(frozen=True)
class TimeWindow:
    t: dt.date
    nu: int

    def __post_init__(self) -> None:
        if self.nu <= 0:
            raise AggregationError(f"window length nu must be positive, got {self.nu}")

    @property
    def start(self) -> dt.date:
        """``t - nu`` whole years; Feb 29 falls back to Feb 28."""
        year = self.t.year - self.nu
        try:
            return self.t.replace(year=year)
        except ValueError:
            return self.t.replace(year=year, day=28)

    def contains(self, d: dt.date | None) -> bool:
        return d is not None and d >= self.start


@dataclass(frozen=True)
class AuthorRankTable:
    ranks: dict[str, float]
    paper_total: float  # sum of the contributing paper scores

    def sorted(self) -> list[tuple[str, float]]:
        return sorted(self.ranks.items(), key=lambda kv: (-kv[1], kv[0]))

    @property
    def total(self) -> float:
        return math.fsum(self.ranks.values())


@dataclass(frozen=True)
class JournalEntry:
    journal: str
    rank: float
    n_papers: int

    @property
    def average(self) -> float | None:
        """Mean paper score, ``None`` when the journal has no counted papers."""
        return self.rank / self.n_papers if self.n_papers else None


@dataclass(frozen=True)
class JournalRankTable:
    entries: dict[str, JournalEntry]
    paper_total: float

    def sorted(self) -> list[JournalEntry]:
        return sorted(self.entries.values(), key=lambda e: (-e.rank, e.journal))

    @property
    def total(self) -> float:
        return math.fsum(e.rank for e in self.entries.values())

    def __getitem__(self, journal: str) -> JournalEntry:
        return self.entries[journal]


def _aligned(v, meta: Sequence[PaperMeta] | Mapping[int, PaperMeta]):
    scores = np.asarray(v, dtype=np.float64)
    if isinstance(meta, Mapping):
        lookup = dict(meta)
    else:
        lookup = {m.paper: m for m in meta}
    for i in range(len(scores)):
        if i not in lookup:
            raise AggregationError(f"no metadata for paper {i}")
    return scores, lookup


def author_ranks(v, meta, window: TimeWindow | None = None) -> AuthorRankTable:
    """``r_j = sum over papers i authored by a_j of v_i / n_i``."""
    scores, lookup = _aligned(v, meta)
    parts: dict[str, list[float]] = defaultdict(list)
    contributing = []
    for i, s in enumerate(scores):
        m = lookup[i]
        if window is not None and not window.contains(m.date):
            continue
        if not m.authors:
            raise AggregationError(f"paper {i} has no authors; its score cannot be split")
        share = s / len(m.authors)
        for a in sorted(m.authors):
            parts[a].append(share)
        contributing.append(s)
    ranks = {a: math.fsum(xs) for a, xs in parts.items()}
    return AuthorRankTable(ranks, math.fsum(contributing))


def journal_ranks(v, meta, window: TimeWindow | None = None) -> JournalRankTable:
    """``l_k = sum of v_i over papers in journal k``, with paper counts for averages."""
    scores, lookup = _aligned(v, meta)
    parts: dict[str, list[float]] = defaultdict(list)
    contributing = []
    for i, s in enumerate(scores):
        m = lookup[i]
        if window is not None and not window.contains(m.date):
            continue
        if not m.journal:
            raise AggregationError(f"paper {i} has no journal assignment")
        parts[m.journal].append(s)
        contributing.append(s)
    entries = {k: JournalEntry(k, math.fsum(xs), len(xs)) for k, xs in parts.items()}
    return JournalRankTable(entries, math.fsum(contributing))
