"""Readers and writers for the CSV / JSON-lines file formats.

All files may start with ``#`` comment lines of the form ``# key: value``;
readers collect them into a dict and skip them.
"""
from __future__ import annotations

import csv
import datetime as dt
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .citegraph import CitationGraph, GraphError, PaperMeta, build_graph

EDGE_HEADER = ["citing_id", "cited_id"]
RANK_HEADER = ["paper_id", "score", "unit_score"]
GROUP_HEADER = ["paper_id", "group"]
UNDEFINED = "undefined"


class FormatError(ValueError):
    """Unreadable or malformed input file."""


def fmt(x: float | None) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return repr(float(x))


def _split_comments(path: Path) -> tuple[dict[str, str], list[str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                meta.setdefault(key.strip(), value.strip())
        elif line.strip():
            body.append(line)
    return meta, body


def write_csv(path: Path, comments: Sequence[tuple[str, object]], header: Sequence[str],
              rows: Iterable[Sequence[object]], footer: Sequence[tuple[str, object]] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for k, v in comments:
            fh.write(f"# {k}: {v}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        for k, v in footer:
            fh.write(f"# {k}: {v}\n")


def _rows(path: Path, body: list[str], header: list[str]) -> list[list[str]]:
    rows = list(csv.reader(body))
    if not rows or [c.strip() for c in rows[0]] != header:
        raise FormatError(f"{path}: expected header {','.join(header)}")
    return rows[1:]


@dataclass
class GraphFile:
    graph: CitationGraph
    comments: dict[str, str] = field(default_factory=dict)


def read_edge_list(path: Path, n_papers: int | None = None) -> GraphFile:
    """Load a ``citing_id,cited_id`` edge list.

    N comes from ``n_papers``, else from a ``# n_papers:`` comment, else
    1 + the largest id.
    """
    comments, body = _split_comments(path)
    rows = _rows(path, body, EDGE_HEADER)
    try:
        edges = np.array([(int(a), int(b)) for a, b in rows], dtype=np.int64).reshape(-1, 2)
    except ValueError as exc:
        raise FormatError(f"{path}: bad edge row ({exc})") from None
    if (edges < 0).any():
        raise FormatError(f"{path}: ids must be nonnegative")
    if n_papers is None and "n_papers" in comments:
        try:
            n_papers = int(comments["n_papers"])
        except ValueError:
            raise FormatError(f"{path}: bad n_papers comment") from None
    if n_papers is None:
        n_papers = int(edges.max()) + 1 if len(edges) else 0
    try:
        g = build_graph(n_papers, edges)
    except GraphError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return GraphFile(g, comments)


def write_edge_list(path: Path, g: CitationGraph, comments: Sequence[tuple[str, object]] = ()) -> None:
    write_csv(path, [*comments, ("n_papers", g.n_papers)], EDGE_HEADER, g.edges().tolist())


def write_group_map(path: Path, groups: Sequence[object], comments: Sequence[tuple[str, object]] = ()) -> None:
    write_csv(path, comments, GROUP_HEADER, ((i, gr) for i, gr in enumerate(groups)))


def read_group_map(path: Path) -> dict[int, str]:
    _, body = _split_comments(path)
    out = {}
    for row in _rows(path, body, GROUP_HEADER):
        try:
            out[int(row[0])] = row[1].strip()
        except (ValueError, IndexError):
            raise FormatError(f"{path}: bad group row {row}") from None
    return out


def ranked_rows(ids: np.ndarray, scores: np.ndarray, unit: np.ndarray | None) -> list[list[str]]:
    """Rows sorted by descending score, ties by ascending id."""
    order = np.lexsort((ids, -scores))
    return [
        [str(int(ids[k])), fmt(scores[k]), "" if unit is None else fmt(unit[k])]
        for k in order
    ]


@dataclass
class RankFile:
    ids: np.ndarray
    scores: np.ndarray
    unit: np.ndarray | None  # None when the column is empty
    comments: dict[str, str]


def read_rank_file(path: Path) -> RankFile:
    comments, body = _split_comments(path)
    rows = _rows(path, body, RANK_HEADER)
    try:
        ids = np.array([int(r[0]) for r in rows], dtype=np.int64)
        scores = np.array([float(r[1]) for r in rows])
        cells = [r[2].strip() for r in rows]
        unit = None if any(c == "" for c in cells) else np.array([float(c) for c in cells])
    except (ValueError, IndexError) as exc:
        raise FormatError(f"{path}: bad rank row ({exc})") from None
    order = np.argsort(ids, kind="stable")
    return RankFile(ids[order], scores[order], None if unit is None else unit[order], comments)


def read_metadata(path: Path) -> dict[int, PaperMeta]:
    """JSON lines: ``{"paper", "authors", "journal", "date"}`` per record."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    out: dict[int, PaperMeta] = {}
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            paper = int(rec["paper"])
            date = dt.date.fromisoformat(rec["date"]) if rec.get("date") else None
            meta = PaperMeta(
                paper,
                frozenset(str(a) for a in rec.get("authors") or ()),
                rec.get("journal") or None,
                date,
                incomplete=bool(rec.get("incomplete", False)),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
        if paper in out:
            raise FormatError(f"{path}:{lineno}: duplicate paper id {paper}")
        out[paper] = meta
    return out
