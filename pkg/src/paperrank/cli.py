"""Command-line front end.

Exit codes: 0 success, 2 input or usage error, 3 power iteration did not
converge (output still written and flagged in its header).
"""
from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .aggregate import AggregationError, TimeWindow, author_ranks, journal_ranks
from .compare import METHODS, compare_methods, pearson, spearman
from .io import (
    UNDEFINED,
    FormatError,
    fmt,
    ranked_rows,
    read_edge_list,
    read_group_map,
    read_metadata,
    read_rank_file,
    write_csv,
    write_edge_list,
    write_group_map,
)
from .ranking import (
    DEFAULT_P,
    DEFAULT_TOL,
    RankError,
    citations,
    default_max_iter,
    dummy_paperrank,
    normalized_citations,
    paperrank,
    strip_dummy,
    to_unit_interval,
)
from .synth import BlockModelSpec, SpecError, example_spec, gen_block_model

EXIT_OK, EXIT_USAGE, EXIT_NOCONV = 0, 2, 3


class CliError(Exception):
    pass


def _sibling(out: Path, tag: str) -> Path:
    return out.with_name(f"{out.stem}.{tag}{out.suffix or '.csv'}")


def _base_comments(command: str) -> list[tuple[str, object]]:
    return [("tool", f"paperrank {__version__}"), ("command", command)]


def _undef(x: float | None) -> str:
    return UNDEFINED if x is None else fmt(x)


# synth

def cmd_synth(args) -> int:
    if args.example is not None:
        spec = example_spec(args.example)
        source = ("example", args.example)
    else:
        try:
            raw = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot read spec file {args.spec}: {exc}") from None
        spec = BlockModelSpec.from_dict(raw)
        source = ("spec", json.dumps(spec.to_dict(), separators=(",", ":")))
    g = gen_block_model(spec, args.seed)
    comments = [*_base_comments("synth"), source, ("seed", args.seed), ("generator", "numpy PCG64")]
    out = Path(args.out)
    groups_out = Path(args.groups_out) if args.groups_out else _sibling(out, "groups")
    write_edge_list(out, g, comments)
    write_group_map(groups_out, spec.groups().tolist(), comments)
    print(f"wrote {g.n_papers} papers, {g.n_edges} edges to {out}; groups to {groups_out}")
    return EXIT_OK


# rank

def _graph_comments(gf) -> list[tuple[str, object]]:
    return [(k, gf.comments[k]) for k in ("seed", "example", "spec") if k in gf.comments]


def cmd_rank(args) -> int:
    gf = read_edge_list(Path(args.graph), args.n_papers)
    g = gf.graph
    comments = [*_base_comments("rank"), ("graph", Path(args.graph).name), ("method", args.method)]
    comments += _graph_comments(gf)
    out = Path(args.out)
    report = None
    ids = np.arange(g.n_papers)

    if args.method == "citations":
        v = citations(g)
    elif args.method == "normalized":
        v = normalized_citations(g)
    elif args.method == "paperrank":
        max_iter = args.max_iter or default_max_iter(args.tol, args.damping)
        v, report = paperrank(g, args.damping, args.tol, max_iter)
        comments += [("p", args.damping), ("tol", args.tol), ("max_iter", max_iter)]
    else:
        v, report = dummy_paperrank(g, args.tol, args.max_iter)
        ids = np.arange(-1, g.n_papers)
        comments += [("tol", args.tol), ("dummy_id", -1)]

    if report is not None:
        comments += [
            ("iterations", report.iterations),
            ("residual", fmt(report.final_residual)),
            ("converged", str(report.converged).lower()),
        ]
    scores = v.scores
    try:
        unit = to_unit_interval(v).scores
    except RankError:
        unit = None
        comments.append(("warning", "all scores are zero; unit_score undefined"))
    write_csv(out, comments, ["paper_id", "score", "unit_score"], ranked_rows(ids, scores, unit))

    if args.method == "dummy":
        stripped = strip_dummy(v)
        write_csv(
            _sibling(out, "stripped"),
            [*comments, ("variant", "dummy entry removed, renormalized")],
            ["paper_id", "score", "unit_score"],
            ranked_rows(np.arange(g.n_papers), stripped.scores, to_unit_interval(stripped).scores),
        )
    if report is not None and not report.converged:
        print(f"warning: no convergence after {report.iterations} iterations "
              f"(residual {report.final_residual:.3e})", file=sys.stderr)
        return EXIT_NOCONV
    return EXIT_OK


# hist

def histogram(unit: np.ndarray, bins: int) -> np.ndarray:
    """Counts over ``bins`` equal buckets of [0, 1]; the top bucket is right-closed."""
    idx = np.minimum(np.floor(unit * bins).astype(np.int64), bins - 1)
    return np.bincount(np.clip(idx, 0, bins - 1), minlength=bins)


def cmd_hist(args) -> int:
    if args.bins < 1:
        raise CliError("--bins must be at least 1")
    rf = read_rank_file(Path(args.rank))
    if rf.unit is None:
        raise CliError(f"{args.rank} has no unit scores to bin")
    keep = rf.ids >= 0  # drop a dummy row
    ids, unit = rf.ids[keep], rf.unit[keep]
    edges = np.linspace(0.0, 1.0, args.bins + 1)
    if args.group_map:
        gmap = read_group_map(Path(args.group_map))
        missing = [int(i) for i in ids if int(i) not in gmap]
        if missing:
            raise CliError(f"group map has no entry for paper {missing[0]}")
        labels = np.array([gmap[int(i)] for i in ids])
        names = sorted(set(labels.tolist()), key=lambda s: (len(s), s))
        cols = [histogram(unit[labels == nm], args.bins) for nm in names]
        header = ["bin_lo", "bin_hi", *(f"count_{nm}" for nm in names)]
    else:
        cols = [histogram(unit, args.bins)]
        header = ["bin_lo", "bin_hi", "count"]
    rows = [[f"{edges[b]:.6g}", f"{edges[b + 1]:.6g}", *(int(c[b]) for c in cols)] for b in range(args.bins)]
    comments = [*_base_comments("hist"), ("rank", Path(args.rank).name), ("bins", args.bins)]
    comments += [(k, rf.comments[k]) for k in ("method", "p", "seed") if k in rf.comments]
    write_csv(Path(args.out), comments, header, rows)
    return EXIT_OK


# compare

def cmd_compare(args) -> int:
    gf = read_edge_list(Path(args.graph), args.n_papers)
    g = gf.graph
    if g.n_papers == 0:
        raise CliError("graph has no papers")
    max_iter = args.max_iter or default_max_iter(args.tol, args.damping)
    cmp = compare_methods(g, args.damping, args.tol, max_iter)
    out = Path(args.out)
    comments = [*_base_comments("compare"), ("graph", Path(args.graph).name),
                ("p", args.damping), ("tol", args.tol), ("max_iter", max_iter)]
    comments += _graph_comments(gf)
    for m, r in cmp.reports.items():
        comments.append((f"{m}_iterations", r.iterations))
        comments.append((f"{m}_converged", str(r.converged).lower()))

    cols = [cmp.scores.get(m) for m in METHODS]
    rows = [[i, *("" if c is None else fmt(c[i]) for c in cols)] for i in range(g.n_papers)]
    write_csv(out, comments, ["paper_id", *METHODS], rows)

    ref = cmp.scores["paperrank"]
    summary = []
    for m in ("citations", "normalized", "dummy"):
        s = cmp.scores.get(m)
        rho = None if s is None else spearman(ref, s)
        r = None if s is None else pearson(ref, s)
        summary.append(["spearman", m, "", _undef(rho)])
        summary.append(["pearson", m, "", _undef(r)])
    if args.group_map:
        gmap = read_group_map(Path(args.group_map))
        missing = [i for i in range(g.n_papers) if i not in gmap]
        if missing:
            raise CliError(f"group map has no entry for paper {missing[0]}")
        labels = np.array([gmap[i] for i in range(g.n_papers)])
        names = sorted(set(labels.tolist()), key=lambda s: (len(s), s))
        for m in METHODS:
            s = cmp.scores.get(m)
            for nm in names:
                val = None if s is None else float(s[labels == nm].mean())
                summary.append(["group_mean", m, nm, _undef(val)])
    summary_path = _sibling(out, "summary")
    write_csv(summary_path, comments, ["statistic", "method", "group", "value"], summary)
    for stat, m, grp, val in summary:
        print(f"{stat:<11} {m:<11} {grp:<6} {val}")

    if any(not r.converged for r in cmp.reports.values()):
        return EXIT_NOCONV
    return EXIT_OK


# aggregate

def cmd_aggregate(args) -> int:
    if (args.window_t is None) != (args.window_nu is None):
        raise CliError("--window-t and --window-nu must be given together")
    window = None
    if args.window_t is not None:
        try:
            window = TimeWindow(dt.date.fromisoformat(args.window_t), args.window_nu)
        except ValueError as exc:
            raise CliError(f"bad window: {exc}") from None
    rf = read_rank_file(Path(args.rank))
    keep = rf.ids >= 0
    ids, scores = rf.ids[keep], rf.scores[keep]
    if not np.array_equal(ids, np.arange(len(ids))):
        raise CliError(f"{args.rank}: paper ids must be 0..N-1")
    meta = read_metadata(Path(args.metadata))
    for i in range(len(ids)):
        if i not in meta:
            raise CliError(f"metadata has no record for paper {i}")

    comments = [*_base_comments("aggregate"), ("rank", Path(args.rank).name),
                ("metadata", Path(args.metadata).name), ("target", args.target)]
    comments += [(k, rf.comments[k]) for k in ("method", "p", "seed") if k in rf.comments]
    if window is not None:
        comments += [("window_t", window.t.isoformat()), ("window_nu", window.nu)]

    if args.target == "authors":
        table = author_ranks(scores, meta, window)
        header = ["author", "rank"]
        rows = [[a, fmt(r)] for a, r in table.sorted()]
    else:
        table = journal_ranks(scores, meta, window)
        header = ["journal", "rank", "n_papers", "average"]
        rows = [[e.journal, fmt(e.rank), e.n_papers, fmt(e.average)] for e in table.sorted()]
    footer = [("conservation", f"{table.paper_total:.6f} = {table.total:.6f}")]
    write_csv(Path(args.out), comments, header, rows, footer)
    return EXIT_OK


def _damping(text: str) -> float:
    p = float(text)
    if not 0.0 < p < 1.0:
        raise argparse.ArgumentTypeError(f"damping must lie in (0, 1), got {text}")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paperrank", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"paperrank {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="generate a block-model citation graph")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", type=int, choices=range(1, 7), metavar="{1..6}")
    src.add_argument("--spec", help="JSON file with group_sizes and mean_refs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--out", required=True)
    s.add_argument("--groups-out", help="group map path (default: <out>.groups.csv)")
    s.set_defaults(func=cmd_synth)

    def solver_flags(p):
        p.add_argument("-p", "--damping", type=_damping, default=DEFAULT_P)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-iter", type=int)
        p.add_argument("--n-papers", type=int)

    r = sub.add_parser("rank", help="score papers with one method")
    r.add_argument("graph")
    r.add_argument("--method", choices=METHODS, default="paperrank")
    solver_flags(r)
    r.add_argument("-o", "--out", required=True)
    r.set_defaults(func=cmd_rank)

    h = sub.add_parser("hist", help="histogram of unit scores")
    h.add_argument("rank")
    h.add_argument("--bins", type=int, default=50)
    h.add_argument("--group-map")
    h.add_argument("-o", "--out", required=True)
    h.set_defaults(func=cmd_hist)

    c = sub.add_parser("compare", help="run all methods and correlate them with PaperRank")
    c.add_argument("graph")
    solver_flags(c)
    c.add_argument("--group-map")
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(func=cmd_compare)

    a = sub.add_parser("aggregate", help="author or journal ranks from paper scores")
    a.add_argument("rank")
    a.add_argument("metadata")
    a.add_argument("--target", choices=("authors", "journals"), required=True)
    a.add_argument("--window-t", help="reference date YYYY-MM-DD")
    a.add_argument("--window-nu", type=int, help="window length in whole years")
    a.add_argument("-o", "--out", required=True)
    a.set_defaults(func=cmd_aggregate)
    return ap


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, FormatError, SpecError, RankError, AggregationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
