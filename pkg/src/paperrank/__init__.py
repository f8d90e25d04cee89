"""Citation ranking with the random-reader PaperRank model."""
from .aggregate import TimeWindow, author_ranks, journal_ranks
from .citegraph import CitationGraph, PaperMeta, bare_citations, build_graph, reference_counts
from .ranking import (
    ConvergenceReport,
    DampingParam,
    RankVector,
    dummy_paperrank,
    normalized_citations,
    paperrank,
    perturbation_estimate,
    stochastic_matvec,
    strip_dummy,
    to_unit_interval,
)
from .synth import BlockModelSpec, example_spec, gen_block_model

__version__ = "0.1.0"
