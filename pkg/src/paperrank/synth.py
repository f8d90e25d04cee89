"""Seeded block-model citation graphs, including the six reference experiments.

Papers are numbered group by group: group 0 takes ids ``0..size_0-1`` and
so on. For a paper in group g and a target group h the number of
references is Binomial(m, mean/m) with m the number of eligible targets
(group h minus the paper itself), and the targets are drawn uniformly
without replacement. Randomness comes from numpy's PCG64 seeded with the
given 64-bit seed, consumed in paper-id then target-group order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .citegraph import CitationGraph, build_graph


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class BlockModelSpec:
    group_sizes: tuple[int, ...]
    mean_refs: tuple[tuple[float, ...], ...]  # [citing group][cited group]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.group_sizes)
        means = tuple(tuple(float(x) for x in row) for row in self.mean_refs)
        object.__setattr__(self, "group_sizes", sizes)
        object.__setattr__(self, "mean_refs", means)
        if not sizes:
            raise SpecError("at least one group is required")
        if any(s < 1 for s in sizes):
            raise SpecError(f"group sizes must be positive, got {sizes}")
        k = len(sizes)
        if len(means) != k or any(len(row) != k for row in means):
            raise SpecError(f"mean_refs must be a {k}x{k} matrix")
        for g, row in enumerate(means):
            for h, mu in enumerate(row):
                cap = sizes[h] - (g == h)
                if not (0.0 <= mu <= cap):
                    raise SpecError(
                        f"mean_refs[{g}][{h}] = {mu} outside [0, {cap}] "
                        f"(group {h} has {sizes[h]} papers)"
                    )

    @property
    def n_papers(self) -> int:
        return sum(self.group_sizes)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.group_sizes)]).astype(np.int64)

    def groups(self) -> np.ndarray:
        """Group label of every paper id."""
        return np.repeat(np.arange(len(self.group_sizes)), self.group_sizes)

    @classmethod
    def from_dict(cls, d: dict) -> "BlockModelSpec":
        try:
            return cls(tuple(d["group_sizes"]), tuple(tuple(r) for r in d["mean_refs"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad block-model spec: {exc}") from None

    def to_dict(self) -> dict:
        return {"group_sizes": list(self.group_sizes), "mean_refs": [list(r) for r in self.mean_refs]}


_EXAMPLES = {
    1: ([500], [[20]]),
    2: ([300, 700], [[20, 0], [0, 20]]),
    3: ([300, 700], [[10, 0], [0, 70]]),
    4: ([300, 700], [[70, 0], [0, 10]]),
    5: ([900, 100], [[20, 0], [20, 50]]),
    6: ([200, 200, 400], [[20, 0, 0], [20, 20, 0], [20, 0, 100]]),
}


def example_spec(n: int) -> BlockModelSpec:
    """Block model of reference experiment ``n`` (1 to 6)."""
    if n not in _EXAMPLES:
        raise SpecError(f"example must be one of 1..6, got {n}")
    sizes, means = _EXAMPLES[n]
    return BlockModelSpec(tuple(sizes), tuple(tuple(r) for r in means))


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not (0 <= seed < 2**64):
        raise SpecError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def gen_block_model(spec: BlockModelSpec, seed: int) -> CitationGraph:
    rng = np.random.Generator(np.random.PCG64(_check_seed(seed)))
    sizes = spec.group_sizes
    offsets = spec.offsets
    chunks = []
    for g, size_g in enumerate(sizes):
        for local in range(size_g):
            j = offsets[g] + local
            for h, mu in enumerate(spec.mean_refs[g]):
                if mu == 0:
                    continue
                m = sizes[h] - (g == h)
                k = rng.binomial(m, mu / m)
                if k == 0:
                    continue
                picks = rng.choice(m, size=k, replace=False)
                if g == h:
                    picks[picks >= local] += 1  # skip the citing paper itself
                chunks.append(np.column_stack([np.full(k, j), picks + offsets[h]]))
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return build_graph(spec.n_papers, edges)
