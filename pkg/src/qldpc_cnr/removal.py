"""Probabilistic check-node deselection.

Both variants gather candidate checks from level 1 of the computation trees
rooted at the unsatisfied checks, then remove a seeded uniform sample of
``deselection_degree`` of them. The information-measurement variant first
narrows each root's leaves to the ones with maximal IM value (keeping all
ties), which shrinks the sample space to the checks that can actually raise
a trapped qubit's separation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import SparseBinaryMatrix, delete_rows
from .tanner import TannerGraph, find_ims, leaf_checks


@dataclass
class RemovalConfig:
    """Deselection degree, tree level (fixed at 1), and sampling seed."""

    deselection_degree: int
    tree_level: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        if self.deselection_degree < 0:
            raise ValueError("deselection_degree must be non-negative")
        if self.tree_level != 1:
            raise ValueError("only tree level 1 is supported")


@dataclass
class RemovalOutcome:
    """Modified matrix plus which checks went away and the row re-indexing."""

    modified_matrix: SparseBinaryMatrix
    removed_checks: list[int]
    row_map: np.ndarray = field(repr=False)


def _sample_and_delete(H: SparseBinaryMatrix, candidates: set[int],
                       cfg: RemovalConfig) -> RemovalOutcome:
    pool = sorted(candidates)
    take = min(cfg.deselection_degree, len(pool))
    if take == 0:
        identity = np.arange(H.rows, dtype=np.int64)
        return RemovalOutcome(H, [], identity)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.rng_seed)))
    chosen = sorted(int(c) for c in rng.choice(pool, size=take, replace=False))
    sub, row_map = delete_rows(H, chosen)
    return RemovalOutcome(sub, chosen, row_map)


def cnr(H: SparseBinaryMatrix, unsat, cfg: RemovalConfig,
        graph: TannerGraph | None = None) -> RemovalOutcome:
    """Sample removals from all level-1 leaves of every unsatisfied root."""
    g = graph if graph is not None else TannerGraph(H)
    candidates: set[int] = set()
    for root in unsat:
        candidates.update(leaf_checks(g, int(root)))
    return _sample_and_delete(H, candidates, cfg)


def qcnr(H: SparseBinaryMatrix, unsat, cfg: RemovalConfig,
         graph: TannerGraph | None = None) -> RemovalOutcome:
    """Sample removals from each root's maximum-IM leaves only."""
    g = graph if graph is not None else TannerGraph(H)
    unsat_list = [int(c) for c in unsat]
    candidates: set[int] = set()
    for root in unsat_list:
        leaves = leaf_checks(g, root)
        if not leaves:
            continue
        table = find_ims(g, unsat_list, leaves)
        candidates.update(table.max_checks())
    return _sample_and_delete(H, candidates, cfg)
