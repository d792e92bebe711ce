"""Pairwise distance matrices over a set of lattices."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .formats import DistanceMatrix
from .rotations import hausdorff_from_cells, sample_rotations, scale_from_cells
from .voronoi import compute_voronoi_cell

log = logging.getLogger(__name__)

METRICS = {"dh": "dH", "ds": "dS"}


@dataclass
class MatrixStats:
    cells_computed: int = 0
    pairs_computed: int = 0


def distance_matrix(ids, bases, metric="dh", n=3, threads=1, refine=False, stats=None):
    """Symmetric matrix of ``metric`` over all unordered pairs.

    Every Voronoi cell is computed once before the parallel phase. Pair
    results are placed by pair index, so the output does not depend on
    ``threads``.
    """
    metric = metric.lower()
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {sorted(METRICS)}, got {metric!r}")
    if len(ids) != len(bases) or len(ids) < 2:
        raise ValueError("need at least two lattices with one id each")
    stats = MatrixStats() if stats is None else stats
    grid = sample_rotations(n)
    cells = []
    for basis in bases:
        cells.append(compute_voronoi_cell(basis))
        stats.cells_computed += 1
    pairs = list(itertools.combinations(range(len(ids)), 2))
    kernel = hausdorff_from_cells if metric == "dh" else scale_from_cells

    def work(pair):
        i, j = pair
        return kernel(cells[i], cells[j], grid, refine=refine).value

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, pairs))
    else:
        results = [work(p) for p in pairs]
    stats.pairs_computed += len(pairs)
    log.info("computed %d pair distances (%s, n=%d)", len(pairs), METRICS[metric], n)

    values = np.zeros((len(ids), len(ids)))
    for (i, j), v in zip(pairs, results):
        values[i, j] = values[j, i] = v
    return DistanceMatrix(tuple(ids), values, METRICS[metric], n)
