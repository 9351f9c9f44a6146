"""
Random projection scan: the one-dimensional cluster index along random directions

The p-value reported for the best direction is the per-direction Gumbel
p-value. It is not corrected for the number of directions tried; that count
is reported alongside it.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from inference.gumbel import GumbelTest, cluster_test
from simulation.streams import sample_std_normal, substream
from spacings.decomposition import ClusterSplit, VarianceDecomposition, cluster_index, decompose
from spacings.sample import Sample, make_sample
from utils.errors import DegenerateSampleError, DomainError, SizeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    direction: np.ndarray
    direction_index: int
    sample: Sample
    decomposition: VarianceDecomposition
    split: ClusterSplit
    test: GumbelTest
    directions_tried: int
    directions_skipped: int

    def to_dict(self) -> dict:
        return {
            'direction': [float(v) for v in self.direction],
            'direction_index': self.direction_index,
            'directions_tried': self.directions_tried,
            'directions_skipped': self.directions_skipped,
            'multiplicity_corrected': False,
        }


def random_direction(seed: int, index: int, dim: int) -> np.ndarray:
    """Unit vector uniform on the sphere, from substream (seed, index)"""
    v = sample_std_normal(substream(seed, index), dim)
    return v / np.linalg.norm(v)


def project_scan(rows: np.ndarray, directions: int, seed: int) -> ProjectionResult:
    """
    Project the rows on `directions` random unit vectors and keep the one
    with the largest cluster index; ties keep the earliest direction
    """
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise DomainError(f"projection needs at least 2 columns, got shape {data.shape}")
    if data.shape[0] < 2:
        raise SizeError(f"projection needs at least 2 rows, got {data.shape[0]}")
    if directions < 1:
        raise DomainError(f"directions must be at least 1, got {directions}")

    best: Optional[Tuple[int, np.ndarray, Sample, VarianceDecomposition, ClusterSplit]] = None
    skipped = 0

    for k in range(directions):
        u = random_direction(seed, k, data.shape[1])
        sample = make_sample(data @ u)
        try:
            d = decompose(sample)
        except DegenerateSampleError:
            logger.warning("⚠ direction %d gives a constant projection, skipped", k)
            skipped += 1
            continue

        split = cluster_index(d, sample)
        if best is None or split.statistic > best[4].statistic:
            best = (k, u, sample, d, split)

    if best is None:
        raise DegenerateSampleError(f"all {directions} projections were constant")

    k, u, sample, d, split = best
    logger.info("✓ best of %d direction(s): #%d, statistic %.6f", directions, k, split.statistic)
    return ProjectionResult(
        direction=u,
        direction_index=k,
        sample=sample,
        decomposition=d,
        split=split,
        test=cluster_test(sample.n, min(split.statistic, 1.0)),
        directions_tried=directions,
        directions_skipped=skipped,
    )
