"""
Spacings-based variance decomposition and the cluster index

(1/n) sum (X_i - mean)^2 = sum_i  i(n-i)/n^2 * (mean of top n-i - mean of bottom i) * S_i

The standardized components divide each term by the sample variance and sum
to one; the cluster index is their maximum.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config.settings import TIE_RTOL
from spacings.sample import Sample, compensated_cumsum
from utils.errors import DegenerateSampleError


@dataclass(frozen=True)
class Component:
    index: int
    weight: float
    mean_gap: float
    spacing: float
    raw: float
    standardized: float

    def to_dict(self) -> dict:
        return {
            'index': self.index,
            'weight': self.weight,
            'mean_gap': self.mean_gap,
            'spacing': self.spacing,
            'raw': self.raw,
            'standardized': self.standardized,
        }


@dataclass(frozen=True, eq=False)
class VarianceDecomposition:
    """
    Column arrays over i = 1..n-1 (array position i - 1); `components`
    gives the per-index records
    """
    n: int
    weights: np.ndarray
    mean_gaps: np.ndarray
    spacings: np.ndarray
    raw: np.ndarray
    standardized: np.ndarray
    sample_variance: float

    @property
    def components(self) -> List[Component]:
        return [
            Component(i + 1, float(self.weights[i]), float(self.mean_gaps[i]),
                      float(self.spacings[i]), float(self.raw[i]), float(self.standardized[i]))
            for i in range(self.n - 1)
        ]

    def top_components(self, count: int) -> List[Component]:
        """Largest standardized components, ties broken by smaller index"""
        order = np.lexsort((np.arange(self.n - 1), -self.standardized))[:count]
        every = self.components
        return [every[k] for k in order]


@dataclass(frozen=True)
class ClusterSplit:
    """
    The split at index j: cluster1 = X_(1..j), cluster2 = X_(j+1..n), both as
    1-based inclusive index ranges
    """
    j: int
    statistic: float
    separator_low: float
    separator_high: float
    cluster1: Tuple[int, int]
    cluster2: Tuple[int, int]

    @property
    def sizes(self) -> Tuple[int, int]:
        return self.cluster1[1] - self.cluster1[0] + 1, self.cluster2[1] - self.cluster2[0] + 1

    def to_dict(self) -> dict:
        return {
            'j': self.j,
            'statistic': self.statistic,
            'separator_low': self.separator_low,
            'separator_high': self.separator_high,
            'cluster1': list(self.cluster1),
            'cluster2': list(self.cluster2),
        }


def _normalized(values: np.ndarray, shift: float) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    (values - shift) / scale and the gaps / scale, with scale the sample
    range; the normalized values lie in [-1, 1] whatever the input magnitude
    """
    scale = float(values[-1] - values[0])
    if np.isfinite(scale):
        return (values - shift) / scale, np.diff(values) / scale, scale
    # range above the float maximum
    half = float(values[-1] * 0.5 - values[0] * 0.5)
    return (values * 0.5 - shift * 0.5) / half, np.diff(values * 0.5) / half, scale


def _columns(gaps: np.ndarray, prefix: np.ndarray) -> Tuple[np.ndarray, ...]:
    """weights, mean gaps, spacings and raw components from the gaps and centered prefix sums"""
    n = gaps.size + 1
    i = np.arange(1, n, dtype=float)
    below = prefix[1:n]
    above = prefix[n] - below

    weights = i * (n - i) / (n * n)
    mean_gaps = np.maximum(above / (n - i) - below / i, 0.0)
    return weights, mean_gaps, gaps, weights * mean_gaps * gaps


def decompose(s: Sample) -> VarianceDecomposition:
    """
    The decomposition of a validated sample, O(n) from its prefix sums

    Components are computed on the range-normalized sample and scaled back,
    so the standardized column is exact at any magnitude. raw and
    sample_variance overflow to inf once the range passes about 1e154.
    Raises DegenerateSampleError for a constant sample.
    """
    if s.values[0] == s.values[-1]:
        raise DegenerateSampleError("sample variance is zero: every observation is equal")

    unit, unit_gaps, scale = _normalized(s.values, s.shift)
    prefix = np.concatenate(([0.0], compensated_cumsum(unit)))
    weights, unit_mean_gaps, _, unit_raw = _columns(unit_gaps, prefix)
    unit_variance = float(np.dot(unit, unit)) / s.n
    standardized = unit_raw / unit_variance

    with np.errstate(over='ignore'):
        mean_gaps = unit_mean_gaps * scale
        raw = unit_raw * scale * scale
        sample_variance = unit_variance * scale * scale
    gaps = np.diff(s.values)

    for arr in (weights, mean_gaps, gaps, raw, standardized):
        arr.setflags(write=False)

    return VarianceDecomposition(
        n=s.n, weights=weights, mean_gaps=mean_gaps, spacings=gaps, raw=raw,
        standardized=standardized, sample_variance=sample_variance,
    )


def _argmax_smallest(values: np.ndarray) -> int:
    """Position of the maximum; near-ties (TIE_RTOL) go to the smallest position"""
    top = values.max()
    return int(np.flatnonzero(values >= top - TIE_RTOL * abs(top))[0])


def cluster_index(d: VarianceDecomposition, s: Sample) -> ClusterSplit:
    pos = _argmax_smallest(d.standardized)
    j = pos + 1
    return ClusterSplit(
        j=j,
        statistic=float(d.standardized[pos]),
        separator_low=float(s.values[j - 1]),
        separator_high=float(s.values[j]),
        cluster1=(1, j),
        cluster2=(j + 1, s.n),
    )


def cluster_statistic(sorted_values: np.ndarray) -> Tuple[float, int]:
    """
    Fast path for simulation loops: (statistic, j) straight from an ascending
    array, skipping Sample validation

    Returns (nan, 0) for a constant array so the caller can count it as excluded.
    """
    if sorted_values[0] == sorted_values[-1]:
        return float('nan'), 0

    unit, unit_gaps, _ = _normalized(sorted_values, float(sorted_values.mean()))
    variance = float(np.dot(unit, unit)) / sorted_values.size
    prefix = np.concatenate(([0.0], compensated_cumsum(unit)))
    raw = _columns(unit_gaps, prefix)[3]
    pos = _argmax_smallest(raw)
    return float(raw[pos]) / variance, pos + 1
