"""
Validated sample container, consecutive spacings and their order statistics
"""
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from utils.errors import DataError, IndexRangeError, SizeError


def compensated_cumsum(values: np.ndarray) -> np.ndarray:
    """
    Prefix sums with the rounding error of every step added back

    np.cumsum adds sequentially, so the error of step k is the TwoSum
    residual of (c[k-1] + x[k]); summing the residuals corrects the prefix.
    """
    sums = np.cumsum(values)
    previous = np.concatenate(([0.0], sums[:-1]))
    addend = sums - previous
    residual = (previous - (sums - addend)) + (values - addend)
    return sums + np.cumsum(residual)


@dataclass(frozen=True, eq=False)
class Sample:
    """
    Ascending order statistics X_(1) <= ... <= X_(n)

    prefix_sums[i] is the sum of the i smallest observations, shifted by the
    sample mean so the running sums stay small.
    """
    values: np.ndarray
    prefix_sums: np.ndarray
    shift: float

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def mean(self) -> float:
        return self.shift + float(self.prefix_sums[-1]) / self.n

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Sample(n={self.n}, min={self.values[0]:g}, max={self.values[-1]:g})"


@dataclass(frozen=True, eq=False)
class SpacingSet:
    """The n - 1 gaps S_i = X_(i+1) - X_(i) and the same gaps sorted descending"""
    gaps: np.ndarray
    n: int
    sorted_gaps_desc: np.ndarray

    def __repr__(self) -> str:
        return f"SpacingSet(n={self.n}, max={self.sorted_gaps_desc[0]:g})"


def make_sample(raw: Iterable[float]) -> Sample:
    values = np.array(list(raw) if not isinstance(raw, np.ndarray) else raw, dtype=float).ravel()

    if values.size < 2:
        raise SizeError(f"a sample needs at least 2 observations, got {values.size}")
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise DataError(f"observation {bad} is not finite ({values[bad]!r})")

    values = np.sort(values)
    values.setflags(write=False)

    try:
        shift = math.fsum(values) / values.size
    except OverflowError:
        shift = math.fsum(values / values.size)
    prefix = np.concatenate(([0.0], compensated_cumsum(values - shift)))
    prefix.setflags(write=False)

    return Sample(values=values, prefix_sums=prefix, shift=shift)


def spacings(s: Sample) -> SpacingSet:
    gaps = np.diff(s.values)
    gaps.setflags(write=False)
    ordered = np.sort(gaps)[::-1].copy()
    ordered.setflags(write=False)
    return SpacingSet(gaps=gaps, n=s.n, sorted_gaps_desc=ordered)


def kth_max_spacing(sp: SpacingSet, k: int) -> float:
    """M_n^(k); k = 1 gives the maximum spacing"""
    if k < 1 or k > sp.n - 1:
        raise IndexRangeError(f"k must be in [1, {sp.n - 1}], got {k}")
    return float(sp.sorted_gaps_desc[k - 1])


def segment_means(s: Sample, i: int) -> Tuple[float, float]:
    """Means of the i smallest and of the n - i largest observations"""
    n = s.n
    if i < 1 or i > n - 1:
        raise IndexRangeError(f"i must be in [1, {n - 1}], got {i}")

    lower = float(s.prefix_sums[i]) / i
    upper = float(s.prefix_sums[n] - s.prefix_sums[i]) / (n - i)
    return s.shift + lower, s.shift + upper
