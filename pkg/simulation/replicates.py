"""
Per-replicate statistics

Every function here has the signature (seed, index, n, ...) -> array or None:
it draws one normal sample from substream(seed, index) and reduces it. None
marks a degenerate replicate that the evaluator counts and excludes. They are
module-level so a process pool can pickle them.
"""
import math
from typing import Optional, Sequence

import numpy as np

from analytics.normal import log_upper_tail, mills_ratio
from inference.gumbel import cluster_test
from simulation.streams import sample_std_normal, substream
from spacings.decomposition import cluster_statistic


def sorted_normals(seed: int, index: int, n: int) -> np.ndarray:
    z = sample_std_normal(substream(seed, index), n)
    z.sort()
    return z


def cluster_replicate(seed: int, index: int, n: int) -> Optional[np.ndarray]:
    """n * I_n - log n"""
    statistic, _ = cluster_statistic(sorted_normals(seed, index, n))
    if math.isnan(statistic):
        return None
    return np.array([n * statistic - math.log(n)])


def half_replicate(seed: int, index: int, n: int, side: str = 'upper') -> Optional[np.ndarray]:
    """
    max over Z_(i) > 0 of (n - i)(Z_(i+1) - Z_(i)) * mills(Z_(i)), minus log n

    side='lower' evaluates the same statistic on the reflected sample -Z.
    """
    z = sorted_normals(seed, index, n)
    if side == 'lower':
        z = -z[::-1]

    positions = np.flatnonzero(z[:-1] > 0.0)
    if positions.size == 0:
        return None

    above = n - (positions + 1)
    values = above * (z[positions + 1] - z[positions]) * mills_ratio(z[positions])
    return np.array([float(values.max()) - math.log(n)])


def detection_replicate(seed: int, index: int, n: int,
                        separation: Optional[float] = None) -> Optional[np.ndarray]:
    """Cluster-test p-value of a normal sample, or of a 50/50 location mixture"""
    stream = substream(seed, index)
    x = sample_std_normal(stream, n)
    if separation is not None:
        labels = stream.random(n) < 0.5
        x = x + separation * labels
    x.sort()

    statistic, _ = cluster_statistic(x)
    if math.isnan(statistic):
        return None
    return np.array([cluster_test(n, min(statistic, 1.0)).p_value])


def lemma31_replicate(seed: int, index: int, n: int, i_list: Sequence[int],
                      eps_list: Sequence[float]) -> np.ndarray:
    """
    Indicators of Z_(i)(Z_(i+1) - Z_(i)) > eps, i-major over (i, eps),
    for 1-based i
    """
    z = sorted_normals(seed, index, n)
    positions = np.asarray(i_list, dtype=int) - 1
    products = z[positions] * (z[positions + 1] - z[positions])
    return (products[:, None] > np.asarray(eps_list, dtype=float)[None, :]).astype(float).ravel()


def uniform_ratio_replicate(seed: int, index: int, n: int,
                            exponent_offset: int = 0) -> np.ndarray:
    """
    (V_(k) / V_(k+1))^k for k = 1..n-1, where V_(k) = 1 - Phi(Z_(n+1-k)) are
    uniform order statistics; exponent_offset != 0 mis-specifies the power
    """
    z = sorted_normals(seed, index, n)
    log_v = log_upper_tail(z[::-1])
    k = np.arange(1, n, dtype=float) + exponent_offset
    return np.exp(k * (log_v[:-1] - log_v[1:]))


def top_spacing_replicate(seed: int, index: int, n: int, top_j: int) -> np.ndarray:
    """
    [sqrt(2 log n) M_n,
     j (Z_(n-j+1) - Z_(n-j)) sqrt(2 log n) for j = 1..top_j,
     j (Z_(n-j+1) - Z_(n-j)) mills(Z_(n-j))  for j = 1..top_j]
    """
    z = sorted_normals(seed, index, n)
    scale = math.sqrt(2.0 * math.log(n))
    j = np.arange(1, top_j + 1)
    upper = z[n - j]
    lower = z[n - j - 1]
    weighted = j * (upper - lower)

    return np.concatenate((
        [scale * float(np.max(np.diff(z)))],
        scale * weighted,
        mills_ratio(lower) * weighted,
    ))


def remainder_replicate(seed: int, index: int, n: int) -> Optional[np.ndarray]:
    """
    Suprema over the positive-side indices of
    (n - i) S_i |mean(Z)| and (n - i) S_i |mean(Z_(i+1..n)) - mills(Z_(i))|
    """
    z = sorted_normals(seed, index, n)
    positions = np.flatnonzero(z[:-1] > 0.0)
    if positions.size == 0:
        return None

    i = positions + 1
    above = n - i
    weighted_gap = above * (z[positions + 1] - z[positions])

    tail_sums = np.cumsum(z[::-1])[::-1]  # tail_sums[p] = sum of z[p:]
    upper_means = tail_sums[positions + 1] / above

    overall = abs(float(z.mean()))
    centered = np.abs(upper_means - mills_ratio(z[positions]))
    return np.array([float(np.max(weighted_gap)) * overall, float(np.max(weighted_gap * centered))])
