"""
Statistical Evaluation System

Runs seeded replicates (serially or on a process pool), merges them by
replicate index and turns them into empirical CDFs, KS distances and reports.
"""
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    DEFAULT_WORKERS,
    MAX_EXCLUSION_FRACTION,
    POWER_ALPHA,
    REPLICATE_CHUNK_SIZE,
)
from inference.gumbel import gumbel_cdf, half_limit_cdf
from simulation.replicates import cluster_replicate, detection_replicate, half_replicate
from utils.errors import DomainError, ExclusionError, SizeError

logger = logging.getLogger(__name__)

ReplicateFn = Callable[..., Optional[np.ndarray]]

QUANTILE_LEVELS = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class SimConfig:
    n: int
    reps: int
    seed: int
    grid: Tuple[float, ...] = ()

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise SizeError(f"n must be an integer >= 2, got {self.n!r}")
        if int(self.reps) != self.reps or self.reps < 1:
            raise DomainError(f"reps must be an integer >= 1, got {self.reps!r}")
        grid = tuple(float(g) for g in self.grid)
        if not all(math.isfinite(g) for g in grid):
            raise DomainError("grid points must be finite")
        if any(b < a for a, b in zip(grid, grid[1:])):
            raise DomainError("grid must be sorted ascending")
        object.__setattr__(self, 'grid', grid)

    def to_dict(self) -> dict:
        return {'n': self.n, 'reps': self.reps, 'seed': self.seed, 'grid': list(self.grid)}


@dataclass(frozen=True)
class MonteCarloReport:
    config: SimConfig
    statistic: str
    reference: str
    empirical_cdf: Tuple[float, ...]
    reference_cdf: Tuple[float, ...]
    ks_distance: float
    quantiles: Dict[str, float]
    excluded: int

    def to_dict(self) -> dict:
        return convert_to_native({
            'config': self.config.to_dict(),
            'statistic': self.statistic,
            'reference': self.reference,
            'grid': list(self.config.grid),
            'empirical_cdf': list(self.empirical_cdf),
            'reference_cdf': list(self.reference_cdf),
            'ks_distance': self.ks_distance,
            'quantiles': self.quantiles,
            'excluded': self.excluded,
        })

    def table(self) -> List[dict]:
        """Plot-ready rows: one per grid point"""
        return [
            {'x': x, 'empirical_cdf': e, 'reference_cdf': r}
            for x, e, r in zip(self.config.grid, self.empirical_cdf, self.reference_cdf)
        ]


@dataclass(frozen=True)
class PowerReport:
    config: SimConfig
    separation: Optional[float]
    alpha: float
    median_p_value: float
    fraction_below_alpha: float
    quantiles: Dict[str, float]
    excluded: int

    def to_dict(self) -> dict:
        return convert_to_native({
            'config': self.config.to_dict(),
            'separation': self.separation,
            'alpha': self.alpha,
            'median_p_value': self.median_p_value,
            'fraction_below_alpha': self.fraction_below_alpha,
            'quantiles': self.quantiles,
            'excluded': self.excluded,
        })


@dataclass(frozen=True, eq=False)
class ReplicateBatch:
    """Rows of kept replicates, in replicate-index order"""
    values: np.ndarray
    reps: int
    excluded: int

    @property
    def column(self) -> np.ndarray:
        return self.values[:, 0]


def _run_chunk(replicate_fn: ReplicateFn, seed: int, n: int,
               indices: Sequence[int]) -> List[Optional[np.ndarray]]:
    return [replicate_fn(seed, index, n) for index in indices]


class MonteCarloEvaluator:
    """
    Replication engine; a report is a pure function of (seed, n, reps) and
    the replicate function, whatever the worker count
    """

    def __init__(self, seed: int, n: int, workers: int = DEFAULT_WORKERS,
                 chunk_size: int = REPLICATE_CHUNK_SIZE):
        if workers < 1:
            raise DomainError(f"workers must be at least 1, got {workers}")
        self.seed = seed
        self.n = n
        self.workers = workers
        self.chunk_size = chunk_size

    def run_replicates(self, replicate_fn: ReplicateFn, reps: int) -> ReplicateBatch:
        chunks = [range(start, min(start + self.chunk_size, reps))
                  for start in range(0, reps, self.chunk_size)]
        task = partial(_run_chunk, replicate_fn, self.seed, self.n)

        logger.debug("running %d replicates (n=%d) in %d chunks on %d worker(s)",
                     reps, self.n, len(chunks), self.workers)

        if self.workers == 1 or len(chunks) == 1:
            chunk_results = [task(chunk) for chunk in chunks]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                chunk_results = list(pool.map(task, chunks))

        rows = [row for chunk in chunk_results for row in chunk]
        kept = [row for row in rows if row is not None]
        excluded = len(rows) - len(kept)

        if excluded:
            logger.warning("⚠ %d of %d replicates were degenerate and excluded", excluded, reps)
        if not kept:
            raise ExclusionError(f"all {reps} replicates were degenerate")

        return ReplicateBatch(values=np.vstack(kept), reps=reps, excluded=excluded)


def check_exclusions(batch: ReplicateBatch) -> None:
    if batch.excluded > MAX_EXCLUSION_FRACTION * batch.reps:
        raise ExclusionError(
            f"{batch.excluded} of {batch.reps} replicates excluded "
            f"(limit {MAX_EXCLUSION_FRACTION:.1%})"
        )


def empirical_cdf(samples: Sequence[float], grid: Sequence[float]) -> List[float]:
    """Fraction of samples <= each grid point"""
    ordered = np.sort(np.asarray(samples, dtype=float))
    if ordered.size == 0:
        raise DomainError("empirical_cdf needs at least one sample")
    points = np.asarray(grid, dtype=float)
    if np.any(np.diff(points) < 0):
        raise DomainError("grid must be sorted ascending")

    counts = np.searchsorted(ordered, points, side='right')
    return [float(c) / ordered.size for c in counts]


def ks_distance(samples: Sequence[float], reference_cdf: Callable[[float], float]) -> float:
    """sup |F_N - F| over the sample points, checking both sides of each jump"""
    ordered = np.sort(np.asarray(samples, dtype=float))
    size = ordered.size
    if size == 0:
        raise DomainError("ks_distance needs at least one sample")

    reference = np.array([reference_cdf(float(v)) for v in ordered])
    steps = np.arange(1, size + 1) / size
    above = np.max(np.abs(steps - reference))
    below = np.max(np.abs(steps - 1.0 / size - reference))
    return float(max(above, below))


def sample_quantiles(samples: np.ndarray) -> Dict[str, float]:
    return {f"{level:g}": float(np.quantile(samples, level)) for level in QUANTILE_LEVELS}


def standard_error(p: float, reps: int) -> float:
    """Binomial standard error sqrt(p (1 - p) / reps)"""
    return math.sqrt(max(p * (1.0 - p), 0.0) / reps)


def _cdf_report(cfg: SimConfig, batch: ReplicateBatch, statistic: str, reference: str,
                reference_cdf: Callable[[float], float]) -> MonteCarloReport:
    check_exclusions(batch)
    values = batch.column
    return MonteCarloReport(
        config=cfg,
        statistic=statistic,
        reference=reference,
        empirical_cdf=tuple(empirical_cdf(values, cfg.grid)) if cfg.grid else (),
        reference_cdf=tuple(reference_cdf(x) for x in cfg.grid),
        ks_distance=ks_distance(values, reference_cdf),
        quantiles=sample_quantiles(values),
        excluded=batch.excluded,
    )


def simulate_cluster_statistic(cfg: SimConfig, workers: int = DEFAULT_WORKERS) -> MonteCarloReport:
    """Empirical law of n * I_n - log n under the normal null, against the Gumbel CDF"""
    if cfg.n < 3:
        raise SizeError(f"simulation needs n >= 3, got {cfg.n}")

    batch = MonteCarloEvaluator(cfg.seed, cfg.n, workers).run_replicates(cluster_replicate, cfg.reps)
    report = _cdf_report(cfg, batch, 'cluster_index', 'gumbel', gumbel_cdf)
    logger.info("✓ cluster statistic: n=%d reps=%d KS=%.4f", cfg.n, cfg.reps, report.ks_distance)
    return report


def simulate_half_statistic(cfg: SimConfig, side: str = 'upper',
                            workers: int = DEFAULT_WORKERS) -> MonteCarloReport:
    """Empirical law of the one-sided statistic, against exp(-exp(-x) / 2)"""
    if side not in ('upper', 'lower'):
        raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")

    replicate = partial(half_replicate, side=side)
    batch = MonteCarloEvaluator(cfg.seed, cfg.n, workers).run_replicates(replicate, cfg.reps)
    report = _cdf_report(cfg, batch, f'half_{side}', 'half_limit', half_limit_cdf)
    logger.info("✓ half statistic (%s): n=%d reps=%d KS=%.4f", side, cfg.n, cfg.reps, report.ks_distance)
    return report


def simulate_detection_pvalues(cfg: SimConfig, separation: Optional[float] = None,
                               workers: int = DEFAULT_WORKERS,
                               alpha: float = POWER_ALPHA) -> PowerReport:
    """Cluster-test p-values under the normal null or a two-component location mixture"""
    if cfg.n < 3:
        raise SizeError(f"simulation needs n >= 3, got {cfg.n}")

    replicate = partial(detection_replicate, separation=separation)
    batch = MonteCarloEvaluator(cfg.seed, cfg.n, workers).run_replicates(replicate, cfg.reps)
    check_exclusions(batch)
    p_values = batch.column

    return PowerReport(
        config=cfg,
        separation=separation,
        alpha=alpha,
        median_p_value=float(np.median(p_values)),
        fraction_below_alpha=float(np.mean(p_values < alpha)),
        quantiles=sample_quantiles(p_values),
        excluded=batch.excluded,
    )


def convert_to_native(obj):
    """Convert numpy types to Python native types"""
    if isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, np.floating):
        return float(obj)
    elif isinstance(obj, np.bool_):
        return bool(obj)
    elif isinstance(obj, np.ndarray):
        return obj.tolist()
    elif isinstance(obj, dict):
        return {key: convert_to_native(value) for key, value in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [convert_to_native(item) for item in obj]
    return obj


def dumps_report(payload: dict) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, lossless floats"""
    return json.dumps(convert_to_native(payload), indent=2, sort_keys=True, allow_nan=False)
